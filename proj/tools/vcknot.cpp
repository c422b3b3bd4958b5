// vcknot: Kashaev invariants, potential-function volumes and growth fits.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vc/asymptotics.hpp"
#include "vc/parallel.hpp"
#include "vc/solver.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitValidation = 2, kExitNotFound = 3;

struct RunConfig {
    std::string input;
    std::string output;
    int threads = vc::default_threads();
    // invariant
    int N = 0;
    std::string method = "reduced";
    std::string precision = "std";
    double budget = 1e9;
    // volume / shapes
    double tol = 1e-12;
    int restarts = 64;
    std::uint64_t seed = 0x5eed;
    int scan = 0;
    // verify
    int n_min = 2, n_max = 0;
    std::string model = "log-corrected";
    std::string series_method = "auto";
    int window = -1;
    std::string csv;
    // selftest
    std::string suite;
    int selftest_n = 7;
};

struct ValidationError : std::runtime_error {
    std::string reason;
    ValidationError(std::string why, const std::string& msg) : std::runtime_error(msg), reason(std::move(why)) {}
};

vc::KnotDiagram load_diagram(const std::string& input) {
    std::string text = input;
    std::error_code ec;
    if (std::filesystem::is_regular_file(input, ec)) {
        std::ifstream in(input);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return vc::parse_diagram(text);
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("output", "cannot write " + path);
    out << j.dump(2) << "\n";
}

json error_json(const std::string& reason, const std::string& message) {
    return {{"schema", "vc.error/1"}, {"reason", reason}, {"message", message}};
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Solved {
    vc::BasePoint bp;
    vc::ReducedGraph g;
    vc::PotentialFunction V;
};

Solved prepare(const vc::KnotDiagram& d) {
    Solved s;
    s.bp = vc::choose_base_point(d);
    s.g = vc::build_reduced_graph(d, s.bp);
    s.V = vc::build_potential(s.g, s.bp);
    return s;
}

vc::SolverOptions solver_options(const RunConfig& c) {
    vc::SolverOptions o;
    o.tol = c.tol;
    o.restarts = c.restarts;
    o.seed = c.seed;
    o.threads = c.threads;
    return o;
}

int cmd_invariant(const RunConfig& c) {
    auto d = load_diagram(c.input);
    if (c.N < 2) throw ValidationError("N", "--N must be at least 2");
    vc::StateSumOptions opt;
    opt.precision = vc::parse_precision(c.precision);
    opt.budget = c.budget;
    auto method = vc::parse_method(c.method);
    json j{{"schema", "vc.invariant/1"}, {"input", d.braid_text()}, {"N", c.N}, {"method", c.method},
           {"precision", c.precision}};
    vc::cplx v;
    if (method == vc::SeriesMethod::Oracle) {
        auto s = vc::invariant_series(d, c.N, c.N, method, opt);
        v = s.samples.front().value;
        j["log_abs"] = s.samples.front().log_abs;
    } else {
        vc::StateSumResult r;
        if (method == vc::SeriesMethod::Full) {
            r = vc::full_invariant(d, c.N, opt);
        } else {
            auto bp = vc::choose_base_point(d);
            r = vc::reduced_invariant(d, bp, vc::build_reduced_graph(d, bp), c.N, opt);
        }
        v = r.value;
        j["log_abs"] = std::log(std::abs(v));
        j["states"] = r.leaves;
        j["free_labels"] = r.free_labels;
    }
    j["re"] = v.real();
    j["im"] = v.imag();
    j["abs"] = std::abs(v);
    emit(j, c.output);
    return kExitOk;
}

int cmd_volume(const RunConfig& c, bool shapes_only) {
    auto d = load_diagram(c.input);
    auto s = prepare(d);
    auto sol = vc::newton_solve(s.V, solver_options(c));
    json j = vc::to_json(sol.point, s.V);
    j["schema"] = shapes_only ? "vc.shapes/1" : "vc.volume/1";
    j["input"] = d.braid_text();
    j["base_edge"] = s.bp.edge;
    j["starts"] = sol.runs;
    j["converged_starts"] = sol.converged_runs;
    if (shapes_only) {
        auto& rel = j["relations"] = json::array();
        for (const auto& r : vc::product_relations(s.V, sol.point.L))
            rel.push_back({{"name", r.name}, {"deviation", r.deviation}});
    } else {
        auto comp = c.scan > 0 ? vc::competitor_scan(s.V, c.scan, c.seed + 1, c.threads) : sol.distinct;
        auto& cj = j["competitors"] = json::array();
        for (const auto& p : comp)
            cj.push_back({{"volume", p.volume}, {"im_potential", p.im_v0}, {"negatively_oriented", p.negative},
                          {"flat", p.flat}});
    }
    emit(j, c.output);
    return kExitOk;
}

int cmd_emit_potential(const RunConfig& c) {
    auto d = load_diagram(c.input);
    auto s = prepare(d);
    json j = vc::to_json(s.V);
    j["input"] = d.braid_text();
    j["base_point"] = vc::to_json(d, s.bp);
    j["reduced_graph"] = vc::to_json(s.g);
    emit(j, c.output);
    return kExitOk;
}

int cmd_verify(const RunConfig& c) {
    auto d = load_diagram(c.input);
    if (c.n_max < c.n_min) throw ValidationError("n_max", "--n-max must be at least --n-min");
    auto model = vc::parse_model(c.model);
    vc::SeriesMethod method;
    if (c.series_method == "auto") {
        method = vc::SeriesMethod::Reduced;
        try {
            vc::invariant_series(d, 2, 2, vc::SeriesMethod::Oracle);
            method = vc::SeriesMethod::Oracle;
        } catch (const std::invalid_argument&) {
        }
    } else {
        method = vc::parse_method(c.series_method);
    }
    vc::StateSumOptions opt;
    opt.budget = c.budget;
    auto series = vc::invariant_series(d, c.n_min, c.n_max, method, opt, c.threads);

    if (!c.csv.empty()) {
        std::ofstream out(c.csv);
        if (!out) throw ValidationError("csv", "cannot write " + c.csv);
        out << "N,re,im,log_abs\n";
        for (const auto& x : series.samples)
            out << x.N << "," << g17(x.value.real()) << "," << g17(x.value.imag()) << "," << g17(x.log_abs) << "\n";
    }

    auto s = prepare(d);
    auto sol = vc::newton_solve(s.V, solver_options(c));
    json j{{"schema", "vc.verify/1"}, {"input", d.braid_text()}, {"method", vc::method_name(method)},
           {"model", vc::model_name(model)}, {"n_min", c.n_min}, {"n_max", c.n_max},
           {"truncated", series.truncated}, {"vol_geometric", sol.point.volume}};
    if (series.truncated) j["note"] = series.note;
    auto& sj = j["samples"] = json::array();
    for (const auto& x : series.samples) sj.push_back({{"N", x.N}, {"log_abs", x.log_abs}});
    auto f = vc::fit_growth(series.samples, model, c.window);
    j["window"] = {f.n_lo, f.n_hi};
    j["slope"] = f.slope;
    j["log_coef"] = f.log_coef;
    j["intercept"] = f.intercept;
    j["vol_estimate"] = f.volume;
    j["half_width"] = f.half_width;
    j["rms"] = f.rms;
    j["ratio"] = f.volume / sol.point.volume;
    emit(j, c.output);
    return kExitOk;
}

int cmd_selftest(const RunConfig& c) {
    if (c.suite != "lemma3") throw ValidationError("suite", "unknown selftest '" + c.suite + "'");
    if (c.selftest_n < 2) throw ValidationError("n", "--n must be at least 2");
    json j{{"schema", "vc.selftest/1"}, {"suite", "lemma3"}};
    auto& rows = j["results"] = json::array();
    bool ok = true;
    for (int N = 2; N <= c.selftest_n; ++N) {
        auto r = vc::summation_identities(vc::RootContext(N));
        rows.push_back({{"N", N}, {"tuples", r.tuples}, {"max_deviation", r.max_dev}});
        ok = ok && r.max_deviation() < 1e-9;
    }
    j["pass"] = ok;
    emit(j, c.output);
    return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kashaev invariants and the volume conjecture"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* sub, bool needs_input = true) {
        if (needs_input) sub->add_option("--input,-i", c.input, "braid word (s1 -s2 ...) or PD code / file")->required();
        sub->add_option("--output,-o", c.output, "JSON output path (default stdout)");
        sub->add_option("--threads", c.threads, "worker threads (default $VC_THREADS or 1)")->check(CLI::PositiveNumber);
    };
    auto solver = [&](CLI::App* sub) {
        sub->add_option("--tol", c.tol, "Newton tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--restarts", c.restarts, "Newton starts")->check(CLI::PositiveNumber);
        sub->add_option("--seed", c.seed, "RNG seed");
    };

    auto* inv = app.add_subcommand("invariant", "<K>_N by state sum");
    common(inv);
    inv->add_option("--N", c.N, "root of unity order")->required();
    inv->add_option("--method", c.method, "full|reduced|oracle")->check(CLI::IsMember({"full", "reduced", "oracle"}));
    inv->add_option("--precision", c.precision, "std|dd")->check(CLI::IsMember({"std", "dd"}));
    inv->add_option("--budget", c.budget, "bound on N^(free labels)");

    auto* vol = app.add_subcommand("volume", "volume from the critical point of the potential");
    common(vol);
    solver(vol);
    vol->add_option("--scan", c.scan, "extra random starts for the competitor list");

    auto* sh = app.add_subcommand("shapes", "shape parameters and edge relations at the solution");
    common(sh);
    solver(sh);

    auto* pot = app.add_subcommand("emit-potential", "potential function terms");
    common(pot);

    auto* ver = app.add_subcommand("verify", "growth rate of <K>_N against the volume");
    common(ver);
    solver(ver);
    ver->add_option("--n-min", c.n_min, "smallest N");
    ver->add_option("--n-max", c.n_max, "largest N")->required();
    ver->add_option("--model", c.model, "linear|log-corrected")->check(CLI::IsMember({"linear", "log-corrected"}));
    ver->add_option("--method", c.series_method, "auto|oracle|reduced|full")
        ->check(CLI::IsMember({"auto", "oracle", "reduced", "full"}));
    ver->add_option("--window", c.window, "first N of the fit window (default: upper half)");
    ver->add_option("--csv", c.csv, "write the samples as CSV");
    ver->add_option("--budget", c.budget, "bound on N^(free labels)");

    auto* st = app.add_subcommand("selftest", "built-in identity checks");
    common(st, false);
    st->add_option("suite", c.suite, "lemma3")->required();
    st->add_option("--n", c.selftest_n, "largest N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("arguments", e.what()).dump() << "\n";
        return kExitValidation;
    }

    try {
        if (inv->parsed()) return cmd_invariant(c);
        if (vol->parsed()) return cmd_volume(c, false);
        if (sh->parsed()) return cmd_volume(c, true);
        if (pot->parsed()) return cmd_emit_potential(c);
        if (ver->parsed()) return cmd_verify(c);
        if (st->parsed()) return cmd_selftest(c);
    } catch (const vc::DiagramError& e) {
        std::cerr << error_json(e.reason, e.what()).dump() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << error_json(e.reason, e.what()).dump() << "\n";
        return kExitValidation;
    } catch (const vc::NotFound& e) {
        json j = error_json("not_found", e.what());
        j["candidates"] = e.candidates.size();
        std::cerr << j.dump() << "\n";
        return kExitNotFound;
    } catch (const vc::BudgetError& e) {
        std::cerr << error_json("budget", e.what()).dump() << "\n";
        return kExitNotFound;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json("validation", e.what()).dump() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
