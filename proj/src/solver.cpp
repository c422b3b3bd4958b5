#include "vc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vc/dilog.hpp"
#include "vc/parallel.hpp"

namespace vc {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(const Eigen::VectorXcd& v) {
    for (int i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    return true;
}

// F = exp(r) - 1, so that branches of the logs drop out
Eigen::VectorXcd eval_F(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    Eigen::VectorXcd r = residual_log(V, L);
    for (int i = 0; i < r.size(); ++i) r[i] = std::exp(r[i]) - 1.0;
    return r;
}

double norm_of(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    try {
        Eigen::VectorXcd F = eval_F(V, L);
        if (!finite(F)) return INFINITY;
        return F.lpNorm<Eigen::Infinity>();
    } catch (const SingularityError&) {
        return INFINITY;
    }
}

std::vector<Eigen::VectorXcd> random_seeds(int dim, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(std::log(0.5), std::log(2.0)), ang(-kPi, kPi);
    std::vector<Eigen::VectorXcd> out;
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXcd L(dim);
        for (int i = 0; i < dim; ++i) L[i] = cplx(rad(rng), ang(rng));
        out.push_back(L);
    }
    return out;
}

bool same_point(const CriticalPoint& a, const CriticalPoint& b) {
    for (std::size_t i = 0; i < a.shapes.size(); ++i)
        if (std::abs(a.shapes[i] - b.shapes[i]) > 1e-7 * std::max(1.0, std::abs(a.shapes[i]))) return false;
    return true;
}

std::vector<CriticalPoint> run_all(const PotentialFunction& V, const std::vector<Eigen::VectorXcd>& seeds,
                                   const SolverOptions& opt, int& converged) {
    std::vector<NewtonRun> runs(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), opt.threads, [&](int i) { runs[i] = newton_from(V, seeds[i], opt); });
    std::vector<CriticalPoint> distinct;
    converged = 0;
    for (const auto& r : runs) {
        if (!r.converged) continue;
        ++converged;
        CriticalPoint p = classify(V, r);
        bool seen = false;
        for (auto& q : distinct)
            if (same_point(p, q)) {
                seen = true;
                break;
            }
        if (!seen) distinct.push_back(std::move(p));
    }
    std::stable_sort(distinct.begin(), distinct.end(),
                     [](const CriticalPoint& a, const CriticalPoint& b) { return a.volume > b.volume; });
    return distinct;
}

}  // namespace

NewtonRun newton_from(const PotentialFunction& V, const Eigen::VectorXcd& L0, const SolverOptions& opt) {
    NewtonRun run;
    run.L = L0;
    double f = norm_of(V, run.L);
    if (!std::isfinite(f)) {
        run.failure = "singular start";
        return run;
    }
    for (; run.iterations <= opt.max_iter; ++run.iterations) {
        run.residual = f;
        if (f < opt.tol) {
            run.converged = true;
            return run;
        }
        if (run.iterations == opt.max_iter) break;
        Eigen::VectorXcd F, step;
        Eigen::MatrixXcd J;
        try {
            Eigen::VectorXcd r = residual_log(V, run.L);
            J = residual_jacobian(V, run.L);
            F.resize(r.size());
            for (int i = 0; i < r.size(); ++i) {
                cplx e = std::exp(r[i]);
                F[i] = e - 1.0;
                J.row(i) *= e;
            }
        } catch (const SingularityError& e) {
            run.failure = e.what();
            return run;
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
        if (lu.rank() < J.rows()) {
            run.failure = "singular Jacobian";
            return run;
        }
        step = lu.solve(-F);
        double t = 1;
        bool moved = false;
        for (int h = 0; h < 40; ++h, t *= 0.5) {
            Eigen::VectorXcd trial = run.L + t * step;
            double ft = norm_of(V, trial);
            if (ft < f) {
                run.L = trial;
                f = ft;
                moved = true;
                break;
            }
        }
        if (!moved) {
            run.failure = "line search stalled";
            return run;
        }
        for (int i = 0; i < run.L.size(); ++i) {
            if (std::abs(run.L[i].real()) > 30) {
                run.failure = "edge variable escaped";
                return run;
            }
            // keep the logs principal
            run.L[i] = cplx(run.L[i].real(), std::remainder(run.L[i].imag(), 2 * kPi));
        }
    }
    run.failure = "iteration limit";
    return run;
}

Eigen::VectorXcd regular_seed(const PotentialFunction& V) {
    const int n = V.dim();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<int>(V.terms.size()), n);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(static_cast<int>(V.terms.size()), kPi / 3);
    for (std::size_t i = 0; i < V.terms.size(); ++i) {
        int a = V.unknown_index[V.terms[i].phi], c = V.unknown_index[V.terms[i].psi];
        if (a >= 0) A(i, a) += 1;
        if (c >= 0) A(i, c) -= 1;
    }
    Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);
    Eigen::VectorXcd L(n);
    for (int i = 0; i < n; ++i) L[i] = cplx(0, x[i]);
    return L;
}

CriticalPoint classify(const PotentialFunction& V, const NewtonRun& run) {
    CriticalPoint p;
    p.L = run.L;
    p.residual = run.residual;
    p.iterations = run.iterations;
    p.shapes = shapes(V, run.L);
    p.flat = true;
    for (cplx s : p.shapes) {
        p.volume += bloch_wigner(s);
        if (s.imag() < 0) ++p.negative;
        if (std::abs(s.imag()) > 1e-8) p.flat = false;
    }
    PotentialFunction W = V;
    std::fill(W.branch.begin(), W.branch.end(), 0);
    Eigen::VectorXcd g = grad_potential_log(W, run.L);
    p.branch.resize(V.dim());
    for (int u = 0; u < V.dim(); ++u) p.branch[u] = -std::llround(g[u].imag() / (2 * kPi));
    W.branch = p.branch;
    p.im_v0 = eval_potential(W, run.L).imag();
    return p;
}

GeometricSolution newton_solve(PotentialFunction& V, const SolverOptions& opt) {
    std::vector<Eigen::VectorXcd> seeds{regular_seed(V)};
    for (auto& s : random_seeds(V.dim(), std::max(0, opt.restarts - 1), opt.seed)) seeds.push_back(std::move(s));
    GeometricSolution sol;
    sol.runs = static_cast<int>(seeds.size());
    sol.distinct = run_all(V, seeds, opt, sol.converged_runs);
    auto it = std::find_if(sol.distinct.begin(), sol.distinct.end(),
                           [](const CriticalPoint& p) { return !p.flat && p.volume > 1e-9; });
    if (it == sol.distinct.end())
        throw NotFound("no non-flat critical point after " + std::to_string(sol.runs) + " starts", sol.distinct);
    sol.point = *it;
    V.branch = sol.point.branch;
    sol.z = assignment_from_logs(V, sol.point.L);
    return sol;
}

std::vector<CriticalPoint> competitor_scan(const PotentialFunction& V, int samples, std::uint64_t seed, int threads) {
    SolverOptions opt;
    opt.threads = threads;
    int conv = 0;
    return run_all(V, random_seeds(V.dim(), samples, seed), opt, conv);
}

nlohmann::json to_json(const CriticalPoint& p, const PotentialFunction& V) {
    nlohmann::json j;
    j["volume"] = p.volume;
    j["im_potential"] = p.im_v0;
    j["residual"] = p.residual;
    j["iterations"] = p.iterations;
    j["negatively_oriented"] = p.negative;
    j["flat"] = p.flat;
    j["branch"] = p.branch;
    auto& sh = j["shapes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < p.shapes.size(); ++i) {
        const auto& t = V.terms[i];
        sh.push_back({{"crossing", t.crossing},
                      {"corner", corner_name(static_cast<Corner>(t.corner))},
                      {"re", p.shapes[i].real()},
                      {"im", p.shapes[i].imag()}});
    }
    auto& ev = j["edges"] = nlohmann::json::array();
    for (int u = 0; u < V.dim(); ++u) {
        cplx z = std::exp(p.L[u]);
        ev.push_back({{"edge", V.unknowns[u]}, {"re", z.real()}, {"im", z.imag()}});
    }
    return j;
}

}  // namespace vc
