#include "vc/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "vc/parallel.hpp"

namespace vc {

SeriesMethod parse_method(const std::string& s) {
    if (s == "oracle") return SeriesMethod::Oracle;
    if (s == "reduced") return SeriesMethod::Reduced;
    if (s == "full") return SeriesMethod::Full;
    throw std::invalid_argument("unknown method '" + s + "'");
}

const char* method_name(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::Oracle: return "oracle";
        case SeriesMethod::Reduced: return "reduced";
        case SeriesMethod::Full: return "full";
    }
    return "?";
}

GrowthModel parse_model(const std::string& s) {
    if (s == "linear") return GrowthModel::Linear;
    if (s == "log-corrected" || s == "log") return GrowthModel::LogCorrected;
    throw std::invalid_argument("unknown model '" + s + "'");
}

const char* model_name(GrowthModel m) { return m == GrowthModel::Linear ? "linear" : "log-corrected"; }

Series invariant_series(const KnotDiagram& d, int n_min, int n_max, SeriesMethod method, const StateSumOptions& opt, int threads) {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("need 2 <= n_min <= n_max");
    Series s;
    if (method == SeriesMethod::Oracle) {
        // only meaningful when the diagram is the figure-eight
        BasePoint bp = choose_base_point(d);
        ReducedGraph g = build_reduced_graph(d, bp);
        for (int N = 2; N <= 4; ++N) {
            cplx v = reduced_invariant(d, bp, g, N, opt).value;
            if (std::abs(v - figure_eight_oracle(N)) > 1e-8 * figure_eight_oracle(N))
                throw std::invalid_argument("oracle method needs the figure-eight knot");
        }
        for (int N = n_min; N <= n_max; ++N) {
            Sample x;
            x.N = N;
            x.log_abs = figure_eight_log_oracle(N);
            if (x.log_abs < 600) x.value = std::exp(x.log_abs);
            s.samples.push_back(x);
        }
        return s;
    }
    BasePoint bp;
    ReducedGraph g;
    if (method == SeriesMethod::Reduced) {
        bp = choose_base_point(d);
        g = build_reduced_graph(d, bp);
    }
    const int count = n_max - n_min + 1;
    std::vector<StateSumResult> res(count);
    std::vector<std::string> err(count);
    parallel_for(count, threads, [&](int i) {
        const int N = n_min + i;
        try {
            res[i] = method == SeriesMethod::Reduced ? reduced_invariant(d, bp, g, N, opt) : full_invariant(d, N, opt);
        } catch (const BudgetError& e) {
            err[i] = e.what();
        }
    });
    for (int i = 0; i < count; ++i) {
        const int N = n_min + i;
        if (!err[i].empty()) {
            s.truncated = true;
            s.note = "stopped before N=" + std::to_string(N) + ": " + err[i];
            break;
        }
        s.samples.push_back({N, res[i].value, std::log(std::abs(res[i].value))});
    }
    return s;
}

GrowthFit fit_growth(const std::vector<Sample>& samples, GrowthModel model, int window_start) {
    std::vector<const Sample*> use;
    int lo = window_start;
    if (lo < 0 && !samples.empty()) {
        int first = samples.front().N, last = samples.back().N;
        lo = first + (last - first + 1) / 2;
    }
    for (const auto& s : samples)
        if (s.N >= lo && std::isfinite(s.log_abs)) use.push_back(&s);
    if (use.size() < 4) throw std::invalid_argument("growth fit needs at least 4 samples in the window");
    const int cols = model == GrowthModel::Linear ? 2 : 3;
    const int rows = static_cast<int>(use.size());
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (int i = 0; i < rows; ++i) {
        double N = use[i]->N;
        X(i, 0) = N;
        X(i, cols - 1) = 1;
        if (cols == 3) X(i, 1) = std::log(N);
        y[i] = use[i]->log_abs;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < cols) throw std::invalid_argument("growth fit is rank deficient");
    Eigen::VectorXd beta = qr.solve(y);
    Eigen::VectorXd res = y - X * beta;

    GrowthFit f;
    f.model = model;
    f.n_lo = use.front()->N;
    f.n_hi = use.back()->N;
    f.used = rows;
    f.slope = beta[0];
    f.log_coef = cols == 3 ? beta[1] : 0;
    f.intercept = beta[cols - 1];
    f.volume = 2 * std::numbers::pi * f.slope;
    f.rms = std::sqrt(res.squaredNorm() / rows);
    if (rows > cols) {
        double sigma2 = res.squaredNorm() / (rows - cols);
        Eigen::MatrixXd cov = (X.transpose() * X).inverse() * sigma2;
        f.half_width = 2 * 2 * std::numbers::pi * std::sqrt(std::max(0.0, cov(0, 0)));
    }
    return f;
}

}  // namespace vc

