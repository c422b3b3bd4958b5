#include "vc/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vc {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kZeta2 = kPi * kPi / 6;

// B_{2k} / (2k+1)! from zeta(2k)
struct BernoulliTable {
    static constexpr int K = 28;
    std::array<double, K + 1> c{};
    BernoulliTable() {
        const double tp = 2 * kPi;
        double pw = 1;
        for (int k = 1; k <= K; ++k) {
            pw *= tp * tp;
            // direct sum plus an Euler-Maclaurin tail
            const double s = 2.0 * k, n = 64;
            double zeta = 0;
            for (int j = 63; j >= 1; --j) zeta += std::pow(static_cast<double>(j), -s);
            zeta += std::pow(n, 1 - s) / (s - 1) + 0.5 * std::pow(n, -s) + s * std::pow(n, -s - 1) / 12 -
                    s * (s + 1) * (s + 2) * std::pow(n, -s - 3) / 720;
            if (k == 1) zeta = kZeta2;
            c[k] = (k % 2 ? 2.0 : -2.0) * zeta / ((2 * k + 1) * pw);
        }
    }
};

const BernoulliTable& bern() {
    static const BernoulliTable t;
    return t;
}

C maclaurin(C w) {
    C sum = 0, pw = w;
    for (int k = 1; k < 200; ++k) {
        C term = pw / static_cast<double>(k * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        pw *= w;
    }
    return sum;
}

C bernoulli_series(C w) {
    const C u = -std::log(1.0 - w);
    const C u2 = u * u;
    C sum = u - u2 / 4.0;
    C pw = u;
    const auto& t = bern();
    for (int k = 1; k <= BernoulliTable::K; ++k) {
        pw *= u2;
        C term = t.c[k] * pw;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

C li2(C w) {
    if (w == C(0)) return 0;
    if (w == C(1)) return kZeta2;
    if (std::abs(w) > 1) {
        C l = std::log(-w);
        return -li2(1.0 / w) - kZeta2 - 0.5 * l * l;
    }
    if (std::abs(w) <= 0.5) return maclaurin(w);
    if (w.real() > 0.5) return kZeta2 - std::log(w) * std::log(1.0 - w) - li2(1.0 - w);
    return bernoulli_series(w);
}

double bloch_wigner(C w) {
    if (w == C(0) || w == C(1)) return 0;
    return li2(w).imag() + std::log(std::abs(w)) * std::arg(1.0 - w);
}

C BranchedLog::value() const { return principal + C(0, 2 * kPi * static_cast<double>(k)); }

BranchedLog BranchedLog::of(C w, long long k) { return {std::log(w), k}; }

BranchedLog BranchedLog::nearest(C w, C near) {
    C p = std::log(w);
    long long k = std::llround((near.imag() - p.imag()) / (2 * kPi));
    return {p, k};
}

}  // namespace vc
