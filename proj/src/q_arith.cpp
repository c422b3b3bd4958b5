#include "vc/q_arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace vc {

Precision parse_precision(const std::string& s) {
    if (s == "std") return Precision::Standard;
    if (s == "dd" || s == "ext") return Precision::Extended;
    throw std::invalid_argument("unknown precision '" + s + "'");
}

cplx q_factorial(cplx w, int h) {
    cplx p = 1.0, wt = 1.0;
    for (int t = 1; t <= h; ++t) {
        wt *= w;
        p *= 1.0 - wt;
    }
    return p;
}

int theta(int i, int j, int k, int l, int N) {
    int s = residue(i - j, N) + residue(j - l, N) + residue(l - k - 1, N) + residue(k - i, N);
    return s == N - 1 ? 1 : 0;
}

bool in_interval(int k, int i, int j, int N) {
    return residue(i - k, N) + residue(k - j, N) == residue(i - j, N);
}

int conversion_sign(const RootContext& c, int h) {
    long long e = static_cast<long long>(h) * (h + 1) / 2;
    cplx rhs = (h % 2 ? -1.0 : 1.0) * c.qpow(e) * c.qfac(-1, h);
    cplx lhs = c.qfac(1, h);
    return std::abs(lhs - rhs) <= std::abs(lhs + rhs) ? 1 : -1;
}

double IdentityReport::max_deviation() const {
    return *std::max_element(max_dev.begin(), max_dev.end());
}

IdentityReport summation_identities(const RootContext& c) {
    const int N = c.N();
    auto R = [&](int i, int j, int k, int l) { return r_matrix(c, i, j, k, l); };
    auto Rb = [&](int i, int j, int k, int l) { return rbar_matrix(c, i, j, k, l); };
    auto r = [&](long long h) { return residue(h, N); };
    auto fq = [&](long long h) { return c.qfac(1, h); };
    auto fqb = [&](long long h) { return c.qfac(-1, h); };
    const double dN = N;

    IdentityReport rep;
    rep.N = N;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    std::array<cplx, 8> lhs{}, rhs{};
                    for (int t = 0; t < N; ++t) {
                        lhs[0] += c.qpow(-t) * Rb(t, j, k, l);
                        lhs[1] += c.qpow(-t) * R(i, t, k, l);
                        lhs[2] += c.qpow(t) * Rb(i, j, t, l);
                        lhs[3] += c.qpow(t) * R(i, j, k, t);
                        lhs[4] += c.qpow(-t) * R(t, j, k, l);
                        lhs[5] += c.qpow(-t) * Rb(i, t, k, l);
                        lhs[6] += c.qpow(t) * R(i, j, t, l);
                        lhs[7] += c.qpow(t) * Rb(i, j, k, t);
                    }
                    rhs[0] = (j == k) ? c.qpow(1 - l) : 0.0;
                    rhs[1] = (i == l) ? c.qpow(-1 - k) : 0.0;
                    rhs[2] = (r(i + 1) == l) ? c.qpow(j) : 0.0;
                    rhs[3] = (j == r(k + 1)) ? c.qpow(i) : 0.0;
                    if (r(j - l) + r(l - k - 1) == r(j - k - 1))
                        rhs[4] = dN * c.qpow(-1 - k) / (fqb(j - l) * fq(l - k - 1));
                    if (r(l - k - 1) + r(k - i) == r(l - i - 1))
                        rhs[5] = dN * c.qpow(1 - l) / (fqb(l - k - 1) * fq(k - i));
                    if (r(i - j) + r(j - l) == r(i - l))
                        rhs[6] = dN * c.qpow(-1 + i) / (fq(i - j) * fqb(j - l));
                    if (r(i - j) + r(k - i) == r(k - j))
                        rhs[7] = dN * c.qpow(1 + j) / (fqb(i - j) * fq(k - i));
                    for (int s = 0; s < 8; ++s)
                        rep.max_dev[s] = std::max(rep.max_dev[s], std::abs(lhs[s] - rhs[s]));
                    ++rep.tuples;
                }
    return rep;
}

}  // namespace vc
