#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace vc {

using cplx = std::complex<double>;

enum class Precision { Standard, Extended };

Precision parse_precision(const std::string& s);

// [h] in {0..N-1}
inline int residue(long long h, int N) {
    long long r = h % N;
    return static_cast<int>(r < 0 ? r + N : r);
}

// Powers and q-factorials at q = exp(2 pi i / N), tabulated by residue.
template <class T>
class BasicRootContext {
public:
    using C = std::complex<T>;

    explicit BasicRootContext(int N) : N_(N) {
        if (N < 1) throw std::invalid_argument("N must be positive");
        const T two_pi = T(2) * std::numbers::pi_v<T>;
        pow_.resize(N);
        for (int k = 0; k < N; ++k) pow_[k] = std::polar(T(1), two_pi * T(k) / T(N));
        half_ = std::polar(T(1), std::numbers::pi_v<T> / T(N));
        fac_q_.assign(N, C(1));
        fac_qb_.assign(N, C(1));
        for (int h = 1; h < N; ++h) {
            fac_q_[h] = fac_q_[h - 1] * (C(1) - pow_[h]);
            fac_qb_[h] = fac_qb_[h - 1] * (C(1) - pow_[residue(-h, N)]);
        }
    }

    int N() const { return N_; }
    C q() const { return pow_[N_ > 1 ? 1 : 0]; }
    C q_half() const { return half_; }
    C qpow(long long k) const { return pow_[residue(k, N_)]; }
    // q^{k/2}
    C qhalf_pow(long long k) const {
        long long r = k % (2LL * N_);
        if (r < 0) r += 2LL * N_;
        C v = pow_[static_cast<int>(r / 2)];
        return (r % 2) ? v * half_ : v;
    }
    // (q^s)_{[h]} for s = +1 or -1
    C qfac(int s, long long h) const {
        int r = residue(h, N_);
        return s > 0 ? fac_q_[r] : fac_qb_[r];
    }

private:
    int N_;
    C half_;
    std::vector<C> pow_, fac_q_, fac_qb_;
};

using RootContext = BasicRootContext<double>;

// direct product (1-w)(1-w^2)...(1-w^h)
cplx q_factorial(cplx w, int h);

int theta(int i, int j, int k, int l, int N);

// k in [i,j] iff [i-k]+[k-j] = [i-j]
bool in_interval(int k, int i, int j, int N);

template <class T>
std::complex<T> r_matrix(const BasicRootContext<T>& c, int i, int j, int k, int l) {
    const int N = c.N();
    if (!theta(i, j, k, l, N)) return {};
    long long e = -1 - static_cast<long long>(k - j) * (i - l + 1);
    return T(N) * c.qpow(e) /
           (c.qfac(-1, i - j) * c.qfac(1, j - l) * c.qfac(-1, l - k - 1) * c.qfac(1, k - i));
}

template <class T>
std::complex<T> rbar_matrix(const BasicRootContext<T>& c, int i, int j, int k, int l) {
    const int N = c.N();
    if (!theta(i, j, k, l, N)) return {};
    long long e = 1 + static_cast<long long>(i - l) * (k - j + 1);
    return T(N) * c.qpow(e) /
           (c.qfac(1, i - j) * c.qfac(-1, j - l) * c.qfac(1, l - k - 1) * c.qfac(-1, k - i));
}

// s in (q)_h = s (-1)^h q^{h(h+1)/2} (qbar)_h, found by evaluation
int conversion_sign(const RootContext& c, int h);

struct IdentityReport {
    int N = 0;
    std::array<double, 8> max_dev{};
    long long tuples = 0;
    double max_deviation() const;
};

// the eight summation identities, each over every free-index tuple
IdentityReport summation_identities(const RootContext& c);

// Compensated complex accumulator.
template <class T>
struct KahanSum {
    std::complex<T> s{}, comp{};
    void add(std::complex<T> x) {
        std::complex<T> y = x - comp;
        std::complex<T> t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    std::complex<T> value() const { return s; }
};

}  // namespace vc
