#pragma once

#include <complex>

namespace vc {

// Principal branch, cut along [1, inf).
std::complex<double> li2(std::complex<double> w);

// Im Li2(w) + log|w| arg(1 - w); 0 at w = 0 and w = 1.
double bloch_wigner(std::complex<double> w);

// log with an explicit 2 pi i offset
struct BranchedLog {
    std::complex<double> principal;
    long long k = 0;
    std::complex<double> value() const;
    static BranchedLog of(std::complex<double> w, long long k = 0);
    // the branch of log w closest to `near`
    static BranchedLog nearest(std::complex<double> w, std::complex<double> near);
};

}  // namespace vc
