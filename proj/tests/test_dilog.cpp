#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vc/dilog.hpp"

using namespace vc;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// plain Maclaurin series, slow but independent of the region logic
C series(C w) {
    C s = 0, p = w;
    for (int k = 1; k < 4000; ++k) {
        s += p / double(k) / double(k);
        p *= w;
    }
    return s;
}

}  // namespace

TEST_CASE("special values") {
    CHECK(std::abs(li2(0.0)) == 0.0);
    CHECK(std::abs(li2(1.0) - kPi * kPi / 6) < 1e-15);
    CHECK(std::abs(li2(-1.0) + kPi * kPi / 12) < 1e-15);
    CHECK(std::abs(li2(0.5) - (kPi * kPi / 12 - 0.5 * std::log(2.0) * std::log(2.0))) < 1e-15);
}

TEST_CASE("agrees with the raw series inside the disc") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(0.0, 0.97), a(-kPi, kPi);
    for (int t = 0; t < 300; ++t) {
        C w = std::polar(r(rng), a(rng));
        CHECK(std::abs(li2(w) - series(w)) < 1e-13);
    }
}

TEST_CASE("inversion and reflection") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 300; ++t) {
        C w(u(rng), u(rng));
        if (std::abs(w.imag()) < 1e-3) continue;
        C l = std::log(-w);
        CHECK(std::abs(li2(w) + li2(1.0 / w) + kPi * kPi / 6 + 0.5 * l * l) < 1e-12);
        CHECK(std::abs(li2(w) + li2(1.0 - w) - kPi * kPi / 6 + std::log(w) * std::log(1.0 - w)) < 1e-12);
    }
}

TEST_CASE("derivative") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    const double h = 1e-6;
    for (int t = 0; t < 100; ++t) {
        C w(u(rng), u(rng));
        if (std::abs(w.imag()) < 1e-2 || std::abs(w) < 1e-2) continue;
        C fd = (li2(w + h) - li2(w - h)) / (2 * h);
        CHECK(std::abs(fd + std::log(1.0 - w) / w) < 1e-7);
    }
}

TEST_CASE("Bloch-Wigner values") {
    CHECK(std::abs(bloch_wigner(C(0, 1)) - 0.9159655941772190) < 1e-12);
    CHECK(std::abs(bloch_wigner(std::polar(1.0, kPi / 3)) - 1.0149416064096537) < 1e-12);
    CHECK(bloch_wigner(0.0) == 0.0);
    CHECK(bloch_wigner(1.0) == 0.0);
    for (double x : {0.1, 0.37, 0.5, 0.93}) CHECK(std::abs(bloch_wigner(x)) < 1e-15);
    // the maximum is at the regular tetrahedron
    CHECK(bloch_wigner(C(0.5, 0.8)) < bloch_wigner(std::polar(1.0, kPi / 3)));
}

TEST_CASE("Bloch-Wigner symmetries") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int t = 0; t < 1000; ++t) {
        C w(u(rng), u(rng));
        if (std::abs(w) < 1e-6 || std::abs(1.0 - w) < 1e-6) continue;
        double d = bloch_wigner(w);
        CHECK(std::abs(bloch_wigner(std::conj(w)) + d) < 1e-11);
        CHECK(std::abs(bloch_wigner(1.0 / w) + d) < 1e-11);
        CHECK(std::abs(bloch_wigner(1.0 - w) + d) < 1e-11);
        CHECK(std::abs(bloch_wigner(1.0 / (1.0 - w)) - d) < 1e-11);
    }
}

TEST_CASE("five-term relation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 100; ++t) {
        C x(u(rng), u(rng)), y(u(rng), u(rng));
        double s = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / (1.0 - x * y)) +
                   bloch_wigner(1.0 - x * y) + bloch_wigner((1.0 - y) / (1.0 - x * y));
        CHECK(std::abs(s) < 1e-10);
    }
}

TEST_CASE("branched logs") {
    auto b = BranchedLog::of(C(-1, 1e-300), 1);
    CHECK(std::abs(b.value() - C(0, 3 * kPi)) < 1e-12);
    auto n = BranchedLog::nearest(C(1, 0), C(0, 6.2));
    CHECK(n.k == 1);
    CHECK(std::abs(n.value() - C(0, 2 * kPi)) < 1e-15);
}
