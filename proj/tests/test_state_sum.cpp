#include <doctest.h>

#include <cmath>

#include "vc/state_sum.hpp"

using namespace vc;

namespace {

const char* kFig8 = "s1 -s2 s1 -s2";
const char* kFiveTwo = "s1 s1 s1 s2 -s1 s2";
const char* kSixOne = "s1 s1 s2 -s1 -s3 s2 -s3";

cplx reduced(const KnotDiagram& d, int N, const StateSumOptions& o = {}) {
    auto bp = choose_base_point(d);
    return reduced_invariant(d, bp, build_reduced_graph(d, bp), N, o).value;
}

}  // namespace

TEST_CASE("figure-eight oracle") {
    CHECK(figure_eight_oracle(1) == doctest::Approx(1.0));
    CHECK(figure_eight_oracle(2) == doctest::Approx(5.0));
    CHECK(figure_eight_oracle(3) == doctest::Approx(13.0));
    CHECK(figure_eight_oracle(4) == doctest::Approx(27.0));
    for (int N = 2; N <= 30; ++N)
        CHECK(figure_eight_log_oracle(N) == doctest::Approx(std::log(figure_eight_oracle(N))).epsilon(1e-12));
    double l100 = figure_eight_log_oracle(100), l101 = figure_eight_log_oracle(101);
    CHECK(std::isfinite(l100));
    CHECK(l101 > l100);
}

TEST_CASE("crossing weights") {
    auto d = parse_braid(kFig8);
    RootContext c2(2);
    int pos = d.crossings[0].sign > 0 ? 0 : 1;
    CHECK(std::abs(bracket_weight(d, pos, {0, 0, 0, 0}, c2) - cplx(-1)) < 1e-14);
    RootContext c3(3);
    // theta fails for (0,1,0,0)
    CHECK(std::abs(bracket_weight(d, pos, {0, 1, 0, 0}, c3)) == 0.0);
}

TEST_CASE("full sum on the figure-eight") {
    auto d = parse_braid(kFig8);
    CHECK(std::abs(full_invariant(d, 1).value - 1.0) < 1e-12);
    CHECK(std::abs(full_invariant(d, 2).value - 5.0) < 1e-9);
    CHECK(std::abs(full_invariant(d, 3).value - 13.0) < 1e-9);
    StateSumOptions raw;
    raw.prune = false;
    CHECK(std::abs(full_invariant(d, 3, raw).value - 13.0) < 1e-9);
}

TEST_CASE("reduced sum on the figure-eight") {
    auto d = parse_braid(kFig8);
    CHECK(std::abs(reduced(d, 1) - 1.0) < 1e-12);
    CHECK(std::abs(reduced(d, 2) - 5.0) < 1e-9);
    CHECK(std::abs(reduced(d, 3) - 13.0) < 1e-9);
    CHECK(std::abs(reduced(d, 4) - 27.0) < 1e-9);
    for (int N = 5; N <= 8; ++N) CHECK(std::abs(reduced(d, N) - figure_eight_oracle(N)) < 1e-8 * figure_eight_oracle(N));
    CHECK(std::abs(reduced(d, 15) / figure_eight_oracle(15) - 1.0) < 1e-6);
}

TEST_CASE("reduced sum equals the full sum") {
    for (auto w : {kFiveTwo, kSixOne}) {
        auto d = parse_braid(w);
        for (int N = 2; N <= 3; ++N) {
            cplx a = full_invariant(d, N).value, b = reduced(d, N);
            CAPTURE(w);
            CAPTURE(N);
            CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
        }
    }
}

TEST_CASE("frozen values") {
    auto d = parse_braid(kFiveTwo);
    CHECK(std::abs(reduced(d, 2) - cplx(-7)) < 1e-9);
    CHECK(std::abs(reduced(d, 3) - cplx(-14, -9 * std::sqrt(3.0))) < 1e-9);
    auto e = parse_braid(kSixOne);
    CHECK(std::abs(reduced(e, 2) - cplx(-9)) < 1e-9);
    CHECK(std::abs(reduced(e, 3) - cplx(-25, 6 * std::sqrt(3.0))) < 1e-9);
}

TEST_CASE("pruning does not change the sums") {
    auto d = parse_braid(kSixOne);
    StateSumOptions raw;
    raw.prune = false;
    for (int N = 2; N <= 4; ++N) CHECK(std::abs(reduced(d, N) - reduced(d, N, raw)) < 1e-9 * std::abs(reduced(d, N)));
}

TEST_CASE("extended precision agrees") {
    auto d = parse_braid(kFiveTwo);
    StateSumOptions ext;
    ext.precision = Precision::Extended;
    for (int N : {5, 9}) CHECK(std::abs(reduced(d, N) - reduced(d, N, ext)) < 1e-9 * std::abs(reduced(d, N, ext)));
    CHECK(std::abs(full_invariant(d, 3, ext).value - full_invariant(d, 3).value) < 1e-9);
}

TEST_CASE("PD input gives the same invariants") {
    // the mirror of the braid diagram: the full sum works, no base point does
    auto d = parse_pd("X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]");
    CHECK(std::abs(full_invariant(d, 2).value - 5.0) < 1e-9);
    CHECK(std::abs(full_invariant(d, 3).value - 13.0) < 1e-9);
    CHECK_THROWS_AS(choose_base_point(d), DiagramError);
    std::string text;
    for (const auto& t : to_pd(parse_braid(kFig8)))
        text += "X[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
                std::to_string(t[3]) + "] ";
    auto e = parse_pd(text);
    CHECK(std::abs(reduced(e, 2) - 5.0) < 1e-9);
    CHECK(std::abs(reduced(e, 3) - 13.0) < 1e-9);
    // a five-crossing diagram of the same knot as the braid word, possibly mirrored
    auto p = parse_pd("X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]");
    auto b = parse_braid(kFiveTwo);
    for (int N = 2; N <= 5; ++N) CHECK(std::abs(std::abs(reduced(p, N)) - std::abs(reduced(b, N))) < 1e-8);
}

TEST_CASE("budget") {
    auto d = parse_braid(kFig8);
    StateSumOptions tight;
    tight.budget = 10;
    CHECK_THROWS_AS(full_invariant(d, 9, tight), BudgetError);
}

TEST_CASE("partial-state feasibility") {
    auto d = parse_braid(kFig8);
    auto bp = choose_base_point(d);
    std::vector<int> none(d.edges.size(), -1);
    CHECK(face_sums_feasible(d, bp.layout, bp.f0, bp.f1, none, 3));
}

TEST_CASE("normalization") {
    auto d = parse_braid(kFiveTwo);
    auto bp = choose_base_point(d);
    auto n = normalization(d, bp, 5);
    CHECK(n.writhe == 4);
    CHECK(n.scale == 5.0);
    CHECK(std::abs(std::abs(n.total()) - 5.0) < 1e-12);
}
