#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "vc/knot_diagram.hpp"
#include "vc/q_arith.hpp"

namespace vc {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateSumOptions {
    Precision precision = Precision::Standard;
    bool prune = true;
    double budget = 1e9;  // bound on N^(free labels)
};

struct StateSumResult {
    cplx value;
    long long leaves = 0;        // complete states visited
    long long contributing = 0;  // states with nonzero weight
    int free_labels = 0;
};

// Prefactors applied to the summation over simple states.
struct InvariantNormalization {
    int N = 0;
    int cw_maxima = 0, ccw_maxima = 0;  // excluding the cut
    int writhe = 0;
    cplx maxima_factor;  // (-q^{1/2})^{cw} (-q^{-1/2})^{ccw}
    cplx writhe_factor;  // q^{writhe/2}
    double scale = 0;    // N
    cplx total() const { return maxima_factor * writhe_factor * scale; }
};

InvariantNormalization normalization(const KnotDiagram& d, const BasePoint& bp, int N);

// labels indexed by role (alpha, beta, gamma, delta)
cplx bracket_weight(const KnotDiagram& d, int c, const std::array<int, 4>& labels, const RootContext& ctx);

// corner value [eps (l_a - l_b) + off] for corner k
int corner_value(const KnotDiagram& d, int c, int k, const std::array<int, 4>& labels, int N);

// Partial-state feasibility under the row/column sums and the vanishing on
// the two base faces.  tail_labels[k] < 0 marks an unassigned edge.
bool face_sums_feasible(const KnotDiagram& d, const Layout& L, int f0, int f1, const std::vector<int>& tail_labels, int N);

// Brute force over all states, cut at the first edge of the traversal.
StateSumResult full_invariant(const KnotDiagram& d, int N, const StateSumOptions& opt = {});

// Sum over simple states of the reduced graph.
StateSumResult reduced_invariant(const KnotDiagram& d, const BasePoint& bp, const ReducedGraph& g, int N,
                                 const StateSumOptions& opt = {});

// sum_{k<N} |(q)_k|^2
double figure_eight_oracle(int N);
double figure_eight_log_oracle(int N);

}  // namespace vc
