#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vc/potential.hpp"

namespace vc {

struct SolverOptions {
    double tol = 1e-12;
    int max_iter = 100;
    int restarts = 64;
    std::uint64_t seed = 0x5eed;
    int threads = 1;
};

struct NewtonRun {
    bool converged = false;
    Eigen::VectorXcd L;
    int iterations = 0;
    double residual = 0;
    std::string failure;
};

// Newton on exp(residual) - 1 = 0 with step halving
NewtonRun newton_from(const PotentialFunction& V, const Eigen::VectorXcd& L0, const SolverOptions& opt);

struct CriticalPoint {
    Eigen::VectorXcd L;
    std::vector<cplx> shapes;
    double volume = 0;     // sum of D over the shapes
    double im_v0 = 0;      // Im V after fixing branches
    std::vector<long long> branch;
    double residual = 0;
    int iterations = 0;
    int negative = 0;      // shapes with Im < 0
    bool flat = false;
};

struct GeometricSolution {
    EdgeAssignment z;
    CriticalPoint point;
    int runs = 0, converged_runs = 0;
    std::vector<CriticalPoint> distinct;  // sorted by volume, largest first
};

struct NotFound : std::runtime_error {
    std::vector<CriticalPoint> candidates;
    NotFound(const std::string& msg, std::vector<CriticalPoint> c) : std::runtime_error(msg), candidates(std::move(c)) {}
};

// least-squares seed putting every shape near exp(i pi / 3)
Eigen::VectorXcd regular_seed(const PotentialFunction& V);

// fills shapes, volume, branch offsets and Im V
CriticalPoint classify(const PotentialFunction& V, const NewtonRun& run);

// Restarted Newton; the answer is the non-flat critical point of largest volume.
// Sets V.branch to the offsets of that point.
GeometricSolution newton_solve(PotentialFunction& V, const SolverOptions& opt = {});

// distinct critical points reached from `samples` random starts
std::vector<CriticalPoint> competitor_scan(const PotentialFunction& V, int samples, std::uint64_t seed, int threads = 1);

nlohmann::json to_json(const CriticalPoint& p, const PotentialFunction& V);

}  // namespace vc
