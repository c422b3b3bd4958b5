#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "vc/knot_diagram.hpp"

namespace vc {

using cplx = std::complex<double>;

struct SingularityError : std::runtime_error {
    int crossing, corner;
    SingularityError(int c, int k, const std::string& msg) : std::runtime_error(msg), crossing(c), corner(k) {}
};

struct PotentialTerm {
    int crossing = -1, corner = -1, face = -1;
    int phi = -1, psi = -1;
    int sign = 0;
};

// V(z) = sum sign (Li2((z_phi/z_psi)^sign) - pi^2/6) - 2 pi i sum eps log z
//        + 2 pi i sum branch log z
struct PotentialFunction {
    int num_edges = 0;
    std::vector<int> unknowns;       // G-edges off the boundary
    std::vector<int> unknown_index;  // G-edge -> unknown or -1
    std::vector<PotentialTerm> terms;
    std::vector<int> eps;             // per unknown
    std::vector<long long> branch;    // per unknown
    std::vector<std::array<Neighbor, 4>> nbr;  // per unknown
    int x = -1, y = -1;
    std::vector<ProseCase> crossing_case;
    std::vector<std::vector<int>> face_partition;

    int dim() const { return static_cast<int>(unknowns.size()); }
};

PotentialFunction build_potential(const ReducedGraph& g, const BasePoint& bp);

// values on every G-edge, 1 on the boundary ones
struct EdgeAssignment {
    std::vector<cplx> z;
};

EdgeAssignment assignment_from_logs(const PotentialFunction& V, const Eigen::VectorXcd& L);
Eigen::VectorXcd logs_from_assignment(const PotentialFunction& V, const EdgeAssignment& z);

// log-coordinate versions; L holds log z on the unknowns
cplx eval_potential(const PotentialFunction& V, const Eigen::VectorXcd& L);
Eigen::VectorXcd grad_potential_log(const PotentialFunction& V, const Eigen::VectorXcd& L);  // z dV/dz
Eigen::VectorXcd residual_log(const PotentialFunction& V, const Eigen::VectorXcd& L);
Eigen::MatrixXcd residual_jacobian(const PotentialFunction& V, const Eigen::VectorXcd& L);
std::vector<cplx> shapes(const PotentialFunction& V, const Eigen::VectorXcd& L);
double volume_of(const PotentialFunction& V, const Eigen::VectorXcd& L);

// z-coordinate front ends
cplx eval_potential(const PotentialFunction& V, const EdgeAssignment& z);
std::vector<cplx> grad_potential(const PotentialFunction& V, const EdgeAssignment& z);  // dV/dz on unknowns
std::vector<cplx> residual_system(const PotentialFunction& V, const EdgeAssignment& z);

// max over unknowns of |residual - z dV/dz| reduced mod 2 pi i
double gradient_residual_gap(const PotentialFunction& V, const Eigen::VectorXcd& L);

struct ProductRelation {
    std::string name;
    double deviation = 0;
};
// edge relations around E_nu and F_lambda, and the two annulus relations
std::vector<ProductRelation> product_relations(const PotentialFunction& V, const Eigen::VectorXcd& L);

nlohmann::json to_json(const PotentialFunction& V);

}  // namespace vc
