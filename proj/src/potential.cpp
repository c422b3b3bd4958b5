#include "vc/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vc/dilog.hpp"

namespace vc {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI(0, 2 * kPi);

cplx log_of(const PotentialFunction& V, const Eigen::VectorXcd& L, int gedge) {
    int u = V.unknown_index[gedge];
    return u < 0 ? cplx(0) : L[u];
}

// w^sign for term t, rejecting the poles of log(1 - w^sign)
cplx term_ratio(const PotentialFunction& V, const Eigen::VectorXcd& L, const PotentialTerm& t) {
    cplx lw = log_of(V, L, t.phi) - log_of(V, L, t.psi);
    cplx w = std::exp(static_cast<double>(t.sign) * lw);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(1.0 - w) < 1e-14 || std::abs(w) < 1e-300) {
        std::ostringstream os;
        os << "singular shape at crossing " << t.crossing << ", corner " << corner_name(static_cast<Corner>(t.corner))
           << " (edges " << t.phi << "/" << t.psi << ")";
        throw SingularityError(t.crossing, t.corner, os.str());
    }
    return w;
}

double wrap_2pi(double x) { return x - 2 * kPi * std::round(x / (2 * kPi)); }

}  // namespace

PotentialFunction build_potential(const ReducedGraph& g, const BasePoint& bp) {
    if (g.census.empty()) throw std::invalid_argument("empty corner census");
    PotentialFunction V;
    V.num_edges = static_cast<int>(g.edges.size());
    V.unknowns = g.unknowns;
    V.unknown_index = g.unknown_index;
    V.x = bp.x;
    V.y = bp.y;
    V.crossing_case = g.crossing_case;
    V.face_partition = g.face_partition;
    std::vector<int> housed(V.unknowns.size(), 0);
    for (const auto& c : g.census) {
        V.terms.push_back({c.crossing, c.corner, c.face, c.phi, c.psi, c.sign});
        for (int e : {c.phi, c.psi})
            if (g.unknown_index[e] >= 0) housed[g.unknown_index[e]] = 1;
    }
    for (std::size_t u = 0; u < V.unknowns.size(); ++u) {
        if (!housed[u])
            throw std::invalid_argument("edge variable " + std::to_string(V.unknowns[u]) + " appears in no corner");
        V.eps.push_back(g.edges[V.unknowns[u]].eps);
        V.nbr.push_back(g.edges[V.unknowns[u]].nbr);
    }
    V.branch.assign(V.unknowns.size(), 0);
    return V;
}

EdgeAssignment assignment_from_logs(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    EdgeAssignment a;
    a.z.assign(V.num_edges, cplx(1));
    for (int u = 0; u < V.dim(); ++u) a.z[V.unknowns[u]] = std::exp(L[u]);
    return a;
}

Eigen::VectorXcd logs_from_assignment(const PotentialFunction& V, const EdgeAssignment& z) {
    if (static_cast<int>(z.z.size()) != V.num_edges) throw std::invalid_argument("assignment size mismatch");
    Eigen::VectorXcd L(V.dim());
    for (int u = 0; u < V.dim(); ++u) {
        cplx w = z.z[V.unknowns[u]];
        if (w == cplx(0)) throw std::invalid_argument("zero edge variable " + std::to_string(V.unknowns[u]));
        L[u] = std::log(w);
    }
    return L;
}

cplx eval_potential(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    cplx v = 0;
    const double z2 = kPi * kPi / 6;
    for (const auto& t : V.terms) v += static_cast<double>(t.sign) * (li2(term_ratio(V, L, t)) - z2);
    for (int u = 0; u < V.dim(); ++u)
        v += kTwoPiI * static_cast<double>(V.branch[u] - V.eps[u]) * L[u];
    return v;
}

Eigen::VectorXcd grad_potential_log(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(V.dim());
    for (const auto& t : V.terms) {
        cplx d = -std::log(1.0 - term_ratio(V, L, t));
        int a = V.unknown_index[t.phi], b = V.unknown_index[t.psi];
        if (a >= 0) g[a] += d;
        if (b >= 0) g[b] -= d;
    }
    for (int u = 0; u < V.dim(); ++u) g[u] += kTwoPiI * static_cast<double>(V.branch[u] - V.eps[u]);
    return g;
}

Eigen::VectorXcd residual_log(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(V.dim());
    for (int u = 0; u < V.dim(); ++u) {
        cplx lp = L[u];
        for (const auto& nb : V.nbr[u]) {
            if (nb.edge < 0) continue;
            cplx ln = log_of(V, L, nb.edge);
            cplx w = std::exp(nb.phi_over ? ln - lp : lp - ln);
            if (std::abs(1.0 - w) < 1e-14)
                throw SingularityError(nb.crossing, nb.corner,
                                       "singular shape at crossing " + std::to_string(nb.crossing) + ", corner " +
                                           corner_name(static_cast<Corner>(nb.corner)));
            r[u] += static_cast<double>(nb.exponent) * std::log(1.0 - w);
        }
    }
    return r;
}

Eigen::MatrixXcd residual_jacobian(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    const int n = V.dim();
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        for (const auto& nb : V.nbr[u]) {
            if (nb.edge < 0) continue;
            int v = V.unknown_index[nb.edge];
            cplx ln = log_of(V, L, nb.edge);
            cplx w = std::exp(nb.phi_over ? ln - L[u] : L[u] - ln);
            cplx d = -static_cast<double>(nb.exponent) * w / (1.0 - w);
            // d log w / d L_u = -1 if phi is over, +1 otherwise
            double su = nb.phi_over ? -1.0 : 1.0;
            J(u, u) += d * su;
            if (v >= 0) J(u, v) -= d * su;
        }
    }
    return J;
}

std::vector<cplx> shapes(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    std::vector<cplx> s;
    s.reserve(V.terms.size());
    for (const auto& t : V.terms) s.push_back(std::exp(log_of(V, L, t.phi) - log_of(V, L, t.psi)));
    return s;
}

double volume_of(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    double v = 0;
    for (cplx w : shapes(V, L)) v += bloch_wigner(w);
    return v;
}

cplx eval_potential(const PotentialFunction& V, const EdgeAssignment& z) {
    return eval_potential(V, logs_from_assignment(V, z));
}

std::vector<cplx> grad_potential(const PotentialFunction& V, const EdgeAssignment& z) {
    Eigen::VectorXcd g = grad_potential_log(V, logs_from_assignment(V, z));
    std::vector<cplx> out(V.dim());
    for (int u = 0; u < V.dim(); ++u) out[u] = g[u] / z.z[V.unknowns[u]];
    return out;
}

std::vector<cplx> residual_system(const PotentialFunction& V, const EdgeAssignment& z) {
    Eigen::VectorXcd r = residual_log(V, logs_from_assignment(V, z));
    return {r.data(), r.data() + r.size()};
}

double gradient_residual_gap(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    Eigen::VectorXcd r = residual_log(V, L), g = grad_potential_log(V, L);
    double worst = 0;
    for (int u = 0; u < V.dim(); ++u) {
        cplx d = r[u] - g[u];
        worst = std::max(worst, std::abs(cplx(d.real(), wrap_2pi(d.imag()))));
    }
    return worst;
}

std::vector<ProductRelation> product_relations(const PotentialFunction& V, const Eigen::VectorXcd& L) {
    auto s = shapes(V, L);
    std::vector<ProductRelation> out;
    const int nc = static_cast<int>(V.crossing_case.size());
    auto product_at = [&](int c) {
        cplx p = 1;
        for (std::size_t i = 0; i < V.terms.size(); ++i)
            if (V.terms[i].crossing == c) p *= s[i];
        return p;
    };
    for (int c = 0; c < nc; ++c) {
        ProseCase k = V.crossing_case[c];
        if (k != ProseCase::Boundary && k != ProseCase::Interior) continue;
        out.push_back({"E" + std::to_string(c), std::abs(product_at(c) - 1.0)});
    }
    const int groups = static_cast<int>(V.face_partition.size());
    for (int g = 0; g < groups; ++g) {
        cplx p = 1;
        for (std::size_t i = 0; i < V.terms.size(); ++i)
            for (int f : V.face_partition[g])
                if (V.terms[i].face == f) p *= s[i];
        cplx target = 1;
        if (g == 0) target = product_at(V.x);
        else if (g == groups - 1) target = product_at(V.y);
        out.push_back({"F" + std::to_string(g), std::abs(p - target)});
    }
    return out;
}

nlohmann::json to_json(const PotentialFunction& V) {
    nlohmann::json j;
    j["schema"] = "vc.potential/1";
    j["unknowns"] = V.unknowns;
    j["eps"] = V.eps;
    j["branch"] = V.branch;
    auto& terms = j["terms"] = nlohmann::json::array();
    for (const auto& t : V.terms)
        terms.push_back({{"crossing", t.crossing},
                         {"corner", corner_name(static_cast<Corner>(t.corner))},
                         {"face", t.face},
                         {"phi", t.phi},
                         {"psi", t.psi},
                         {"sign", t.sign}});
    return j;
}

}  // namespace vc
