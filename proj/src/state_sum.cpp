#include "vc/state_sum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vc {

namespace {

int cut_index(const Layout& L, int cut) {
    const auto& ev = L.events[cut];
    for (size_t i = 0; i < ev.size(); ++i)
        if (ev[i] == Extremum::CwMax) return static_cast<int>(i);
    throw std::logic_error("cut edge carries no clockwise maximum");
}

int shift_of(Extremum e) { return e == Extremum::CwMax ? -1 : e == Extremum::CcwMax ? 1 : 0; }

template <class T>
std::complex<T> maxima_weight(const Layout& L, int cut, const BasicRootContext<T>& ctx, bool skip_whole_cut) {
    std::complex<T> w(1);
    const int ci = cut_index(L, cut);
    for (size_t k = 0; k < L.events.size(); ++k)
        for (size_t i = 0; i < L.events[k].size(); ++i) {
            if (static_cast<int>(k) == cut && (skip_whole_cut || static_cast<int>(i) == ci)) continue;
            auto e = L.events[k][i];
            if (e == Extremum::CwMax) w *= -ctx.q_half();
            if (e == Extremum::CcwMax) w *= -std::conj(ctx.q_half());
        }
    return w;
}

template <class T>
std::complex<T> weight_t(const KnotDiagram& d, int c, const std::array<int, 4>& l, const BasicRootContext<T>& ctx) {
    if (d.crossings[c].sign > 0) return r_matrix(ctx, l[AL], l[BE], l[GA], l[DE]);
    return rbar_matrix(ctx, l[BE], l[AL], l[DE], l[GA]);
}

void check_budget(int N, int free, double budget) {
    double cost = std::pow(static_cast<double>(N), free);
    if (cost > budget)
        throw BudgetError("state sum needs " + std::to_string(N) + "^" + std::to_string(free) +
                          " label assignments, above the budget of " + std::to_string(budget));
}

template <class T>
StateSumResult full_impl(const KnotDiagram& d, int N, const StateSumOptions& opt) {
    BasicRootContext<T> ctx(N);
    const int n = d.n();
    const int E = static_cast<int>(d.edges.size());
    const int cut = d.order[0];
    const int f0 = d.edge_faces[cut][0], f1 = d.edge_faces[cut][1];
    const Layout L = make_layout(d, cut, {}, f0);
    const int ci = cut_index(L, cut);
    int before = 0, after = 0;
    for (int i = 0; i < static_cast<int>(L.events[cut].size()); ++i)
        (i < ci ? before : after) += i == ci ? 0 : shift_of(L.events[cut][i]);

    std::vector<int> free(d.order.begin() + 1, d.order.end());
    const int nf = static_cast<int>(free.size());
    check_budget(N, nf, opt.budget);
    std::vector<int> step_of(E, -1);
    for (int s = 0; s < nf; ++s) step_of[free[s]] = s;

    std::vector<std::vector<int>> closes(nf + 1);  // crossings complete after step s
    std::vector<int> cross_step(n);
    for (int c = 0; c < n; ++c) {
        int s = -1;
        for (int k : d.crossings[c].edge) s = std::max(s, step_of[k]);
        cross_step[c] = s;
        closes[s + 1].push_back(c);
    }
    const int F = static_cast<int>(d.faces.size());
    std::vector<std::vector<int>> face_closes(nf + 1);
    for (int f = 0; f < F; ++f) {
        int s = -1;
        for (int c : d.r_sets[f]) s = std::max(s, cross_step[c]);
        face_closes[s + 1].push_back(f);
    }
    std::vector<int> tail(E, 0), head(E, 0);
    tail[cut] = residue(-before, N);
    head[cut] = residue(after, N);
    std::vector<int> fsum(F, 0);
    auto target = [&](int f) { return (f == f0 || f == f1) ? 0 : N - 1; };

    StateSumResult res;
    res.free_labels = nf;
    KahanSum<T> acc;
    std::vector<std::pair<int, int>> undo;

    auto labels = [&](int c) {
        std::array<int, 4> l{};
        for (int r = 0; r < 4; ++r) {
            int k = d.edge_at(c, r);
            l[r] = role_at_head(r) ? head[k] : tail[k];
        }
        return l;
    };
    // returns false when pruned; pushes face updates onto undo
    auto close = [&](int level, std::complex<T>& w, size_t& mark) -> bool {
        mark = undo.size();
        for (int c : closes[level]) {
            auto l = labels(c);
            w *= weight_t(d, c, l, ctx);
            if (w == std::complex<T>(0)) return false;
            if (!opt.prune) continue;
            for (int k = 0; k < 4; ++k) {
                int f = d.crossings[c].face[k];
                int v = corner_value(d, c, k, l, N);
                fsum[f] += v;
                undo.push_back({f, v});
                if (fsum[f] > target(f)) return false;
            }
        }
        if (opt.prune)
            for (int f : face_closes[level])
                if (fsum[f] != target(f)) return false;
        return true;
    };
    auto rollback = [&](size_t mark) {
        while (undo.size() > mark) {
            fsum[undo.back().first] -= undo.back().second;
            undo.pop_back();
        }
    };
    std::function<void(int, std::complex<T>)> dfs = [&](int s, std::complex<T> w) {
        if (s == nf) {
            ++res.leaves;
            if (w != std::complex<T>(0)) ++res.contributing;
            acc.add(w);
            return;
        }
        const int k = free[s];
        for (int v = 0; v < N; ++v) {
            tail[k] = v;
            head[k] = residue(v + L.shift[k], N);
            std::complex<T> w2 = w;
            size_t mark;
            if (close(s + 1, w2, mark)) dfs(s + 1, w2);
            rollback(mark);
        }
    };
    std::complex<T> w0(1);
    size_t mark;
    if (close(0, w0, mark)) dfs(0, w0);
    rollback(mark);
    int writhe = 0;
    for (const auto& c : d.crossings) writhe += c.sign;
    std::complex<T> v = acc.value() * maxima_weight(L, cut, ctx, false) * ctx.qhalf_pow(writhe);
    res.value = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    return res;
}

// union-find with integer offsets: value(a) = value(root) + off(a)
struct OffsetUF {
    std::vector<int> p;
    std::vector<long long> off;
    explicit OffsetUF(int n) : p(n), off(n, 0) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    std::pair<int, long long> find(int a) {
        if (p[a] == a) return {a, 0};
        auto [r, o] = find(p[a]);
        p[a] = r;
        off[a] += o;
        return {r, off[a]};
    }
    // impose value(a) = value(b) + c; returns the cycle discrepancy
    long long unite(int a, int b, long long c) {
        auto [ra, oa] = find(a);
        auto [rb, ob] = find(b);
        if (ra == rb) return oa - ob - c;
        p[ra] = rb;
        off[ra] = ob + c - oa;
        return 0;
    }
};

template <class T>
StateSumResult reduced_impl(const KnotDiagram& d, const BasePoint& bp, const ReducedGraph& g, int N,
                            const StateSumOptions& opt) {
    (void)g;
    BasicRootContext<T> ctx(N);
    const int n = d.n();
    const int E = static_cast<int>(d.edges.size());
    const Layout& L = bp.layout;
    const int ZERO = 2 * E;
    OffsetUF uf(2 * E + 1);
    std::vector<long long> cycles;
    auto node = [&](int c, int role) {
        int k = d.edge_at(c, role);
        return role_at_head(role) ? 2 * k + 1 : 2 * k;
    };
    auto add = [&](long long cyc) {
        if (cyc) cycles.push_back(cyc);
    };
    for (int k = 0; k < E; ++k) {
        if (bp.is_removed(k)) {
            add(uf.unite(2 * k, ZERO, 0));
            add(uf.unite(2 * k + 1, ZERO, 0));
        } else {
            add(uf.unite(2 * k + 1, 2 * k, L.shift[k]));
        }
    }
    for (int c : bp.A) add(uf.unite(node(c, AL), node(c, DE), 0));
    for (int c : bp.B) add(uf.unite(node(c, BE), node(c, GA), d.crossings[c].sign));
    if (opt.prune) {
        for (int c = 0; c < n; ++c) {
            if (bp.in_bridge(c)) continue;
            const auto& x = d.crossings[c];
            for (int k = 0; k < 4; ++k) {
                if (c == bp.x && k != Top && k != Right) continue;
                if (c == bp.y && k != Bottom && k != Right) continue;
                if (x.face[k] != bp.f0 && x.face[k] != bp.f1) continue;
                auto [ra, rb] = kCornerRoles[k];
                add(uf.unite(node(c, ra), node(c, rb), -static_cast<long long>(x.sign) * kCornerOffset[k]));
            }
        }
    }
    for (long long cyc : cycles)
        if (cyc % N != 0) {
            StateSumResult r;
            r.value = 0;
            return r;
        }
    // classes in the order crossings are met
    const int zr = uf.find(ZERO).first;
    std::map<int, int> cls;
    std::vector<int> cross_level(n, 0);
    for (int c = 0; c < n; ++c) {
        int lev = 0;
        for (int r = 0; r < 4; ++r) {
            int root = uf.find(node(c, r)).first;
            if (root == zr) continue;
            auto it = cls.find(root);
            if (it == cls.end()) it = cls.emplace(root, static_cast<int>(cls.size())).first;
            lev = std::max(lev, it->second + 1);
        }
        cross_level[c] = lev;
    }
    const int nc = static_cast<int>(cls.size());
    check_budget(N, nc, opt.budget);
    std::vector<std::vector<int>> closes(nc + 1);
    for (int c = 0; c < n; ++c) closes[cross_level[c]].push_back(c);
    std::vector<int> value(nc, 0);
    auto label = [&](int nd) {
        auto [root, o] = uf.find(nd);
        long long base = root == zr ? 0 : value[cls.at(root)];
        return residue(base + o, N);
    };
    const std::complex<T> NT(static_cast<T>(N));
    auto crossing_factor = [&](int c) -> std::complex<T> {
        std::array<int, 4> l{};
        for (int r = 0; r < 4; ++r) l[r] = label(node(c, r));
        const int e = d.crossings[c].sign;
        const int al = l[AL], be = l[BE], ga = l[GA], de = l[DE];
        if (std::find(bp.A.begin(), bp.A.end(), c) != bp.A.end()) return al == de ? ctx.qpow(-e) : std::complex<T>(0);
        if (std::find(bp.B.begin(), bp.B.end(), c) != bp.B.end())
            return be == residue(ga + e, N) ? std::complex<T>(1) : std::complex<T>(0);
        if (c == bp.x) {
            int u = residue(e * (be - de), N), v = residue(e * (de - ga) - 1, N);
            if (u + v != residue(e * (be - ga) - 1, N)) return 0;
            return ctx.qpow(-e - ga) / (ctx.qfac(e, v) * ctx.qfac(-e, u));
        }
        if (c == bp.y) {
            int u = residue(e * (al - be), N), v = residue(e * (be - de), N);
            if (u + v != residue(e * (al - de), N)) return 0;
            return ctx.qpow(-e + al) / (ctx.qfac(e, u) * ctx.qfac(-e, v));
        }
        return weight_t(d, c, l, ctx);
    };
    StateSumResult res;
    res.free_labels = nc;
    KahanSum<T> acc;
    std::function<void(int, std::complex<T>)> dfs = [&](int s, std::complex<T> w) {
        for (int c : closes[s]) {
            w *= crossing_factor(c);
            if (w == std::complex<T>(0)) return;
        }
        if (s == nc) {
            ++res.leaves;
            ++res.contributing;
            acc.add(w);
            return;
        }
        for (int v = 0; v < N; ++v) {
            value[s] = v;
            dfs(s + 1, w);
        }
    };
    dfs(0, std::complex<T>(1));
    int writhe = 0;
    for (const auto& c : d.crossings) writhe += c.sign;
    std::complex<T> v = acc.value() * NT * maxima_weight(L, bp.edge, ctx, true) * ctx.qhalf_pow(writhe);
    res.value = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    return res;
}

}  // namespace

InvariantNormalization normalization(const KnotDiagram& d, const BasePoint& bp, int N) {
    RootContext ctx(N);
    InvariantNormalization z;
    z.N = N;
    for (size_t k = 0; k < bp.layout.events.size(); ++k) {
        if (static_cast<int>(k) == bp.edge) continue;
        for (auto e : bp.layout.events[k]) {
            z.cw_maxima += e == Extremum::CwMax;
            z.ccw_maxima += e == Extremum::CcwMax;
        }
    }
    for (const auto& c : d.crossings) z.writhe += c.sign;
    z.maxima_factor = std::pow(-ctx.q_half(), z.cw_maxima) * std::pow(-std::conj(ctx.q_half()), z.ccw_maxima);
    z.writhe_factor = ctx.qhalf_pow(z.writhe);
    z.scale = N;
    return z;
}

cplx bracket_weight(const KnotDiagram& d, int c, const std::array<int, 4>& labels, const RootContext& ctx) {
    return weight_t(d, c, labels, ctx);
}

int corner_value(const KnotDiagram& d, int c, int k, const std::array<int, 4>& l, int N) {
    auto [a, b] = kCornerRoles[k];
    return residue(static_cast<long long>(d.crossings[c].sign) * (l[a] - l[b]) + kCornerOffset[k], N);
}

bool face_sums_feasible(const KnotDiagram& d, const Layout& L, int f0, int f1, const std::vector<int>& tail_labels, int N) {
    const int F = static_cast<int>(d.faces.size());
    std::vector<int> fsum(F, 0), open(F, 0);
    auto target = [&](int f) { return (f == f0 || f == f1) ? 0 : N - 1; };
    for (int c = 0; c < d.n(); ++c) {
        std::array<int, 4> l{};
        bool complete = true;
        for (int r = 0; r < 4; ++r) {
            int k = d.edge_at(c, r);
            if (tail_labels[k] < 0) {
                complete = false;
                break;
            }
            l[r] = role_at_head(r) ? residue(tail_labels[k] + L.shift[k], N) : tail_labels[k];
        }
        if (!complete) {
            for (int f : d.q_sets[c]) open[f] = 1;
            continue;
        }
        int row = 0;
        for (int k = 0; k < 4; ++k) {
            int v = corner_value(d, c, k, l, N);
            row += v;
            fsum[d.crossings[c].face[k]] += v;
        }
        if (row != N - 1) return false;
    }
    for (int f = 0; f < F; ++f) {
        if (fsum[f] > target(f)) return false;
        if (!open[f] && fsum[f] != target(f)) return false;
    }
    return true;
}

StateSumResult full_invariant(const KnotDiagram& d, int N, const StateSumOptions& opt) {
    if (opt.precision == Precision::Extended) return full_impl<long double>(d, N, opt);
    return full_impl<double>(d, N, opt);
}

StateSumResult reduced_invariant(const KnotDiagram& d, const BasePoint& bp, const ReducedGraph& g, int N,
                                 const StateSumOptions& opt) {
    if (opt.precision == Precision::Extended) return reduced_impl<long double>(d, bp, g, N, opt);
    return reduced_impl<double>(d, bp, g, N, opt);
}

double figure_eight_log_oracle(int N) {
    // log-sum-exp over 2 log|(q)_k|
    std::vector<double> t(N);
    double lg = 0;
    for (int k = 0; k < N; ++k) {
        if (k > 0) lg += std::log(2.0 * std::sin(std::numbers::pi * k / N));
        t[k] = 2 * lg;
    }
    double mx = *std::max_element(t.begin(), t.end());
    double s = 0;
    for (double x : t) s += std::exp(x - mx);
    return mx + std::log(s);
}

double figure_eight_oracle(int N) { return std::exp(figure_eight_log_oracle(N)); }

}  // namespace vc
