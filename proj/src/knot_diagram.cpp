#include "vc/knot_diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace vc {

namespace {

constexpr std::array<int, 4> kExitDir{1, 3, -100, -100};   // by slot, TR and TL only
constexpr std::array<int, 4> kEntryDir{-100, -100, 1, 3};  // BL and BR only

int next_out_slot(int in_slot) { return in_slot == BL ? TR : TL; }

struct IntUF {
    std::vector<int> p;
    explicit IntUF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

[[noreturn]] void fail(const std::string& why, const std::string& msg) { throw DiagramError(why, msg); }

void check_single_component(const KnotDiagram& d) {
    const int E = static_cast<int>(d.edges.size());
    std::vector<char> seen(E, 0);
    int comps = 0;
    for (int s = 0; s < E; ++s) {
        if (seen[s]) continue;
        ++comps;
        int k = s;
        while (!seen[k]) {
            seen[k] = 1;
            const auto& e = d.edges[k];
            k = d.crossings[e.head].edge[next_out_slot(e.head_slot)];
        }
    }
    if (comps != 1)
        fail("components", "closure has " + std::to_string(comps) + " components, expected a knot");
}

// faces, incidences and the traversal; edges and crossing slots must be set
void finish(KnotDiagram& d) {
    const int n = d.n();
    const int E = static_cast<int>(d.edges.size());
    for (auto& c : d.crossings) c.edge.fill(-1);
    for (int k = 0; k < E; ++k) {
        const auto& e = d.edges[k];
        d.crossings[e.tail].edge[e.tail_slot] = k;
        d.crossings[e.head].edge[e.head_slot] = k;
    }
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s)
            if (d.crossings[c].edge[s] < 0) fail("slots", "crossing " + std::to_string(c) + " has an empty slot");
    check_single_component(d);

    // walk darts keeping the face on the left
    std::vector<int> dart_face(2 * E, -1);
    std::vector<std::array<std::array<int, 4>, 4>> cf(n);
    for (auto& a : cf)
        for (auto& r : a) r.fill(-1);
    d.faces.clear();
    for (int s = 0; s < 2 * E; ++s) {
        if (dart_face[s] >= 0) continue;
        const int F = static_cast<int>(d.faces.size());
        std::vector<Dart> f;
        int cur = s;
        while (dart_face[cur] < 0) {
            dart_face[cur] = F;
            const int k = cur / 2;
            const int dir = cur % 2 ? -1 : 1;
            f.push_back({k, dir});
            const auto& e = d.edges[k];
            const int c1 = dir > 0 ? e.head : e.tail;
            const int s1 = dir > 0 ? e.head_slot : e.tail_slot;
            const int s2 = (s1 + 3) % 4;
            cf[c1][s1][s2] = cf[c1][s2][s1] = F;
            const int k2 = d.crossings[c1].edge[s2];
            const auto& e2 = d.edges[k2];
            const bool fwd = e2.tail == c1 && e2.tail_slot == s2;
            cur = 2 * k2 + (fwd ? 0 : 1);
        }
        d.faces.push_back(std::move(f));
    }
    if (static_cast<int>(d.faces.size()) != n + 2)
        fail("euler", "diagram has " + std::to_string(d.faces.size()) + " faces for " + std::to_string(n) +
                          " crossings; not a connected planar knot diagram");
    d.edge_faces.assign(E, {-1, -1});
    for (int k = 0; k < E; ++k) d.edge_faces[k] = {dart_face[2 * k], dart_face[2 * k + 1]};
    d.q_sets.assign(n, {});
    d.r_sets.assign(n + 2, {});
    for (int c = 0; c < n; ++c) {
        auto& x = d.crossings[c];
        for (int k = 0; k < 4; ++k) {
            x.face[k] = cf[c][x.slot[kCornerRoles[k][0]]][x.slot[kCornerRoles[k][1]]];
            if (x.face[k] < 0) fail("corners", "corner lookup failed");
        }
        std::set<int> q(x.face.begin(), x.face.end());
        d.q_sets[c].assign(q.begin(), q.end());
        for (int f : q) d.r_sets[f].push_back(c);
    }
    d.order.clear();
    int k = 0;
    do {
        d.order.push_back(k);
        const auto& e = d.edges[k];
        k = d.crossings[e.head].edge[next_out_slot(e.head_slot)];
    } while (k != 0);
}

std::array<int, 4> slots_for_sign(int sign) {
    if (sign > 0) return {BL, BR, TL, TR};
    return {BR, BL, TR, TL};
}

void validate_reduced(const KnotDiagram& d) {
    auto red = d.reducible_crossings();
    if (!red.empty())
        fail("reducible", "crossing " + std::to_string(red.front()) +
                              " meets fewer than 4 distinct faces; simplify the diagram first");
}

}  // namespace

const char* corner_name(int k) {
    static const char* names[] = {"bottom", "right", "left", "top"};
    return names[k];
}

const char* role_name(int r) {
    static const char* names[] = {"alpha", "beta", "gamma", "delta"};
    return names[r];
}

int KnotDiagram::role_of_slot(int c, int slot) const {
    for (int r = 0; r < 4; ++r)
        if (crossings[c].slot[r] == slot) return r;
    return -1;
}

bool KnotDiagram::alternating() const {
    const int L = static_cast<int>(order.size());
    for (int i = 0; i < L; ++i)
        if (over_at_head(order[i]) == over_at_head(order[(i + 1) % L])) return false;
    return true;
}

std::vector<int> KnotDiagram::reducible_crossings() const {
    std::vector<int> out;
    for (int c = 0; c < n(); ++c)
        if (q_sets[c].size() != 4) out.push_back(c);
    return out;
}

std::string KnotDiagram::braid_text() const {
    std::string s;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) s += ' ';
        if (word[i] < 0) s += '-';
        s += 's' + std::to_string(std::abs(word[i]));
    }
    return s;
}

KnotDiagram parse_braid(const std::string& text, bool validate) {
    static const std::regex tok(R"(^(-)?[sS]?(\d+)(\^-1)?$)");
    std::vector<int> word;
    std::istringstream in(std::regex_replace(text, std::regex("[,;]"), " "));
    std::string t;
    while (in >> t) {
        std::smatch m;
        if (!std::regex_match(t, m, tok)) fail("syntax", "bad braid generator '" + t + "'");
        int g = std::stoi(m[2]);
        if (g < 1) fail("syntax", "generator index must be >= 1");
        int s = (m[1].matched ? -1 : 1) * (m[3].matched ? -1 : 1);
        word.push_back(s * g);
    }
    if (word.empty()) fail("empty", "empty braid word");
    KnotDiagram d;
    d.word = word;
    const int n = static_cast<int>(word.size());
    int S = 0;
    for (int g : word) S = std::max(S, std::abs(g) + 1);
    d.strands = S;
    std::vector<char> touched(S, 0);
    for (int g : word) touched[std::abs(g) - 1] = touched[std::abs(g)] = 1;
    int idle = static_cast<int>(std::count(touched.begin(), touched.end(), 0));
    if (idle) fail("components", "closure has at least " + std::to_string(idle + 1) + " components, expected a knot");
    d.crossings.resize(n);
    for (int t = 0; t < n; ++t) {
        d.crossings[t].sign = word[t] > 0 ? 1 : -1;
        auto sl = slots_for_sign(d.crossings[t].sign);
        for (int r = 0; r < 4; ++r) d.crossings[t].slot[r] = sl[r];
    }
    auto gap = [&](int t) { return std::abs(word[t]) - 1; };
    for (int t = 0; t < n; ++t) {
        for (int side = 0; side < 2; ++side) {
            int pos = gap(t) + side;
            int tt = t;
            while (true) {
                tt = (tt + 1) % n;
                if (pos == gap(tt) || pos == gap(tt) + 1) {
                    d.edges.push_back({t, side ? TR : TL, tt, pos == gap(tt) ? BL : BR});
                    break;
                }
            }
        }
    }
    finish(d);
    if (validate) validate_reduced(d);
    return d;
}

KnotDiagram parse_pd(const std::string& text, bool validate) {
    std::vector<int> nums;
    static const std::regex num(R"(-?\d+)");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it)
        nums.push_back(std::stoi(it->str()));
    if (nums.empty()) fail("empty", "empty PD code");
    if (nums.size() % 4) fail("syntax", "PD code must consist of 4-tuples");
    const int n = static_cast<int>(nums.size() / 4);
    std::map<int, std::vector<std::pair<int, int>>> ends;  // label -> (crossing, position)
    for (int c = 0; c < n; ++c)
        for (int p = 0; p < 4; ++p) ends[nums[4 * c + p]].push_back({c, p});
    for (auto& [lab, v] : ends)
        if (v.size() != 2) fail("syntax", "PD label " + std::to_string(lab) + " must occur exactly twice");
    // over-strand direction: +1 when position 1 is incoming
    std::vector<int> over_in(n, 0);
    auto incoming = [&](int c, int p) -> int {  // 1 in, 0 out, -1 unknown
        if (p == 0) return 1;
        if (p == 2) return 0;
        if (!over_in[c]) return -1;
        return (over_in[c] == 1) == (p == 1) ? 1 : 0;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [lab, v] : ends) {
            int a = incoming(v[0].first, v[0].second), b = incoming(v[1].first, v[1].second);
            if (a >= 0 && b >= 0) {
                if (a == b) fail("syntax", "PD label " + std::to_string(lab) + " is inconsistently oriented");
                continue;
            }
            if (a < 0 && b < 0) continue;
            auto [c, p] = a < 0 ? v[0] : v[1];
            int want_in = a < 0 ? 1 - b : 1 - a;
            over_in[c] = (want_in == 1) == (p == 1) ? 1 : -1;
            changed = true;
        }
    }
    KnotDiagram d;
    d.crossings.resize(n);
    // tuple position -> role
    const std::array<int, 4> pos_pos{AL, BE, DE, GA};
    const std::array<int, 4> pos_neg{AL, GA, DE, BE};
    std::map<int, int> lab_index;
    for (auto& [lab, v] : ends) lab_index.emplace(lab, static_cast<int>(lab_index.size()));
    std::vector<DiagramEdge> edges(lab_index.size());
    std::vector<int> have(lab_index.size(), 0);
    for (int c = 0; c < n; ++c) {
        if (!over_in[c]) fail("syntax", "cannot orient the over-strand at PD crossing " + std::to_string(c));
        auto& x = d.crossings[c];
        x.sign = over_in[c] == 1 ? 1 : -1;
        auto sl = slots_for_sign(x.sign);
        for (int r = 0; r < 4; ++r) x.slot[r] = sl[r];
        const auto& pr = x.sign > 0 ? pos_pos : pos_neg;
        for (int p = 0; p < 4; ++p) {
            int k = lab_index[nums[4 * c + p]];
            int role = pr[p];
            if (role_at_head(role)) {
                edges[k].head = c;
                edges[k].head_slot = x.slot[role];
                have[k] |= 2;
            } else {
                edges[k].tail = c;
                edges[k].tail_slot = x.slot[role];
                have[k] |= 1;
            }
        }
    }
    for (int h : have)
        if (h != 3) fail("syntax", "PD code does not describe a closed oriented diagram");
    d.edges = std::move(edges);
    finish(d);
    if (validate) validate_reduced(d);
    return d;
}

KnotDiagram parse_diagram(const std::string& text, bool validate) {
    if (text.find('X') != std::string::npos || text.find('[') != std::string::npos ||
        text.find('(') != std::string::npos)
        return parse_pd(text, validate);
    return parse_braid(text, validate);
}

std::vector<std::array<int, 4>> to_pd(const KnotDiagram& d) {
    std::vector<int> label(d.edges.size());
    for (size_t i = 0; i < d.order.size(); ++i) label[d.order[i]] = static_cast<int>(i) + 1;
    std::vector<std::array<int, 4>> out;
    for (int c = 0; c < d.n(); ++c) {
        const std::array<int, 4> pr = d.crossings[c].sign > 0 ? std::array<int, 4>{AL, BE, DE, GA}
                                                              : std::array<int, 4>{AL, GA, DE, BE};
        std::array<int, 4> t{};
        for (int p = 0; p < 4; ++p) t[p] = label[d.edge_at(c, pr[p])];
        out.push_back(t);
    }
    return out;
}

Layout make_layout(const KnotDiagram& d, int cut, const std::vector<int>& straight, int outer) {
    const int E = static_cast<int>(d.edges.size());
    const int F = static_cast<int>(d.faces.size());
    Layout L;
    L.outer = outer;
    L.turning.resize(E);
    std::vector<char> fixed(E, 0);
    for (int k = 0; k < E; ++k) L.turning[k] = kEntryDir[d.edges[k].head_slot] - kExitDir[d.edges[k].tail_slot];
    for (int k : straight) fixed[k] = 1;
    if (cut >= 0) {
        fixed[cut] = 1;
        L.turning[cut] -= 8;
    }
    auto deficit = [&](int f) {
        int tot = 2 * static_cast<int>(d.faces[f].size());
        for (const auto& dt : d.faces[f]) tot += dt.dir * L.turning[dt.edge];
        return (f == outer ? -8 : 8) - tot;
    };
    std::vector<std::vector<std::pair<int, int>>> adj(F);
    for (int k = 0; k < E; ++k) {
        if (fixed[k]) continue;
        adj[d.edge_faces[k][0]].push_back({d.edge_faces[k][1], k});
        adj[d.edge_faces[k][1]].push_back({d.edge_faces[k][0], k});
    }
    std::vector<int> par_edge(F, -2), order{outer};
    par_edge[outer] = -1;
    for (size_t i = 0; i < order.size(); ++i)
        for (auto [v, k] : adj[order[i]])
            if (par_edge[v] == -2) {
                par_edge[v] = k;
                order.push_back(v);
            }
    if (static_cast<int>(order.size()) != F) fail("layout", "cannot lay out the diagram with the chosen arc kept straight");
    for (int i = F - 1; i > 0; --i) {
        int v = order[i], k = par_edge[v];
        int need = deficit(v);
        if (need % 8) fail("layout", "turning deficit is not a multiple of a full turn");
        L.turning[k] += d.edge_faces[k][0] == v ? need : -need;
    }
    for (int f = 0; f < F; ++f)
        if (deficit(f)) fail("layout", "turning numbers do not close up");
    L.events.resize(E);
    L.shift.assign(E, 0);
    for (int k = 0; k < E; ++k) {
        int th = kExitDir[d.edges[k].tail_slot];
        int t = L.turning[k], step = t > 0 ? 1 : -1;
        for (int i = 0; i < std::abs(t); ++i) {
            th += step;
            int r = ((th % 8) + 8) % 8;
            if (r == 0) L.events[k].push_back(step > 0 ? Extremum::CcwMin : Extremum::CwMax);
            if (r == 4) L.events[k].push_back(step > 0 ? Extremum::CcwMax : Extremum::CwMin);
        }
        for (auto ev : L.events[k]) L.shift[k] += ev == Extremum::CwMax ? -1 : ev == Extremum::CcwMax ? 1 : 0;
    }
    return L;
}

std::vector<int> BasePoint::bridge() const {
    std::vector<int> b = A;
    b.insert(b.end(), B.begin(), B.end());
    return b;
}

bool BasePoint::in_bridge(int c) const {
    return std::find(A.begin(), A.end(), c) != A.end() || std::find(B.begin(), B.end(), c) != B.end();
}

bool BasePoint::is_removed(int e) const { return std::find(removed.begin(), removed.end(), e) != removed.end(); }

bool try_base_point(const KnotDiagram& d, int ep, BasePoint& out, std::string& why) {
    const int L = static_cast<int>(d.order.size());
    auto it = std::find(d.order.begin(), d.order.end(), ep);
    if (it == d.order.end()) {
        why = "edge";
        return false;
    }
    const int i0 = static_cast<int>(it - d.order.begin());
    auto seq = [&](int j) { return d.order[(i0 + j) % L]; };
    BasePoint bp;
    bp.edge = ep;
    int j = 0;
    while (j < L && d.over_at_head(seq(j))) bp.A.push_back(d.edges[seq(j)].head), ++j;
    if (j == L) {
        why = "noX";
        return false;
    }
    bp.x = d.edges[seq(j)].head;
    for (int t = 0; t <= j; ++t) bp.arc_a.push_back(seq(t));
    int j2 = L - 1;
    while (j2 > j && !d.over_at_head(seq(j2))) bp.B.insert(bp.B.begin(), d.edges[seq(j2)].head), --j2;
    if (j2 <= j) {
        why = "noY";
        return false;
    }
    bp.y = d.edges[seq(j2)].head;
    for (int t = j2 + 1; t < L; ++t) bp.arc_b.push_back(seq(t));
    if (bp.A.empty()) {
        why = "noA";
        return false;
    }
    if (bp.B.empty()) {
        why = "noB";
        return false;
    }
    auto br = bp.bridge();
    std::set<int> bs(br.begin(), br.end());
    if (bs.size() != br.size() || bs.count(bp.x) || bs.count(bp.y) || bp.x == bp.y) {
        why = "overlap";
        return false;
    }
    bp.removed = bp.arc_a;
    bp.removed.insert(bp.removed.end(), bp.arc_b.begin(), bp.arc_b.end());
    bp.f0 = d.edge_faces[ep][0];
    bp.f1 = d.edge_faces[ep][1];
    const auto& Q = d.q_sets;
    auto inter = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
        return r;
    };
    std::vector<int> base_faces{std::min(bp.f0, bp.f1), std::max(bp.f0, bp.f1)};
    const int c1 = bp.A.front(), cn = bp.B.back();
    if (inter(Q[c1], Q[cn]) != base_faces) bp.relaxed.push_back("Q1Qn");
    std::set<int> touching;
    for (int c = 0; c < d.n(); ++c)
        if (std::binary_search(Q[c].begin(), Q[c].end(), bp.f0) || std::binary_search(Q[c].begin(), Q[c].end(), bp.f1))
            touching.insert(c);
    std::set<int> br_r;
    for (int c : bs)
        if (touching.count(c)) br_r.insert(c);
    if (br_r != std::set<int>{c1, cn}) bp.relaxed.push_back("BR");
    if (!inter(inter(Q[bp.A.back()], Q[bp.x]), inter(Q[bp.y], Q[bp.B.front()])).empty()) bp.relaxed.push_back("QQQQ");
    std::vector<int> straight;
    for (int k : bp.removed)
        if (k != ep) straight.push_back(k);
    try {
        bp.layout = make_layout(d, ep, straight, bp.f0);
    } catch (const DiagramError&) {
        why = "layout";
        return false;
    }
    const auto& ev = bp.layout.events[ep];
    if (ev.empty() || ev.front() != Extremum::CwMax) {
        why = "layout";
        return false;
    }
    out = std::move(bp);
    return true;
}

BasePoint choose_base_point(const KnotDiagram& d) {
    validate_reduced(d);
    BasePoint first_relaxed;
    bool have_relaxed = false;
    for (int ep : d.order) {
        BasePoint bp;
        std::string why;
        if (!try_base_point(d, ep, bp, why)) continue;
        if (bp.relaxed.empty()) return bp;
        if (!have_relaxed) {
            first_relaxed = std::move(bp);
            have_relaxed = true;
        }
    }
    if (have_relaxed) return first_relaxed;
    fail("no_base_point", "no admissible base point; reduce the number of crossings or change the diagram");
}

const char* prose_case_name(ProseCase c) {
    switch (c) {
        case ProseCase::Bridge: return "bridge";
        case ProseCase::XYBoundary: return "xy_boundary";
        case ProseCase::XYInterior: return "xy_interior";
        case ProseCase::Boundary: return "boundary";
        case ProseCase::Interior: return "interior";
    }
    return "?";
}

int prose_count(ProseCase c) {
    switch (c) {
        case ProseCase::Bridge: return 0;
        case ProseCase::XYBoundary: return 1;
        case ProseCase::XYInterior: return 2;
        case ProseCase::Boundary: return 3;
        case ProseCase::Interior: return 4;
    }
    return -1;
}

int ReducedGraph::boundary_count() const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](const GEdge& e) { return e.boundary; }));
}

std::vector<std::string> ReducedGraph::prose_mismatches() const {
    std::vector<std::string> out;
    for (size_t c = 0; c < crossing_case.size(); ++c)
        if (census_count[c] != prose_count(crossing_case[c]))
            out.push_back("crossing " + std::to_string(c) + " (" + prose_case_name(crossing_case[c]) + "): " +
                          std::to_string(census_count[c]) + " entries, prose says " +
                          std::to_string(prose_count(crossing_case[c])));
    return out;
}

bool ReducedGraph::prose_counts_match() const { return prose_mismatches().empty(); }

ReducedGraph build_reduced_graph(const KnotDiagram& d, const BasePoint& bp) {
    const int n = d.n();
    const int E = static_cast<int>(d.edges.size());
    ReducedGraph g;
    g.m = n - static_cast<int>(bp.A.size() + bp.B.size()) - 2;
    g.edge_of.assign(E, -1);
    auto is_base_face = [&](int f) { return f == bp.f0 || f == bp.f1; };

    // G-edges: chains of diagram edges running through bridge crossings
    for (int k = 0; k < E; ++k) {
        if (bp.is_removed(k) || bp.in_bridge(d.edges[k].tail)) continue;
        GEdge ge;
        ge.tail = d.edges[k].tail;
        ge.tail_role = d.role_of_slot(ge.tail, d.edges[k].tail_slot);
        int cur = k;
        while (true) {
            if (g.edge_of[cur] >= 0 || bp.is_removed(cur)) fail("graph", "G-edge chains overlap");
            ge.chain.push_back(cur);
            g.edge_of[cur] = static_cast<int>(g.edges.size());
            const auto& e = d.edges[cur];
            if (!bp.in_bridge(e.head)) {
                ge.head = e.head;
                ge.head_role = d.role_of_slot(e.head, e.head_slot);
                break;
            }
            cur = d.crossings[e.head].edge[next_out_slot(e.head_slot)];
        }
        for (int c : ge.chain)
            if (is_base_face(d.edge_faces[c][0]) || is_base_face(d.edge_faces[c][1])) ge.boundary = true;
        bool over_t = role_is_over(ge.tail_role), over_h = role_is_over(ge.head_role);
        ge.eps = (over_t && over_h) ? 1 : (!over_t && !over_h) ? -1 : 0;
        g.edges.push_back(std::move(ge));
    }
    for (int k = 0; k < E; ++k)
        if (!bp.is_removed(k) && g.edge_of[k] < 0) fail("graph", "diagram edge outside every G-edge");
    g.unknown_index.assign(g.edges.size(), -1);
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (!g.edges[i].boundary) {
            g.unknown_index[i] = static_cast<int>(g.unknowns.size());
            g.unknowns.push_back(static_cast<int>(i));
        }

    // census
    std::set<int> touching;
    for (int c = 0; c < n; ++c)
        for (int f : d.q_sets[c])
            if (is_base_face(f)) touching.insert(c);
    g.boundary_crossings.assign(touching.begin(), touching.end());
    g.crossing_case.resize(n);
    g.census_count.assign(n, 0);
    std::vector<std::array<char, 4>> in_census(n, {0, 0, 0, 0});
    for (int c = 0; c < n; ++c) {
        bool r = touching.count(c) > 0;
        if (bp.in_bridge(c)) g.crossing_case[c] = ProseCase::Bridge;
        else if (c == bp.x || c == bp.y) g.crossing_case[c] = r ? ProseCase::XYBoundary : ProseCase::XYInterior;
        else g.crossing_case[c] = r ? ProseCase::Boundary : ProseCase::Interior;
        if (bp.in_bridge(c)) continue;
        const auto& x = d.crossings[c];
        for (int k = 0; k < 4; ++k) {
            if (c == bp.x && k != Top && k != Right) continue;
            if (c == bp.y && k != Bottom && k != Right) continue;
            if (is_base_face(x.face[k])) continue;
            auto [ra, rb] = kCornerRoles[k];
            int ea = g.edge_of[d.edge_at(c, ra)], eb = g.edge_of[d.edge_at(c, rb)];
            if (ea < 0 || eb < 0) fail("census", "census corner touches the removed arc");
            CensusEntry ce;
            ce.crossing = c;
            ce.corner = k;
            ce.face = x.face[k];
            ce.phi = x.sign > 0 ? ea : eb;
            ce.psi = x.sign > 0 ? eb : ea;
            int psi_role = x.sign > 0 ? rb : ra;
            ce.sign = role_is_over(psi_role) ? 1 : -1;
            if (ce.phi == ce.psi) fail("census", "a corner is bounded twice by the same G-edge");
            g.census.push_back(ce);
            in_census[c][k] = 1;
            ++g.census_count[c];
        }
    }

    // neighbours: alpha, beta at the tail, gamma, delta at the head
    for (auto& ge : g.edges) {
        auto fill = [&](int c, int role, int slot_step, Neighbor& nb) {
            const auto& x = d.crossings[c];
            int s = x.slot[role];
            int os = (s + slot_step + 4) % 4;
            int orole = d.role_of_slot(c, os);
            int k = -1;
            for (int t = 0; t < 4; ++t) {
                auto [a, b] = kCornerRoles[t];
                if ((a == role && b == orole) || (a == orole && b == role)) k = t;
            }
            nb.crossing = c;
            nb.corner = k;
            nb.phi_over = role_is_over(role);
            if (!in_census[c][k]) return;
            nb.edge = g.edge_of[x.edge[os]];
            nb.exponent = x.sign * (kCornerRoles[k][0] == role ? -1 : 1);
        };
        fill(ge.tail, ge.tail_role, +1, ge.nbr[0]);
        fill(ge.tail, ge.tail_role, -1, ge.nbr[1]);
        fill(ge.head, ge.head_role, -1, ge.nbr[2]);
        fill(ge.head, ge.head_role, +1, ge.nbr[3]);
    }

    // faces of G away from the base faces
    const int F = static_cast<int>(d.faces.size());
    IntUF fu(F);
    for (int k : bp.removed) fu.unite(d.edge_faces[k][0], d.edge_faces[k][1]);
    std::map<int, std::vector<int>> groups;
    for (int f = 0; f < F; ++f)
        if (fu.find(f) != fu.find(bp.f0)) groups[fu.find(f)].push_back(f);
    auto group_meeting = [&](int c1, int c2) {
        for (int f : d.q_sets[c1])
            if (std::binary_search(d.q_sets[c2].begin(), d.q_sets[c2].end(), f) && fu.find(f) != fu.find(bp.f0))
                return fu.find(f);
        return -1;
    };
    int g0 = group_meeting(bp.A.back(), bp.x), g1 = group_meeting(bp.B.front(), bp.y);
    if (g0 >= 0) g.face_partition.push_back(groups[g0]);
    for (auto& [root, fs] : groups)
        if (root != g0 && root != g1) g.face_partition.push_back(fs);
    if (g1 >= 0 && g1 != g0) g.face_partition.push_back(groups[g1]);
    return g;
}

nlohmann::json to_json(const KnotDiagram& d) {
    using nlohmann::json;
    json j;
    j["schema"] = "vc.diagram/1";
    j["strands"] = d.strands;
    j["word"] = d.word;
    j["braid"] = d.braid_text();
    json cr = json::array();
    for (const auto& c : d.crossings)
        cr.push_back({{"sign", c.sign},
                      {"edges", {{"TR", c.edge[TR]}, {"TL", c.edge[TL]}, {"BL", c.edge[BL]}, {"BR", c.edge[BR]}}},
                      {"faces",
                       {{"bottom", c.face[Bottom]}, {"right", c.face[Right]}, {"left", c.face[Left]}, {"top", c.face[Top]}}}});
    j["crossings"] = cr;
    json ed = json::array();
    static const char* sn[] = {"TR", "TL", "BL", "BR"};
    for (const auto& e : d.edges)
        ed.push_back({{"tail", e.tail}, {"tail_slot", sn[e.tail_slot]}, {"head", e.head}, {"head_slot", sn[e.head_slot]}});
    j["edges"] = ed;
    json fa = json::array();
    for (const auto& f : d.faces) {
        json darts = json::array();
        for (const auto& dt : f) darts.push_back({dt.edge, dt.dir});
        fa.push_back(darts);
    }
    j["faces"] = fa;
    j["q_sets"] = d.q_sets;
    j["r_sets"] = d.r_sets;
    j["order"] = d.order;
    return j;
}

nlohmann::json to_json(const KnotDiagram& d, const BasePoint& bp) {
    (void)d;
    nlohmann::json j;
    j["schema"] = "vc.basepoint/1";
    j["edge"] = bp.edge;
    j["A"] = bp.A;
    j["B"] = bp.B;
    j["x"] = bp.x;
    j["y"] = bp.y;
    j["arc_a"] = bp.arc_a;
    j["arc_b"] = bp.arc_b;
    j["f0"] = bp.f0;
    j["f1"] = bp.f1;
    j["relaxed"] = bp.relaxed;
    j["turning"] = bp.layout.turning;
    int cw = 0, ccw = 0;
    // the cut maximum on the base edge is not counted
    for (size_t k = 0; k < bp.layout.events.size(); ++k) {
        if (static_cast<int>(k) == bp.edge) continue;
        for (auto ev : bp.layout.events[k]) {
            cw += ev == Extremum::CwMax;
            ccw += ev == Extremum::CcwMax;
        }
    }
    j["maxima_cw"] = cw;
    j["maxima_ccw"] = ccw;
    return j;
}

nlohmann::json to_json(const ReducedGraph& g) {
    using nlohmann::json;
    json j;
    j["schema"] = "vc.reduced_graph/1";
    j["m"] = g.m;
    json es = json::array();
    for (const auto& e : g.edges) {
        json nb = json::array();
        for (const auto& x : e.nbr) nb.push_back(x.edge);
        es.push_back({{"chain", e.chain},
                      {"tail", e.tail},
                      {"tail_role", role_name(e.tail_role)},
                      {"head", e.head},
                      {"head_role", role_name(e.head_role)},
                      {"boundary", e.boundary},
                      {"eps", e.eps},
                      {"neighbors", nb}});
    }
    j["edges"] = es;
    j["unknowns"] = g.unknowns;
    j["face_partition"] = g.face_partition;
    json cs = json::array();
    for (const auto& c : g.census)
        cs.push_back({{"crossing", c.crossing},
                      {"corner", corner_name(c.corner)},
                      {"face", c.face},
                      {"phi", c.phi},
                      {"psi", c.psi},
                      {"sign", c.sign}});
    j["census"] = cs;
    json cc = json::array();
    for (size_t c = 0; c < g.crossing_case.size(); ++c)
        cc.push_back({{"case", prose_case_name(g.crossing_case[c])}, {"entries", g.census_count[c]}});
    j["crossing_cases"] = cc;
    return j;
}

KnotDiagram diagram_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != "vc.diagram/1") fail("schema", "unsupported diagram schema");
    static const std::map<std::string, int> sl{{"TR", TR}, {"TL", TL}, {"BL", BL}, {"BR", BR}};
    KnotDiagram d;
    d.strands = j.at("strands").get<int>();
    d.word = j.at("word").get<std::vector<int>>();
    for (const auto& c : j.at("crossings")) {
        Crossing x;
        x.sign = c.at("sign").get<int>();
        auto s = slots_for_sign(x.sign);
        for (int r = 0; r < 4; ++r) x.slot[r] = s[r];
        d.crossings.push_back(x);
    }
    for (const auto& e : j.at("edges"))
        d.edges.push_back({e.at("tail").get<int>(), sl.at(e.at("tail_slot").get<std::string>()), e.at("head").get<int>(),
                           sl.at(e.at("head_slot").get<std::string>())});
    finish(d);
    return d;
}

bool same_structure(const KnotDiagram& a, const KnotDiagram& b) {
    if (a.strands != b.strands || a.word != b.word || a.n() != b.n() || a.edges.size() != b.edges.size()) return false;
    for (int c = 0; c < a.n(); ++c) {
        const auto &x = a.crossings[c], &y = b.crossings[c];
        if (x.sign != y.sign || x.edge != y.edge || x.slot != y.slot || x.face != y.face) return false;
    }
    for (size_t k = 0; k < a.edges.size(); ++k) {
        const auto &x = a.edges[k], &y = b.edges[k];
        if (x.tail != y.tail || x.head != y.head || x.tail_slot != y.tail_slot || x.head_slot != y.head_slot) return false;
    }
    return a.faces == b.faces && a.edge_faces == b.edge_faces && a.q_sets == b.q_sets && a.r_sets == b.r_sets &&
           a.order == b.order;
}

}  // namespace vc
