#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "vc/knot_diagram.hpp"

using namespace vc;

namespace {

const char* kFig8 = "s1 -s2 s1 -s2";
const char* kFiveTwo = "s1 s1 s1 s2 -s1 s2";
const char* kSixOne = "s1 s1 s2 -s1 -s3 s2 -s3";
const char* kSixTwo = "s1 s1 s1 -s2 s1 -s2";

// faces of the planar graph from PD tuples listed counter-clockwise
int pd_face_count(const std::vector<std::array<int, 4>>& pd) {
    std::map<int, std::vector<std::pair<int, int>>> at;
    for (int c = 0; c < static_cast<int>(pd.size()); ++c)
        for (int p = 0; p < 4; ++p) at[pd[c][p]].push_back({c, p});
    std::set<std::pair<int, int>> seen;
    int faces = 0;
    for (int c = 0; c < static_cast<int>(pd.size()); ++c)
        for (int p = 0; p < 4; ++p) {
            if (seen.count({c, p})) continue;
            ++faces;
            std::pair<int, int> cur{c, p};
            while (!seen.count(cur)) {
                seen.insert(cur);
                const auto& ends = at[pd[cur.first][cur.second]];
                auto other = ends[0] == cur ? ends[1] : ends[0];
                cur = {other.first, (other.second + 1) % 4};
            }
        }
    return faces;
}

int count_faces_euler(const KnotDiagram& d) { return static_cast<int>(d.faces.size()); }

}  // namespace

TEST_CASE("braid parsing and face counts") {
    auto a = parse_braid("s1 s1 s1", false);
    CHECK(a.n() == 3);
    CHECK(count_faces_euler(a) == 5);

    auto b = parse_braid(kFig8);
    CHECK(b.n() == 4);
    CHECK(b.faces.size() == 6);
    CHECK(b.alternating());

    auto c = parse_braid(kSixTwo);
    CHECK(c.n() == 6);
    CHECK(c.faces.size() == 8);
    CHECK(c.alternating());
    CHECK_FALSE(parse_braid(kFiveTwo).alternating());
}

TEST_CASE("face walk agrees with PD face tracing") {
    for (auto w : {kFig8, kFiveTwo, kSixOne, kSixTwo}) {
        auto d = parse_braid(w);
        CHECK(pd_face_count(to_pd(d)) == static_cast<int>(d.faces.size()));
        CHECK(static_cast<int>(d.faces.size()) == d.n() + 2);
    }
}

TEST_CASE("face and crossing incidences are dual") {
    auto d = parse_braid(kSixOne);
    for (int c = 0; c < d.n(); ++c)
        for (int f : d.q_sets[c]) {
            const auto& r = d.r_sets[f];
            CHECK(std::find(r.begin(), r.end(), c) != r.end());
        }
    for (int c = 0; c < d.n(); ++c) CHECK(d.q_sets[c].size() == 4);
}

TEST_CASE("braid syntax") {
    auto a = parse_braid("1 -2 1 -2");
    auto b = parse_braid("s1 s2^-1 s1 s2^-1");
    CHECK(same_structure(a, b));
    CHECK(same_structure(a, parse_braid(kFig8)));
}

TEST_CASE("rejections carry a reason") {
    auto reason = [](const std::string& text) {
        try {
            parse_diagram(text);
        } catch (const DiagramError& e) {
            return e.reason;
        }
        return std::string("accepted");
    };
    CHECK(reason("") == "empty");
    CHECK(reason("s1 s1") == "components");
    CHECK(reason("s1 s1 x") == "syntax");
    CHECK(reason("s1 s2") == "reducible");
}

TEST_CASE("PD input") {
    // figure-eight, counter-clockwise from the incoming under-strand
    auto d = parse_pd("X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]");
    CHECK(d.n() == 4);
    CHECK(d.faces.size() == 6);
    CHECK(d.alternating());
    // the emitted PD reparses to the same structure
    auto b = parse_braid(kSixTwo);
    std::string text;
    for (const auto& t : to_pd(b))
        text += "X[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
                std::to_string(t[3]) + "] ";
    auto c = parse_pd(text);
    CHECK(c.n() == b.n());
    CHECK(pd_face_count(to_pd(c)) == static_cast<int>(c.faces.size()));
    std::vector<int> sb, sc;
    for (auto& x : b.crossings) sb.push_back(x.sign);
    for (auto& x : c.crossings) sc.push_back(x.sign);
    std::sort(sb.begin(), sb.end());
    std::sort(sc.begin(), sc.end());
    CHECK(sb == sc);
}

TEST_CASE("JSON round trip") {
    for (auto w : {kFig8, kFiveTwo, kSixOne}) {
        auto d = parse_braid(w);
        auto j = to_json(d);
        CHECK(j["schema"] == "vc.diagram/1");
        auto e = diagram_from_json(nlohmann::json::parse(j.dump()));
        CHECK(same_structure(d, e));
    }
}

TEST_CASE("figure-eight base point") {
    auto d = parse_braid(kFig8);
    auto bp = choose_base_point(d);
    CHECK(bp.A.size() == 1);
    CHECK(bp.B.size() == 1);
    CHECK(bp.relaxed.empty());
    std::set<int> all{bp.A[0], bp.B[0], bp.x, bp.y};
    CHECK(all.size() == 4);
    CHECK(bp.x != bp.y);
    CHECK(bp.f0 != bp.f1);
}

TEST_CASE("five-two base point") {
    for (auto w : {kFiveTwo, kSixTwo}) {
        auto d = parse_braid(w);
        auto bp = choose_base_point(d);
        CHECK(bp.x != bp.y);
        CHECK_FALSE(bp.in_bridge(bp.x));
        CHECK_FALSE(bp.in_bridge(bp.y));
    }
    // every candidate point either works or says why not
    auto d = parse_braid(kFiveTwo);
    int usable = 0;
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
        BasePoint bp;
        std::string why;
        if (try_base_point(d, e, bp, why)) ++usable;
        else CHECK_FALSE(why.empty());
    }
    CHECK(usable > 0);
}

TEST_CASE("reduced graph counts") {
    struct Row {
        const char* word;
        int m, edges;
    };
    for (auto r : {Row{kFig8, 0, 3}, Row{kFiveTwo, 1, 5}, Row{kSixOne, 2, 7}, Row{kSixTwo, 2, 7}}) {
        auto d = parse_braid(r.word);
        auto bp = choose_base_point(d);
        auto g = build_reduced_graph(d, bp);
        CAPTURE(r.word);
        CHECK(g.m == d.n() - static_cast<int>(bp.bridge().size()) - 2);
        CHECK(g.m == r.m);
        CHECK(static_cast<int>(g.edges.size()) == 2 * g.m + 3);
        CHECK(g.prose_counts_match());
        CHECK(g.face_partition.size() == static_cast<std::size_t>(g.m + 2));
        // the boundary edges form one block; the rest are unknowns
        CHECK(g.unknowns.size() + g.boundary_count() == g.edges.size());
    }
}

TEST_CASE("alternating diagrams have no linear terms") {
    for (auto w : {kFig8, kSixTwo}) {
        auto d = parse_braid(w);
        auto g = build_reduced_graph(d, choose_base_point(d));
        for (int e : g.unknowns) CHECK(g.edges[e].eps == 0);
        // chains through the bridge run under-to-under or over-to-over
        for (const auto& e : g.edges)
            if (e.chain.size() > 1) CHECK(e.eps != 0);
    }
}

TEST_CASE("reduced graph JSON") {
    auto d = parse_braid(kFiveTwo);
    auto bp = choose_base_point(d);
    auto j = to_json(build_reduced_graph(d, bp));
    CHECK(j["schema"] == "vc.reduced_graph/1");
    CHECK(to_json(d, bp)["schema"] == "vc.basepoint/1");
}
