#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace vc {

// Crossings are drawn with both strands heading upward.  Slots are listed
// counter-clockwise starting at the top right.
enum Slot : int { TR = 0, TL = 1, BL = 2, BR = 3 };

// alpha -> delta is the under-strand, beta -> gamma the over-strand.
// positive: alpha=BL beta=BR gamma=TL delta=TR; negative is the mirror.
enum Role : int { AL = 0, BE = 1, GA = 2, DE = 3 };

// Corners are named by the roles that bound them.
enum Corner : int { Bottom = 0, Right = 1, Left = 2, Top = 3 };

inline constexpr std::array<std::array<Role, 2>, 4> kCornerRoles{{{AL, BE}, {BE, DE}, {GA, AL}, {DE, GA}}};
inline constexpr std::array<int, 4> kCornerOffset{0, 0, 0, -1};

const char* corner_name(int k);
const char* role_name(int r);
inline bool role_is_over(int r) { return r == BE || r == GA; }
inline bool role_at_head(int r) { return r == AL || r == BE; }

struct DiagramError : std::runtime_error {
    std::string reason;
    DiagramError(std::string why, const std::string& msg) : std::runtime_error(msg), reason(std::move(why)) {}
};

struct Crossing {
    int sign = 1;
    std::array<int, 4> edge{};  // by slot
    std::array<int, 4> slot{};  // by role
    std::array<int, 4> face{};  // by corner
};

struct DiagramEdge {
    int tail = 0, tail_slot = 0;
    int head = 0, head_slot = 0;
};

struct Dart {
    int edge = 0;
    int dir = 1;  // +1 along the orientation
    bool operator==(const Dart&) const = default;
};

struct KnotDiagram {
    int strands = 0;             // braid index, 0 for PD input
    std::vector<int> word;       // signed generators
    std::vector<Crossing> crossings;
    std::vector<DiagramEdge> edges;
    std::vector<std::vector<Dart>> faces;
    std::vector<std::array<int, 2>> edge_faces;  // {left, right} of each edge
    std::vector<std::vector<int>> q_sets;        // faces at a crossing
    std::vector<std::vector<int>> r_sets;        // crossings at a face
    std::vector<int> order;                      // edges along the knot from edge 0

    int n() const { return static_cast<int>(crossings.size()); }
    int edge_at(int c, int role) const { return crossings[c].edge[crossings[c].slot[role]]; }
    int role_of_slot(int c, int slot) const;
    bool over_at_head(int e) const { return role_of_slot(edges[e].head, edges[e].head_slot) == BE; }
    bool alternating() const;
    std::vector<int> reducible_crossings() const;
    std::string braid_text() const;
};

// "s1 -s2 s1^-1 ..." or plain signed integers.
KnotDiagram parse_braid(const std::string& text, bool validate = true);
// "X[1,5,2,4] X[3,1,4,6] ..." or "[(1,5,2,4),(3,1,4,6),...]" in the usual
// convention: first entry incoming under-strand, counter-clockwise.
KnotDiagram parse_pd(const std::string& text, bool validate = true);
// braid word or PD text
KnotDiagram parse_diagram(const std::string& text, bool validate = true);
// PD tuples of a diagram in the same convention parse_pd reads
std::vector<std::array<int, 4>> to_pd(const KnotDiagram& d);

// Turning numbers in units of 45 degrees and the local extrema they imply.
enum class Extremum { CwMax, CwMin, CcwMax, CcwMin };
struct Layout {
    int outer = 0;
    std::vector<int> turning;
    std::vector<std::vector<Extremum>> events;
    std::vector<int> shift;  // label change tail -> head
};

// Layout with `straight` edges left unbent and `cut` bent once clockwise
// so that it carries a clockwise maximum.
Layout make_layout(const KnotDiagram& d, int cut, const std::vector<int>& straight, int outer);

struct BasePoint {
    int edge = -1;           // the edge carrying the point
    std::vector<int> A, B;   // bridge crossings after / before the point
    int x = -1, y = -1;
    std::vector<int> arc_a, arc_b;  // removed edges from the point to X, from Y to the point
    std::vector<int> removed;
    int f0 = -1, f1 = -1;    // faces left / right of the point
    std::vector<std::string> relaxed;  // optional conditions that fail here
    Layout layout;

    std::vector<int> bridge() const;
    bool in_bridge(int c) const;
    bool is_removed(int e) const;
};

// nullopt-like: returns false and fills `why` when the point is unusable
bool try_base_point(const KnotDiagram& d, int edge, BasePoint& out, std::string& why);
BasePoint choose_base_point(const KnotDiagram& d);

struct Neighbor {
    int edge = -1;     // G-edge, -1 when deleted
    int crossing = -1;
    int corner = -1;
    int exponent = 0;  // of (1 - z_under/z_over)
    bool phi_over = false;
};

struct GEdge {
    std::vector<int> chain;  // diagram edges in order
    int tail = -1, tail_role = -1;
    int head = -1, head_role = -1;
    bool boundary = false;   // lies in the boundary of the two base faces
    int eps = 0;
    // alpha, beta at the tail; gamma, delta at the head
    std::array<Neighbor, 4> nbr;
};

struct CensusEntry {
    int crossing = -1, corner = -1, face = -1;
    int phi = -1, psi = -1;
    int sign = 0;
};

enum class ProseCase { Bridge, XYBoundary, XYInterior, Boundary, Interior };
const char* prose_case_name(ProseCase c);
int prose_count(ProseCase c);

struct ReducedGraph {
    int m = 0;
    std::vector<GEdge> edges;
    std::vector<int> edge_of;            // diagram edge -> G-edge or -1
    std::vector<int> unknowns;           // G-edges off the boundary
    std::vector<int> unknown_index;      // G-edge -> unknown or -1
    std::vector<std::vector<int>> face_partition;  // M_0 .. M_{m+1}
    std::vector<CensusEntry> census;
    std::vector<ProseCase> crossing_case;
    std::vector<int> census_count;       // per crossing
    std::vector<int> boundary_crossings; // R_0 u R_{n+1}

    int boundary_count() const;
    bool prose_counts_match() const;
    std::vector<std::string> prose_mismatches() const;
};

ReducedGraph build_reduced_graph(const KnotDiagram& d, const BasePoint& bp);

nlohmann::json to_json(const KnotDiagram& d);
nlohmann::json to_json(const KnotDiagram& d, const BasePoint& bp);
nlohmann::json to_json(const ReducedGraph& g);
KnotDiagram diagram_from_json(const nlohmann::json& j);
bool same_structure(const KnotDiagram& a, const KnotDiagram& b);

}  // namespace vc
