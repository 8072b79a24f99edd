#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "madt/circuit.hpp"
#include "madt/geometry.hpp"
#include "madt/triangulation.hpp"

namespace madt {

// ---------------------------------------------------------------------------
// Instance compiler: planar circuits -> point/weight instances whose optimal
// triangulation cost separates satisfiable from unsatisfiable circuits.
//
// Building blocks:
//   * variable loop -- a closed ladder of wire vertices (outer and inner
//     rail), rungs and rails always present ("solid"), and one crossing
//     diagonal pair per ladder cell ("dotted" vs "dashed"); using only
//     dotted diagonals encodes true, only dashed encodes false.
//   * clause gadget -- 12 vertices (a 6-cycle of G/P hubs plus two tips per
//     mouth) wired so that crossing it is cheap exactly when the clause is
//     satisfied.
//   * bridge -- two edges from a pair of adjacent outer-rail vertices (the
//     bridge base) to the two tips of a clause mouth.  The two edges cross,
//     so every triangulation keeps exactly one; the dotted-classed edge
//     lands on the "true" tip for a positive literal and on the "false" tip
//     for a negated one.
// ---------------------------------------------------------------------------

enum class PointRole { Wire, BridgeBase, Clause };

enum class EdgeClass { Solid, Dotted, Dashed, ClauseEps, ClauseUnit };

struct GadgetEdge {
    int a = 0, b = 0;        // point ids, a < b
    Rat w;                   // 1, or eps for ClauseEps
    EdgeClass cls = EdgeClass::Solid;
    int loop = -1;           // owning variable loop, if any
    int clause = -1;         // owning clause gadget, if any
    int bridge = -1;         // owning bridge, if any
};

struct BridgeInfo {
    int var = 0;             // variable index
    int clause = 0;          // clause index
    int mouth = 0;           // literal slot 0..2 within the clause
    bool positive = true;    // literal polarity
    int base_first = 0;      // outer-rail point id, counter-clockwise first
    int base_second = 0;     // the adjacent outer-rail point id
    int edge_dotted = 0;     // index into GadgetInstance::edges
    int edge_dashed = 0;
};

struct LoopInfo {
    int var = 0;
    std::vector<int> outer;  // point ids by column, counter-clockwise
    std::vector<int> inner;
    std::vector<int> bridges;          // bridge indices, loop order
    std::vector<int> bridge_columns;   // first-base column per bridge
};

// Clause-local vertex labels, in the order the 12 points are emitted.
enum ClauseVertex {
    CV_G0, CV_P0, CV_G1, CV_P1, CV_G2, CV_P2,
    CV_TQ0, CV_TP0, CV_TQ1, CV_TP1, CV_TQ2, CV_TP2,
};

struct ClauseInfo {
    int clause = 0;
    std::array<int, 12> verts{};       // point ids, indexed by ClauseVertex
    std::array<int, 24> edge_index{};  // indices into GadgetInstance::edges
};

struct GadgetParams {
    long long N = 0;
    Rat eps;
    Rat sigma;
    int n_c = 0;
    int n_v = 0;
};

struct ProvenanceEntry {
    std::string gadget;      // e.g. "loop 2", "clause 0", "bridge 1"
    std::string label;       // e.g. "outer 17", "tq1"
};

struct GadgetInstance {
    Instance inst;                        // point set with explicit weights
    GadgetParams params;
    PlanarCircuit circuit;                // the compiled (normalized) circuit
    std::vector<PointRole> roles;
    std::vector<ProvenanceEntry> provenance;
    std::vector<GadgetEdge> edges;        // all non-irrelevant edges
    // Pairs of edge indices that are meant to cross (diagonal pairs, bridge
    // pairs, and clause-internal pairs); everything else must not cross.
    std::vector<std::pair<int, int>> intended_crossings;
    std::vector<LoopInfo> loops;
    std::vector<BridgeInfo> bridges;
    std::vector<ClauseInfo> clauses;
};

// Compiles a normalized planar circuit.  Requires N % 16 == 0, N >= 16 and
// eps in (0,1).  Throws std::invalid_argument on bad input and
// std::runtime_error if the emitted layout fails its own verification.
GadgetInstance build_gadget_instance(const PlanarCircuit& c, long long N, const Rat& eps);

struct VerifyReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Structural checks: semimetric weight matrix; intended crossing pairs cross
// and nothing else does; point-count formula 18 n_c + 3 n_c N; sigma beyond
// any non-irrelevant path; sigma violates the triangle inequality.
VerifyReport verify_gadget_instance(const GadgetInstance& g);

// The truth value of clause `k`'s literal in slot `mouth` under `a`.
bool literal_value(const GadgetInstance& g, int k, int mouth, const std::vector<bool>& a);

// Certificate triangulation for an assignment: every loop all-dotted or
// all-dashed, each bridge keeping the matching edge, each clause in its
// per-pattern optimal configuration.  With `fill` the edge set is completed
// greedily with irrelevant edges to a maximal crossing-free set (quadratic;
// intended for small instances).
Triangulation pure_triangulation(const GadgetInstance& g, const std::vector<bool>& a,
                                 bool fill = true);

// Assignment-free reference: all loops dashed, every clause in a fixed
// pattern whose 12 vertices stay pairwise closer than 2.
Triangulation baseline_triangulation(const GadgetInstance& g, bool fill = true);

// W(baseline) + 300 n_c^2 N + 1.
Rat threshold(const GadgetInstance& g);

// ---------------------------------------------------------------------------
// Standalone clause gadget (unit scale, no wires attached).
// ---------------------------------------------------------------------------

struct ClauseGadget {
    std::array<Point, 12> pts;            // indexed by ClauseVertex
    struct Edge {
        int a, b;                          // ClauseVertex indices
        bool unit;                         // weight 1 when true, eps otherwise
        const char* name;
    };
    std::array<Edge, 24> edges;
    std::vector<std::pair<int, int>> crossings;  // indices into edges
};

// The fixed clause geometry and wiring table.
const ClauseGadget& clause_gadget();

// Edge selection (indices into clause_gadget().edges) of the optimal clause
// triangulation for a literal pattern; also used inside pure_triangulation.
std::vector<int> clause_pattern_edges(const std::array<bool, 3>& pattern);

// The baseline clause configuration (all 12 vertices pairwise within < 2).
std::vector<int> clause_baseline_edges();

struct ClauseCrossing {
    std::array<Rat, 3> costs;   // entry distances (0,1), (0,2), (1,2)
    Rat clause_wiener;          // total pairwise cost of the optimal config
};

// Brute force over all maximal crossing-free subsets of the standalone
// gadget's edges consistent with the pattern (the matching tip link of each
// mouth pinned present); returns the entry-to-entry distances of the
// cheapest one.  Entry of mouth j is tip tp_j when the literal is true and
// tq_j when false.
ClauseCrossing clause_crossing_costs(const std::array<bool, 3>& pattern, const Rat& eps);

// ---------------------------------------------------------------------------
// Parameter schedule.
// ---------------------------------------------------------------------------

// sigma = (4 n_c N)^3.
Rat sigma_for(int n_c, long long N);

// Full-scale parameters N = 10^6 n_c^3, eps = 10^-13 n_c^-6, kept symbolic:
// materializing them is refused above a point cap.
struct ScaleSchedule {
    std::string N_expr;           // decimal value of 10^6 n_c^3
    std::string eps_expr;         // "1/(10^13 n_c^6)" as a rational string
    std::string point_count_expr; // decimal value of 18 n_c + 3 n_c N
};
ScaleSchedule paper_scale(int n_c);

// Diagnostics used by the structural acceptance suite ------------------------

// Shortest distance inside one pure loop (wire edges of that loop only)
// between the first base vertices of consecutive bridges; N/2 + 1 expected.
std::vector<long long> bridge_distances(const GadgetInstance& g, int loop, bool dotted);

// Max internal distance of the hole-free wire piece spanning `cols`
// consecutive ladder columns (2*cols vertices) in a pure state.
long long wire_piece_diameter(const GadgetInstance& g, int loop, int col_start, int cols,
                              bool dotted);

} // namespace madt
