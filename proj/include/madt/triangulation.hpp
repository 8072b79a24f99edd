#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "madt/geometry.hpp"

namespace madt {

using Edge = std::pair<int, int>;  // always stored with first < second

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// An edge set over the instance's points; for triangulations this includes
// boundary/hull edges.  Kept sorted and deduplicated by normalize().
struct Triangulation {
    std::vector<Edge> edges;

    void normalize();
    bool has(int a, int b) const;
};

// Checks that T is a triangulation of the instance: every edge allowed and
// distinct, no two edges crossing, no further allowed edge insertable, and the
// edge count matching the closed form (2n-3 for polygons, 3n-h-3 for point
// sets with h points on the hull boundary).  Returns a diagnostic on failure.
std::optional<std::string> validate_triangulation(const Instance& inst, const Triangulation& t);

// Pairwise shortest-path distances in T and their sum over unordered pairs.
// Unit and explicit-rational weights are computed exactly; the Euclidean
// metric uses doubles with a fixed summation order so equal inputs always
// produce identical bytes.
struct CostReport {
    bool connected = true;
    bool exact = false;                       // true for unit/explicit weights
    Rat exact_total;                          // set when exact
    double total = 0.0;                       // always set when connected
    std::vector<std::vector<Rat>> exact_dist; // set when exact
    std::vector<std::vector<double>> dist;    // always set when connected
};

CostReport wiener_cost(const Instance& inst, const Triangulation& t);

// Builds the fan triangulation at `handle` (must see every other point):
// all handle edges plus, for polygons, the boundary; completed greedily by
// adding remaining allowed edges in lexicographic order whenever they cross
// nothing already chosen.
Triangulation fan_triangulation(const Instance& inst, int handle);

// Total pairwise link distance of any fan under unit weights:
// m + 2*(C(n,2) - m) with m = 2n-3 (polygon) or m = 3n-h-3 (point set).
long long fan_cost_closed_form(const Instance& inst);

// Number of edges every triangulation of the instance has.
long long triangulation_edge_count(const Instance& inst);

// Enumerates all triangulations of a simple polygon (diagonal choices over
// the allowed-diagonal table), invoking the callback with each complete edge
// set.  Return false from the callback to stop early.
void enumerate_polygon_triangulations(const Instance& inst,
                                      const std::function<bool(const Triangulation&)>& cb);

// Enumerates all (maximal crossing-free) triangulations of a point set by
// include/exclude backtracking over the allowed edges.  Intended for small
// instances; throws std::invalid_argument above `max_points`.
void enumerate_pointset_triangulations(const Instance& inst,
                                       const std::function<bool(const Triangulation&)>& cb,
                                       int max_points = 12);

// Exhaustive minimum-total-distance triangulation; ties broken by the
// lexicographically least edge list.  Uses the appropriate enumerator.
struct BruteForceResult {
    Triangulation best;
    CostReport cost;
    long long count = 0;  // triangulations examined
};

// With threads > 1 the polygon enumeration is split across workers by the
// apex of the triangle on edge (0, n-1); partial optima are merged in a fixed
// order, so the result is identical for every thread count.  Point sets
// always run sequentially.
BruteForceResult brute_force_madt(const Instance& inst, int threads = 1);

} // namespace madt
