#pragma once

#include <optional>
#include <string>
#include <vector>

#include "madt/rational.hpp"

namespace madt {

struct Point {
    Rat x, y;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

// Sign of the cross product (q-p) x (r-p): +1 for a left turn (counter-
// clockwise), -1 for a right turn, 0 for collinear.  Exact.
int orient(const Point& p, const Point& q, const Point& r);

// True iff q lies on the closed segment [a,b] (collinearity included).
bool on_segment(const Point& a, const Point& b, const Point& q);

// True iff q lies strictly inside the open segment (a,b).
bool strictly_inside_segment(const Point& a, const Point& b, const Point& q);

// Two closed segments "cross" when they share a point that is interior to at
// least one of them.  Sharing an endpoint only is not a crossing; collinear
// segments overlapping in more than a point do cross.
bool segments_cross(const Point& a1, const Point& a2, const Point& b1, const Point& b2);

enum class InstanceKind { Polygon, PointSet };

enum class WeightKind { Unit, Euclidean, Explicit };

struct WeightSpec {
    WeightKind kind = WeightKind::Unit;
    // Only used when kind == Explicit: symmetric n x n matrix, zero diagonal,
    // positive off-diagonal entries.
    std::vector<std::vector<Rat>> matrix;
};

// A problem instance: a simple polygon (vertices in boundary order) or a
// planar point set, plus the metric used to score triangulations.
struct Instance {
    InstanceKind kind = InstanceKind::PointSet;
    std::vector<Point> points;
    WeightSpec weights;

    int n() const { return (int)points.size(); }
};

// Validates an instance and returns a diagnostic for the first problem found
// (empty optional when valid).  Polygon: n >= 3, no repeated vertices, no two
// boundary edges sharing more than the adjacency-forced endpoints, no vertex
// in the interior of an edge.  Point set: n >= 3, distinct points, not all
// collinear.  Explicit weight matrices must be symmetric/zero-diagonal/
// positive off the diagonal and of matching size.
std::optional<std::string> validate_instance(const Instance& inst);

// True iff {i,j} may appear in a triangulation of the instance:
//  - polygon: a boundary edge, or a diagonal lying strictly inside the
//    polygon, touching the boundary only at its endpoints;
//  - point set: any segment with no third input point in its interior.
bool edge_allowed(const Instance& inst, int i, int j);

// Precomputed n x n table of edge_allowed.
std::vector<std::vector<char>> allowed_table(const Instance& inst);

// Exact point-in-polygon test for a point not on the boundary; points on the
// boundary are reported as inside.
bool point_in_polygon(const std::vector<Point>& poly, const Point& q);

// Smallest index of a vertex p with edge_allowed(p, q) for every other q
// ("one-vertex-visible" handle), or nullopt if none exists.
std::optional<int> find_fan_handle(const Instance& inst);

// Number of input points on the convex hull boundary, counting points interior
// to hull edges (they lie on the outer face of any triangulation).
int hull_boundary_count(const std::vector<Point>& pts);

} // namespace madt
