#include "doctest.h"

#include "madt/geometry.hpp"

using namespace madt;

namespace {

Point P(long long x, long long y) { return Point{Rat(x), Rat(y)}; }

Instance polygon(std::vector<Point> pts) {
    Instance inst;
    inst.kind = InstanceKind::Polygon;
    inst.points = std::move(pts);
    return inst;
}

Instance point_set(std::vector<Point> pts) {
    Instance inst;
    inst.kind = InstanceKind::PointSet;
    inst.points = std::move(pts);
    return inst;
}

} // namespace

TEST_CASE("rational arithmetic and parsing") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(1, -2).sign() == -1);
    CHECK(Rat(7, 3) * Rat(3, 7) == Rat(1));
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat::parse("5/10") == Rat(1, 2));
    CHECK(Rat::parse("-7") == Rat(-7));
    CHECK(Rat(1, 2).str() == "1/2");
    CHECK(Rat(-4, 2).str() == "-2");
    CHECK_THROWS(Rat::parse("1/0"));
    CHECK_THROWS(Rat::parse("3x"));
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("orientation predicate") {
    CHECK(orient(P(0, 0), P(1, 0), P(0, 1)) == 1);
    CHECK(orient(P(0, 0), P(0, 1), P(1, 0)) == -1);
    CHECK(orient(P(0, 0), P(1, 1), P(2, 2)) == 0);
    // Exactness: a slope difference of 1/10^9 must still be detected.
    Point a{Rat(0), Rat(0)}, b{Rat(1000000000), Rat(1)};
    CHECK(orient(a, b, P(1000000000, 1)) == 0);
    CHECK(orient(a, b, Point{Rat(1000000000), Rat(1) + Rat(1, 1000000000)}) == 1);
}

TEST_CASE("segment predicates") {
    CHECK(on_segment(P(0, 0), P(4, 0), P(2, 0)));
    CHECK(on_segment(P(0, 0), P(4, 0), P(0, 0)));
    CHECK(!on_segment(P(0, 0), P(4, 0), P(5, 0)));
    CHECK(!on_segment(P(0, 0), P(4, 0), P(2, 1)));
    CHECK(strictly_inside_segment(P(0, 0), P(4, 0), P(1, 0)));
    CHECK(!strictly_inside_segment(P(0, 0), P(4, 0), P(4, 0)));
}

TEST_CASE("segment crossing contract") {
    // Proper crossing.
    CHECK(segments_cross(P(0, 0), P(2, 2), P(0, 2), P(2, 0)));
    // Disjoint.
    CHECK(!segments_cross(P(0, 0), P(1, 0), P(0, 1), P(1, 1)));
    // Shared endpoint only: not a crossing.
    CHECK(!segments_cross(P(0, 0), P(1, 1), P(1, 1), P(2, 0)));
    // T-contact: endpoint of one interior to the other.
    CHECK(segments_cross(P(0, 0), P(2, 0), P(1, 0), P(1, 1)));
    // Collinear overlap in more than a point.
    CHECK(segments_cross(P(0, 0), P(3, 0), P(1, 0), P(4, 0)));
    // Collinear, touching at an endpoint only.
    CHECK(!segments_cross(P(0, 0), P(1, 0), P(1, 0), P(2, 0)));
    // Collinear, disjoint.
    CHECK(!segments_cross(P(0, 0), P(1, 0), P(2, 0), P(3, 0)));
    // Identical segments overlap.
    CHECK(segments_cross(P(0, 0), P(1, 1), P(0, 0), P(1, 1)));
}

TEST_CASE("instance validation") {
    CHECK(!validate_instance(polygon({P(0, 0), P(4, 0), P(4, 4), P(0, 4)})));
    CHECK(!validate_instance(point_set({P(0, 0), P(1, 0), P(0, 1), P(5, 5)})));

    CHECK(validate_instance(polygon({P(0, 0), P(1, 0)})));                      // too few
    CHECK(validate_instance(polygon({P(0, 0), P(1, 0), P(0, 0), P(0, 1)})));   // repeated
    // Self-intersecting "bowtie".
    CHECK(validate_instance(polygon({P(0, 0), P(2, 2), P(2, 0), P(0, 2)})));
    // Vertex in the interior of an edge (spike).
    CHECK(validate_instance(polygon({P(0, 0), P(4, 0), P(2, 0), P(2, 2)})));
    CHECK(validate_instance(point_set({P(0, 0), P(1, 1), P(2, 2)})));          // collinear
    CHECK(validate_instance(point_set({P(0, 0), P(1, 1), P(1, 1)})));          // repeated

    // Collinear vertices along a polygon edge chain are fine (no spike).
    CHECK(!validate_instance(polygon({P(0, 0), P(2, 0), P(4, 0), P(4, 4), P(0, 4)})));

    Instance bad = polygon({P(0, 0), P(4, 0), P(0, 4)});
    bad.weights.kind = WeightKind::Explicit;
    bad.weights.matrix = {{Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(0), Rat(2)}, {Rat(1), Rat(3), Rat(0)}};
    CHECK(validate_instance(bad));  // asymmetric
    bad.weights.matrix[2][1] = Rat(2);
    CHECK(!validate_instance(bad));
}

TEST_CASE("point in polygon") {
    std::vector<Point> sq = {P(0, 0), P(4, 0), P(4, 4), P(0, 4)};
    CHECK(point_in_polygon(sq, P(2, 2)));
    CHECK(point_in_polygon(sq, P(0, 2)));   // boundary counts as inside
    CHECK(point_in_polygon(sq, P(4, 4)));
    CHECK(!point_in_polygon(sq, P(5, 2)));
    CHECK(!point_in_polygon(sq, P(-1, -1)));

    // Non-convex: comb-like polygon.
    std::vector<Point> comb = {P(0, 0), P(6, 0), P(6, 4), P(4, 4), P(4, 1),
                               P(3, 1), P(3, 4), P(0, 4)};
    CHECK(point_in_polygon(comb, P(1, 2)));
    CHECK(point_in_polygon(comb, P(5, 2)));
    CHECK(!point_in_polygon(comb, Point{Rat(7, 2), Rat(2)}));  // inside the notch
}

TEST_CASE("edge_allowed for polygons") {
    // Square: both diagonals allowed, boundary edges allowed.
    Instance sq = polygon({P(0, 0), P(4, 0), P(4, 4), P(0, 4)});
    CHECK(edge_allowed(sq, 0, 1));
    CHECK(edge_allowed(sq, 3, 0));
    CHECK(edge_allowed(sq, 0, 2));
    CHECK(edge_allowed(sq, 1, 3));

    // Non-convex quad: only one diagonal lies inside.
    Instance arrow = polygon({P(0, 0), P(4, 0), P(1, 1), P(0, 4)});
    CHECK(edge_allowed(arrow, 1, 3) == false);
    CHECK(edge_allowed(arrow, 0, 2));

    // Collinear chain: the "diagonal" spanning a straight chain contains a
    // vertex in its interior and is not allowed.
    Instance flat = polygon({P(0, 0), P(2, 0), P(4, 0), P(4, 4), P(0, 4)});
    CHECK(!edge_allowed(flat, 0, 2));
    CHECK(edge_allowed(flat, 1, 3));
    CHECK(edge_allowed(flat, 1, 4));
}

TEST_CASE("edge_allowed for point sets") {
    Instance ps = point_set({P(0, 0), P(4, 0), P(2, 0), P(2, 2)});
    CHECK(!edge_allowed(ps, 0, 1));  // index 2 sits in the interior
    CHECK(edge_allowed(ps, 0, 2));
    CHECK(edge_allowed(ps, 0, 3));
    CHECK(edge_allowed(ps, 1, 3));
}

TEST_CASE("fan handle") {
    // Convex polygon: every vertex works, so the handle is vertex 0.
    Instance sq = polygon({P(0, 0), P(4, 0), P(4, 4), P(0, 4)});
    CHECK(find_fan_handle(sq) == 0);

    // Comb polygon: no single vertex sees all others.
    Instance comb = polygon({P(0, 0), P(6, 0), P(6, 4), P(4, 4), P(4, 1),
                             P(3, 1), P(3, 4), P(0, 4)});
    CHECK(!find_fan_handle(comb).has_value());

    // Arrow: the reflex vertex is the unique handle.
    Instance arrow = polygon({P(0, 0), P(4, 0), P(1, 1), P(0, 4)});
    CHECK(find_fan_handle(arrow) == 0);

    // Point sets always admit a handle only if some point connects to all
    // others without a third point interior to the segment.
    Instance ps = point_set({P(0, 0), P(4, 0), P(2, 0), P(2, 2)});
    CHECK(find_fan_handle(ps) == 2);
}

TEST_CASE("hull boundary count") {
    // Square plus interior point.
    CHECK(hull_boundary_count({P(0, 0), P(4, 0), P(4, 4), P(0, 4), P(2, 2)}) == 4);
    // Point interior to a hull edge counts as on the boundary.
    CHECK(hull_boundary_count({P(0, 0), P(4, 0), P(4, 4), P(0, 4), P(2, 0)}) == 5);
    // Triangle.
    CHECK(hull_boundary_count({P(0, 0), P(4, 0), P(0, 4)}) == 3);
    // All points in convex position.
    CHECK(hull_boundary_count({P(0, 0), P(4, 0), P(5, 3), P(2, 6), P(-1, 2)}) == 5);
}
