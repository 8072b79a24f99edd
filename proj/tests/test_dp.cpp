#include "doctest.h"

#include <queue>

#include "madt/polygon_dp.hpp"
#include "test_util.hpp"

using namespace madt;
using madt_test::P;
using madt_test::random_simple_polygon;

namespace {

Instance polygon(std::vector<Point> pts) {
    Instance inst;
    inst.kind = InstanceKind::Polygon;
    inst.points = std::move(pts);
    return inst;
}

Instance convex_ngon(int n) {
    std::vector<Point> pts;
    int lower = n / 2 + 1, upper = n - lower;
    for (int i = 0; i < lower; ++i) pts.push_back(P(i * 10, i * i));
    for (int i = upper; i >= 1; --i) pts.push_back(P(i * 10 - 5, 1000 - i * i));
    Instance inst;
    inst.kind = InstanceKind::Polygon;
    inst.points = std::move(pts);
    return inst;
}

std::vector<long long> bfs_dist(int n, const std::vector<Edge>& edges, int src) {
    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    std::vector<long long> d(n, -1);
    std::queue<int> q;
    d[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (d[v] < 0) {
                d[v] = d[u] + 1;
                q.push(v);
            }
    }
    return d;
}

// Apex of a triangle over edge (u, w): the vertex strictly between u and w in
// index order adjacent to both.
int apex_between(const Triangulation& t, int u, int w) {
    for (int b = u + 1; b < w; ++b)
        if (t.has(u, b) && t.has(b, w)) return b;
    return -1;
}

} // namespace

TEST_CASE("alpha_of") {
    CHECK(alpha_of(10, 0, 9) == 0);
    CHECK(alpha_of(10, 0, 4) == 5);
    CHECK(alpha_of(6, 3, 5) == 3);
    CHECK_THROWS(alpha_of(6, 4, 4));
}

TEST_CASE("triangle base cases") {
    Instance tri = polygon({P(0, 0), P(4, 0), P(0, 4)});
    PolygonDp dp(tri);
    CHECK(dp.ext(0, 2, 0, 1, 1, 2) == 3);
    CHECK(dp.ext(0, 2, 0, 2, 2, 2) == PolygonDp::INF);  // malformed specials

    // alpha > 0 requires a larger ambient polygon; a pentagon's triangle
    // frame (0..2) has alpha = 2 and extension value 3 + 2*2.
    Instance pent = convex_ngon(5);
    PolygonDp dp5(pent);
    CHECK(dp5.ext(0, 2, 0, 1, 1, 2) == 7);
}

TEST_CASE("solver matches the fan closed form on convex polygons") {
    for (int n = 4; n <= 12; ++n) {
        Instance inst = convex_ngon(n);
        PolygonDpResult r = solve_polygon_madt(inst);
        CAPTURE(n);
        CHECK(r.cost.exact_total == Rat(fan_cost_closed_form(inst)));
        CHECK(!validate_triangulation(inst, r.best));
    }
}

TEST_CASE("solver rejects unsupported inputs") {
    Instance tri = polygon({P(0, 0), P(4, 0), P(0, 4)});
    tri.weights.kind = WeightKind::Euclidean;
    CHECK_THROWS(solve_polygon_madt(tri));
    Instance ps;
    ps.kind = InstanceKind::PointSet;
    ps.points = {P(0, 0), P(4, 0), P(0, 4)};
    CHECK_THROWS(solve_polygon_madt(ps));
}

TEST_CASE("solver equals brute force on convex corpora") {
    for (int n = 4; n <= 8; ++n) {
        Instance inst = convex_ngon(n);
        BruteForceResult bf = brute_force_madt(inst);
        PolygonDpResult dp = solve_polygon_madt(inst);
        CAPTURE(n);
        CHECK(dp.cost.exact_total == bf.cost.exact_total);
    }
}

TEST_CASE("solver equals brute force on random simple polygons") {
    int done = 0;
    for (unsigned seed = 1; done < 50; ++seed) {
        int n = 5 + (int)(seed % 6);  // 5..10
        Instance inst = random_simple_polygon(n, seed * 977);
        BruteForceResult bf = brute_force_madt(inst);
        PolygonDpResult dp = solve_polygon_madt(inst);
        CAPTURE(seed);
        CAPTURE(n);
        CHECK(dp.cost.exact_total == bf.cost.exact_total);
        CHECK(!validate_triangulation(inst, dp.best));
        ++done;
    }
}

TEST_CASE("memoized and memo-free evaluation agree") {
    Instance inst = random_simple_polygon(6, 4242);
    PolygonDp with(inst, true), without(inst, false);
    int n = inst.n();
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c)
            for (int e = c; e < n; ++e)
                for (int g = e + 1; g < n; ++g)
                    CHECK(with.ext(0, n - 1, a, c, e, g) ==
                          without.ext(0, n - 1, a, c, e, g));
}

TEST_CASE("distance-partition structure at splitting triangles") {
    // For every triangulation of an octagon and the triangle resting on the
    // closing edge (0, n-1): vertices left of the apex split into three
    // contiguous bands by their distances to the two triangle corners.
    Instance inst = convex_ngon(8);
    int n = inst.n();
    enumerate_polygon_triangulations(inst, [&](const Triangulation& t) {
        int d = apex_between(t, 0, n - 1);
        REQUIRE(d > 0);
        auto d0 = bfs_dist(n, t.edges, 0);
        auto dd = bfs_dist(n, t.edges, d);
        int a = -1, c = -1;
        for (int k = 0; k <= d; ++k)
            if (d0[k] < dd[k]) a = k;
        for (int k = d; k >= 0; --k)
            if (d0[k] > dd[k]) c = k;
        REQUIRE(a >= 0);
        REQUIRE(c > a);
        for (int k = 0; k <= d; ++k) {
            if (d0[k] < dd[k]) CHECK(k <= a);
            if (d0[k] > dd[k]) CHECK(k >= c);
            if (d0[k] == dd[k]) CHECK((a < k && k < c));
        }
        return true;
    });
}

TEST_CASE("split distance case formula against true distances") {
    Instance inst = convex_ngon(8);
    int n = inst.n();
    long long checked = 0;
    enumerate_polygon_triangulations(inst, [&](const Triangulation& t) {
        int d = apex_between(t, 0, n - 1);
        REQUIRE(d > 0);
        auto d0 = bfs_dist(n, t.edges, 0);
        auto dd = bfs_dist(n, t.edges, d);
        auto dn = bfs_dist(n, t.edges, n - 1);
        // Left-side specials relative to corners (0, d), right-side specials
        // relative to corners (d, n-1).
        int a = -1, e = -1, g = n;
        for (int k = 0; k <= d; ++k)
            if (d0[k] < dd[k]) a = k;
        for (int k = d; k < n; ++k)
            if (dd[k] < dn[k]) e = k;
        for (int k = n - 1; k >= d; --k)
            if (dn[k] < dd[k]) g = k;
        std::vector<std::vector<long long>> dist(n);
        for (int s = 0; s < n; ++s) dist[s] = bfs_dist(n, t.edges, s);
        for (int x = 0; x <= d; ++x)
            for (int y = d; y < n; ++y) {
                long long phi = dd[x] + dn[y];
                CHECK(dist[x][y] ==
                      split_distance(phi, x, y, 0, n - 1, d, a, e, g));
                ++checked;
            }
        return true;
    });
    CHECK(checked > 0);
    CHECK_THROWS(split_distance(0, 5, 2, 0, 7, 3, 1, 4, 6));  // x > d
}

TEST_CASE("special-vertex hand-off characterization") {
    // In a triangulated polygon with triangles (i, d, j) and (i, b, d):
    // the largest a with d(a,i) < d(a,d) makes a+1 the smallest index with
    // d(a+1,b) < d(a+1,i), and the smallest c with d(c,d) < d(c,i) makes
    // c-1 the largest index in [b,d] with d(c-1,b) < d(c-1,d).
    Instance inst = convex_ngon(8);
    int n = inst.n();
    enumerate_polygon_triangulations(inst, [&](const Triangulation& t) {
        int d = apex_between(t, 0, n - 1);
        REQUIRE(d > 0);
        if (d < 2) return true;  // left side on the boundary: nothing to check
        int b = apex_between(t, 0, d);
        REQUIRE(b > 0);
        auto d0 = bfs_dist(n, t.edges, 0);
        auto dd = bfs_dist(n, t.edges, d);
        auto db = bfs_dist(n, t.edges, b);
        int a = -1, c = -1;
        for (int k = 0; k <= d; ++k)
            if (d0[k] < dd[k]) a = k;
        for (int k = d; k >= 0; --k)
            if (dd[k] < d0[k]) c = k;
        int smallest = -1;
        for (int k = 0; k <= b; ++k)
            if (db[k] < d0[k]) { smallest = k; break; }
        CHECK(smallest == a + 1);
        int largest = -1;
        for (int k = b; k <= d; ++k)
            if (db[k] < dd[k]) largest = k;
        CHECK(largest == c - 1);
        return true;
    });
}

TEST_CASE("solver handles non-convex polygons with forced diagonals") {
    // Comb polygon: no fan exists, the DP must still produce the optimum.
    Instance comb = polygon({P(0, 0), P(6, 0), P(6, 4), P(4, 4), P(4, 1),
                             P(3, 1), P(3, 4), P(0, 4)});
    BruteForceResult bf = brute_force_madt(comb);
    PolygonDpResult dp = solve_polygon_madt(comb);
    CHECK(dp.cost.exact_total == bf.cost.exact_total);
    CHECK(!validate_triangulation(comb, dp.best));
}
