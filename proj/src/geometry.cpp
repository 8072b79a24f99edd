#include "madt/geometry.hpp"

#include <algorithm>
#include <set>

namespace madt {

namespace {

// Orientation without building large intermediate rationals: compare
// (qx-px)(ry-py) against (qy-py)(rx-px) by cross-multiplying denominators.
// All inputs are int64-backed rationals, so the products fit in __int128 as
// long as coordinates stay below ~2^31 in reduced form, which validation of
// our generated instances guarantees; for safety we fall back to Rat
// arithmetic if a factor is large.
bool small(const Rat& r) {
    long long n = r.num() < 0 ? -r.num() : r.num();
    return n < (1LL << 31) && r.den() < (1LL << 31);
}

} // namespace

int orient(const Point& p, const Point& q, const Point& r) {
    Rat ax = q.x - p.x, ay = q.y - p.y;
    Rat bx = r.x - p.x, by = r.y - p.y;
    if (small(ax) && small(ay) && small(bx) && small(by)) {
        // sign(ax*by - ay*bx) with denominators cleared
        __int128 lhs = (__int128)ax.num() * by.num() * ((__int128)ay.den() * bx.den());
        __int128 rhs = (__int128)ay.num() * bx.num() * ((__int128)ax.den() * by.den());
        return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    }
    return (ax * by - ay * bx).sign();
}

bool on_segment(const Point& a, const Point& b, const Point& q) {
    if (orient(a, b, q) != 0) return false;
    auto between = [](const Rat& lo, const Rat& hi, const Rat& v) {
        return (lo <= v && v <= hi) || (hi <= v && v <= lo);
    };
    return between(a.x, b.x, q.x) && between(a.y, b.y, q.y);
}

bool strictly_inside_segment(const Point& a, const Point& b, const Point& q) {
    return on_segment(a, b, q) && !(q == a) && !(q == b);
}

bool segments_cross(const Point& a1, const Point& a2, const Point& b1, const Point& b2) {
    int o1 = orient(a1, a2, b1);
    int o2 = orient(a1, a2, b2);
    int o3 = orient(b1, b2, a1);
    int o4 = orient(b1, b2, a2);

    // Proper crossing: each segment's endpoints on opposite sides of the other.
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;

    // Degenerate contact: a crossing iff some point is interior to a segment.
    if (o1 == 0 && strictly_inside_segment(a1, a2, b1)) return true;
    if (o2 == 0 && strictly_inside_segment(a1, a2, b2)) return true;
    if (o3 == 0 && strictly_inside_segment(b1, b2, a1)) return true;
    if (o4 == 0 && strictly_inside_segment(b1, b2, a2)) return true;

    // Remaining collinear case: identical or fully overlapping segments whose
    // endpoints coincide pairwise (e.g. the same segment twice).
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        if ((a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1)) return true;
    }
    return false;
}

std::optional<std::string> validate_instance(const Instance& inst) {
    const auto& pts = inst.points;
    int n = inst.n();
    if (n < 3) return "instance needs at least 3 points";

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pts[i] == pts[j])
                return "repeated point at indices " + std::to_string(i) + " and " + std::to_string(j);

    if (inst.kind == InstanceKind::Polygon) {
        // No vertex in the interior of a boundary edge (covers collinear
        // spikes as well).
        for (int i = 0; i < n; ++i) {
            const Point& a = pts[i];
            const Point& b = pts[(i + 1) % n];
            for (int k = 0; k < n; ++k) {
                if (k == i || k == (i + 1) % n) continue;
                if (on_segment(a, b, pts[k]))
                    return "vertex " + std::to_string(k) + " lies on boundary edge (" +
                           std::to_string(i) + "," + std::to_string((i + 1) % n) + ")";
            }
        }
        // Non-adjacent boundary edges must be disjoint; adjacent ones may only
        // share their common endpoint.
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Point &a = pts[i], &b = pts[(i + 1) % n];
                const Point &c = pts[j], &d = pts[(j + 1) % n];
                bool adjacent = ((i + 1) % n == j) || ((j + 1) % n == i);
                if (adjacent) {
                    if (segments_cross(a, b, c, d))
                        return "adjacent boundary edges overlap at vertex ring position " + std::to_string(j);
                } else {
                    if (segments_cross(a, b, c, d) || b == c || a == d || a == c || b == d)
                        return "boundary edges (" + std::to_string(i) + ",.) and (" +
                               std::to_string(j) + ",.) intersect";
                }
            }
        }
    } else {
        bool noncollinear = false;
        for (int i = 2; i < n && !noncollinear; ++i)
            if (orient(pts[0], pts[1], pts[i]) != 0) noncollinear = true;
        if (!noncollinear) return "point set is fully collinear";
    }

    if (inst.weights.kind == WeightKind::Explicit) {
        const auto& m = inst.weights.matrix;
        if ((int)m.size() != n) return "weight matrix has wrong row count";
        for (int i = 0; i < n; ++i) {
            if ((int)m[i].size() != n) return "weight matrix row " + std::to_string(i) + " has wrong length";
            if (!m[i][i].is_zero()) return "weight matrix diagonal must be zero";
            for (int j = 0; j < n; ++j) {
                if (m[i][j] != m[j][i]) return "weight matrix is not symmetric";
                if (i != j && m[i][j].sign() <= 0)
                    return "weight matrix off-diagonal entries must be positive";
            }
        }
    }
    return std::nullopt;
}

bool point_in_polygon(const std::vector<Point>& poly, const Point& q) {
    int n = (int)poly.size();
    for (int i = 0; i < n; ++i)
        if (on_segment(poly[i], poly[(i + 1) % n], q)) return true;

    // Exact crossing-number test: count boundary edges crossed by the upward
    // vertical ray from q, with the half-open rule on x to handle vertices.
    int crossings = 0;
    for (int i = 0; i < n; ++i) {
        Point a = poly[i], b = poly[(i + 1) % n];
        if (a.x > b.x) std::swap(a, b);
        if (a.x <= q.x && q.x < b.x) {
            // Edge spans q.x; count it when q is strictly below the edge.
            if (orient(a, b, q) < 0) ++crossings;  // a->b goes left to right; below means right side
        }
    }
    return crossings % 2 == 1;
}

bool edge_allowed(const Instance& inst, int i, int j) {
    if (i == j) return false;
    const auto& pts = inst.points;
    int n = inst.n();
    const Point &a = pts[i], &b = pts[j];

    // No third input point in the interior of the segment, in either kind.
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (strictly_inside_segment(a, b, pts[k])) return false;
    }
    if (inst.kind == InstanceKind::PointSet) return true;

    bool boundary = ((i + 1) % n == j) || ((j + 1) % n == i);
    if (boundary) return true;

    // Diagonal: must not cross any boundary edge and must run through the
    // polygon interior (midpoint test suffices once crossings are excluded).
    for (int k = 0; k < n; ++k) {
        int k2 = (k + 1) % n;
        if (k == i || k == j || k2 == i || k2 == j) {
            // Shares an endpoint with the diagonal; overlap would imply a
            // vertex interior to a segment, which is already excluded.
            continue;
        }
        if (segments_cross(a, b, pts[k], pts[k2])) return false;
    }
    Point mid{(a.x + b.x) / Rat(2), (a.y + b.y) / Rat(2)};
    return point_in_polygon(pts, mid);
}

std::vector<std::vector<char>> allowed_table(const Instance& inst) {
    int n = inst.n();
    std::vector<std::vector<char>> t(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            t[i][j] = t[j][i] = edge_allowed(inst, i, j) ? 1 : 0;
    return t;
}

std::optional<int> find_fan_handle(const Instance& inst) {
    int n = inst.n();
    for (int i = 0; i < n; ++i) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            if (j != i && !edge_allowed(inst, i, j)) ok = false;
        if (ok) return i;
    }
    return std::nullopt;
}

int hull_boundary_count(const std::vector<Point>& pts) {
    int n = (int)pts.size();
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });

    // Monotone chain over strict turns gives the hull corner set; afterwards
    // every input point lying on a hull edge is counted as a boundary point.
    auto build = [&](bool lower) {
        std::vector<int> h;
        for (int t = 0; t < n; ++t) {
            int i = idx[lower ? t : n - 1 - t];
            while (h.size() >= 2) {
                int o = orient(pts[h[h.size() - 2]], pts[h.back()], pts[i]);
                if (o <= 0) h.pop_back(); else break;
            }
            h.push_back(i);
        }
        return h;
    };
    std::vector<int> lo = build(true), hi = build(false);
    std::vector<int> hull(lo.begin(), lo.end() - 1);
    hull.insert(hull.end(), hi.begin(), hi.end() - 1);
    if (hull.size() < 3) return n;  // fully collinear sets are rejected upstream

    std::set<int> onb(hull.begin(), hull.end());
    int h = (int)hull.size();
    for (int k = 0; k < n; ++k) {
        if (onb.count(k)) continue;
        for (int e = 0; e < h; ++e) {
            if (on_segment(pts[hull[e]], pts[hull[(e + 1) % h]], pts[k])) {
                onb.insert(k);
                break;
            }
        }
    }
    return (int)onb.size();
}

} // namespace madt
