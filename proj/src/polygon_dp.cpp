#include "madt/polygon_dp.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace madt {

long long alpha_of(int n_total, int i, int j) {
    if (!(0 <= i && i < j && j < n_total))
        throw std::invalid_argument("alpha_of: bad frame");
    return n_total - (j - i + 1);
}

long long split_distance(long long phi, int x, int y, int i, int j, int d, int a, int e,
                         int g) {
    if (!(i <= x && x <= d && d <= y && y <= j))
        throw std::out_of_range("split_distance: index out of frame");
    if (d <= y && y <= e) return phi - 1;
    if (g <= y && y <= j && a < x && x <= d) return phi + 1;
    return phi;
}

PolygonDp::PolygonDp(const Instance& inst, bool use_memo)
    : inst_(inst), n_(inst.n()), use_memo_(use_memo), vis_(allowed_table(inst)) {}

uint64_t PolygonDp::key(int i, int j, int a, int c, int e, int g) {
    uint64_t k = 0;
    for (int v : {i, j, a, c, e, g}) k = (k << 10) | (uint64_t)v;
    return k;
}

long long PolygonDp::ext(int i, int j, int a, int c, int e, int g) {
    // Special vertices must be ordered inside the frame; everything else is a
    // search dead-end worth +infinity, not an error.
    if (!(i <= a && a < c && c <= e && e < g && g <= j)) return INF;
    if (j - i < 2) return INF;

    uint64_t k = key(i, j, a, c, e, g);
    if (use_memo_) {
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
    }
    Choice ch;
    long long v = compute(i, j, a, c, e, g, ch);
    if (use_memo_) {
        ++stats_.states;
        memo_[k] = v;
        choice_[k] = ch;
    }
    return v;
}

long long PolygonDp::compute(int i, int j, int a, int c, int e, int g, Choice& ch) {
    long long alpha = alpha_of(n_, i, j);

    if (j - i == 2) {
        // Triangle frame: only the degenerate special tuple is realizable.
        if (a == i && c == i + 1 && e == i + 1 && g == j) return 3 + 2 * alpha;
        return INF;
    }

    long long best = INF;
    int lo = std::max(c, i + 1), hi = std::min(e, j - 1);
    for (int d = lo; d <= hi; ++d) {
        if (!vis_[i][d] || !vis_[d][j]) continue;

        long long cst = (alpha + j - g + 1) * (long long)(d - a - 1) +
                        (long long)(e - d + 1) * (i - d);

        // Left side of the splitting triangle.
        long long left = INF;
        int la1 = -1, lg1 = -1;
        if (d == i + 1) {
            // Boundary edge: forces a = i and c = d.
            if (a == i && c == d) left = 1 + (alpha + j - d);
        } else {
            for (int a1 = i; a1 <= a + 1; ++a1) {
                for (int g1 = c - 1; g1 <= d; ++g1) {
                    ++stats_.iterations;
                    long long v = ext(i, d, a1, a + 1, c - 1, g1);
                    if (v < left) { left = v; la1 = a1; lg1 = g1; }
                }
            }
        }
        if (left >= INF) continue;

        // Right side.
        long long right = INF;
        int ra2 = -1, rg2 = -1;
        if (d == j - 1) {
            if (e == d && g == j) right = 1 + (alpha + d - i);
        } else {
            for (int a2 = d; a2 <= e + 1; ++a2) {
                for (int g2 = g - 1; g2 <= j; ++g2) {
                    ++stats_.iterations;
                    long long v = ext(d, j, a2, e + 1, g - 1, g2);
                    if (v < right) { right = v; ra2 = a2; rg2 = g2; }
                }
            }
        }
        if (right >= INF) continue;

        long long total = left + right + cst;
        if (total < best) {
            best = total;
            ch = Choice{d, la1, lg1, ra2, rg2};
        }
    }
    return best;
}

void PolygonDp::reconstruct(int i, int j, int a, int c, int e, int g,
                            std::vector<Edge>& out) {
    if (j - i == 2) return;  // triangle: no interior chord
    auto it = choice_.find(key(i, j, a, c, e, g));
    if (it == choice_.end() || it->second.d < 0)
        throw std::logic_error("reconstruction walked into an unsolved state");
    const Choice& ch = it->second;
    int d = ch.d;
    if (d - i >= 2) {
        out.push_back(make_edge(i, d));
        reconstruct(i, d, ch.a1, a + 1, c - 1, ch.g1, out);
    }
    if (j - d >= 2) {
        out.push_back(make_edge(d, j));
        reconstruct(d, j, ch.a2, e + 1, g - 1, ch.g2, out);
    }
}

PolygonDpResult PolygonDp::solve() {
    if (!use_memo_) throw std::logic_error("solve requires memoization");
    PolygonDpResult res;
    int n = n_;

    Triangulation t;
    for (int i = 0; i < n; ++i) t.edges.push_back(make_edge(i, (i + 1) % n));

    if (n == 3) {
        t.normalize();
        res.best = t;
        res.cost = wiener_cost(inst_, t);
        res.stats = stats_;
        return res;
    }

    // Every triangulation realizes exactly one top-level special tuple, so
    // minimizing over all ordered tuples is exact.  Ties: smallest tuple.
    long long best = INF;
    std::array<int, 4> arg{-1, -1, -1, -1};
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c)
            for (int e = c; e < n; ++e)
                for (int g = e + 1; g < n; ++g) {
                    long long v = ext(0, n - 1, a, c, e, g);
                    if (v < best) {
                        best = v;
                        arg = {a, c, e, g};
                    }
                }
    if (best >= INF) throw std::runtime_error("polygon admits no triangulation");

    reconstruct(0, n - 1, arg[0], arg[1], arg[2], arg[3], t.edges);
    t.normalize();

    res.best = t;
    res.cost = wiener_cost(inst_, t);
    res.stats = stats_;
    if (!res.cost.exact || res.cost.exact_total != Rat(best))
        throw std::logic_error("self-check failed: table cost " + std::to_string(best) +
                               " vs rescored " + res.cost.exact_total.str());
    return res;
}

PolygonDpResult solve_polygon_madt(const Instance& inst) {
    if (inst.kind != InstanceKind::Polygon)
        throw std::invalid_argument("polygon solver requires a polygon instance");
    if (inst.weights.kind != WeightKind::Unit)
        throw std::invalid_argument("polygon solver supports unit weights only");
    if (auto err = validate_instance(inst))
        throw std::invalid_argument("invalid polygon: " + *err);
    PolygonDp dp(inst);
    return dp.solve();
}

} // namespace madt
