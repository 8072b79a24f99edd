#pragma once

#include <cstdint>
#include <unordered_map>

#include "madt/triangulation.hpp"

namespace madt {

// Extension weight that a frame of length (j - i + 1) contributes per outside
// vertex: alpha counts the polygon vertices outside the frame.
long long alpha_of(int n_total, int i, int j);

// Case analysis for distances across a splitting triangle (i, d, j) with
// special vertices a, e, g: given phi = d(x, d) + d(y, j) for x on the left
// side and y on the right side, returns the true d(x, y).
long long split_distance(long long phi, int x, int y, int i, int j, int d, int a, int e,
                         int g);

struct DpStats {
    long long states = 0;      // memo entries created
    long long iterations = 0;  // inner-loop (d, a', g', a'', g'') steps
};

struct PolygonDpResult {
    Triangulation best;
    CostReport cost;
    DpStats stats;
};

// Link-distance minimum-total-distance triangulation of a simple polygon by
// dynamic programming over frames with four special vertices.  The solver
// re-scores the reconstructed triangulation by shortest paths and refuses to
// return on a mismatch, so its cost is self-checked on every call.
PolygonDpResult solve_polygon_madt(const Instance& inst);

// The DP engine itself, exposed for white-box testing (memo on/off, direct
// state evaluation).
class PolygonDp {
public:
    static constexpr long long INF = (1LL << 60);

    explicit PolygonDp(const Instance& inst, bool use_memo = true);

    // Optimal extension cost of the frame p_i..p_j with special vertices
    // (a, c, e, g); INF when no triangulation realizes the constraints.
    long long ext(int i, int j, int a, int c, int e, int g);

    PolygonDpResult solve();

    const DpStats& stats() const { return stats_; }

private:
    struct Choice {
        int d = -1, a1 = -1, g1 = -1, a2 = -1, g2 = -1;
    };

    const Instance& inst_;
    int n_;
    bool use_memo_;
    std::vector<std::vector<char>> vis_;
    std::unordered_map<uint64_t, long long> memo_;
    std::unordered_map<uint64_t, Choice> choice_;
    DpStats stats_;

    static uint64_t key(int i, int j, int a, int c, int e, int g);
    long long compute(int i, int j, int a, int c, int e, int g, Choice& ch);
    void reconstruct(int i, int j, int a, int c, int e, int g, std::vector<Edge>& out);
};

} // namespace madt
