#include "madt/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace madt {

// ---------------------------------------------------------------------------
// Standalone clause gadget table
// ---------------------------------------------------------------------------

namespace {

// Edge slots per mouth, giving edge index 8*j + slot.
enum ClauseSlot { SL_A, SL_B, SL_GAP, SL_LP, SL_LQ, SL_QP, SL_CAP1, SL_CAP2 };

inline int ce(int j, int slot) { return 8 * j + slot; }

ClauseGadget make_clause_gadget() {
    ClauseGadget g;
    auto P = [](long long x, long long y) { return Point{Rat(x), Rat(y)}; };
    g.pts[CV_G0] = P(-100, 173);
    g.pts[CV_P0] = P(100, 173);
    g.pts[CV_G1] = P(200, 0);
    g.pts[CV_P1] = P(100, -173);
    g.pts[CV_G2] = P(-100, -173);
    g.pts[CV_P2] = P(-200, 0);
    g.pts[CV_TQ0] = P(591, 104);
    g.pts[CV_TP0] = P(544, -254);
    g.pts[CV_TQ1] = P(-205, -564);
    g.pts[CV_TP1] = P(-492, -344);
    g.pts[CV_TQ2] = P(-386, 460);
    g.pts[CV_TP2] = P(-52, 598);
    static const char* names[24] = {
        "A0", "B0", "gap0", "LP0", "LQ0", "QP0", "cap1_0", "cap2_0",
        "A1", "B1", "gap1", "LP1", "LQ1", "QP1", "cap1_1", "cap2_1",
        "A2", "B2", "gap2", "LP2", "LQ2", "QP2", "cap1_2", "cap2_2",
    };
    auto gv = [](int j) { return CV_G0 + 2 * (j % 3); };
    auto pv = [](int j) { return CV_P0 + 2 * (j % 3); };
    auto tq = [](int j) { return CV_TQ0 + 2 * (j % 3); };
    auto tp = [](int j) { return CV_TP0 + 2 * (j % 3); };
    for (int j = 0; j < 3; ++j) {
        g.edges[ce(j, SL_A)] = {pv(j), gv(j + 1), false, names[ce(j, SL_A)]};
        g.edges[ce(j, SL_B)] = {pv(j), gv(j + 2), false, names[ce(j, SL_B)]};
        g.edges[ce(j, SL_GAP)] = {gv(j), pv(j), false, names[ce(j, SL_GAP)]};
        g.edges[ce(j, SL_LP)] = {tp(j), pv(j), false, names[ce(j, SL_LP)]};
        g.edges[ce(j, SL_LQ)] = {tq(j), gv(j), false, names[ce(j, SL_LQ)]};
        g.edges[ce(j, SL_QP)] = {tq(j), pv(j), false, names[ce(j, SL_QP)]};
        g.edges[ce(j, SL_CAP1)] = {tq(j), tp(j), true, names[ce(j, SL_CAP1)]};
        g.edges[ce(j, SL_CAP2)] = {tp(j), tq(j + 1), true, names[ce(j, SL_CAP2)]};
        g.crossings.push_back({ce(j, SL_LQ), ce(j, SL_A)});
        g.crossings.push_back({ce(j, SL_LQ), ce(j, SL_B)});
        g.crossings.push_back({ce(j, SL_LQ), ce(j, SL_LP)});
    }
    g.crossings.push_back({ce(0, SL_B), ce(1, SL_B)});
    g.crossings.push_back({ce(0, SL_B), ce(2, SL_B)});
    g.crossings.push_back({ce(1, SL_B), ce(2, SL_B)});
    return g;
}

} // namespace

const ClauseGadget& clause_gadget() {
    static const ClauseGadget g = make_clause_gadget();
    return g;
}

std::vector<int> clause_pattern_edges(const std::array<bool, 3>& pattern) {
    std::vector<int> out;
    for (int j = 0; j < 3; ++j) {
        out.push_back(ce(j, SL_GAP));
        out.push_back(ce(j, SL_QP));
        out.push_back(ce(j, SL_CAP1));
        out.push_back(ce(j, SL_CAP2));
        if (pattern[j]) {
            out.push_back(ce(j, SL_LP));
            out.push_back(ce(j, SL_A));
        } else {
            out.push_back(ce(j, SL_LQ));
        }
    }
    // The three long diagonals cross pairwise, so at most one can be kept;
    // P_j--G_{j+2} is usable only when mouth j has its arms free (literal j
    // true) and it pays off most when it reaches the G hub of a false mouth.
    int jstar = -1;
    for (int j = 0; j < 3 && jstar < 0; ++j)
        if (pattern[j] && !pattern[(j + 2) % 3]) jstar = j;
    if (jstar < 0 && (pattern[0] || pattern[1] || pattern[2])) jstar = 0;
    if (jstar >= 0) out.push_back(ce(jstar, SL_B));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> clause_baseline_edges() {
    std::vector<int> out;
    for (int j = 0; j < 3; ++j) {
        out.push_back(ce(j, SL_GAP));
        out.push_back(ce(j, SL_QP));
        out.push_back(ce(j, SL_CAP1));
        out.push_back(ce(j, SL_CAP2));
        out.push_back(ce(j, SL_LP));
        out.push_back(ce(j, SL_A));
    }
    out.push_back(ce(0, SL_B));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Exact all-pairs shortest paths over 12 vertices.
std::array<std::array<Rat, 12>, 12> clause_apsp(const std::vector<int>& sel, const Rat& eps) {
    const ClauseGadget& g = clause_gadget();
    const Rat inf(std::numeric_limits<long long>::max() / 4, 1);
    std::array<std::array<Rat, 12>, 12> d;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) d[i][j] = i == j ? Rat(0) : inf;
    for (int e : sel) {
        Rat w = g.edges[e].unit ? Rat(1) : eps;
        int a = g.edges[e].a, b = g.edges[e].b;
        if (w < d[a][b]) d[a][b] = d[b][a] = w;
    }
    for (int k = 0; k < 12; ++k)
        for (int i = 0; i < 12; ++i) {
            if (!(d[i][k] < inf)) continue;
            for (int j = 0; j < 12; ++j) {
                if (!(d[k][j] < inf)) continue;
                Rat via = d[i][k] + d[k][j];
                if (via < d[i][j]) d[i][j] = via;
            }
        }
    return d;
}

Rat clause_wiener(const std::array<std::array<Rat, 12>, 12>& d) {
    Rat w(0);
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) w += d[i][j];
    return w;
}

} // namespace

ClauseCrossing clause_crossing_costs(const std::array<bool, 3>& pattern, const Rat& eps) {
    if (!(Rat(0) < eps) || !(eps < Rat(1)))
        throw std::invalid_argument("clause_crossing_costs: eps must be in (0,1)");
    const ClauseGadget& g = clause_gadget();
    // Crossing partners as bitmasks over the 24 edges.
    std::array<uint32_t, 24> cross{};
    for (auto [a, b] : g.crossings) {
        cross[a] |= 1u << b;
        cross[b] |= 1u << a;
    }
    uint32_t pinned_in = 0, pinned_out = 0;
    for (int j = 0; j < 3; ++j) {
        pinned_in |= 1u << ce(j, pattern[j] ? SL_LP : SL_LQ);
        pinned_out |= 1u << ce(j, pattern[j] ? SL_LQ : SL_LP);
    }
    std::vector<int> cand;
    for (int e = 0; e < 24; ++e)
        if (!(pinned_out & (1u << e))) cand.push_back(e);

    bool have_best = false;
    Rat bestW;
    std::vector<int> best_sel;
    std::array<Rat, 3> best_costs;

    std::vector<int> cur;
    auto consider = [&](const std::vector<int>& sel, uint32_t mask) {
        // Maximality among candidates: every excluded candidate conflicts.
        for (int e : cand)
            if (!(mask & (1u << e)) && !(cross[e] & mask)) return;
        auto d = clause_apsp(sel, eps);
        Rat w = clause_wiener(d);
        std::vector<int> sorted = sel;
        std::sort(sorted.begin(), sorted.end());
        if (!have_best || w < bestW || (w == bestW && sorted < best_sel)) {
            have_best = true;
            bestW = w;
            best_sel = sorted;
            int e0 = pattern[0] ? CV_TP0 : CV_TQ0;
            int e1 = pattern[1] ? CV_TP1 : CV_TQ1;
            int e2 = pattern[2] ? CV_TP2 : CV_TQ2;
            best_costs = {d[e0][e1], d[e0][e2], d[e1][e2]};
        }
    };
    std::function<void(size_t, uint32_t)> rec = [&](size_t i, uint32_t mask) {
        if (i == cand.size()) {
            consider(cur, mask);
            return;
        }
        int e = cand[i];
        bool can_take = !(cross[e] & mask);
        if (pinned_in & (1u << e)) {
            if (!can_take) return;  // pinned edge blocked: dead branch
            cur.push_back(e);
            rec(i + 1, mask | (1u << e));
            cur.pop_back();
            return;
        }
        if (can_take) {
            cur.push_back(e);
            rec(i + 1, mask | (1u << e));
            cur.pop_back();
        }
        rec(i + 1, mask);
    };
    rec(0, 0);
    if (!have_best) throw std::logic_error("clause_crossing_costs: no maximal configuration");
    return ClauseCrossing{best_costs, bestW};
}

// ---------------------------------------------------------------------------
// Parameter schedule
// ---------------------------------------------------------------------------

Rat sigma_for(int n_c, long long N) {
    __int128 s = (__int128)4 * n_c * N;
    __int128 v = s * s * s;
    if (v > std::numeric_limits<long long>::max())
        throw std::overflow_error("sigma_for: value exceeds 64 bits");
    return Rat((long long)v);
}

namespace {

std::string int128_str(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + (int)(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

} // namespace

ScaleSchedule paper_scale(int n_c) {
    if (n_c <= 0 || n_c > 1000) throw std::invalid_argument("paper_scale: n_c out of range");
    unsigned __int128 nc = (unsigned __int128)n_c;
    unsigned __int128 N = nc * nc * nc * 1000000u;
    unsigned __int128 eden = nc * nc * nc * nc * nc * nc * (unsigned __int128)10000000000000ull;
    unsigned __int128 pts = 18 * nc + 3 * nc * N;
    ScaleSchedule s;
    s.N_expr = int128_str(N);
    s.eps_expr = "1/" + int128_str(eden);
    s.point_count_expr = int128_str(pts);
    return s;
}

// ---------------------------------------------------------------------------
// Layout
// ---------------------------------------------------------------------------

namespace {

constexpr long long R_OUT = 60000;   // loop outer-rail radius
constexpr long long R_IN = 54000;    // loop inner-rail radius
constexpr long long VAR_DX = 260000; // spacing between loop centers
constexpr long long CLAUSE_Y0 = 200000;
constexpr long long CLAUSE_DY = 170000;
constexpr long long CLAUSE_SCALE = 24;

struct XY {
    double x, y;
};

double ang_diff(double a, double b) {
    double d = std::fmod(a - b, 2 * std::numbers::pi);
    if (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    if (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    return std::abs(d);
}

Point round_pt(double x, double y) {
    return Point{Rat((long long)std::llround(x)), Rat((long long)std::llround(y))};
}

struct ClausePlacement {
    double cx, cy;
    double alpha;     // rotation
    bool reflect;     // reflect local x before rotating
    XY local(const Point& p) const {
        double x = p.x.to_double() * (double)CLAUSE_SCALE;
        double y = p.y.to_double() * (double)CLAUSE_SCALE;
        if (reflect) x = -x;
        double c = std::cos(alpha), s = std::sin(alpha);
        return {cx + x * c - y * s, cy + x * s + y * c};
    }
};

} // namespace

bool literal_value(const GadgetInstance& g, int k, int mouth, const std::vector<bool>& a) {
    const Literal& l = g.circuit.clauses[k].lits[mouth];
    bool v = a[l.var];
    return l.neg ? !v : v;
}

GadgetInstance build_gadget_instance(const PlanarCircuit& c, long long N, const Rat& eps) {
    if (auto err = validate_circuit(c))
        throw std::invalid_argument("build_gadget_instance: " + *err);
    if (!repetition_free(c))
        throw std::invalid_argument("build_gadget_instance: circuit is not normalized");
    if (N < 16 || N % 16 != 0)
        throw std::invalid_argument("build_gadget_instance: N must be a positive multiple of 16");
    if (!(Rat(0) < eps) || !(eps < Rat(1)))
        throw std::invalid_argument("build_gadget_instance: eps must be in (0,1)");

    const int n_c = (int)c.clauses.size();
    const int n_v = c.n_vars;
    GadgetInstance g;
    g.circuit = c;
    g.params.N = N;
    g.params.eps = eps;
    g.params.sigma = sigma_for(n_c, N);
    g.params.n_c = n_c;
    g.params.n_v = n_v;

    auto var_x = [&](int v) { return (double)(v * VAR_DX); };

    // --- clause placement -------------------------------------------------
    // Nesting depth per side: number of same-side clauses strictly containing
    // the clause's variable span; outermost clauses sit furthest from the
    // line so straight legs clear the nested ones.
    std::vector<std::pair<int, int>> span(n_c);
    for (int k = 0; k < n_c; ++k) {
        int lo = c.clauses[k].lits[0].var, hi = lo;
        for (const Literal& l : c.clauses[k].lits) {
            lo = std::min(lo, l.var);
            hi = std::max(hi, l.var);
        }
        span[k] = {lo, hi};
    }
    std::vector<int> depth(n_c, 0);
    int max_depth_above = 0, max_depth_below = 0;
    for (int k = 0; k < n_c; ++k) {
        for (int j = 0; j < n_c; ++j)
            if (j != k && c.clauses[j].above == c.clauses[k].above &&
                span[j].first <= span[k].first && span[k].second <= span[j].second &&
                span[j] != span[k])
                ++depth[k];
        (c.clauses[k].above ? max_depth_above : max_depth_below) =
            std::max(c.clauses[k].above ? max_depth_above : max_depth_below, depth[k]);
    }

    const ClauseGadget& cg = clause_gadget();
    std::array<XY, 3> mouth_mid_local;
    for (int j = 0; j < 3; ++j) {
        int tq = CV_TQ0 + 2 * j, tp = CV_TP0 + 2 * j;
        mouth_mid_local[j] = {(cg.pts[tq].x.to_double() + cg.pts[tp].x.to_double()) / 2,
                              (cg.pts[tq].y.to_double() + cg.pts[tp].y.to_double()) / 2};
    }

    std::vector<ClausePlacement> place(n_c);
    for (int k = 0; k < n_c; ++k) {
        ClausePlacement pl;
        pl.cx = (var_x(span[k].first) + var_x(span[k].second)) / 2;
        int md = c.clauses[k].above ? max_depth_above : max_depth_below;
        double h = (double)CLAUSE_Y0 + (double)(md - depth[k]) * (double)CLAUSE_DY;
        pl.cy = c.clauses[k].above ? h : -h;
        // Pick rotation/reflection so every mouth roughly faces its variable.
        double best = std::numeric_limits<double>::infinity();
        for (int refl = 0; refl < 2; ++refl) {
            for (int step = 0; step < 512; ++step) {
                double alpha = 2 * std::numbers::pi * step / 512;
                double worst = 0;
                for (int j = 0; j < 3; ++j) {
                    double mx = mouth_mid_local[j].x * (double)CLAUSE_SCALE;
                    double my = mouth_mid_local[j].y * (double)CLAUSE_SCALE;
                    if (refl) mx = -mx;
                    double ca = std::cos(alpha), sa = std::sin(alpha);
                    double wx = pl.cx + mx * ca - my * sa, wy = pl.cy + mx * sa + my * ca;
                    double normal = std::atan2(wy - pl.cy, wx - pl.cx);
                    double tx = var_x(c.clauses[k].lits[j].var);
                    double target = std::atan2(0 - wy, tx - wx);
                    worst = std::max(worst, ang_diff(normal, target));
                }
                if (worst < best) {
                    best = worst;
                    pl.alpha = alpha;
                    pl.reflect = refl != 0;
                }
            }
        }
        place[k] = pl;
    }

    // --- point emission ---------------------------------------------------
    std::vector<Point> pts;
    auto add_point = [&](const Point& p, PointRole role, std::string gadget, std::string label) {
        pts.push_back(p);
        g.roles.push_back(role);
        g.provenance.push_back({std::move(gadget), std::move(label)});
        return (int)pts.size() - 1;
    };

    // Legs per variable: (clause, mouth, world attach angle).
    struct Leg {
        int clause, mouth;
        double angle;
    };
    std::vector<std::vector<Leg>> legs(n_v);
    for (int k = 0; k < n_c; ++k)
        for (int j = 0; j < 3; ++j) {
            int v = c.clauses[k].lits[j].var;
            int tq = CV_TQ0 + 2 * j, tp = CV_TP0 + 2 * j;
            XY a = place[k].local(cg.pts[tq]), b = place[k].local(cg.pts[tp]);
            double mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
            legs[v].push_back({k, j, std::atan2(my - 0.0, mx - var_x(v))});
        }
    for (int v = 0; v < n_v; ++v)
        std::sort(legs[v].begin(), legs[v].end(),
                  [](const Leg& a, const Leg& b) { return a.angle < b.angle; });

    const long long cols_per_bridge = N / 2 + 1;
    g.loops.resize(n_v);
    for (int v = 0; v < n_v; ++v) {
        int d = (int)legs[v].size();
        long long m = (long long)d * cols_per_bridge;  // ladder columns, = d*(N+2)/2
        std::vector<double> angle(m);
        for (int i = 0; i < d; ++i) {
            double t0 = legs[v][i].angle;
            double t1 = legs[v][(i + 1) % d].angle;
            if (i + 1 == d) t1 += 2 * std::numbers::pi;
            if (t1 <= t0) t1 += 2 * std::numbers::pi;
            long long c0 = (long long)i * cols_per_bridge;
            for (long long cc = 0; cc < cols_per_bridge; ++cc)
                angle[c0 + cc] = t0 + (t1 - t0) * (double)cc / (double)cols_per_bridge;
        }
        LoopInfo& L = g.loops[v];
        L.var = v;
        double cx = var_x(v);
        for (long long cc = 0; cc < m; ++cc)
            L.outer.push_back(add_point(
                round_pt(cx + R_OUT * std::cos(angle[cc]), R_OUT * std::sin(angle[cc])),
                PointRole::Wire, "loop " + std::to_string(v), "outer " + std::to_string(cc)));
        for (long long cc = 0; cc < m; ++cc)
            L.inner.push_back(add_point(
                round_pt(cx + R_IN * std::cos(angle[cc]), R_IN * std::sin(angle[cc])),
                PointRole::Wire, "loop " + std::to_string(v), "inner " + std::to_string(cc)));
        for (int i = 0; i < d; ++i) {
            long long c0 = (long long)i * cols_per_bridge;
            L.bridge_columns.push_back((int)c0);
            g.roles[L.outer[c0]] = PointRole::BridgeBase;
            g.roles[L.outer[(c0 + 1) % m]] = PointRole::BridgeBase;
        }
    }

    g.clauses.resize(n_c);
    static const char* cv_names[12] = {"G0", "P0", "G1", "P1", "G2", "P2",
                                       "tq0", "tp0", "tq1", "tp1", "tq2", "tp2"};
    for (int k = 0; k < n_c; ++k) {
        g.clauses[k].clause = k;
        for (int i = 0; i < 12; ++i) {
            XY w = place[k].local(cg.pts[i]);
            g.clauses[k].verts[i] = add_point(round_pt(w.x, w.y), PointRole::Clause,
                                              "clause " + std::to_string(k), cv_names[i]);
        }
    }

    const int n = (int)pts.size();

    // --- edges ------------------------------------------------------------
    auto add_edge = [&](int a, int b, Rat w, EdgeClass cls, int loop, int clause, int bridge) {
        GadgetEdge e;
        e.a = std::min(a, b);
        e.b = std::max(a, b);
        e.w = w;
        e.cls = cls;
        e.loop = loop;
        e.clause = clause;
        e.bridge = bridge;
        g.edges.push_back(e);
        return (int)g.edges.size() - 1;
    };

    for (int v = 0; v < n_v; ++v) {
        LoopInfo& L = g.loops[v];
        long long m = (long long)L.outer.size();
        for (long long cc = 0; cc < m; ++cc) {
            long long nx = (cc + 1) % m;
            add_edge(L.outer[cc], L.outer[nx], Rat(1), EdgeClass::Solid, v, -1, -1);
            add_edge(L.inner[cc], L.inner[nx], Rat(1), EdgeClass::Solid, v, -1, -1);
            add_edge(L.outer[cc], L.inner[cc], Rat(1), EdgeClass::Solid, v, -1, -1);
            int dot = add_edge(L.outer[cc], L.inner[nx], Rat(1), EdgeClass::Dotted, v, -1, -1);
            int dash = add_edge(L.inner[cc], L.outer[nx], Rat(1), EdgeClass::Dashed, v, -1, -1);
            g.intended_crossings.push_back({dot, dash});
        }
    }

    for (int k = 0; k < n_c; ++k) {
        std::map<int, int> local_edge;  // gadget-table index -> instance edge index
        for (int t = 0; t < 24; ++t) {
            const auto& e = cg.edges[t];
            int idx = add_edge(g.clauses[k].verts[e.a], g.clauses[k].verts[e.b],
                               e.unit ? Rat(1) : eps,
                               e.unit ? EdgeClass::ClauseUnit : EdgeClass::ClauseEps, -1, k, -1);
            g.clauses[k].edge_index[t] = idx;
            local_edge[t] = idx;
        }
        for (auto [a, b] : cg.crossings)
            g.intended_crossings.push_back({local_edge[a], local_edge[b]});
    }

    // Bridges, in loop order per variable.
    for (int v = 0; v < n_v; ++v) {
        LoopInfo& L = g.loops[v];
        long long m = (long long)L.outer.size();
        for (size_t i = 0; i < legs[v].size(); ++i) {
            const Leg& leg = legs[v][i];
            BridgeInfo br;
            br.var = v;
            br.clause = leg.clause;
            br.mouth = leg.mouth;
            br.positive = !c.clauses[leg.clause].lits[leg.mouth].neg;
            long long c0 = L.bridge_columns[i];
            br.base_first = L.outer[c0];
            br.base_second = L.outer[(c0 + 1) % m];
            int tq = g.clauses[leg.clause].verts[CV_TQ0 + 2 * leg.mouth];
            int tp = g.clauses[leg.clause].verts[CV_TP0 + 2 * leg.mouth];
            int t_dot = br.positive ? tp : tq;
            int t_dash = br.positive ? tq : tp;
            // Assign bases so the two edges cross each other.
            int b_dot = br.base_first, b_dash = br.base_second;
            if (!segments_cross(pts[b_dot], pts[t_dot], pts[b_dash], pts[t_dash]))
                std::swap(b_dot, b_dash);
            int bi = (int)g.bridges.size();
            br.edge_dotted = add_edge(b_dot, t_dot, Rat(1), EdgeClass::Dotted, -1, leg.clause, bi);
            br.edge_dashed = add_edge(b_dash, t_dash, Rat(1), EdgeClass::Dashed, -1, leg.clause, bi);
            g.intended_crossings.push_back({br.edge_dotted, br.edge_dashed});
            L.bridges.push_back(bi);
            g.bridges.push_back(br);
        }
    }

    // --- weight matrix ----------------------------------------------------
    g.inst.kind = InstanceKind::PointSet;
    g.inst.points = pts;
    g.inst.weights.kind = WeightKind::Explicit;
    g.inst.weights.matrix.assign(n, std::vector<Rat>(n, g.params.sigma));
    for (int i = 0; i < n; ++i) g.inst.weights.matrix[i][i] = Rat(0);
    for (const GadgetEdge& e : g.edges)
        g.inst.weights.matrix[e.a][e.b] = g.inst.weights.matrix[e.b][e.a] = e.w;

    VerifyReport rep = verify_gadget_instance(g);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "build_gadget_instance: layout verification failed:";
        for (size_t i = 0; i < rep.violations.size() && i < 8; ++i)
            os << "\n  " << rep.violations[i];
        if (rep.violations.size() > 8)
            os << "\n  (+" << rep.violations.size() - 8 << " more)";
        throw std::runtime_error(os.str());
    }
    return g;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerifyReport verify_gadget_instance(const GadgetInstance& g) {
    VerifyReport rep;
    auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
    const int n = g.inst.n();
    const auto& M = g.inst.weights.matrix;

    if (g.inst.weights.kind != WeightKind::Explicit || (int)M.size() != n) {
        fail("weight matrix missing or of wrong size");
        return rep;
    }
    for (int i = 0; i < n; ++i) {
        if (!M[i][i].is_zero()) fail("nonzero diagonal weight at " + std::to_string(i));
        for (int j = i + 1; j < n; ++j) {
            if (M[i][j] != M[j][i]) {
                fail("asymmetric weight at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (!(Rat(0) < M[i][j]))
                fail("non-positive weight at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }

    long long expect = 18LL * g.params.n_c + 3LL * g.params.n_c * g.params.N;
    if (n != expect)
        fail("point count " + std::to_string(n) + " != " + std::to_string(expect));
    if ((int)g.clauses.size() != g.params.n_c) fail("clause gadget count mismatch");
    if ((int)g.bridges.size() != 3 * g.params.n_c)
        fail("bridge count " + std::to_string(g.bridges.size()) + " != 3 n_c");
    for (const LoopInfo& L : g.loops)
        if (L.bridges.size() < 2)
            fail("loop " + std::to_string(L.var) + " has fewer than 2 bridges");

    // Edge weights and matrix consistency.
    std::set<std::pair<int, int>> edge_pairs;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const GadgetEdge& e = g.edges[i];
        if (!edge_pairs.insert({e.a, e.b}).second)
            fail("duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
        bool is_eps = e.cls == EdgeClass::ClauseEps;
        Rat want = is_eps ? g.params.eps : Rat(1);
        if (e.w != want || M[e.a][e.b] != want)
            fail("edge " + std::to_string(i) + " weight mismatch");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!edge_pairs.count({i, j}) && M[i][j] != g.params.sigma)
                fail("irrelevant pair (" + std::to_string(i) + "," + std::to_string(j) +
                     ") has weight " + M[i][j].str());

    // Geometric crossings: exactly the intended pairs.
    std::set<std::pair<size_t, size_t>> intended;
    for (auto [a, b] : g.intended_crossings)
        intended.insert({std::min((size_t)a, (size_t)b), std::max((size_t)a, (size_t)b)});
    for (size_t i = 0; i < g.edges.size(); ++i) {
        for (size_t j = i + 1; j < g.edges.size(); ++j) {
            const GadgetEdge& e = g.edges[i];
            const GadgetEdge& f = g.edges[j];
            bool shared = e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
            bool crosses = segments_cross(g.inst.points[e.a], g.inst.points[e.b],
                                          g.inst.points[f.a], g.inst.points[f.b]);
            bool want = intended.count({i, j}) != 0;
            if (shared) {
                if (crosses)
                    fail("edges " + std::to_string(i) + "," + std::to_string(j) +
                         " share an endpoint but overlap");
                continue;
            }
            if (crosses != want)
                fail(std::string(want ? "intended crossing missing" : "unintended crossing") +
                     ": edges " + std::to_string(i) + "," + std::to_string(j));
        }
    }

    // Distinct points / basic instance validity.
    if (auto err = validate_instance(g.inst)) fail("instance invalid: " + *err);

    // Sigma schedule.
    if (g.params.sigma != sigma_for(g.params.n_c, g.params.N))
        fail("sigma != (4 n_c N)^3");
    Rat bound((long long)4 * g.params.n_c * g.params.N);
    if (!(bound < g.params.sigma)) fail("sigma does not exceed the 4 n_c N path bound");
    // The big weights must break the triangle inequality somewhere: find a
    // two-hop non-irrelevant path whose endpoints are an irrelevant pair.
    {
        std::vector<std::vector<int>> adj(n);
        for (const GadgetEdge& e : g.edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        bool found = false;
        for (int u = 0; u < n && !found; ++u)
            for (int x : adj[u])
                for (int y : adj[x]) {
                    if (y == u) continue;
                    auto key = std::minmax(u, y);
                    if (!edge_pairs.count({key.first, key.second}) &&
                        M[u][x] + M[x][y] < M[u][y]) {
                        found = true;
                        break;
                    }
                }
        if (!found) fail("sigma never violates the triangle inequality");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Certificate triangulations
// ---------------------------------------------------------------------------

namespace {

void greedy_fill(const Instance& inst, Triangulation& t) {
    t.normalize();
    std::vector<Edge> acc = t.edges;
    const int n = inst.n();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (t.has(a, b) || !edge_allowed(inst, a, b)) continue;
            bool blocked = false;
            for (const Edge& e : acc) {
                if (e.first == a || e.first == b || e.second == a || e.second == b) continue;
                if (segments_cross(inst.points[a], inst.points[b], inst.points[e.first],
                                   inst.points[e.second])) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) acc.push_back({a, b});
        }
    t.edges = acc;
    t.normalize();
}

Triangulation assemble(const GadgetInstance& g, const std::vector<bool>& dotted_loop,
                       const std::vector<std::vector<int>>& clause_sel, bool fill) {
    Triangulation t;
    for (const GadgetEdge& e : g.edges) {
        bool keep = false;
        switch (e.cls) {
            case EdgeClass::Solid: keep = true; break;
            case EdgeClass::Dotted:
            case EdgeClass::Dashed: {
                int v = e.loop >= 0 ? e.loop : g.bridges[e.bridge].var;
                keep = dotted_loop[v] == (e.cls == EdgeClass::Dotted);
                break;
            }
            default: keep = false;
        }
        if (keep) t.edges.push_back(make_edge(e.a, e.b));
    }
    for (int k = 0; k < g.params.n_c; ++k)
        for (int sel : clause_sel[k]) {
            const GadgetEdge& e = g.edges[g.clauses[k].edge_index[sel]];
            t.edges.push_back(make_edge(e.a, e.b));
        }
    t.normalize();
    if (fill) greedy_fill(g.inst, t);
    return t;
}

} // namespace

Triangulation pure_triangulation(const GadgetInstance& g, const std::vector<bool>& a, bool fill) {
    if ((int)a.size() != g.params.n_v)
        throw std::invalid_argument("pure_triangulation: assignment size mismatch");
    std::vector<std::vector<int>> sel(g.params.n_c);
    for (int k = 0; k < g.params.n_c; ++k) {
        std::array<bool, 3> pat{};
        for (int j = 0; j < 3; ++j) pat[j] = literal_value(g, k, j, a);
        sel[k] = clause_pattern_edges(pat);
    }
    return assemble(g, a, sel, fill);
}

Triangulation baseline_triangulation(const GadgetInstance& g, bool fill) {
    std::vector<bool> dashed(g.params.n_v, false);
    std::vector<std::vector<int>> sel(g.params.n_c, clause_baseline_edges());
    return assemble(g, dashed, sel, fill);
}

Rat threshold(const GadgetInstance& g) {
    Triangulation base = baseline_triangulation(g, false);
    CostReport cost = wiener_cost(g.inst, base);
    if (!cost.connected || !cost.exact)
        throw std::logic_error("threshold: baseline cost not exactly computable");
    return cost.exact_total + Rat(300LL * g.params.n_c * g.params.n_c * g.params.N + 1);
}

// ---------------------------------------------------------------------------
// Structural diagnostics
// ---------------------------------------------------------------------------

namespace {

// Adjacency of one loop's wire edges in a pure state, as local indices
// (outer column c -> c, inner column c -> m + c).
std::vector<std::vector<int>> loop_adjacency(const GadgetInstance& g, int loop, bool dotted) {
    const LoopInfo& L = g.loops[loop];
    long long m = (long long)L.outer.size();
    std::vector<std::vector<int>> adj(2 * m);
    auto link = [&](long long a, long long b) {
        adj[a].push_back((int)b);
        adj[b].push_back((int)a);
    };
    for (long long cc = 0; cc < m; ++cc) {
        long long nx = (cc + 1) % m;
        link(cc, nx);            // outer rail
        link(m + cc, m + nx);    // inner rail
        link(cc, m + cc);        // rung
        if (dotted)
            link(cc, m + nx);    // dotted diagonal
        else
            link(m + cc, nx);    // dashed diagonal
    }
    return adj;
}

std::vector<long long> bfs_all(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<long long> d(adj.size(), -1);
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

} // namespace

std::vector<long long> bridge_distances(const GadgetInstance& g, int loop, bool dotted) {
    const LoopInfo& L = g.loops[loop];
    auto adj = loop_adjacency(g, loop, dotted);
    std::vector<long long> out;
    int d = (int)L.bridge_columns.size();
    for (int i = 0; i < d; ++i) {
        int c0 = L.bridge_columns[i];
        int c1 = L.bridge_columns[(i + 1) % d];
        auto dist = bfs_all(adj, c0);
        out.push_back(dist[c1]);
    }
    return out;
}

long long wire_piece_diameter(const GadgetInstance& g, int loop, int col_start, int cols,
                              bool dotted) {
    const LoopInfo& L = g.loops[loop];
    long long m = (long long)L.outer.size();
    if (cols < 2 || cols > (int)m)
        throw std::invalid_argument("wire_piece_diameter: bad column count");
    // Local piece indices: outer c -> c, inner c -> cols + c.
    std::vector<std::vector<int>> adj(2 * cols);
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int cc = 0; cc < cols; ++cc) {
        link(cc, cols + cc);  // rung
        if (cc + 1 < cols) {
            link(cc, cc + 1);
            link(cols + cc, cols + cc + 1);
            if (dotted)
                link(cc, cols + cc + 1);
            else
                link(cols + cc, cc + 1);
        }
    }
    (void)m;
    (void)col_start;
    long long best = 0;
    for (int s = 0; s < 2 * cols; ++s) {
        auto d = bfs_all(adj, s);
        for (long long x : d) best = std::max(best, x);
    }
    return best;
}

} // namespace madt
