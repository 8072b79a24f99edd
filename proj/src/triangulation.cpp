#include "madt/triangulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

namespace madt {

void Triangulation::normalize() {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Triangulation::has(int a, int b) const {
    return std::binary_search(edges.begin(), edges.end(), make_edge(a, b));
}

namespace {

bool edges_cross(const Instance& inst, const Edge& e, const Edge& f) {
    if (e.first == f.first || e.first == f.second || e.second == f.first ||
        e.second == f.second)
        return false;  // shared endpoint; allowed edges cannot overlap further
    return segments_cross(inst.points[e.first], inst.points[e.second],
                          inst.points[f.first], inst.points[f.second]);
}

} // namespace

long long triangulation_edge_count(const Instance& inst) {
    long long n = inst.n();
    if (inst.kind == InstanceKind::Polygon) return 2 * n - 3;
    return 3 * n - hull_boundary_count(inst.points) - 3;
}

std::optional<std::string> validate_triangulation(const Instance& inst, const Triangulation& t) {
    Triangulation s = t;
    s.normalize();
    if (s.edges.size() != t.edges.size()) return "duplicate edges";
    for (const Edge& e : s.edges) {
        if (e.first < 0 || e.second >= inst.n()) return "edge index out of range";
        if (!edge_allowed(inst, e.first, e.second))
            return "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                   ") is not allowed";
    }
    for (size_t i = 0; i < s.edges.size(); ++i)
        for (size_t j = i + 1; j < s.edges.size(); ++j)
            if (edges_cross(inst, s.edges[i], s.edges[j]))
                return "edges (" + std::to_string(s.edges[i].first) + "," +
                       std::to_string(s.edges[i].second) + ") and (" +
                       std::to_string(s.edges[j].first) + "," +
                       std::to_string(s.edges[j].second) + ") cross";
    long long want = triangulation_edge_count(inst);
    if ((long long)s.edges.size() != want)
        return "expected " + std::to_string(want) + " edges, got " +
               std::to_string(s.edges.size());
    for (int a = 0; a < inst.n(); ++a) {
        for (int b = a + 1; b < inst.n(); ++b) {
            if (s.has(a, b) || !edge_allowed(inst, a, b)) continue;
            Edge cand{a, b};
            bool blocked = false;
            for (const Edge& e : s.edges)
                if (edges_cross(inst, cand, e)) { blocked = true; break; }
            if (!blocked)
                return "not maximal: edge (" + std::to_string(a) + "," +
                       std::to_string(b) + ") can be added";
        }
    }
    return std::nullopt;
}

namespace {

// Scales a set of rational edge weights to a common integer grid so shortest
// paths can run on int64.  Returns the common denominator.
long long common_denominator(const Instance& inst, const Triangulation& t) {
    long long l = 1;
    if (inst.weights.kind == WeightKind::Unit) return 1;
    for (const Edge& e : t.edges) {
        long long d = inst.weights.matrix[e.first][e.second].den();
        l = std::lcm(l, d);
        if (l > (1LL << 40)) throw std::overflow_error("weight denominators too large");
    }
    return l;
}

std::vector<long long> dijkstra_int(const std::vector<std::vector<std::pair<int, long long>>>& adj,
                                    int src) {
    const long long inf = std::numeric_limits<long long>::max();
    std::vector<long long> dist(adj.size(), inf);
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [v, w] : adj[u])
            if (d + w < dist[v]) {
                dist[v] = d + w;
                pq.push({dist[v], v});
            }
    }
    return dist;
}

std::vector<double> dijkstra_double(const std::vector<std::vector<std::pair<int, double>>>& adj,
                                    int src) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(adj.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [v, w] : adj[u])
            if (d + w < dist[v]) {
                dist[v] = d + w;
                pq.push({dist[v], v});
            }
    }
    return dist;
}

} // namespace

CostReport wiener_cost(const Instance& inst, const Triangulation& t) {
    int n = inst.n();
    CostReport rep;
    rep.exact = inst.weights.kind != WeightKind::Euclidean;

    if (rep.exact) {
        long long den = common_denominator(inst, t);
        std::vector<std::vector<std::pair<int, long long>>> adj(n);
        for (const Edge& e : t.edges) {
            long long w = 1;
            if (inst.weights.kind == WeightKind::Explicit) {
                const Rat& r = inst.weights.matrix[e.first][e.second];
                w = r.num() * (den / r.den());
            }
            adj[e.first].push_back({e.second, w});
            adj[e.second].push_back({e.first, w});
        }
        rep.exact_dist.assign(n, std::vector<Rat>(n));
        rep.dist.assign(n, std::vector<double>(n, 0.0));
        Rat total;
        const long long inf = std::numeric_limits<long long>::max();
        for (int s = 0; s < n; ++s) {
            auto d = dijkstra_int(adj, s);
            for (int v = 0; v < n; ++v) {
                if (d[v] == inf) { rep.connected = false; return rep; }
                rep.exact_dist[s][v] = Rat(d[v], den);
                rep.dist[s][v] = rep.exact_dist[s][v].to_double();
                if (s < v) total += rep.exact_dist[s][v];
            }
        }
        rep.exact_total = total;
        rep.total = total.to_double();
        return rep;
    }

    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const Edge& e : t.edges) {
        const Point &a = inst.points[e.first], &b = inst.points[e.second];
        double dx = (a.x - b.x).to_double(), dy = (a.y - b.y).to_double();
        double w = std::sqrt(dx * dx + dy * dy);
        adj[e.first].push_back({e.second, w});
        adj[e.second].push_back({e.first, w});
    }
    rep.dist.assign(n, std::vector<double>(n, 0.0));
    for (int s = 0; s < n; ++s) {
        auto d = dijkstra_double(adj, s);
        for (int v = 0; v < n; ++v) {
            if (d[v] == std::numeric_limits<double>::infinity()) {
                rep.connected = false;
                return rep;
            }
            rep.dist[s][v] = d[v];
        }
    }
    // Canonical order: accumulate over sorted pairs (i, j), i < j.
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) total += rep.dist[i][j];
    rep.total = total;
    return rep;
}

Triangulation fan_triangulation(const Instance& inst, int handle) {
    int n = inst.n();
    Triangulation t;
    if (inst.kind == InstanceKind::Polygon)
        for (int i = 0; i < n; ++i) t.edges.push_back(make_edge(i, (i + 1) % n));
    for (int j = 0; j < n; ++j) {
        if (j == handle) continue;
        if (!edge_allowed(inst, handle, j))
            throw std::invalid_argument("fan handle does not see every point");
        t.edges.push_back(make_edge(handle, j));
    }
    t.normalize();
    // Greedy completion in lexicographic edge order.
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (t.has(a, b) || !edge_allowed(inst, a, b)) continue;
            Edge cand{a, b};
            bool blocked = false;
            for (const Edge& e : t.edges)
                if (edges_cross(inst, cand, e)) { blocked = true; break; }
            if (!blocked) t.edges.push_back(cand);
        }
    }
    t.normalize();
    return t;
}

long long fan_cost_closed_form(const Instance& inst) {
    long long n = inst.n();
    long long m = triangulation_edge_count(inst);
    return m + 2 * (n * (n - 1) / 2 - m);
}

namespace {

void enum_polygon_rec(const std::vector<std::vector<char>>& allowed, int i, int j,
                      std::vector<Edge>& acc,
                      const std::function<bool(std::vector<Edge>&)>& leaf, bool& stop) {
    if (stop || j - i < 2) return;
    if (j - i == 2) {
        // single triangle, no interior diagonal to add
        if (!leaf(acc)) stop = true;
        return;
    }
    for (int k = i + 1; k < j && !stop; ++k) {
        if (!allowed[i][k] || !allowed[k][j]) continue;
        size_t mark = acc.size();
        if (k - i >= 2) acc.push_back({i, k});
        if (j - k >= 2) acc.push_back({k, j});
        // Recurse on the left region; at its leaves recurse on the right one.
        if (k - i < 2) {
            enum_polygon_rec(allowed, k, j, acc, leaf, stop);
        } else if (j - k < 2) {
            enum_polygon_rec(allowed, i, k, acc, leaf, stop);
        } else {
            auto chain = [&](std::vector<Edge>& a) {
                bool inner_stop = false;
                enum_polygon_rec(allowed, k, j, a, leaf, inner_stop);
                return !inner_stop;
            };
            enum_polygon_rec(allowed, i, k, acc, chain, stop);
        }
        acc.resize(mark);
    }
}

} // namespace

void enumerate_polygon_triangulations(const Instance& inst,
                                      const std::function<bool(const Triangulation&)>& cb) {
    int n = inst.n();
    auto allowed = allowed_table(inst);
    std::vector<Edge> acc;
    for (int i = 0; i < n; ++i) acc.push_back(make_edge(i, (i + 1) % n));
    bool stop = false;
    auto leaf = [&](std::vector<Edge>& a) {
        Triangulation t;
        t.edges = a;
        t.normalize();
        return cb(t);
    };
    if (n == 3) {
        leaf(acc);
        return;
    }
    enum_polygon_rec(allowed, 0, n - 1, acc, leaf, stop);
}

namespace {

void enum_pointset_rec(const Instance& inst, const std::vector<Edge>& cand, size_t idx,
                       std::vector<Edge>& in, std::vector<Edge>& out,
                       const std::function<bool(const Triangulation&)>& cb, bool& stop) {
    if (stop) return;
    if (idx == cand.size()) {
        Triangulation t;
        t.edges = in;
        t.normalize();
        if (!cb(t)) stop = true;
        return;
    }
    const Edge& e = cand[idx];
    bool crosses_in = false;
    for (const Edge& f : in)
        if (edges_cross(inst, e, f)) { crosses_in = true; break; }

    if (!crosses_in) {
        in.push_back(e);
        enum_pointset_rec(inst, cand, idx + 1, in, out, cb, stop);
        in.pop_back();

        // Excluding e is only viable if some later candidate can cross it;
        // otherwise e would remain insertable and the result non-maximal.
        bool excusable = false;
        for (size_t k = idx + 1; k < cand.size() && !excusable; ++k)
            if (edges_cross(inst, e, cand[k])) excusable = true;
        if (!excusable) return;
        out.push_back(e);
        enum_pointset_rec(inst, cand, idx + 1, in, out, cb, stop);
        out.pop_back();
    } else {
        enum_pointset_rec(inst, cand, idx + 1, in, out, cb, stop);
    }
}

} // namespace

void enumerate_pointset_triangulations(const Instance& inst,
                                       const std::function<bool(const Triangulation&)>& cb,
                                       int max_points) {
    if (inst.n() > max_points)
        throw std::invalid_argument("point set too large for exhaustive enumeration");
    std::vector<Edge> cand;
    for (int a = 0; a < inst.n(); ++a)
        for (int b = a + 1; b < inst.n(); ++b)
            if (edge_allowed(inst, a, b)) cand.push_back({a, b});
    std::vector<Edge> in, out;
    bool stop = false;
    auto filtered = [&](const Triangulation& t) {
        // The exclusion pruning is necessary but not sufficient; re-check
        // maximality at the leaf.
        for (const Edge& e : cand) {
            if (t.has(e.first, e.second)) continue;
            bool blocked = false;
            for (const Edge& f : t.edges)
                if (edges_cross(inst, e, f)) { blocked = true; break; }
            if (!blocked) return true;  // not maximal; skip, keep enumerating
        }
        return cb(t);
    };
    enum_pointset_rec(inst, cand, 0, in, out, filtered, stop);
}

namespace {

// Running (cost, lexicographic edge-list) minimum over a stream of
// triangulations.
struct BruteAccum {
    const Instance& inst;
    BruteForceResult res;
    bool have = false;

    explicit BruteAccum(const Instance& i) : inst(i) {}

    bool consider(const Triangulation& t) {
        ++res.count;
        CostReport c = wiener_cost(inst, t);
        bool better;
        if (!have) {
            better = true;
        } else if (c.exact) {
            better = c.exact_total < res.cost.exact_total ||
                     (c.exact_total == res.cost.exact_total && t.edges < res.best.edges);
        } else {
            better = c.total < res.cost.total ||
                     (c.total == res.cost.total && t.edges < res.best.edges);
        }
        if (better) {
            res.best = t;
            res.cost = std::move(c);
            have = true;
        }
        return true;
    }
};

} // namespace

BruteForceResult brute_force_madt(const Instance& inst, int threads) {
    int n = inst.n();
    if (threads > 1 && inst.kind == InstanceKind::Polygon && n >= 5) {
        // One task per apex k of the triangle resting on edge (0, n-1); the
        // fixed merge order makes the output independent of scheduling.
        auto allowed = allowed_table(inst);
        std::vector<int> apexes;
        for (int k = 1; k < n - 1; ++k)
            if (allowed[0][k] && allowed[k][n - 1]) apexes.push_back(k);

        std::vector<std::unique_ptr<BruteAccum>> parts(apexes.size());
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < apexes.size(); i = next.fetch_add(1)) {
                int k = apexes[i];
                auto acc = std::make_unique<BruteAccum>(inst);
                std::vector<Edge> base;
                for (int v = 0; v < n; ++v) base.push_back(make_edge(v, (v + 1) % n));
                if (k >= 2) base.push_back({0, k});
                if (n - 1 - k >= 2) base.push_back({k, n - 1});
                auto leaf = [&](std::vector<Edge>& a) {
                    Triangulation t;
                    t.edges = a;
                    t.normalize();
                    return acc->consider(t);
                };
                bool stop = false;
                if (k >= 2 && n - 1 - k >= 2) {
                    auto chain = [&](std::vector<Edge>& a) {
                        bool inner_stop = false;
                        enum_polygon_rec(allowed, k, n - 1, a, leaf, inner_stop);
                        return !inner_stop;
                    };
                    enum_polygon_rec(allowed, 0, k, base, chain, stop);
                } else if (k >= 2) {
                    enum_polygon_rec(allowed, 0, k, base, leaf, stop);
                } else {
                    enum_polygon_rec(allowed, k, n - 1, base, leaf, stop);
                }
                parts[i] = std::move(acc);
            }
        };
        std::vector<std::thread> pool;
        int nw = std::min<int>(threads, (int)apexes.size());
        for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        BruteAccum merged(inst);
        for (auto& p : parts) {
            if (!p || !p->have) continue;
            long long cnt = merged.res.count;
            merged.consider(p->res.best);
            merged.res.count = cnt + p->res.count;
        }
        if (!merged.have) throw std::runtime_error("no triangulation found");
        return merged.res;
    }

    BruteAccum acc(inst);
    auto consider = [&](const Triangulation& t) { return acc.consider(t); };
    if (inst.kind == InstanceKind::Polygon)
        enumerate_polygon_triangulations(inst, consider);
    else
        enumerate_pointset_triangulations(inst, consider);
    if (!acc.have) throw std::runtime_error("no triangulation found");
    return acc.res;
}

} // namespace madt
