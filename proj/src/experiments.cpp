#include "madt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace madt {

namespace {

constexpr long long POLY_SCALE = 10000000;  // lattice per unit circumradius

double now_sec() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

// Selection rule shared by the experiments: smaller cost wins outright beyond
// the 1e-9 equality tolerance; within it the lexicographically least edge
// list wins, so symmetric optima resolve deterministically.
struct Selector {
    bool have = false;
    double cost = 0;
    Triangulation best;
    void offer(double c, const Triangulation& t) {
        if (!have || c < cost - 1e-9) {
            have = true;
            cost = c;
            best = t;
        } else if (c <= cost + 1e-9 && t.edges < best.edges) {
            best = t;
            if (c < cost) cost = c;
        }
    }
};

ExperimentResult finish(std::string family, int n, Instance inst, const Selector& sel,
                        double scale, const std::vector<std::vector<int>>& group,
                        double t0) {
    ExperimentResult r;
    r.family = std::move(family);
    r.n = n;
    r.optimal = symmetry_normalize(sel.best, group);
    r.optimal_cost = sel.cost / scale;

    Selector fan;
    for (int h = 0; h < inst.n(); ++h) {
        bool sees_all = true;
        for (int q = 0; q < inst.n() && sees_all; ++q)
            if (q != h && !edge_allowed(inst, h, q)) sees_all = false;
        if (sees_all) {
            Triangulation f = fan_triangulation(inst, h);
            fan.offer(wiener_cost(inst, f).total, f);
        }
    }
    r.has_fan = fan.have;
    if (fan.have) {
        r.fan_cost = fan.cost / scale;
        r.is_fan_optimal = r.fan_cost <= r.optimal_cost + 1e-9;
    }
    r.instance = std::move(inst);
    r.wall_time_sec = now_sec() - t0;
    return r;
}

} // namespace

Instance regular_polygon_instance(int n) {
    if (n < 3) throw std::invalid_argument("regular_polygon_instance: n < 3");
    Instance inst;
    inst.kind = InstanceKind::Polygon;
    inst.weights.kind = WeightKind::Euclidean;
    std::vector<long long> xs(n), ys(n);
    for (int k = 0; k <= n / 2; ++k) {
        double a = 2 * std::numbers::pi * k / n;
        xs[k] = std::llround(POLY_SCALE * std::cos(a));
        ys[k] = std::llround(POLY_SCALE * std::sin(a));
        // Mirror partner: exact reflection symmetry about the x axis.
        xs[(n - k) % n] = xs[k];
        ys[(n - k) % n] = -ys[k];
    }
    for (int k = 0; k < n; ++k) inst.points.push_back(Point{Rat(xs[k]), Rat(ys[k])});
    return inst;
}

Instance grid_instance(int rows, int n) {
    if (rows < 2 || n < 2) throw std::invalid_argument("grid_instance: too small");
    Instance inst;
    inst.kind = InstanceKind::PointSet;
    inst.weights.kind = WeightKind::Euclidean;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < n; ++i) inst.points.push_back(Point{Rat(i), Rat(j)});
    return inst;
}

ExperimentResult regular_polygon_experiment(int n, int cap) {
    if (n > cap)
        throw SizeCapError("regular-polygon experiment capped at n = " + std::to_string(cap));
    double t0 = now_sec();
    Instance inst = regular_polygon_instance(n);
    Selector sel;
    enumerate_polygon_triangulations(inst, [&](const Triangulation& t) {
        sel.offer(wiener_cost(inst, t).total, t);
        return true;
    });
    return finish("regular-polygon", n, std::move(inst), sel, (double)POLY_SCALE,
                  dihedral_group(n), t0);
}

ExperimentResult grid_experiment(int rows, int n, int cap) {
    if (rows != 2 && rows != 3)
        throw std::invalid_argument("grid_experiment: rows must be 2 or 3");
    if (n > cap)
        throw SizeCapError("grid experiment capped at n = " + std::to_string(cap));
    double t0 = now_sec();
    Instance inst = grid_instance(rows, n);
    Selector sel;
    enumerate_pointset_triangulations(inst, [&](const Triangulation& t) {
        sel.offer(wiener_cost(inst, t).total, t);
        return true;
    });
    return finish(rows == 2 ? "grid-2xn" : "grid-3xn", n, std::move(inst), sel, 1.0,
                  grid_symmetry_group(rows, n), t0);
}

std::vector<std::vector<int>> dihedral_group(int n) {
    std::vector<std::vector<int>> g;
    for (int s = 0; s < n; ++s) {
        std::vector<int> rot(n), refl(n);
        for (int i = 0; i < n; ++i) {
            rot[i] = (i + s) % n;
            refl[i] = ((s - i) % n + n) % n;
        }
        g.push_back(rot);
        g.push_back(refl);
    }
    return g;
}

std::vector<std::vector<int>> grid_symmetry_group(int rows, int n) {
    auto id = [&](int i, int j) { return j * n + i; };
    std::vector<std::vector<int>> g;
    for (int fx = 0; fx < 2; ++fx)
        for (int fy = 0; fy < 2; ++fy) {
            std::vector<int> p(rows * n);
            for (int j = 0; j < rows; ++j)
                for (int i = 0; i < n; ++i)
                    p[id(i, j)] = id(fx ? n - 1 - i : i, fy ? rows - 1 - j : j);
            g.push_back(p);
        }
    return g;
}

Triangulation symmetry_normalize(const Triangulation& t,
                                 const std::vector<std::vector<int>>& group) {
    Triangulation best = t;
    best.normalize();
    if (group.empty()) return best;
    bool have = false;
    for (const auto& perm : group) {
        Triangulation cand;
        for (const Edge& e : t.edges) cand.edges.push_back(make_edge(perm[e.first], perm[e.second]));
        cand.normalize();
        if (!have || cand.edges < best.edges) {
            best = cand;
            have = true;
        }
    }
    return best;
}

std::string experiment_csv(const std::vector<ExperimentResult>& results, bool with_times) {
    std::ostringstream os;
    os << "family,n,optimal_cost,fan_cost,is_fan_optimal,wall_time\n";
    os.setf(std::ios::fixed);
    os.precision(9);
    for (const ExperimentResult& r : results) {
        os << r.family << "," << r.n << "," << r.optimal_cost << ",";
        if (r.has_fan) os << r.fan_cost;
        os << "," << (r.is_fan_optimal ? "true" : "false") << ",";
        os << (with_times ? r.wall_time_sec : 0.0) << "\n";
    }
    return os.str();
}

} // namespace madt
