#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "madt/circuit.hpp"
#include "madt/experiments.hpp"
#include "madt/gadget.hpp"
#include "madt/io.hpp"
#include "madt/polygon_dp.hpp"

namespace {

using namespace madt;

constexpr int EXIT_OK = 0;
constexpr int EXIT_USAGE = 1;
constexpr int EXIT_INVALID = 2;
constexpr int EXIT_SIZE_CAP = 3;

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << bytes;
}

// One canonical line per result: exact costs as integers/rationals, floating
// costs with nine fixed decimals.
std::string cost_str(const CostReport& c) {
    if (c.exact) return c.exact_total.str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", c.total);
    return buf;
}

void print_solution(const std::string& label, const std::string& cost,
                    const Triangulation& t) {
    std::cout << label << " cost " << cost << "\n";
    std::cout << "edges";
    for (const Edge& e : t.edges) std::cout << " " << e.first << "-" << e.second;
    std::cout << "\n";
}

int cmd_solve(const std::string& file) {
    Instance inst = parse_instance(slurp(file));
    if (inst.kind != InstanceKind::Polygon || inst.weights.kind != WeightKind::Unit)
        throw InvalidInput("solve requires a polygon instance with unit weights");
    PolygonDpResult r = solve_polygon_madt(inst);
    print_solution("solve", cost_str(r.cost), r.best);
    return EXIT_OK;
}

int cmd_oracle(const std::string& file, int threads, int max_points) {
    Instance inst = parse_instance(slurp(file));
    if (inst.n() > max_points)
        throw SizeCapError("oracle: instance has " + std::to_string(inst.n()) +
                           " points, cap is " + std::to_string(max_points));
    BruteForceResult r = brute_force_madt(inst, threads);
    print_solution("oracle", cost_str(r.cost), r.best);
    std::cout << "examined " << r.count << "\n";
    return EXIT_OK;
}

int cmd_fan(const std::string& file) {
    Instance inst = parse_instance(slurp(file));
    auto handle = find_fan_handle(inst);
    if (!handle) throw InvalidInput("fan: no point sees all others");
    Triangulation t = fan_triangulation(inst, *handle);
    CostReport c = wiener_cost(inst, t);
    std::cout << "handle " << *handle << "\n";
    print_solution("fan", cost_str(c), t);
    if (inst.weights.kind == WeightKind::Unit)
        std::cout << "closed-form " << fan_cost_closed_form(inst) << "\n";
    return EXIT_OK;
}

int cmd_cost(const std::string& file, const std::string& tri_file) {
    Instance inst = parse_instance(slurp(file));
    Triangulation t = parse_triangulation_file(slurp(tri_file), inst.n());
    if (auto diag = validate_triangulation(inst, t))
        throw InvalidInput("cost: not a triangulation: " + *diag);
    std::cout << "cost " << cost_str(wiener_cost(inst, t)) << "\n";
    return EXIT_OK;
}

std::optional<std::vector<bool>> satisfying_assignment(const PlanarCircuit& c) {
    for (unsigned long long m = 0; m < (1ULL << c.n_vars); ++m) {
        std::vector<bool> a(c.n_vars);
        for (int v = 0; v < c.n_vars; ++v) a[v] = (m >> v) & 1;
        bool all = true;
        for (const CircuitClause& cl : c.clauses) {
            bool sat = false;
            for (const Literal& l : cl.lits) sat = sat || (a[l.var] != l.neg);
            all = all && sat;
        }
        if (all) return a;
    }
    return std::nullopt;
}

int cmd_reduce(const std::string& circuit_file, long long N, const std::string& eps_str,
               const std::string& out_prefix, int max_points) {
    std::ifstream in(circuit_file);
    if (!in) throw InvalidInput("cannot open file: " + circuit_file);
    PlanarCircuit raw = parse_circuit(in);
    PlanarCircuit c = normalize_circuit(raw);
    int n_c = (int)c.clauses.size();
    long long points = 18LL * n_c + 3LL * n_c * N;
    if (points > max_points)
        throw SizeCapError("reduce: instance would have " + std::to_string(points) +
                           " points, cap is " + std::to_string(max_points));

    GadgetInstance g = build_gadget_instance(c, N, Rat::parse(eps_str));
    spit(out_prefix + ".instance.json", serialize_instance(g.inst, g.provenance));

    std::cout << "clauses " << n_c << " variables " << g.params.n_v << "\n";
    std::cout << "points " << points << "\n";
    std::cout << "sigma " << g.params.sigma.str() << "\n";
    std::cout << "threshold " << threshold(g).str() << "\n";
    ScaleSchedule ps = paper_scale(n_c);
    std::cout << "full-scale N " << ps.N_expr << " eps " << ps.eps_expr << " points "
              << ps.point_count_expr << "\n";

    Triangulation base = baseline_triangulation(g);
    spit(out_prefix + ".baseline.json", serialize_triangulation(base));
    std::cout << "baseline-cost " << cost_str(wiener_cost(g.inst, base)) << "\n";

    auto a = satisfying_assignment(c);
    std::cout << "satisfiable " << (a ? "yes" : "no") << "\n";
    if (a) {
        Triangulation cert = pure_triangulation(g, *a);
        spit(out_prefix + ".certificate.json", serialize_triangulation(cert));
        std::cout << "certificate-cost " << cost_str(wiener_cost(g.inst, cert)) << "\n";
    }
    return EXIT_OK;
}

int cmd_experiment(const std::string& family, int n, bool with_times,
                   const std::string& svg_path) {
    std::vector<ExperimentResult> rs;
    if (family == "regular")
        rs.push_back(regular_polygon_experiment(n));
    else if (family == "grid")
        rs.push_back(grid_experiment(2, n));
    else
        throw InvalidInput("experiment family must be 'regular' or 'grid'");
    std::cout << experiment_csv(rs, with_times);
    if (!svg_path.empty()) spit(svg_path, render_svg(rs[0].instance, rs[0].optimal));
    return EXIT_OK;
}

int cmd_render(const std::string& file, const std::string& tri_file) {
    Instance inst = parse_instance(slurp(file));
    Triangulation t = parse_triangulation_file(slurp(tri_file), inst.n());
    if (auto diag = validate_triangulation(inst, t))
        throw InvalidInput("render: not a triangulation: " + *diag);
    std::cout << render_svg(inst, t);
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum total-distance triangulation toolkit"};
    app.require_subcommand(1);

    std::string file, tri_file, out_prefix = "reduction", eps_str = "1/1000";
    std::string family, svg_path;
    long long N = 16;
    int n = 5, threads = 1, max_points = 4096;
    bool with_times = false;

    auto* solve = app.add_subcommand("solve", "polygon solver, unit weights");
    solve->add_option("file", file)->required();

    auto* oracle = app.add_subcommand("oracle", "exhaustive solver");
    oracle->add_option("file", file)->required();
    oracle->add_option("--threads", threads, "worker threads for the enumeration");
    oracle->add_option("--max-points", max_points, "size cap");

    auto* fan = app.add_subcommand("fan", "fan triangulation and its cost");
    fan->add_option("file", file)->required();

    auto* cost = app.add_subcommand("cost", "score a given triangulation");
    cost->add_option("file", file)->required();
    cost->add_option("triangulation", tri_file)->required();

    auto* reduce = app.add_subcommand("reduce", "compile a circuit to an instance");
    reduce->add_option("circuit", file)->required();
    reduce->add_option("--N", N, "wire length parameter (multiple of 16)");
    reduce->add_option("--eps", eps_str, "short-edge weight, rational");
    reduce->add_option("--out", out_prefix, "output file prefix");
    reduce->add_option("--max-points", max_points, "size cap");

    auto* experiment = app.add_subcommand("experiment", "cost families, CSV output");
    experiment->add_option("family", family, "'regular' or 'grid'")->required();
    experiment->add_option("--n", n, "polygon size / grid columns")->required();
    experiment->add_flag("--with-times", with_times, "include wall time in the CSV");
    experiment->add_option("--svg", svg_path, "also write the optimum as SVG");

    auto* render = app.add_subcommand("render", "SVG for a triangulation");
    render->add_option("file", file)->required();
    render->add_option("triangulation", tri_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        if (solve->parsed()) return cmd_solve(file);
        if (oracle->parsed()) return cmd_oracle(file, threads, max_points);
        if (fan->parsed()) return cmd_fan(file);
        if (cost->parsed()) return cmd_cost(file, tri_file);
        if (reduce->parsed()) return cmd_reduce(file, N, eps_str, out_prefix, max_points);
        if (experiment->parsed()) return cmd_experiment(family, n, with_times, svg_path);
        if (render->parsed()) return cmd_render(file, tri_file);
    } catch (const SizeCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_SIZE_CAP;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INVALID;
    }
    return EXIT_USAGE;
}
