#include "madt/io.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace madt {
namespace {

using nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

Rat parse_rat_field(const ordered_json& v, const std::string& where) {
    if (!v.is_string()) throw IoError(where, "expected a rational string \"p\" or \"p/q\"");
    try {
        return Rat::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        throw IoError(where, e.what());
    }
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw IoError(where, std::string("missing field '") + key + "'");
    return *it;
}

} // namespace

InstanceFile parse_instance_file(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("byte " + std::to_string(e.byte), e.what());
    }
    if (!j.is_object()) throw IoError("$", "top level must be an object");

    const ordered_json& ver = require(j, "version", "$");
    if (!ver.is_number_integer() || ver.get<int>() != kFormatVersion)
        throw IoError("version", "unsupported version (expected " +
                                     std::to_string(kFormatVersion) + ")");

    InstanceFile f;
    const ordered_json& kind = require(j, "kind", "$");
    if (kind == "polygon")
        f.inst.kind = InstanceKind::Polygon;
    else if (kind == "point-set")
        f.inst.kind = InstanceKind::PointSet;
    else
        throw IoError("kind", "must be \"polygon\" or \"point-set\"");

    const ordered_json& pts = require(j, "points", "$");
    if (!pts.is_array()) throw IoError("points", "must be an array");
    for (size_t i = 0; i < pts.size(); ++i) {
        std::string where = "points[" + std::to_string(i) + "]";
        const ordered_json& p = pts[i];
        if (!p.is_object()) throw IoError(where, "must be an object");
        const ordered_json& id = require(p, "id", where);
        if (!id.is_number_integer() || id.get<long long>() != (long long)i)
            throw IoError(where + ".id", "ids must be 0..n-1 in order");
        f.inst.points.push_back({parse_rat_field(require(p, "x", where), where + ".x"),
                                 parse_rat_field(require(p, "y", where), where + ".y")});
    }
    int n = f.inst.n();

    const ordered_json& w = require(j, "weights", "$");
    if (w == "unit") {
        f.inst.weights.kind = WeightKind::Unit;
    } else if (w == "euclidean") {
        f.inst.weights.kind = WeightKind::Euclidean;
    } else if (w.is_object() && w.contains("matrix")) {
        f.inst.weights.kind = WeightKind::Explicit;
        const ordered_json& m = w["matrix"];
        if (!m.is_array()) throw IoError("weights.matrix", "must be an array of rows");
        auto& mat = f.inst.weights.matrix;
        mat.assign(n, std::vector<Rat>(n, Rat(0)));
        // Lower-triangular rows (row i holds w(i,0..i-1)) or a full square
        // matrix; the square form must be symmetric with a zero diagonal.
        bool triangular = (int)m.size() == std::max(n - 1, 0) ||
                          ((int)m.size() > 0 && m[0].is_array() && m[0].size() == 1 && n > 1);
        if ((int)m.size() == n && n > 0 && m[0].is_array() && (int)m[0].size() == n)
            triangular = false;
        if (triangular) {
            if ((int)m.size() != std::max(n - 1, 0))
                throw IoError("weights.matrix", "triangular form needs n-1 rows");
            for (int i = 1; i < n; ++i) {
                const ordered_json& row = m[i - 1];
                std::string rw = "weights.matrix[" + std::to_string(i - 1) + "]";
                if (!row.is_array() || (int)row.size() != i)
                    throw IoError(rw, "row " + std::to_string(i - 1) + " must have " +
                                          std::to_string(i) + " entries");
                for (int k = 0; k < i; ++k) {
                    Rat v = parse_rat_field(row[k], rw + "[" + std::to_string(k) + "]");
                    mat[i][k] = mat[k][i] = v;
                }
            }
        } else {
            if ((int)m.size() != n) throw IoError("weights.matrix", "square form needs n rows");
            for (int i = 0; i < n; ++i) {
                const ordered_json& row = m[i];
                std::string rw = "weights.matrix[" + std::to_string(i) + "]";
                if (!row.is_array() || (int)row.size() != n)
                    throw IoError(rw, "square form needs n entries per row");
                for (int k = 0; k < n; ++k)
                    mat[i][k] = parse_rat_field(row[k], rw + "[" + std::to_string(k) + "]");
            }
            for (int i = 0; i < n; ++i)
                for (int k = i + 1; k < n; ++k)
                    if (mat[i][k] != mat[k][i])
                        throw IoError("weights.matrix[" + std::to_string(i) + "][" +
                                          std::to_string(k) + "]",
                                      "semimetric violation: w(" + std::to_string(i) + "," +
                                          std::to_string(k) + ") != w(" + std::to_string(k) +
                                          "," + std::to_string(i) + ")");
        }
    } else {
        throw IoError("weights", "must be \"unit\", \"euclidean\", or {\"matrix\": ...}");
    }

    if (j.contains("provenance")) {
        const ordered_json& pr = j["provenance"];
        if (!pr.is_array()) throw IoError("provenance", "must be an array");
        for (size_t i = 0; i < pr.size(); ++i) {
            std::string where = "provenance[" + std::to_string(i) + "]";
            const ordered_json& e = pr[i];
            if (!e.is_object()) throw IoError(where, "must be an object");
            f.provenance.push_back({require(e, "gadget", where).get<std::string>(),
                                    require(e, "label", where).get<std::string>()});
        }
    }

    if (auto diag = validate_instance(f.inst)) throw IoError("$", *diag);
    return f;
}

Instance parse_instance(const std::string& text) { return parse_instance_file(text).inst; }

std::string serialize_instance(const Instance& inst,
                               const std::vector<ProvenanceEntry>& provenance) {
    ordered_json j;
    j["version"] = kFormatVersion;
    j["kind"] = inst.kind == InstanceKind::Polygon ? "polygon" : "point-set";
    j["points"] = ordered_json::array();
    for (int i = 0; i < inst.n(); ++i)
        j["points"].push_back({{"id", i},
                               {"x", inst.points[i].x.str()},
                               {"y", inst.points[i].y.str()}});
    switch (inst.weights.kind) {
    case WeightKind::Unit: j["weights"] = "unit"; break;
    case WeightKind::Euclidean: j["weights"] = "euclidean"; break;
    case WeightKind::Explicit: {
        ordered_json m = ordered_json::array();
        for (int i = 1; i < inst.n(); ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < i; ++k) row.push_back(inst.weights.matrix[i][k].str());
            m.push_back(std::move(row));
        }
        j["weights"] = {{"matrix", std::move(m)}};
        break;
    }
    }
    if (!provenance.empty()) {
        j["provenance"] = ordered_json::array();
        for (const auto& e : provenance)
            j["provenance"].push_back({{"gadget", e.gadget}, {"label", e.label}});
    }
    return j.dump(2) + "\n";
}

Triangulation parse_triangulation_file(const std::string& text, int n_points) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("byte " + std::to_string(e.byte), e.what());
    }
    if (!j.is_object()) throw IoError("$", "top level must be an object");
    const ordered_json& edges = require(j, "edges", "$");
    if (!edges.is_array()) throw IoError("edges", "must be an array of [a,b] pairs");
    Triangulation t;
    for (size_t i = 0; i < edges.size(); ++i) {
        std::string where = "edges[" + std::to_string(i) + "]";
        const ordered_json& e = edges[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw IoError(where, "must be a pair of integers");
        long long a = e[0].get<long long>(), b = e[1].get<long long>();
        if (a < 0 || b < 0 || a >= n_points || b >= n_points || a == b)
            throw IoError(where, "vertex index out of range or degenerate");
        t.edges.push_back(make_edge((int)a, (int)b));
    }
    t.normalize();
    if (t.edges.size() != edges.size()) throw IoError("edges", "duplicate edge in list");
    return t;
}

std::string serialize_triangulation(const Triangulation& t) {
    ordered_json j;
    j["edges"] = ordered_json::array();
    for (const Edge& e : t.edges) j["edges"].push_back({e.first, e.second});
    return j.dump(2) + "\n";
}

namespace {

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    // Avoid the two spellings of zero.
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

const char* dash_for(const std::string& cls) {
    if (cls == "dotted") return " stroke-dasharray=\"2,5\"";
    if (cls == "dashed") return " stroke-dasharray=\"9,4\"";
    return "";
}

const char* color_for(const std::string& cls) {
    if (cls == "dotted") return "#1f77b4";
    if (cls == "dashed") return "#d62728";
    if (cls == "light") return "#999999";
    return "#000000";
}

} // namespace

std::string render_svg(const Instance& inst, const Triangulation& t, const SvgStyle& style) {
    const double W = 800, H = 800, margin = 24;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Point& p : inst.points) {
        xmin = std::min(xmin, p.x.to_double());
        xmax = std::max(xmax, p.x.to_double());
        ymin = std::min(ymin, p.y.to_double());
        ymax = std::max(ymax, p.y.to_double());
    }
    double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    double s = (W - 2 * margin) / span;
    auto X = [&](const Rat& x) { return margin + (x.to_double() - xmin) * s; };
    // SVG y grows downward; flip so the figure keeps its orientation.
    auto Y = [&](const Rat& y) { return H - margin - (y.to_double() - ymin) * s; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(W) + "\" height=\"" +
           fmt3(H) + "\" viewBox=\"0 0 " + fmt3(W) + " " + fmt3(H) + "\">\n";
    int n = inst.n();
    for (const Edge& e : t.edges) {
        std::string cls = "solid";
        if (inst.kind == InstanceKind::Polygon &&
            ((e.first + 1) % n == e.second || (e.second + 1) % n == e.first)) {
            cls = "solid";  // boundary stays solid regardless of style
        } else if (auto it = style.edge_class.find(e); it != style.edge_class.end()) {
            cls = it->second;
        }
        const Point &a = inst.points[e.first], &b = inst.points[e.second];
        out += "  <line x1=\"" + fmt3(X(a.x)) + "\" y1=\"" + fmt3(Y(a.y)) + "\" x2=\"" +
               fmt3(X(b.x)) + "\" y2=\"" + fmt3(Y(b.y)) + "\" stroke=\"" + color_for(cls) +
               "\" stroke-width=\"1.5\"" + dash_for(cls) + "/>\n";
    }
    for (const Point& p : inst.points)
        out += "  <circle cx=\"" + fmt3(X(p.x)) + "\" cy=\"" + fmt3(Y(p.y)) +
               "\" r=\"2.5\" fill=\"#000000\"/>\n";
    out += "</svg>\n";
    return out;
}

SvgStyle gadget_style(const GadgetInstance& g) {
    SvgStyle st;
    for (const GadgetEdge& e : g.edges) {
        const char* cls = "solid";
        switch (e.cls) {
        case EdgeClass::Dotted: cls = "dotted"; break;
        case EdgeClass::Dashed: cls = "dashed"; break;
        case EdgeClass::ClauseEps: cls = "light"; break;
        default: break;
        }
        st.edge_class[make_edge(e.a, e.b)] = cls;
    }
    return st;
}

} // namespace madt
