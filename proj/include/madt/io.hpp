#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "madt/gadget.hpp"
#include "madt/triangulation.hpp"

namespace madt {

// Input rejection with a location: either a byte offset from the JSON parser
// or a field path such as "points[3].x".
struct IoError : std::runtime_error {
    std::string where;
    IoError(std::string loc, const std::string& what)
        : std::runtime_error(loc + ": " + what), where(std::move(loc)) {}
};

// On-disk instance: version tag, kind, points with rational-string
// coordinates, weights ("unit" | "euclidean" | explicit lower-triangular
// matrix), and an optional provenance block.
struct InstanceFile {
    Instance inst;
    std::vector<ProvenanceEntry> provenance;
};

InstanceFile parse_instance_file(const std::string& text);
Instance parse_instance(const std::string& text);

// Canonical serialization: fixed key order, triangular explicit matrices,
// rationals as "p" or "p/q" strings.  serialize(parse(f)) is a fixed point.
std::string serialize_instance(const Instance& inst,
                               const std::vector<ProvenanceEntry>& provenance = {});

// Triangulation files: {"edges": [[a,b], ...]} with sorted pairs.
Triangulation parse_triangulation_file(const std::string& text, int n_points);
std::string serialize_triangulation(const Triangulation& t);

// Optional per-edge style classes: "solid" (default), "dotted", "dashed",
// "light".  Unknown classes fall back to solid.
struct SvgStyle {
    std::map<Edge, std::string> edge_class;
};

// Deterministic SVG: fixed canvas, three-decimal coordinates, edges in
// canonical order then points.  Polygon boundary edges are always solid.
std::string render_svg(const Instance& inst, const Triangulation& t,
                       const SvgStyle& style = {});

// Style matching the compiled instance's edge families: flip pairs dotted or
// dashed, clause short edges light, everything else solid.
SvgStyle gadget_style(const GadgetInstance& g);

} // namespace madt
