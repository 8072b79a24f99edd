#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "madt/triangulation.hpp"

namespace madt {

// Raised when a requested parameter exceeds a size cap (CLI exit code 3).
struct SizeCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentResult {
    std::string family;       // "regular-polygon" | "grid-2xn" | "grid-3xn"
    int n = 0;
    Instance instance;
    Triangulation optimal;    // symmetry-normalized
    double optimal_cost = 0;  // unit-circumradius (polygons) / lattice units
    bool has_fan = false;
    double fan_cost = 0;      // min over handles; meaningful when has_fan
    bool is_fan_optimal = false;
    double wall_time_sec = 0;
};

// Regular n-gon on the unit circumradius (coordinates on a fine lattice,
// mirror-symmetric about the x axis).
Instance regular_polygon_instance(int n);

// {0..n-1} x {0..rows-1} lattice point set.
Instance grid_instance(int rows, int n);

// Exhaustive Euclidean MADT on the regular n-gon; cost tie-break within
// 1e-9 via lexicographic edge lists.  Throws SizeCapError above `cap`.
ExperimentResult regular_polygon_experiment(int n, int cap = 14);

// Exhaustive Euclidean MADT on the rows x n grid (rows 2 supported, 3
// experimental).  Throws SizeCapError above `cap` columns.
ExperimentResult grid_experiment(int rows, int n, int cap = 6);

// Vertex permutations of the dihedral symmetry group of a regular n-gon in
// boundary order (2n elements, identity included).
std::vector<std::vector<int>> dihedral_group(int n);

// The reflection symmetries of the rows x n grid in grid_instance vertex
// order (4 elements).
std::vector<std::vector<int>> grid_symmetry_group(int rows, int n);

// Lexicographically least relabeling of the edge list under the group.
Triangulation symmetry_normalize(const Triangulation& t,
                                 const std::vector<std::vector<int>>& group);

// CSV report: header plus one row per result; wall_time is emitted as 0
// unless `with_times` (keeps default outputs byte-deterministic).
std::string experiment_csv(const std::vector<ExperimentResult>& results, bool with_times);

} // namespace madt
