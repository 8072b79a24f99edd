#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace madt {

struct Literal {
    int var = 0;
    bool neg = false;
};

inline bool operator==(const Literal& a, const Literal& b) {
    return a.var == b.var && a.neg == b.neg;
}

// A three-literal clause attached above or below the variable line.
struct CircuitClause {
    std::array<Literal, 3> lits;
    bool above = true;
};

// A planar circuit: variables on a horizontal line in index order, clauses
// drawn as arcs above or below with one leg per literal.  Planarity is the
// usual nesting condition: on each side, clause spans form a laminar family
// and a nested clause fits between two consecutive legs of the enclosing one
// (legs may share a variable; attachments at one variable can be ordered).
struct PlanarCircuit {
    int n_vars = 0;
    std::vector<CircuitClause> clauses;
};

// Diagnostic for the first violation found, or empty when the circuit is a
// proper planar circuit.
std::optional<std::string> validate_circuit(const PlanarCircuit& c);

// True when no clause repeats a variable and every variable occurs in at
// least two clauses.
bool repetition_free(const PlanarCircuit& c);

// Rewrites the circuit until no clause repeats a variable and every variable
// appears in at least two clauses.  Tautologies vanish; repeated occurrences
// are replaced through fresh helper variables placed next to the variable
// they serve, so the nesting stays planar.  Satisfiability is preserved.
PlanarCircuit normalize_circuit(const PlanarCircuit& c);

// Plain backtracking satisfiability check (the circuits handled here are far
// below the sizes where this matters).
bool circuit_satisfiable(const PlanarCircuit& c);

// Text format: `vars <k>` then one `clause <lit> <lit> <lit> side=above|below`
// per line; literals are 1-based, negative for negation.  '#' starts comments.
PlanarCircuit parse_circuit(std::istream& in);
std::string circuit_to_string(const PlanarCircuit& c);

} // namespace madt
