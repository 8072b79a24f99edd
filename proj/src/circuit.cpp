#include "madt/circuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace madt {

namespace {

struct Span {
    int lo, hi;
};

Span clause_span(const CircuitClause& cl) {
    int lo = cl.lits[0].var, hi = cl.lits[0].var;
    for (const Literal& l : cl.lits) {
        lo = std::min(lo, l.var);
        hi = std::max(hi, l.var);
    }
    return {lo, hi};
}

// True when the inner clause fits between two consecutive legs of the outer
// clause (shared endpoints allowed: attachments at a variable can be ordered).
bool fits_compartment(const CircuitClause& outer, Span inner) {
    std::array<int, 3> legs{outer.lits[0].var, outer.lits[1].var, outer.lits[2].var};
    std::sort(legs.begin(), legs.end());
    for (int i = 0; i + 1 < 3; ++i)
        if (legs[i] <= inner.lo && inner.hi <= legs[i + 1]) return true;
    return false;
}

} // namespace

std::optional<std::string> validate_circuit(const PlanarCircuit& c) {
    if (c.n_vars < 1) return "circuit needs at least one variable";
    for (size_t ci = 0; ci < c.clauses.size(); ++ci)
        for (const Literal& l : c.clauses[ci].lits)
            if (l.var < 0 || l.var >= c.n_vars)
                return "clause " + std::to_string(ci) + " references variable out of range";

    for (size_t i = 0; i < c.clauses.size(); ++i) {
        for (size_t j = i + 1; j < c.clauses.size(); ++j) {
            const CircuitClause &a = c.clauses[i], &b = c.clauses[j];
            if (a.above != b.above) continue;
            Span sa = clause_span(a), sb = clause_span(b);
            if (sa.hi <= sb.lo || sb.hi <= sa.lo) continue;  // disjoint / touching
            bool a_outer = sa.lo <= sb.lo && sb.hi <= sa.hi && fits_compartment(a, sb);
            bool b_outer = sb.lo <= sa.lo && sa.hi <= sb.hi && fits_compartment(b, sa);
            if (!a_outer && !b_outer)
                return "clauses " + std::to_string(i) + " and " + std::to_string(j) +
                       " have crossing legs";
        }
    }
    return std::nullopt;
}

bool repetition_free(const PlanarCircuit& c) {
    std::vector<int> occ(c.n_vars, 0);
    for (const CircuitClause& cl : c.clauses) {
        for (int u = 0; u < 3; ++u)
            for (int v = u + 1; v < 3; ++v)
                if (cl.lits[u].var == cl.lits[v].var) return false;
        for (const Literal& l : cl.lits) ++occ[l.var];
    }
    for (int v = 0; v < c.n_vars; ++v)
        if (occ[v] < 2) return false;
    return true;
}

namespace {

// Normalization working form: variables carry stable ids; `order` gives their
// left-to-right positions on the line.
struct WorkingCircuit {
    struct WLit {
        int id;
        bool neg;
    };
    struct WClause {
        std::array<WLit, 3> lits;
        bool above;
    };
    std::vector<int> order;  // ids, left to right
    std::vector<WClause> clauses;
    int next_id = 0;

    int pos_of(int id) const {
        for (size_t i = 0; i < order.size(); ++i)
            if (order[i] == id) return (int)i;
        throw std::logic_error("unknown variable id");
    }

    PlanarCircuit frozen() const {
        std::vector<int> pos(next_id, -1);
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = (int)i;
        PlanarCircuit out;
        out.n_vars = (int)order.size();
        for (const WClause& wc : clauses) {
            CircuitClause cl;
            cl.above = wc.above;
            for (int k = 0; k < 3; ++k) cl.lits[k] = Literal{pos[wc.lits[k].id], wc.lits[k].neg};
            out.clauses.push_back(cl);
        }
        return out;
    }

    // Inserts a fresh variable immediately after (or before) the variable
    // with the given id; returns the new id.
    int fresh_after(int id) {
        int nid = next_id++;
        order.insert(order.begin() + pos_of(id) + 1, nid);
        return nid;
    }
    int fresh_before(int id) {
        int nid = next_id++;
        order.insert(order.begin() + pos_of(id), nid);
        return nid;
    }
};

using WLit = WorkingCircuit::WLit;
using WClause = WorkingCircuit::WClause;

bool has_tautology(const WClause& cl) {
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v)
            if (cl.lits[u].id == cl.lits[v].id && cl.lits[u].neg != cl.lits[v].neg)
                return true;
    return false;
}

// Returns the index of a repeated-variable (non-tautological) literal pattern,
// or -1.
int find_r1_violation(const WorkingCircuit& w) {
    for (size_t i = 0; i < w.clauses.size(); ++i) {
        const WClause& cl = w.clauses[i];
        for (int u = 0; u < 3; ++u)
            for (int v = u + 1; v < 3; ++v)
                if (cl.lits[u].id == cl.lits[v].id) return (int)i;
    }
    return -1;
}

// The four-clause expansion serving literal x with fresh helpers a, b, c:
// (xab) and (x !b c) nest on one side, (x !a b) and (x !b !c) on the other.
void append_triple_expansion(WorkingCircuit& w, WLit x, int a, int b, int c, bool side) {
    w.clauses.push_back({{x, WLit{a, false}, WLit{b, false}}, side});
    w.clauses.push_back({{x, WLit{b, true}, WLit{c, false}}, side});
    w.clauses.push_back({{x, WLit{a, true}, WLit{b, false}}, !side});
    w.clauses.push_back({{x, WLit{b, true}, WLit{c, true}}, !side});
}

} // namespace

PlanarCircuit normalize_circuit(const PlanarCircuit& c) {
    if (auto err = validate_circuit(c))
        throw std::invalid_argument("invalid circuit: " + *err);

    WorkingCircuit w;
    w.next_id = c.n_vars;
    for (int v = 0; v < c.n_vars; ++v) w.order.push_back(v);
    for (const CircuitClause& cl : c.clauses) {
        WClause wc;
        wc.above = cl.above;
        for (int k = 0; k < 3; ++k) wc.lits[k] = WLit{cl.lits[k].var, cl.lits[k].neg};
        w.clauses.push_back(wc);
    }

    auto check = [](const WorkingCircuit& cand) {
        return !validate_circuit(cand.frozen()).has_value();
    };

    for (int guard = 0; guard < 100000; ++guard) {
        // Tautologies vanish first; they are satisfied by any assignment.
        bool removed = false;
        for (size_t i = 0; i < w.clauses.size(); ++i)
            if (has_tautology(w.clauses[i])) {
                w.clauses.erase(w.clauses.begin() + i);
                removed = true;
                break;
            }
        if (removed) continue;

        int idx = find_r1_violation(w);
        if (idx >= 0) {
            WClause cl = w.clauses[idx];
            // Identify the repeated literal x (same id, same polarity since
            // tautologies are gone) and the odd literal out, if any.
            int ru = -1, rv = -1;
            for (int u = 0; u < 3 && ru < 0; ++u)
                for (int v = u + 1; v < 3; ++v)
                    if (cl.lits[u].id == cl.lits[v].id) { ru = u; rv = v; break; }
            WLit x = cl.lits[ru];
            int other = 3 - ru - rv;  // only meaningful for double occurrence
            bool triple = cl.lits[other].id == x.id;
            bool side = cl.above;
            w.clauses.erase(w.clauses.begin() + idx);

            WorkingCircuit snapshot = w;
            bool done = false;
            if (triple) {
                // (xxx) -> (xab)(x!ab)(x!bc)(x!b!c); helpers sit next to x.
                for (bool after : {true, false}) {
                    w = snapshot;
                    int a = after ? w.fresh_after(x.id) : w.fresh_before(x.id);
                    int b = w.fresh_after(a);
                    int cc = w.fresh_after(b);
                    append_triple_expansion(w, x, a, b, cc, side);
                    if (check(w)) { done = true; break; }
                }
                if (!done) throw std::logic_error("normalization broke the nesting (triple)");
            } else {
                // (xxy) -> (xy!a)(abc)(a!bc)(a!cd)(a!c!d); helper a replaces
                // one x occurrence, then a gets the triple-style expansion.
                // The replacement may sit on either side of the line and the
                // helper on either side of x; take the first layout that keeps
                // the nesting planar.
                WLit y = cl.lits[other];
                for (bool flip : {false, true}) {
                    for (bool after : {true, false}) {
                        w = snapshot;
                        bool s = flip ? !side : side;
                        int a = after ? w.fresh_after(x.id) : w.fresh_before(x.id);
                        int b = w.fresh_after(a);
                        int cc = w.fresh_after(b);
                        int d = w.fresh_after(cc);
                        w.clauses.push_back({{x, y, WLit{a, true}}, s});
                        w.clauses.push_back({{WLit{a, false}, WLit{b, false}, WLit{cc, false}}, s});
                        w.clauses.push_back({{WLit{a, false}, WLit{cc, true}, WLit{d, false}}, s});
                        w.clauses.push_back({{WLit{a, false}, WLit{b, true}, WLit{cc, false}}, !s});
                        w.clauses.push_back({{WLit{a, false}, WLit{cc, true}, WLit{d, true}}, !s});
                        if (check(w)) { done = true; break; }
                    }
                    if (done) break;
                }
                if (!done) throw std::logic_error("normalization broke the nesting (double)");
            }
            continue;
        }

        // R2: every variable must appear in at least two clauses.
        std::map<int, int> occ;
        for (int id : w.order) occ[id] = 0;
        for (const WClause& wc : w.clauses)
            for (const WLit& l : wc.lits) ++occ[l.id];
        int lonely = -1;
        for (int id : w.order)
            if (occ[id] < 2) { lonely = id; break; }
        if (lonely < 0) break;  // fully normalized

        WorkingCircuit snapshot = w;
        bool done = false;
        for (bool after : {true, false}) {
            w = snapshot;
            int a = after ? w.fresh_after(lonely) : w.fresh_before(lonely);
            int b = w.fresh_after(a);
            WLit x{lonely, false};
            w.clauses.push_back({{x, WLit{a, false}, WLit{b, false}}, true});
            w.clauses.push_back({{x, WLit{a, false}, WLit{b, false}}, false});
            if (check(w)) { done = true; break; }
        }
        if (!done) throw std::logic_error("normalization broke the nesting (lonely)");
    }

    PlanarCircuit out = w.frozen();
    if (auto err = validate_circuit(out))
        throw std::logic_error("normalized circuit invalid: " + *err);
    if (!repetition_free(out)) throw std::logic_error("normalization did not converge");
    return out;
}

bool circuit_satisfiable(const PlanarCircuit& c) {
    int n = c.n_vars;
    // Clauses become checkable once their largest variable is assigned.
    std::vector<std::vector<const CircuitClause*>> ready(n + 1);
    for (const CircuitClause& cl : c.clauses) {
        int mx = 0;
        for (const Literal& l : cl.lits) mx = std::max(mx, l.var);
        ready[mx + 1].push_back(&cl);
    }
    std::vector<char> val(n, 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
        for (const CircuitClause* cl : ready[i]) {
            bool sat = false;
            for (const Literal& l : cl->lits)
                if ((val[l.var] != 0) != l.neg) { sat = true; break; }
            if (!sat) return false;
        }
        if (i == n) return true;
        for (char v : {0, 1}) {
            val[i] = v;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

PlanarCircuit parse_circuit(std::istream& in) {
    PlanarCircuit c;
    std::string line;
    bool have_vars = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "vars") {
            if (have_vars) throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate vars header");
            if (!(ls >> c.n_vars) || c.n_vars < 1)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": bad vars count");
            have_vars = true;
        } else if (tok == "clause") {
            if (!have_vars) throw std::invalid_argument("clause before vars header");
            CircuitClause cl;
            for (int k = 0; k < 3; ++k) {
                long long v;
                if (!(ls >> v) || v == 0 || std::abs(v) > c.n_vars)
                    throw std::invalid_argument("line " + std::to_string(lineno) + ": bad literal");
                cl.lits[k] = Literal{(int)std::abs(v) - 1, v < 0};
            }
            std::string side;
            if (!(ls >> side) || (side != "side=above" && side != "side=below"))
                throw std::invalid_argument("line " + std::to_string(lineno) + ": bad side");
            cl.above = side == "side=above";
            c.clauses.push_back(cl);
        } else {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown directive '" + tok + "'");
        }
    }
    if (!have_vars) throw std::invalid_argument("missing vars header");
    return c;
}

std::string circuit_to_string(const PlanarCircuit& c) {
    std::ostringstream os;
    os << "vars " << c.n_vars << "\n";
    for (const CircuitClause& cl : c.clauses) {
        os << "clause";
        for (const Literal& l : cl.lits) os << ' ' << (l.neg ? -(l.var + 1) : l.var + 1);
        os << (cl.above ? " side=above" : " side=below") << "\n";
    }
    return os.str();
}

} // namespace madt
