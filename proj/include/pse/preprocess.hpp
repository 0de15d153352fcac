#pragma once

#include <cstdint>
#include <vector>

#include "pse/formula.hpp"

namespace pse {

// One detection pass: unit propagation to fixpoint, then SCCs of the
// binary-clause implication graph on the residual.
struct EquivClasses {
  // Each class lists equivalent literals with the chosen representative
  // first; X-literals are preferred as representatives, then the smallest
  // variable index. Mirrors (the negated class) are not listed separately.
  std::vector<std::vector<Lit>> classes;
  std::vector<Lit> units;  // everything forced by propagation
  bool unsat = false;      // conflict, or some l equivalent to ~l
};

EquivClasses detect_equivalences(const CircuitFormula& f);

struct PreStats {
  std::uint32_t merged_vars = 0;
  std::uint32_t forced_units = 0;
};

// Equivalent-literal reduction. Substitutes representatives to fixpoint,
// pins forced variables with unit clauses, drops merged input variables from
// the input set, and re-adds "y <-> rep" binary clauses for every merged
// output variable so the output set never shrinks. Model count and entropy
// are preserved exactly; unsatisfiable input yields the canonical
// unsatisfiable formula.
struct PreResult {
  CircuitFormula formula;
  std::vector<Clause> restored;  // re-added output definition clauses
  PreStats stats;
};

PreResult apply_pre(const CircuitFormula& f);

}  // namespace pse
