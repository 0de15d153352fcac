#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pse/formula.hpp"

namespace pse {

// Variables occurring in clauses, with an edge between any two variables that
// share a clause.
struct PrimalGraph {
  std::vector<Var> vertices;           // ascending
  std::vector<std::vector<char>> adj;  // dense, indexed by vertex position

  std::size_t index_of(Var v) const;
};

PrimalGraph build_primal_graph(const CircuitFormula& f);
PrimalGraph build_primal_graph(const std::vector<Clause>& clauses);

struct EliminationOrder {
  std::vector<Var> order;     // elimination sequence over all graph vertices
  std::uint32_t width = 0;    // max clique induced during elimination, minus 1
};

// Greedy minimum-fill: ties broken by smaller degree, then smaller index.
EliminationOrder minfill_order(const PrimalGraph& g);

// Decision ranks over output variables; smaller rank decides earlier.
struct DecisionOrder {
  std::unordered_map<Var, std::uint32_t> rank;

  // Lowest-ranked candidate; unranked candidates lose to ranked ones and fall
  // back to the smallest index among themselves.
  Var pick(const std::vector<Var>& candidates) const;

  static DecisionOrder from_explicit(const std::vector<Var>& order);
};

// Rank the outputs of f by descending elimination position: the variable
// eliminated last is decided first. Throws std::invalid_argument if an
// occurring output variable is missing from the order.
DecisionOrder decision_priority(const CircuitFormula& f, const EliminationOrder& e);

// Conflict-driven activity plus occurrence count, sharpSAT style.
struct VsadsState {
  VsadsState() = default;
  explicit VsadsState(Var nvars) : activity(static_cast<std::size_t>(nvars) + 1, 0.0) {}

  std::vector<double> activity;
  double weight = 1.0;           // multiplier on the activity term
  std::uint32_t decisions = 0;

  void bump(Var v) {
    if (v < activity.size()) activity[v] += 1.0;
  }
  // Decay activities by 0.95 once every 64 decisions.
  void after_decision() {
    if (++decisions % 64 == 0)
      for (double& a : activity) a *= 0.95;
  }
};

// Highest score w*activity + occurrence count among candidates, ties to the
// smallest index.
Var vsads_pick(const std::vector<Clause>& active,
               const std::vector<Var>& candidates, const VsadsState& st);

}  // namespace pse
