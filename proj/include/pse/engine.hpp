#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pse/counter.hpp"
#include "pse/formula.hpp"
#include "pse/ordering.hpp"
#include "pse/trace.hpp"

namespace pse {

enum class Heuristic { kMinfill, kVsads };

struct PseConfig {
  Heuristic heuristic = Heuristic::kMinfill;
  bool use_pre = true;            // equivalent-literal reduction up front
  bool use_xcache = true;         // cache pure counting residuals
  bool use_ycache = true;         // cache residuals that still carry outputs
  bool use_decomposition = true;  // split residuals into connected components
  bool emit_trace = false;
  std::vector<Var> fixed_y_order;  // overrides the heuristic when nonempty
  std::size_t cache_bytes = 0;     // 0 = unlimited
  double timeout_seconds = 0;      // 0 = no deadline
};

struct SearchStats {
  std::uint64_t y_decisions = 0;
  std::uint64_t x_decisions = 0;  // branch steps inside pure counting
  std::uint64_t components = 0;
  std::uint64_t xcache_hits = 0;
  std::uint64_t ycache_hits = 0;
  std::uint64_t cache_entries = 0;
  std::uint64_t cache_resets = 0;
  std::uint64_t trace_nodes = 0;
  std::uint32_t width = 0;  // elimination width estimate, 0 when not computed
  std::uint32_t pre_merged = 0;
  std::uint32_t pre_forced = 0;
  double wall_seconds = 0;
};

struct EntropyResult {
  double entropy = 0;
  BigCount count;  // projected model count, equal to the plain count here
  SearchStats stats;
  TraceLog trace;  // filled when emit_trace is set
};

// Decision combine step. Counts and entropies of the two branches plus the
// variable-gap widths their values absorb; probabilities are filled in.
struct BranchSplit {
  BigCount count0, count1;
  double h0 = 0, h1 = 0;
  std::uint32_t gap0 = 0, gap1 = 0;
  double p0 = 0, p1 = 0;
};

// count = 2^gap0 c0 + 2^gap1 c1, entropy = sum over nonzero branches of
// p (h + gap - log2 p). A zero total yields (0, 0).
std::pair<double, BigCount> combine_decision(BranchSplit& s);

// Next decision variable: the best-ranked candidate in order mode, the
// highest VSADS score otherwise.
Var pick_good_var(const std::vector<Clause>& active,
                  const std::vector<Var>& candidates, Heuristic h,
                  const DecisionOrder& order, const VsadsState& vsads);

// A satisfiable residual left some output variable unconstrained, i.e. the
// formula admits two completions of one input assignment.
struct CircuitViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact output entropy and model count of a circuit formula.
EntropyResult pse_entropy(const CircuitFormula& f, const PseConfig& cfg = {});

}  // namespace pse
