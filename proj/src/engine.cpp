#include "pse/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "pse/preprocess.hpp"

namespace pse {

std::pair<double, BigCount> combine_decision(BranchSplit& s) {
  BigCount w0 = s.count0 << s.gap0;
  BigCount w1 = s.count1 << s.gap1;
  BigCount total = w0 + w1;
  s.p0 = s.p1 = 0.0;
  if (total == 0) return {0.0, std::move(total)};
  double h = 0.0;
  if (w0 != 0) {
    s.p0 = big_ratio(w0, total);
    h += s.p0 * (s.h0 + s.gap0 - std::log2(s.p0));
  }
  if (w1 != 0) {
    s.p1 = big_ratio(w1, total);
    h += s.p1 * (s.h1 + s.gap1 - std::log2(s.p1));
  }
  if (h < 0) h = 0;  // rounding drift only; the exact value is nonnegative
  return {h, std::move(total)};
}

Var pick_good_var(const std::vector<Clause>& active,
                  const std::vector<Var>& candidates, Heuristic h,
                  const DecisionOrder& order, const VsadsState& vsads) {
  if (candidates.empty())
    throw std::logic_error("pick_good_var: empty candidate set");
  return h == Heuristic::kVsads ? vsads_pick(active, candidates, vsads)
                                : order.pick(candidates);
}

namespace {

struct NodeValue {
  double h = 0;
  BigCount count;
  std::int64_t trace = -1;
};

class Engine {
 public:
  Engine(const CircuitFormula& f, const PseConfig& cfg)
      : f_(&f),
        cfg_(cfg),
        kind_(f.nvars + 1, 0),
        seen_(f.nvars + 1, 0),
        cache_(cfg.cache_bytes),
        vsads_(f.nvars) {
    for (Var v : f.outputs) kind_[v] = 1;
    if (!cfg.fixed_y_order.empty()) {
      order_ = DecisionOrder::from_explicit(cfg.fixed_y_order);
      use_order_ = true;
      static_order_ = cfg.fixed_y_order;
    } else if (cfg.heuristic == Heuristic::kMinfill) {
      EliminationOrder elim = minfill_order(build_primal_graph(f));
      width_ = elim.width;
      order_ = decision_priority(f, elim);
      use_order_ = true;
      static_order_ = ranked_outputs();
    }
    if (cfg.timeout_seconds > 0)
      deadline_ = Clock::now() +
                  std::chrono::duration_cast<Clock::duration>(
                      std::chrono::duration<double>(cfg.timeout_seconds));
  }

  EntropyResult run() {
    NodeValue root =
        eval_residual(f_->clauses, f_->inputs.size(), f_->outputs);
    EntropyResult out;
    out.entropy = root.h;
    out.count = std::move(root.count);
    if (cfg_.emit_trace) {
      trace_.root = root.trace;
      trace_.order = use_order_ ? static_order_ : dynamic_order_;
      out.trace = std::move(trace_);
    }
    out.stats = stats_;
    out.stats.x_decisions = xstats_.decisions;
    out.stats.xcache_hits = cache_.stats().x_hits;
    out.stats.ycache_hits = cache_.stats().y_hits;
    out.stats.cache_entries = cache_.size();
    out.stats.cache_resets = cache_.stats().resets;
    out.stats.trace_nodes = out.trace.nodes.size();
    out.stats.width = width_;
    return out;
  }

 private:
  using Clock = std::chrono::steady_clock;

  std::vector<Var> ranked_outputs() const {
    std::vector<Var> ys = f_->outputs;
    std::stable_sort(ys.begin(), ys.end(), [this](Var a, Var b) {
      auto ra = order_.rank.find(a), rb = order_.rank.find(b);
      bool ha = ra != order_.rank.end(), hb = rb != order_.rank.end();
      if (ha != hb) return ha;  // ranked outputs first
      if (!ha) return a < b;
      return ra->second < rb->second;
    });
    return ys;
  }

  void check_deadline() const {
    if (deadline_ && Clock::now() > *deadline_)
      throw TimeoutError("entropy computation exceeded the time limit");
  }

  // Value of a residual clause set. x_scope counts the input variables still
  // in scope; it shrinks only when decomposition hands each component its
  // own occurring inputs, so sinks absorb one doubling per input freed on
  // the way down. ys lists the output variables in scope.
  NodeValue eval_residual(const std::vector<Clause>& clauses,
                          std::size_t x_scope, const std::vector<Var>& ys) {
    check_deadline();

    std::vector<Var> occ = vars_of(clauses);
    std::vector<Var> occ_y;
    for (Var v : occ)
      if (kind_[v]) occ_y.push_back(v);

    NodeValue val;
    if (occ_y.empty()) {
      // pure input residual: one weighted sink
      val.count = count_models_scope(clauses, x_scope, cache_, &xstats_,
                                     cfg_.use_xcache);
      if (cfg_.emit_trace) val.trace = trace_.add_terminal(val.count);
    } else if (!cfg_.use_decomposition) {
      val = eval_y_set(clauses, occ_y, x_scope);
    } else {
      SplitResult split = split_components(clauses, {}, {});
      stats_.components += split.components.size();
      if (split.components.size() == 1 && !split.has_empty_clause) {
        val = eval_y_set(split.components[0].clauses, occ_y, x_scope);
      } else {
        double hsum = 0;
        BigCount prod = 1;
        bool zero = split.has_empty_clause;
        std::vector<std::int64_t> kids;
        if (zero && cfg_.emit_trace)
          kids.push_back(trace_.add_terminal(BigCount(0)));
        std::size_t comp_x_total = 0;
        for (const Component& comp : split.components) {
          std::vector<Var> comp_y;
          std::size_t comp_x = 0;
          for (Var v : comp.vars) {
            if (kind_[v])
              comp_y.push_back(v);
            else
              ++comp_x;
          }
          comp_x_total += comp_x;
          NodeValue cv;
          if (comp_y.empty()) {
            cv.count = count_models_scope(comp.clauses, comp_x, cache_,
                                          &xstats_, cfg_.use_xcache);
            if (cfg_.emit_trace) cv.trace = trace_.add_terminal(cv.count);
          } else {
            cv = eval_y_set(comp.clauses, comp_y, comp_x);
          }
          hsum += cv.h;
          if (cv.count == 0) zero = true;
          prod *= cv.count;
          if (cfg_.emit_trace) kids.push_back(cv.trace);
        }
        std::size_t free_x = x_scope - comp_x_total;
        if (free_x > 0) {
          prod <<= free_x;
          if (cfg_.emit_trace)
            kids.push_back(trace_.add_terminal(big_pow2(free_x)));
        }
        if (zero) {
          prod = 0;
          hsum = 0;
        }
        val.h = hsum;
        val.count = std::move(prod);
        if (cfg_.emit_trace)
          val.trace =
              kids.size() == 1 ? kids[0] : trace_.add_conj(std::move(kids));
      }
    }

    if (val.count == 0) val.h = 0;
    if (occ_y.size() < ys.size() && val.count != 0) {
      Var missing = 0;
      for (Var v : ys)
        if (!std::binary_search(occ_y.begin(), occ_y.end(), v)) {
          missing = v;
          break;
        }
      throw CircuitViolation(
          "output variable " + std::to_string(missing) +
          " is unconstrained in a satisfiable residual; the formula admits "
          "multiple output completions for one input assignment");
    }
    return val;
  }

  // Decide an output variable of a connected residual. The cache key pairs
  // the clause set with the input scope width: the same clauses under a
  // wider scope stand for twice the models per extra free input.
  NodeValue eval_y_set(const std::vector<Clause>& clauses,
                       const std::vector<Var>& comp_y, std::size_t x_scope) {
    std::string key;
    if (cfg_.use_ycache) {
      key = canonical_key(clauses);
      for (int b = 0; b < 4; ++b)
        key.push_back(static_cast<char>(x_scope >> (8 * b)));
      if (const CacheEntry* e = cache_.find(key, true); e && e->entropy)
        return NodeValue{*e->entropy, e->count, e->trace_id};
    }

    Var y = pick_good_var(clauses, comp_y, cfg_.heuristic, order_, vsads_);
    ++stats_.y_decisions;
    if (!use_order_) {
      if (!seen_[y]) {
        seen_[y] = 1;
        dynamic_order_.push_back(y);
      }
      vsads_.after_decision();
    }

    std::vector<Var> rest;
    rest.reserve(comp_y.size() - 1);
    for (Var v : comp_y)
      if (v != y) rest.push_back(v);

    NodeValue child[2];
    for (int phase = 0; phase < 2; ++phase) {
      std::vector<Clause> sub = assign_literal(clauses, Lit(y, phase == 1));
      if (cfg_.heuristic == Heuristic::kVsads && !use_order_)
        for (const Clause& c : sub)
          if (c.empty()) vsads_.bump(y);
      child[phase] = eval_residual(sub, x_scope, rest);
    }

    BranchSplit s;
    s.count0 = std::move(child[0].count);
    s.count1 = std::move(child[1].count);
    s.h0 = child[0].h;
    s.h1 = child[1].h;
    auto [h, total] = combine_decision(s);

    NodeValue val{h, std::move(total), -1};
    if (cfg_.emit_trace)
      val.trace = trace_.add_decision(y, child[0].trace, child[1].trace);
    if (cfg_.use_ycache)
      cache_.store(key, CacheEntry{val.count, val.h,
                                   static_cast<std::uint32_t>(comp_y.size()),
                                   val.trace});
    return val;
  }

  const CircuitFormula* f_;
  PseConfig cfg_;
  std::vector<char> kind_;  // 1 = output variable
  std::vector<char> seen_;
  SharedCache cache_;
  VsadsState vsads_;
  DecisionOrder order_;
  bool use_order_ = false;
  std::vector<Var> static_order_;
  std::vector<Var> dynamic_order_;
  std::uint32_t width_ = 0;
  SearchStats stats_;
  CounterStats xstats_;
  TraceLog trace_;
  std::optional<Clock::time_point> deadline_;
};

}  // namespace

EntropyResult pse_entropy(const CircuitFormula& f, const PseConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  const CircuitFormula* input = &f;
  CircuitFormula reduced;
  PreStats pre_stats;
  if (cfg.use_pre) {
    PreResult pre = apply_pre(f);
    reduced = std::move(pre.formula);
    pre_stats = pre.stats;
    input = &reduced;
  }
  Engine engine(*input, cfg);
  EntropyResult out = engine.run();
  out.stats.pre_merged = pre_stats.merged_vars;
  out.stats.pre_forced = pre_stats.forced_units;
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace pse
