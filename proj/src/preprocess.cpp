#include "pse/preprocess.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>

namespace pse {
namespace {

struct SccOut {
  std::vector<std::int32_t> comp;  // per literal code, -1 = not in any binary clause
  std::vector<std::vector<std::uint32_t>> members;
};

// Tarjan over the implication graph of the binary clauses: (a | b) yields
// ~a -> b and ~b -> a. Iterative so deep chains cannot overflow the stack.
SccOut binary_sccs(const std::vector<Clause>& clauses, Var nvars) {
  std::size_t ncodes = 2 * (static_cast<std::size_t>(nvars) + 1);
  std::vector<std::vector<std::uint32_t>> adj(ncodes);
  std::vector<char> present(ncodes, 0);
  for (const Clause& c : clauses) {
    if (c.size() != 2) continue;
    std::uint32_t a = c[0].code(), b = c[1].code();
    adj[a ^ 1u].push_back(b);
    adj[b ^ 1u].push_back(a);
    present[a] = present[a ^ 1u] = present[b] = present[b ^ 1u] = 1;
  }

  SccOut out;
  out.comp.assign(ncodes, -1);
  std::vector<std::int32_t> index(ncodes, -1), low(ncodes, 0);
  std::vector<char> onstack(ncodes, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t node;
    std::size_t child;
  };
  std::vector<Frame> frames;
  std::int32_t next_index = 0;

  for (std::uint32_t s = 0; s < ncodes; ++s) {
    if (!present[s] || index[s] >= 0) continue;
    index[s] = low[s] = next_index++;
    stack.push_back(s);
    onstack[s] = 1;
    frames.push_back({s, 0});
    while (!frames.empty()) {
      Frame& fr = frames.back();
      if (fr.child < adj[fr.node].size()) {
        std::uint32_t w = adj[fr.node][fr.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          onstack[w] = 1;
          frames.push_back({w, 0});
        } else if (onstack[w]) {
          low[fr.node] = std::min(low[fr.node], index[w]);
        }
      } else {
        std::uint32_t v = fr.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] = std::min(low[frames.back().node], low[v]);
        if (low[v] == index[v]) {
          out.members.emplace_back();
          for (;;) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            onstack[w] = 0;
            out.comp[w] = static_cast<std::int32_t>(out.members.size()) - 1;
            out.members.back().push_back(w);
            if (w == v) break;
          }
        }
      }
    }
  }
  return out;
}

// Rep-first literal lists for every nontrivial SCC, mirror classes skipped.
// Representatives prefer X variables, then the smallest index. Sets *unsat
// when some literal shares a component with its negation.
std::vector<std::vector<Lit>> extract_classes(const SccOut& scc,
                                              const std::vector<char>& is_x,
                                              bool* unsat) {
  std::vector<std::vector<Lit>> classes;
  for (const auto& mem : scc.members) {
    if (mem.size() < 2) continue;
    for (std::uint32_t code : mem) {
      if (scc.comp[code ^ 1u] == scc.comp[code]) {
        *unsat = true;
        return {};
      }
    }
    Lit rep = Lit::from_code(mem[0]);
    for (std::uint32_t code : mem) {
      Lit l = Lit::from_code(code);
      bool better = is_x[l.var()] != is_x[rep.var()]
                        ? is_x[l.var()]
                        : l.var() < rep.var();
      if (better) rep = l;
    }
    if (!rep.positive()) continue;  // the mirror class carries the positive rep
    std::vector<std::uint32_t> rest(mem.begin(), mem.end());
    std::sort(rest.begin(), rest.end());
    std::vector<Lit> cls{rep};
    for (std::uint32_t code : rest)
      if (code != rep.code()) cls.push_back(Lit::from_code(code));
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [](const std::vector<Lit>& a, const std::vector<Lit>& b) {
              return a[0].code() < b[0].code();
            });
  return classes;
}

bool clause_less(const Clause& a, const Clause& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](Lit x, Lit y) { return x.code() < y.code(); });
}

}  // namespace

EquivClasses detect_equivalences(const CircuitFormula& f) {
  EquivClasses out;
  ConditionResult cr = condition(f, {});
  out.units = cr.forced.literals();
  if (cr.conflict) {
    out.unsat = true;
    return out;
  }
  std::vector<char> is_x(f.nvars + 1, 0);
  for (Var v : f.inputs) is_x[v] = 1;
  SccOut scc = binary_sccs(cr.formula.clauses, f.nvars);
  out.classes = extract_classes(scc, is_x, &out.unsat);
  return out;
}

PreResult apply_pre(const CircuitFormula& f) {
  PreResult out;
  std::vector<char> is_x(f.nvars + 1, 0);
  for (Var v : f.inputs) is_x[v] = 1;

  std::vector<Clause> work = f.clauses;
  Assignment forced(f.nvars);
  // target[v] != 0 means the positive literal of v was merged into that code
  std::vector<std::uint32_t> target(f.nvars + 1, 0);
  bool unsat = false;

  auto bcp = [&]() {
    for (;;) {
      Lit unit{};
      bool found = false;
      for (const Clause& c : work) {
        if (c.empty()) {
          unsat = true;
          return;
        }
        if (c.size() == 1 && !found) {
          unit = c[0];
          found = true;
        }
      }
      if (!found) return;
      forced.set(unit);
      work = assign_literal(work, unit);
    }
  };

  // Substitute to fixpoint: collapsing a class can surface fresh units
  // (e.g. (a | b) with a and b merged becomes the unit (a)), and pinning
  // those can expose further classes.
  for (;;) {
    bcp();
    if (unsat) break;
    SccOut scc = binary_sccs(work, f.nvars);
    std::vector<std::vector<Lit>> classes = extract_classes(scc, is_x, &unsat);
    if (unsat || classes.empty()) break;

    std::vector<std::uint32_t> sub(2 * (static_cast<std::size_t>(f.nvars) + 1));
    for (std::uint32_t c = 0; c < sub.size(); ++c) sub[c] = c;
    for (const auto& cls : classes) {
      Lit rep = cls[0];
      for (std::size_t i = 1; i < cls.size(); ++i) {
        Lit l = cls[i];
        sub[l.code()] = rep.code();
        sub[l.negated().code()] = rep.negated().code();
        target[l.var()] = l.positive() ? rep.code() : rep.negated().code();
      }
    }
    // keep earlier targets compressed through this round's merges
    for (Var v = 1; v <= f.nvars; ++v)
      if (target[v] != 0) target[v] = sub[target[v]];

    std::vector<Clause> next;
    next.reserve(work.size());
    for (const Clause& c : work) {
      Clause mapped;
      mapped.reserve(c.size());
      for (Lit l : c) mapped.push_back(Lit::from_code(sub[l.code()]));
      if (normalize_clause(mapped)) next.push_back(std::move(mapped));
    }
    std::sort(next.begin(), next.end(), clause_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    work = std::move(next);
  }

  for (Var v = 1; v <= f.nvars; ++v)
    if (target[v] != 0) ++out.stats.merged_vars;

  if (unsat) {
    out.formula = CircuitFormula{f.nvars, {Clause{}}, f.inputs, f.outputs};
    return out;
  }

  std::vector<Clause> result = work;  // unit-free, merged-variable-free residual
  for (Lit l : forced.literals()) {
    result.push_back(Clause{l});
    ++out.stats.forced_units;
  }
  for (Var v = 1; v <= f.nvars; ++v) {
    if (target[v] == 0 || is_x[v]) continue;
    Lit t = Lit::from_code(target[v]);
    if (forced.defined(t.var())) {
      // the representative got pinned after the merge, so v is fixed too
      result.push_back(Clause{Lit(v, forced.get(t.var()) == t.positive())});
      ++out.stats.forced_units;
      continue;
    }
    Clause a{Lit(v, false), t};
    Clause b{Lit(v, true), t.negated()};
    normalize_clause(a);
    normalize_clause(b);
    result.push_back(a);
    result.push_back(b);
    out.restored.push_back(a);
    out.restored.push_back(b);
  }
  std::sort(result.begin(), result.end(), clause_less);

  std::vector<Var> inputs;
  inputs.reserve(f.inputs.size());
  for (Var v : f.inputs)
    if (target[v] == 0) inputs.push_back(v);

  out.formula = CircuitFormula{f.nvars, std::move(result), std::move(inputs), f.outputs};
  out.formula.check_invariants();
  return out;
}

}  // namespace pse
