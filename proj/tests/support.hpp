#pragma once

// Shared helpers for the test suite: tiny formula builders, brute-force
// oracles, and a random diagram generator. Everything here is slow and
// obvious on purpose; the library under test is the fast path.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pse/addand.hpp"
#include "pse/bigcount.hpp"
#include "pse/formula.hpp"

namespace testsupport {

inline pse::CircuitFormula make_formula(
    pse::Var nvars, const std::vector<std::vector<long>>& raw,
    std::vector<pse::Var> inputs, std::vector<pse::Var> outputs) {
  pse::CircuitFormula f;
  f.nvars = nvars;
  f.inputs = std::move(inputs);
  f.outputs = std::move(outputs);
  for (const auto& ints : raw) {
    pse::Clause c;
    for (long d : ints) c.push_back(pse::Lit::from_dimacs(d));
    if (pse::normalize_clause(c)) f.clauses.push_back(std::move(c));
  }
  f.check_invariants();
  return f;
}

// n independent blocks. Block i couples inputs x=i, x'=n+i with outputs
// y=2n+i, y'=3n+i; the block has four models and its output pair is 11 on
// exactly one of them, so each block contributes
// -(3/4)log2(3/4) - (1/4)log2(1/4) bits.
inline pse::CircuitFormula separable_formula(unsigned n) {
  std::vector<std::vector<long>> cl;
  for (unsigned i = 1; i <= n; ++i) {
    long x = i, xp = n + i, y = 2 * n + i, yp = 3 * n + i;
    cl.push_back({-x, -xp, y});
    cl.push_back({-x, -xp, yp});
    cl.push_back({x, -y});
    cl.push_back({xp, -y});
    cl.push_back({x, -yp});
    cl.push_back({xp, -yp});
  }
  std::vector<pse::Var> xs, ys;
  for (unsigned v = 1; v <= 2 * n; ++v) xs.push_back(v);
  for (unsigned v = 2 * n + 1; v <= 4 * n; ++v) ys.push_back(v);
  return make_formula(4 * n, cl, xs, ys);
}

inline constexpr double kBlockEntropy = 0.8112781244591328;

// Five inputs (1..5), five outputs (6..10), 28 models, entropy 2.8423709...
inline pse::CircuitFormula example_circuit() {
  return make_formula(10,
                      {{2, 3, 8},
                       {-8, -9},
                       {2, 8},
                       {-2, 9},
                       {-1, -6},
                       {1, 6},
                       {-4, 5, 7},
                       {4, -5, 7},
                       {-4, -5, -7},
                       {4, 5, 7},
                       {-6, -10},
                       {6, 10},
                       {6, 4, 5},
                       {6, 8, 9}},
                      {1, 2, 3, 4, 5}, {6, 7, 8, 9, 10});
}

// All models as (input bits, output bits); bit i maps to inputs[i] resp.
// outputs[i]. Enumerates every declared variable, so keep |X|+|Y| small.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> brute_models(
    const pse::CircuitFormula& f) {
  std::size_t nx = f.inputs.size(), ny = f.outputs.size();
  std::vector<signed char> val(f.nvars + 1, -1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t mask = 0; mask < (1ull << (nx + ny)); ++mask) {
    for (std::size_t i = 0; i < nx; ++i)
      val[f.inputs[i]] = static_cast<signed char>((mask >> i) & 1);
    for (std::size_t j = 0; j < ny; ++j)
      val[f.outputs[j]] = static_cast<signed char>((mask >> (nx + j)) & 1);
    bool sat = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (pse::Lit l : c)
        if (val[l.var()] == (l.positive() ? 1 : 0)) {
          any = true;
          break;
        }
      if (!any) {
        sat = false;
        break;
      }
    }
    if (sat)
      out.emplace_back(mask & ((nx ? (1ull << nx) : 1ull) - 1), mask >> nx);
  }
  return out;
}

inline double entropy_of_dist(const std::map<std::uint64_t, pse::BigCount>& dist,
                              const pse::BigCount& total) {
  if (total == 0) return 0.0;
  double h = 0;
  for (const auto& [pattern, w] : dist) {
    (void)pattern;
    if (w == 0) continue;
    double p = pse::big_ratio(w, total);
    h -= p * std::log2(p);
  }
  return h < 0 ? 0.0 : h;
}

struct BruteResult {
  pse::BigCount count = 0;
  std::map<std::uint64_t, pse::BigCount> dist;  // output bits -> model count
  double entropy = 0;
};

inline BruteResult brute_force(const pse::CircuitFormula& f) {
  BruteResult r;
  for (const auto& [x, y] : brute_models(f)) {
    (void)x;
    r.count += 1;
    r.dist[y] += 1;
  }
  r.entropy = entropy_of_dist(r.dist, r.count);
  return r;
}

// Appends `pairs` fresh output variables, each defined equivalent to a
// random already-declared literal (possibly a previously injected one, so
// chains occur). The result is still a circuit formula with the same model
// count.
inline pse::CircuitFormula inject_equivalences(const pse::CircuitFormula& f,
                                               std::uint64_t seed,
                                               unsigned pairs) {
  pse::CircuitFormula g = f;
  std::mt19937_64 rng(seed);
  std::vector<pse::Var> declared = g.inputs;
  declared.insert(declared.end(), g.outputs.begin(), g.outputs.end());
  for (unsigned k = 0; k < pairs; ++k) {
    pse::Var z = ++g.nvars;
    pse::Var t = declared[rng() % declared.size()];
    pse::Lit l(t, (rng() & 1) != 0);
    pse::Clause a{pse::Lit(z, false), l};
    pse::Clause b{pse::Lit(z, true), l.negated()};
    pse::normalize_clause(a);
    pse::normalize_clause(b);
    g.clauses.push_back(a);
    g.clauses.push_back(b);
    g.outputs.push_back(z);
    declared.push_back(z);
  }
  g.check_invariants();
  return g;
}

// Random ordered diagram over variables 1..nvars with terminals 0..5.
// Branches skip a random number of the following variables independently,
// so one branch regularly decides variables the sibling skips: gaps.
inline pse::AddAnd::NodeId random_diagram_node(pse::AddAnd& d,
                                               std::mt19937_64& rng,
                                               const std::vector<pse::Var>& vars,
                                               std::size_t begin,
                                               std::size_t end) {
  if (begin >= end || rng() % 5 == 0)
    return d.terminal(pse::BigCount(static_cast<unsigned long>(rng() % 6)));
  if (end - begin >= 2 && rng() % 4 == 0) {
    std::size_t mid = begin + 1 + static_cast<std::size_t>(rng() % (end - begin - 1));
    auto a = random_diagram_node(d, rng, vars, begin, mid);
    auto b = random_diagram_node(d, rng, vars, mid, end);
    if (a == b) return a;  // two equal terminals; nothing to conjoin
    return d.conj({a, b});
  }
  pse::Var v = vars[begin];
  std::size_t lo_from = std::min(end, begin + 1 + static_cast<std::size_t>(rng() % 3));
  std::size_t hi_from = std::min(end, begin + 1 + static_cast<std::size_t>(rng() % 3));
  auto lo = random_diagram_node(d, rng, vars, lo_from, end);
  auto hi = random_diagram_node(d, rng, vars, hi_from, end);
  return d.decision(v, lo, hi);
}

inline pse::AddAnd random_diagram(std::uint64_t seed, unsigned nvars) {
  pse::AddAnd d;
  std::vector<pse::Var> vars;
  for (unsigned v = 1; v <= nvars; ++v) vars.push_back(v);
  std::mt19937_64 rng(seed);
  d.set_root(random_diagram_node(d, rng, vars, 0, vars.size()));
  return d;
}

inline pse::BigCount diagram_weight_by_enum(const pse::AddAnd& d) {
  const auto& vars = d.node(d.root()).vars;
  pse::Var maxv = vars.empty() ? 0 : vars.back();
  pse::BigCount total = 0;
  for (std::uint64_t mask = 0; mask < (1ull << vars.size()); ++mask) {
    pse::Assignment sigma(maxv);
    for (std::size_t i = 0; i < vars.size(); ++i)
      sigma.set(pse::Lit(vars[i], ((mask >> i) & 1) != 0));
    total += d.eval(sigma);
  }
  return total;
}

inline double diagram_entropy_by_enum(const pse::AddAnd& d) {
  const auto& vars = d.node(d.root()).vars;
  pse::Var maxv = vars.empty() ? 0 : vars.back();
  std::map<std::uint64_t, pse::BigCount> dist;
  pse::BigCount total = 0;
  for (std::uint64_t mask = 0; mask < (1ull << vars.size()); ++mask) {
    pse::Assignment sigma(maxv);
    for (std::size_t i = 0; i < vars.size(); ++i)
      sigma.set(pse::Lit(vars[i], ((mask >> i) & 1) != 0));
    pse::BigCount w = d.eval(sigma);
    if (w != 0) {
      dist[mask] = w;
      total += w;
    }
  }
  return entropy_of_dist(dist, total);
}

// True when some branch absorbs a skipped-variable doubling somewhere.
inline bool diagram_has_gap(const pse::AddAnd& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    const pse::AddNode& n = d.node(i);
    if (n.kind != pse::AddKind::kDecision) continue;
    std::size_t below = n.vars.size() - 1;
    if (d.node(n.lo).vars.size() < below || d.node(n.hi).vars.size() < below)
      return true;
  }
  return false;
}

}  // namespace testsupport
