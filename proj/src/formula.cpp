#include "pse/formula.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>
#include <unordered_map>

#include "pse/counter.hpp"

namespace pse {

bool CircuitFormula::is_input(Var v) const {
  return std::binary_search(inputs.begin(), inputs.end(), v);
}

bool CircuitFormula::is_output(Var v) const {
  return std::binary_search(outputs.begin(), outputs.end(), v);
}

void CircuitFormula::check_invariants() const {
  auto check_sorted = [this](const std::vector<Var>& vs, const char* kind) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i] == 0 || vs[i] > nvars)
        throw std::invalid_argument(std::string(kind) + " variable out of range");
      if (i > 0 && vs[i] <= vs[i - 1])
        throw std::invalid_argument(std::string(kind) + " variables not strictly sorted");
    }
  };
  check_sorted(inputs, "input");
  check_sorted(outputs, "output");
  for (Var v : inputs)
    if (is_output(v))
      throw std::invalid_argument("variable declared both input and output");
  for (const Clause& c : clauses)
    for (Lit l : c)
      if (!is_input(l.var()) && !is_output(l.var()))
        throw std::invalid_argument("clause variable in neither input nor output set");
}

std::vector<Lit> Assignment::literals() const {
  std::vector<Lit> out;
  for (Var v = 1; v < value_.size(); ++v)
    if (value_[v] != kUnset) out.emplace_back(v, value_[v] == 1);
  return out;
}

bool normalize_clause(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].var() == c[i + 1].var()) return false;  // l and ~l
  return true;
}

// --- parsing ---------------------------------------------------------------

namespace {

std::vector<Var> parse_var_list(std::istringstream& ss, const std::string& what) {
  std::vector<Var> vs;
  long v;
  bool terminated = false;
  while (ss >> v) {
    if (v == 0) {
      terminated = true;
      break;
    }
    if (v < 0) throw ParseError(what + " declaration contains a negative entry");
    vs.push_back(static_cast<Var>(v));
  }
  if (!terminated) throw ParseError(what + " declaration not terminated by 0");
  return vs;
}

}  // namespace

CircuitFormula parse_dimacs(std::istream& in) {
  CircuitFormula f;
  bool header_seen = false;
  bool decl_seen = false;
  std::vector<Var> ind_vars;
  bool ind_seen = false;
  std::vector<Lit> pending;
  std::string line;

  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") {
      std::string t2;
      if (!(ss >> t2)) continue;
      if (t2 == "p") {
        std::string t3;
        if (!(ss >> t3)) continue;
        if (t3 == "input") {
          auto vs = parse_var_list(ss, "input");
          f.inputs.insert(f.inputs.end(), vs.begin(), vs.end());
          decl_seen = true;
        } else if (t3 == "output") {
          auto vs = parse_var_list(ss, "output");
          f.outputs.insert(f.outputs.end(), vs.begin(), vs.end());
          decl_seen = true;
        }
        // other "c p ..." lines are comments
      } else if (t2 == "ind") {
        auto vs = parse_var_list(ss, "ind");
        ind_vars.insert(ind_vars.end(), vs.begin(), vs.end());
        ind_seen = true;
      }
      continue;
    }
    if (tok == "p") {
      if (header_seen) throw ParseError("duplicate problem header");
      std::string fmt;
      long nv = -1, nc = -1;
      if (!(ss >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        throw ParseError("malformed problem header");
      f.nvars = static_cast<Var>(nv);
      header_seen = true;
      continue;
    }
    // clause tokens; a clause may span lines
    ss.clear();
    ss.seekg(0);
    long v;
    while (ss >> v) {
      if (!header_seen) throw ParseError("clause before problem header");
      if (v == 0) {
        Clause c = pending;
        pending.clear();
        if (normalize_clause(c)) f.clauses.push_back(std::move(c));
      } else {
        Var var = static_cast<Var>(v < 0 ? -v : v);
        if (var > f.nvars) throw ParseError("variable index out of range");
        pending.push_back(Lit::from_dimacs(v));
      }
    }
    if (!ss.eof()) throw ParseError("unexpected token in clause");
  }
  if (!pending.empty()) throw ParseError("last clause not terminated by 0");
  if (!header_seen) throw ParseError("missing problem header");

  if (!decl_seen) {
    if (!ind_seen) throw ParseError("missing input/output declarations");
    f.outputs = ind_vars;
    std::sort(f.outputs.begin(), f.outputs.end());
    f.outputs.erase(std::unique(f.outputs.begin(), f.outputs.end()), f.outputs.end());
    for (Var v = 1; v <= f.nvars; ++v)
      if (!std::binary_search(f.outputs.begin(), f.outputs.end(), v))
        f.inputs.push_back(v);
  }
  auto finish = [&](std::vector<Var>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  };
  finish(f.inputs);
  finish(f.outputs);
  f.check_invariants();
  return f;
}

CircuitFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string serialize_dimacs(const CircuitFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.nvars << " " << f.clauses.size() << "\n";
  auto emit_decl = [&](const char* kind, const std::vector<Var>& vs) {
    std::size_t i = 0;
    do {
      out << "c p " << kind;
      for (std::size_t j = 0; j < 16 && i < vs.size(); ++j, ++i) out << " " << vs[i];
      out << " 0\n";
    } while (i < vs.size());
  };
  emit_decl("input", f.inputs);
  emit_decl("output", f.outputs);
  for (const Clause& c : f.clauses) {
    for (Lit l : c) out << l.to_dimacs() << " ";
    out << "0\n";
  }
  return out.str();
}

// --- conditioning ----------------------------------------------------------

ConditionResult condition(const CircuitFormula& f, const std::vector<Lit>& lits) {
  Assignment a(f.nvars);
  for (Lit l : lits) {
    if (l.var() == 0 || l.var() > f.nvars)
      throw std::invalid_argument("literal references unknown variable");
    if (a.falsifies(l))
      throw std::invalid_argument("contradictory literals in condition call");
    a.set(l);
  }

  std::vector<Clause> cur = f.clauses;
  while (true) {
    std::vector<Clause> next;
    next.reserve(cur.size());
    bool conflict = false;
    for (const Clause& c : cur) {
      Clause r;
      bool sat = false;
      for (Lit l : c) {
        if (a.satisfies(l)) {
          sat = true;
          break;
        }
        if (!a.falsifies(l)) r.push_back(l);
      }
      if (sat) continue;
      if (r.empty()) {
        conflict = true;
        break;
      }
      next.push_back(std::move(r));
    }
    if (conflict) {
      CircuitFormula unsat{f.nvars, {Clause{}}, f.inputs, f.outputs};
      return {std::move(unsat), std::move(a), true};
    }
    std::vector<Lit> units;
    for (const Clause& c : next)
      if (c.size() == 1) units.push_back(c[0]);
    if (units.empty()) {
      CircuitFormula res{f.nvars, std::move(next), f.inputs, f.outputs};
      return {std::move(res), std::move(a), false};
    }
    bool unit_conflict = false;
    for (Lit l : units) {
      if (a.falsifies(l)) {
        unit_conflict = true;
        break;
      }
      a.set(l);
    }
    if (unit_conflict) {
      CircuitFormula unsat{f.nvars, {Clause{}}, f.inputs, f.outputs};
      return {std::move(unsat), std::move(a), true};
    }
    cur = std::move(next);
  }
}

// --- validation ------------------------------------------------------------

namespace {

bool validate_brute(const CircuitFormula& f) {
  std::vector<Var> vs = f.inputs;
  vs.insert(vs.end(), f.outputs.begin(), f.outputs.end());
  std::sort(vs.begin(), vs.end());
  if (vs.size() > 26)
    throw std::invalid_argument("brute validation limited to 26 variables");
  std::unordered_map<Var, unsigned> idx;
  for (unsigned i = 0; i < vs.size(); ++i) idx[vs[i]] = i;

  struct Masks {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Masks> cm(f.clauses.size());
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    for (Lit l : f.clauses[i]) {
      std::uint32_t bit = 1u << idx[l.var()];
      if (l.positive())
        cm[i].pos |= bit;
      else
        cm[i].neg |= bit;
    }
  std::uint32_t xmask = 0;
  for (Var v : f.inputs) xmask |= 1u << idx[v];

  std::unordered_map<std::uint32_t, std::uint32_t> x_to_y;
  std::uint64_t total = 1ull << vs.size();
  for (std::uint64_t m = 0; m < total; ++m) {
    std::uint32_t mm = static_cast<std::uint32_t>(m);
    bool sat = true;
    for (const Masks& c : cm)
      if ((mm & c.pos) == 0 && (~mm & c.neg) == 0) {
        sat = false;
        break;
      }
    if (!sat) continue;
    std::uint32_t xk = mm & xmask;
    std::uint32_t yk = mm & ~xmask;
    auto [it, inserted] = x_to_y.emplace(xk, yk);
    if (!inserted && it->second != yk) return false;
  }
  return true;
}

bool validate_selfcomp(const CircuitFormula& f) {
  const Var n = f.nvars;
  const std::size_t k = f.outputs.size();
  if (k == 0) return true;
  std::unordered_map<Var, std::size_t> rank;
  for (std::size_t i = 0; i < k; ++i) rank[f.outputs[i]] = i;
  auto yprime = [&](Var y) { return static_cast<Var>(n + 1 + rank[y]); };
  auto dvar = [&](std::size_t r) { return static_cast<Var>(n + k + 1 + r); };

  std::vector<Clause> clauses = f.clauses;
  for (const Clause& c : f.clauses) {
    Clause r;
    for (Lit l : c)
      r.emplace_back(f.is_output(l.var()) ? yprime(l.var()) : l.var(), l.positive());
    normalize_clause(r);
    clauses.push_back(std::move(r));
  }
  Clause any_diff;
  for (std::size_t r = 0; r < k; ++r) {
    Var y = f.outputs[r], yp = yprime(y), d = dvar(r);
    clauses.push_back({Lit(d, false), Lit(y, true), Lit(yp, true)});
    clauses.push_back({Lit(d, false), Lit(y, false), Lit(yp, false)});
    clauses.push_back({Lit(d, true), Lit(y, false), Lit(yp, true)});
    clauses.push_back({Lit(d, true), Lit(y, true), Lit(yp, false)});
    any_diff.emplace_back(d, true);
  }
  clauses.push_back(std::move(any_diff));
  for (Clause& c : clauses) normalize_clause(c);

  std::vector<Var> scope = f.inputs;
  scope.insert(scope.end(), f.outputs.begin(), f.outputs.end());
  for (std::size_t r = 0; r < k; ++r) {
    scope.push_back(yprime(f.outputs[r]));
    scope.push_back(dvar(r));
  }
  std::sort(scope.begin(), scope.end());
  SharedCache cache;
  return count_models(clauses, scope, cache) == 0;
}

}  // namespace

bool validate_circuit(const CircuitFormula& f, ValidateMode mode) {
  f.check_invariants();
  return mode == ValidateMode::kBrute ? validate_brute(f) : validate_selfcomp(f);
}

// --- random circuits -------------------------------------------------------

namespace {

enum class Gate { kAnd, kOr, kXor, kNot, kMaj3 };

void emit_gate(std::vector<Clause>& out, Var y, Gate g, const std::vector<Lit>& in) {
  Lit yt(y, true), yf(y, false);
  switch (g) {
    case Gate::kNot: {
      out.push_back({yf, in[0].negated()});
      out.push_back({yt, in[0]});
      break;
    }
    case Gate::kAnd: {
      Clause big{yt};
      for (Lit l : in) {
        out.push_back({yf, l});
        big.push_back(l.negated());
      }
      out.push_back(std::move(big));
      break;
    }
    case Gate::kOr: {
      Clause big{yf};
      for (Lit l : in) {
        out.push_back({yt, l.negated()});
        big.push_back(l);
      }
      out.push_back(std::move(big));
      break;
    }
    case Gate::kXor: {
      Lit a = in[0], b = in[1];
      out.push_back({yf, a, b});
      out.push_back({yf, a.negated(), b.negated()});
      out.push_back({yt, a, b.negated()});
      out.push_back({yt, a.negated(), b});
      break;
    }
    case Gate::kMaj3: {
      Lit a = in[0], b = in[1], c = in[2];
      out.push_back({yf, a, b});
      out.push_back({yf, a, c});
      out.push_back({yf, b, c});
      out.push_back({yt, a.negated(), b.negated()});
      out.push_back({yt, a.negated(), c.negated()});
      out.push_back({yt, b.negated(), c.negated()});
      break;
    }
  }
}

}  // namespace

CircuitFormula random_circuit(const RandomCircuitSpec& spec) {
  if (spec.n_inputs < 1 || spec.n_outputs < 1 || spec.arity < 1)
    throw std::invalid_argument("random_circuit: counts and arity must be positive");
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::uint64_t n) { return rng() % n; };

  CircuitFormula f;
  f.nvars = spec.n_inputs + spec.n_outputs;
  for (Var v = 1; v <= spec.n_inputs; ++v) f.inputs.push_back(v);
  for (Var v = spec.n_inputs + 1; v <= f.nvars; ++v) f.outputs.push_back(v);

  std::vector<Var> pool(f.inputs);
  for (Var j = 0; j < spec.n_outputs; ++j) {
    Var y = spec.n_inputs + 1 + j;
    std::vector<Gate> allowed{Gate::kNot, Gate::kAnd, Gate::kOr};
    if (spec.n_inputs >= 2) allowed.push_back(Gate::kXor);
    if (spec.n_inputs >= 3) allowed.push_back(Gate::kMaj3);
    Gate g = allowed[pick(allowed.size())];

    std::size_t arity = 1;
    std::size_t hi = std::min<std::size_t>(spec.arity, spec.n_inputs);
    switch (g) {
      case Gate::kNot: arity = 1; break;
      case Gate::kXor: arity = 2; break;
      case Gate::kMaj3: arity = 3; break;
      default: arity = hi <= 1 ? 1 : 2 + pick(hi - 1); break;
    }
    for (std::size_t i = 0; i < arity; ++i)
      std::swap(pool[i], pool[i + pick(pool.size() - i)]);
    std::vector<Lit> ins;
    for (std::size_t i = 0; i < arity; ++i) ins.emplace_back(pool[i], pick(2) == 0);
    emit_gate(f.clauses, y, g, ins);
  }
  for (Clause& c : f.clauses) {
    bool ok = normalize_clause(c);
    assert(ok);
    (void)ok;
  }
  f.check_invariants();
  return f;
}

// --- clause-set helpers ----------------------------------------------------

std::vector<Clause> assign_literal(const std::vector<Clause>& clauses, Lit l) {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  Lit nl = l.negated();
  for (const Clause& c : clauses) {
    if (std::binary_search(c.begin(), c.end(), l)) continue;
    Clause r;
    r.reserve(c.size());
    for (Lit x : c)
      if (x != nl) r.push_back(x);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Var> vars_of(const std::vector<Clause>& clauses) {
  std::vector<Var> vs;
  for (const Clause& c : clauses)
    for (Lit l : c) vs.push_back(l.var());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool contains_empty_clause(const std::vector<Clause>& clauses) {
  for (const Clause& c : clauses)
    if (c.empty()) return true;
  return false;
}

}  // namespace pse
