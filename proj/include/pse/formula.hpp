#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pse {

using Var = std::uint32_t;  // 1-based, DIMACS style

class Lit {
 public:
  Lit() = default;
  Lit(Var v, bool positive) : code_((v << 1) | (positive ? 1u : 0u)) {}

  static Lit from_code(std::uint32_t c) {
    Lit l;
    l.code_ = c;
    return l;
  }
  static Lit from_dimacs(long d) {
    return Lit(static_cast<Var>(d < 0 ? -d : d), d > 0);
  }

  Var var() const { return code_ >> 1; }
  bool positive() const { return (code_ & 1u) != 0; }
  Lit negated() const { return from_code(code_ ^ 1u); }
  std::uint32_t code() const { return code_; }
  long to_dimacs() const {
    return positive() ? static_cast<long>(var()) : -static_cast<long>(var());
  }

  bool operator==(const Lit& o) const { return code_ == o.code_; }
  bool operator!=(const Lit& o) const { return code_ != o.code_; }
  bool operator<(const Lit& o) const { return code_ < o.code_; }

 private:
  std::uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;  // sorted by code, duplicate-free

// CNF with a declared input/output split. Every variable occurring in a
// clause must be declared as input (X) or output (Y); declared variables may
// be absent from all clauses.
struct CircuitFormula {
  Var nvars = 0;
  std::vector<Clause> clauses;
  std::vector<Var> inputs;   // sorted ascending
  std::vector<Var> outputs;  // sorted ascending

  bool is_input(Var v) const;
  bool is_output(Var v) const;
  // Throws std::invalid_argument if the X/Y split is inconsistent.
  void check_invariants() const;
  bool is_canonical_unsat() const {
    return clauses.size() == 1 && clauses[0].empty();
  }
};

// Partial assignment over 1..nvars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var nvars) : value_(nvars + 1, kUnset) {}

  bool defined(Var v) const { return value_[v] != kUnset; }
  bool get(Var v) const { return value_[v] == 1; }
  void set(Lit l) { value_[l.var()] = l.positive() ? 1 : 0; }
  bool satisfies(Lit l) const {
    return defined(l.var()) && get(l.var()) == l.positive();
  }
  bool falsifies(Lit l) const {
    return defined(l.var()) && get(l.var()) != l.positive();
  }
  Var size() const { return static_cast<Var>(value_.size() ? value_.size() - 1 : 0); }
  std::vector<Lit> literals() const;

 private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> value_;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sorts and deduplicates in place; returns false for a tautology.
bool normalize_clause(Clause& c);

// Extended DIMACS: "c p input v... 0" / "c p output v... 0" declarations
// (accumulating), or a legacy "c ind v... 0" line meaning Y with X = the rest.
CircuitFormula parse_dimacs(std::istream& in);
CircuitFormula parse_dimacs(const std::string& text);
std::string serialize_dimacs(const CircuitFormula& f);

struct ConditionResult {
  CircuitFormula formula;   // residual; canonical unsat on conflict
  Assignment forced;        // asserted literals plus everything unit-implied
  bool conflict = false;
};

// Assert lits and run unit propagation to fixpoint. Throws
// std::invalid_argument for unknown variables or directly contradictory lits.
ConditionResult condition(const CircuitFormula& f, const std::vector<Lit>& lits);

enum class ValidateMode { kBrute, kSelfComposition };

// True iff every X assignment admits at most one Y completion. kBrute
// enumerates all assignments (|X|+|Y| <= 26); kSelfComposition counts models
// of f(X,Y) & f(X,Y') & (Y != Y').
bool validate_circuit(const CircuitFormula& f, ValidateMode mode);

struct RandomCircuitSpec {
  std::uint64_t seed = 0;
  Var n_inputs = 1;
  Var n_outputs = 1;
  std::uint32_t arity = 3;  // upper bound on gate fan-in
};

// Deterministic in spec.seed: every output is a Tseitin-encoded gate
// (AND/OR/XOR/NOT/MAJ3) over distinct input literals.
CircuitFormula random_circuit(const RandomCircuitSpec& spec);

// --- shared clause-set helpers -------------------------------------------

// Apply a literal: drop satisfied clauses, delete falsified literals.
// Falsified clauses survive as empty clauses.
std::vector<Clause> assign_literal(const std::vector<Clause>& clauses, Lit l);

// Distinct variables occurring in the clause set, ascending.
std::vector<Var> vars_of(const std::vector<Clause>& clauses);

bool contains_empty_clause(const std::vector<Clause>& clauses);

}  // namespace pse
