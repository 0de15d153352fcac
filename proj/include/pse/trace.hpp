#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pse/bigcount.hpp"
#include "pse/formula.hpp"

namespace pse {

enum class TraceKind : std::uint8_t { kTerminal, kDecision, kConj };

// Raw node record as produced by the entropy recursion. Ids are dense and
// children always precede parents.
struct TraceNode {
  TraceKind kind = TraceKind::kTerminal;
  BigCount weight;                       // terminal payload (model count)
  Var var = 0;                           // decision variable
  std::int64_t lo = -1, hi = -1;         // decision children
  std::vector<std::int64_t> children;    // conjunction children
};

struct TraceLog {
  std::vector<TraceNode> nodes;
  std::int64_t root = -1;
  std::vector<Var> order;  // decision order, first-decided first

  std::int64_t add_terminal(BigCount w);
  std::int64_t add_decision(Var v, std::int64_t lo, std::int64_t hi);
  std::int64_t add_conj(std::vector<std::int64_t> ch);
};

// Line format: "pse-trace 1" header, "order v... 0", one "t|d|a" line per
// node (ids sequential from 0), then "root <id>".
void write_trace(std::ostream& out, const TraceLog& log);
TraceLog read_trace(std::istream& in);  // throws ParseError on malformed input

}  // namespace pse
