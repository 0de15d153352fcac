#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "pse/bigcount.hpp"
#include "pse/formula.hpp"
#include "pse/trace.hpp"

namespace pse {

enum class AddKind : std::uint8_t { kTerminal, kDecision, kConj };

struct AddNode {
  AddKind kind = AddKind::kTerminal;
  BigCount weight;                     // terminal payload, nonnegative
  Var var = 0;                         // decision variable
  std::int32_t lo = -1, hi = -1;       // decision children
  std::vector<std::int32_t> children;  // conjunction children, sorted by id
  std::vector<Var> vars;               // decision vars at or below, ascending
};

// Weighted decision diagram with multiplicative conjunction nodes.
// Structurally identical nodes are shared on construction. Decisions with
// identical branches are kept: they still split the distribution in half,
// so the BDD-style node elimination would change the entropy.
//
// A branch that skips variables decided elsewhere in the sibling branch
// absorbs one doubling per skipped variable (its assignments are free), both
// in the weight and in the entropy recursion.
class AddAnd {
 public:
  using NodeId = std::int32_t;

  NodeId terminal(const BigCount& w);
  // v must not occur below either child.
  NodeId decision(Var v, NodeId lo, NodeId hi);
  // Children must carry pairwise disjoint decision variables. A single
  // child is returned unwrapped; an empty list is invalid.
  NodeId conj(std::vector<NodeId> children);

  NodeId root() const { return root_; }
  void set_root(NodeId id);

  const AddNode& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  BigCount weight(NodeId id) const;
  double entropy(NodeId id) const;
  BigCount weight() const { return weight(root_); }
  double entropy() const { return entropy(root_); }

  // Terminal weight product along the paths picked by sigma, which must
  // assign every decision variable it meets. Summing eval over all
  // assignments of the variables below a node yields that node's weight.
  BigCount eval(const Assignment& sigma, NodeId id) const;
  BigCount eval(const Assignment& sigma) const { return eval(sigma, root_); }

  // True when every path decides variables in ascending `order` position.
  bool respects_order(const std::vector<Var>& order) const;

 private:
  NodeId add_node(AddNode n, std::string key);

  std::vector<AddNode> nodes_;
  std::unordered_map<std::string, NodeId> intern_;
  NodeId root_ = -1;
  mutable std::vector<char> wset_;
  mutable std::vector<BigCount> wmemo_;
  mutable std::vector<char> hset_;
  mutable std::vector<double> hmemo_;
};

// Intern a raw node log into a diagram; structurally equal subtrees merge.
AddAnd build_from_trace(const TraceLog& log);
TraceLog to_trace(const AddAnd& d);

// Rebuild bottom-up from the root, sharing equal subtrees and dropping
// unreachable nodes.
AddAnd reduce(const AddAnd& d);

// Text form reuses the trace format; dot is for graphviz (dashed lo edges).
void write_diagram(std::ostream& out, const AddAnd& d);
AddAnd read_diagram(std::istream& in);
std::string to_dot(const AddAnd& d);

}  // namespace pse
