#include "pse/addand.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pse/engine.hpp"

namespace pse {

namespace {

std::vector<Var> merge_vars(const std::vector<Var>& a,
                            const std::vector<Var>& b) {
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace

AddAnd::NodeId AddAnd::add_node(AddNode n, std::string key) {
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  intern_.emplace(std::move(key), id);
  return id;
}

AddAnd::NodeId AddAnd::terminal(const BigCount& w) {
  if (w < 0)
    throw std::invalid_argument("terminal weight must be nonnegative");
  AddNode n;
  n.kind = AddKind::kTerminal;
  n.weight = w;
  return add_node(std::move(n), "t" + big_str(w));
}

AddAnd::NodeId AddAnd::decision(Var v, NodeId lo, NodeId hi) {
  NodeId limit = static_cast<NodeId>(nodes_.size());
  if (v == 0 || lo < 0 || hi < 0 || lo >= limit || hi >= limit)
    throw std::invalid_argument("decision: invalid variable or child id");
  const std::vector<Var>& lv = nodes_[lo].vars;
  const std::vector<Var>& hv = nodes_[hi].vars;
  if (std::binary_search(lv.begin(), lv.end(), v) ||
      std::binary_search(hv.begin(), hv.end(), v))
    throw std::invalid_argument("decision variable occurs below itself");
  AddNode n;
  n.kind = AddKind::kDecision;
  n.var = v;
  n.lo = lo;
  n.hi = hi;
  n.vars = merge_vars(lv, hv);
  n.vars.insert(std::lower_bound(n.vars.begin(), n.vars.end(), v), v);
  std::string key = "d" + std::to_string(v) + ":" + std::to_string(lo) + ":" +
                    std::to_string(hi);
  return add_node(std::move(n), std::move(key));
}

AddAnd::NodeId AddAnd::conj(std::vector<NodeId> children) {
  if (children.empty())
    throw std::invalid_argument("conjunction needs at least one child");
  NodeId limit = static_cast<NodeId>(nodes_.size());
  for (NodeId c : children)
    if (c < 0 || c >= limit)
      throw std::invalid_argument("conjunction: invalid child id");
  if (children.size() == 1) return children[0];
  std::sort(children.begin(), children.end());

  AddNode n;
  n.kind = AddKind::kConj;
  std::size_t total = 0;
  for (NodeId c : children) {
    total += nodes_[c].vars.size();
    n.vars = merge_vars(n.vars, nodes_[c].vars);
  }
  if (n.vars.size() != total)
    throw std::invalid_argument(
        "conjunction children must decide disjoint variables");

  std::string key = "a";
  for (NodeId c : children) {
    key += std::to_string(c);
    key += ',';
  }
  n.children = std::move(children);
  return add_node(std::move(n), std::move(key));
}

void AddAnd::set_root(NodeId id) {
  if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
    throw std::invalid_argument("set_root: invalid id");
  root_ = id;
}

BigCount AddAnd::weight(NodeId id) const {
  if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
    throw std::out_of_range("weight: invalid node id");
  wset_.resize(nodes_.size(), 0);
  wmemo_.resize(nodes_.size());
  if (wset_[id]) return wmemo_[id];

  const AddNode& n = nodes_[id];
  BigCount w;
  switch (n.kind) {
    case AddKind::kTerminal:
      w = n.weight;
      break;
    case AddKind::kDecision: {
      BigCount wl = weight(n.lo);
      BigCount wh = weight(n.hi);
      // a branch that skips variables decided only in the sibling leaves
      // those variables free: one doubling each
      std::size_t g0 = n.vars.size() - 1 - nodes_[n.lo].vars.size();
      std::size_t g1 = n.vars.size() - 1 - nodes_[n.hi].vars.size();
      w = (wl << g0) + (wh << g1);
      break;
    }
    case AddKind::kConj:
      w = 1;
      for (NodeId c : n.children) w *= weight(c);
      break;
  }
  wmemo_[id] = std::move(w);
  wset_[id] = 1;
  return wmemo_[id];
}

double AddAnd::entropy(NodeId id) const {
  if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
    throw std::out_of_range("entropy: invalid node id");
  hset_.resize(nodes_.size(), 0);
  hmemo_.resize(nodes_.size(), 0.0);
  if (hset_[id]) return hmemo_[id];

  const AddNode& n = nodes_[id];
  double h = 0.0;
  switch (n.kind) {
    case AddKind::kTerminal:
      break;
    case AddKind::kDecision: {
      BranchSplit s;
      s.count0 = weight(n.lo);
      s.count1 = weight(n.hi);
      s.h0 = entropy(n.lo);
      s.h1 = entropy(n.hi);
      s.gap0 =
          static_cast<std::uint32_t>(n.vars.size() - 1 - nodes_[n.lo].vars.size());
      s.gap1 =
          static_cast<std::uint32_t>(n.vars.size() - 1 - nodes_[n.hi].vars.size());
      h = combine_decision(s).first;
      break;
    }
    case AddKind::kConj:
      if (weight(id) != 0)
        for (NodeId c : n.children) h += entropy(c);
      break;
  }
  hmemo_[id] = h;
  hset_[id] = 1;
  return h;
}

BigCount AddAnd::eval(const Assignment& sigma, NodeId id) const {
  if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
    throw std::out_of_range("eval: invalid node id");
  const AddNode& n = nodes_[id];
  switch (n.kind) {
    case AddKind::kTerminal:
      return n.weight;
    case AddKind::kDecision: {
      if (n.var > sigma.size() || !sigma.defined(n.var))
        throw std::invalid_argument("eval: assignment misses variable " +
                                    std::to_string(n.var));
      return eval(sigma, sigma.get(n.var) ? n.hi : n.lo);
    }
    case AddKind::kConj: {
      BigCount w = 1;
      for (NodeId c : n.children) {
        w *= eval(sigma, c);
        if (w == 0) break;
      }
      return w;
    }
  }
  return 0;
}

bool AddAnd::respects_order(const std::vector<Var>& order) const {
  std::unordered_map<Var, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
  for (const AddNode& n : nodes_) {
    if (n.kind != AddKind::kDecision) continue;
    auto it = pos.find(n.var);
    if (it == pos.end()) return false;
    for (NodeId c : {n.lo, n.hi})
      for (Var w : nodes_[c].vars) {
        auto jt = pos.find(w);
        if (jt == pos.end() || jt->second <= it->second) return false;
      }
  }
  return true;
}

AddAnd build_from_trace(const TraceLog& log) {
  AddAnd d;
  std::vector<AddAnd::NodeId> map(log.nodes.size(), -1);
  for (std::size_t i = 0; i < log.nodes.size(); ++i) {
    const TraceNode& t = log.nodes[i];
    switch (t.kind) {
      case TraceKind::kTerminal:
        map[i] = d.terminal(t.weight);
        break;
      case TraceKind::kDecision:
        map[i] = d.decision(t.var, map[t.lo], map[t.hi]);
        break;
      case TraceKind::kConj: {
        std::vector<AddAnd::NodeId> kids;
        kids.reserve(t.children.size());
        for (std::int64_t c : t.children) kids.push_back(map[c]);
        map[i] = d.conj(std::move(kids));
        break;
      }
    }
  }
  if (log.root < 0 || log.root >= static_cast<std::int64_t>(map.size()))
    throw std::invalid_argument("trace has no valid root");
  d.set_root(map[log.root]);
  return d;
}

TraceLog to_trace(const AddAnd& d) {
  TraceLog log;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const AddNode& n = d.node(static_cast<AddAnd::NodeId>(i));
    switch (n.kind) {
      case AddKind::kTerminal:
        log.add_terminal(n.weight);
        break;
      case AddKind::kDecision:
        log.add_decision(n.var, n.lo, n.hi);
        break;
      case AddKind::kConj: {
        std::vector<std::int64_t> kids(n.children.begin(), n.children.end());
        log.add_conj(std::move(kids));
        break;
      }
    }
  }
  log.root = d.root();
  if (d.root() >= 0) log.order = d.node(d.root()).vars;
  return log;
}

AddAnd reduce(const AddAnd& d) {
  AddAnd out;
  if (d.root() < 0) return out;
  std::unordered_map<AddAnd::NodeId, AddAnd::NodeId> map;
  std::function<AddAnd::NodeId(AddAnd::NodeId)> build =
      [&](AddAnd::NodeId id) -> AddAnd::NodeId {
    auto it = map.find(id);
    if (it != map.end()) return it->second;
    const AddNode& n = d.node(id);
    AddAnd::NodeId r = -1;
    switch (n.kind) {
      case AddKind::kTerminal:
        r = out.terminal(n.weight);
        break;
      case AddKind::kDecision:
        r = out.decision(n.var, build(n.lo), build(n.hi));
        break;
      case AddKind::kConj: {
        std::vector<AddAnd::NodeId> kids;
        kids.reserve(n.children.size());
        for (AddAnd::NodeId c : n.children) kids.push_back(build(c));
        r = out.conj(std::move(kids));
        break;
      }
    }
    map.emplace(id, r);
    return r;
  };
  out.set_root(build(d.root()));
  return out;
}

void write_diagram(std::ostream& out, const AddAnd& d) {
  write_trace(out, to_trace(d));
}

AddAnd read_diagram(std::istream& in) { return build_from_trace(read_trace(in)); }

std::string to_dot(const AddAnd& d) {
  std::ostringstream os;
  os << "digraph addand {\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const AddNode& n = d.node(static_cast<AddAnd::NodeId>(i));
    os << "  n" << i;
    switch (n.kind) {
      case AddKind::kTerminal:
        os << " [shape=box, label=\"" << big_str(n.weight) << "\"";
        break;
      case AddKind::kDecision:
        os << " [shape=circle, label=\"y" << n.var << "\"";
        break;
      case AddKind::kConj:
        os << " [shape=diamond, label=\"\xE2\x88\xA7\"";
        break;
    }
    if (static_cast<AddAnd::NodeId>(i) == d.root()) os << ", peripheries=2";
    os << "];\n";
    if (n.kind == AddKind::kDecision) {
      os << "  n" << i << " -> n" << n.lo << " [style=dashed];\n";
      os << "  n" << i << " -> n" << n.hi << ";\n";
    } else if (n.kind == AddKind::kConj) {
      for (AddAnd::NodeId c : n.children)
        os << "  n" << i << " -> n" << c << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pse
