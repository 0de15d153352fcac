#include "pse/ordering.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace pse {

std::size_t PrimalGraph::index_of(Var v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  assert(it != vertices.end() && *it == v);
  return static_cast<std::size_t>(it - vertices.begin());
}

PrimalGraph build_primal_graph(const std::vector<Clause>& clauses) {
  PrimalGraph g;
  g.vertices = vars_of(clauses);
  std::size_t n = g.vertices.size();
  g.adj.assign(n, std::vector<char>(n, 0));
  for (const Clause& c : clauses)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        std::size_t a = g.index_of(c[i].var());
        std::size_t b = g.index_of(c[j].var());
        g.adj[a][b] = g.adj[b][a] = 1;
      }
  return g;
}

PrimalGraph build_primal_graph(const CircuitFormula& f) {
  return build_primal_graph(f.clauses);
}

EliminationOrder minfill_order(const PrimalGraph& g) {
  std::size_t n = g.vertices.size();
  std::vector<std::vector<char>> adj = g.adj;
  std::vector<char> alive(n, 1);
  EliminationOrder out;
  out.order.reserve(n);

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    std::uint64_t best_fill = std::numeric_limits<std::uint64_t>::max();
    std::size_t best_deg = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::vector<std::size_t> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (alive[u] && adj[v][u]) nb.push_back(u);
      std::uint64_t fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]][nb[j]]) ++fill;
      if (best == n || fill < best_fill ||
          (fill == best_fill && nb.size() < best_deg)) {
        best = v;
        best_fill = fill;
        best_deg = nb.size();
      }
    }
    assert(best < n);
    std::vector<std::size_t> nb;
    for (std::size_t u = 0; u < n; ++u)
      if (alive[u] && adj[best][u]) nb.push_back(u);
    out.width = std::max<std::uint32_t>(out.width, static_cast<std::uint32_t>(nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
    alive[best] = 0;
    out.order.push_back(g.vertices[best]);
  }
  return out;
}

Var DecisionOrder::pick(const std::vector<Var>& candidates) const {
  Var best = 0;
  std::uint64_t best_rank = std::numeric_limits<std::uint64_t>::max();
  for (Var v : candidates) {
    auto it = rank.find(v);
    std::uint64_t r = it == rank.end()
                          ? (std::uint64_t{1} << 40) + v  // unranked: by index
                          : it->second;
    if (best == 0 || r < best_rank) {
      best = v;
      best_rank = r;
    }
  }
  return best;
}

DecisionOrder DecisionOrder::from_explicit(const std::vector<Var>& order) {
  DecisionOrder d;
  for (std::size_t i = 0; i < order.size(); ++i)
    d.rank.emplace(order[i], static_cast<std::uint32_t>(i));
  return d;
}

DecisionOrder decision_priority(const CircuitFormula& f, const EliminationOrder& e) {
  DecisionOrder d;
  std::uint32_t next = 0;
  for (auto it = e.order.rbegin(); it != e.order.rend(); ++it)
    if (f.is_output(*it)) d.rank.emplace(*it, next++);
  for (Var v : vars_of(f.clauses))
    if (f.is_output(v) && !d.rank.count(v))
      throw std::invalid_argument("output variable missing from elimination order");
  return d;
}

Var vsads_pick(const std::vector<Clause>& active,
               const std::vector<Var>& candidates, const VsadsState& st) {
  std::unordered_map<Var, std::uint32_t> occ;
  for (const Clause& c : active)
    for (Lit l : c) ++occ[l.var()];
  Var best = 0;
  double best_score = 0.0;
  for (Var v : candidates) {
    double a = v < st.activity.size() ? st.activity[v] : 0.0;
    double score = st.weight * a + static_cast<double>(occ[v]);
    if (best == 0 || score > best_score) {
      best = v;
      best_score = score;
    }
  }
  return best;
}

}  // namespace pse
