#include "pse/counter.hpp"

#include <algorithm>
#include <cassert>

namespace pse {

void SharedCache::store(const std::string& key, CacheEntry entry) {
  std::size_t delta = key.size() + sizeof(CacheEntry) + big_footprint(entry.count) + 48;
  if (budget_ != 0 && bytes_ + delta > budget_ && !map_.empty()) {
    map_.clear();
    bytes_ = 0;
    ++stats_.resets;
  }
  auto [it, inserted] = map_.insert_or_assign(key, std::move(entry));
  (void)it;
  if (inserted) bytes_ += delta;
  ++stats_.stores;
}

std::string canonical_key(const std::vector<Clause>& clauses) {
  std::vector<const Clause*> order;
  order.reserve(clauses.size());
  for (const Clause& c : clauses) order.push_back(&c);
  auto lex = [](const Clause* a, const Clause* b) {
    return std::lexicographical_compare(
        a->begin(), a->end(), b->begin(), b->end(),
        [](Lit x, Lit y) { return x.code() < y.code(); });
  };
  std::sort(order.begin(), order.end(), lex);
  auto eq = [](const Clause* a, const Clause* b) { return *a == *b; };
  order.erase(std::unique(order.begin(), order.end(), eq), order.end());

  std::string key;
  key.reserve(order.size() * 8);
  auto put = [&key](std::uint32_t w) {
    key.push_back(static_cast<char>(w));
    key.push_back(static_cast<char>(w >> 8));
    key.push_back(static_cast<char>(w >> 16));
    key.push_back(static_cast<char>(w >> 24));
  };
  for (const Clause* c : order) {
    for (Lit l : *c) put(l.code());
    put(0xFFFFFFFFu);
  }
  return key;
}

SplitResult split_components(const std::vector<Clause>& clauses,
                             const std::vector<Var>& scope_x,
                             const std::vector<Var>& scope_y) {
  SplitResult out;

  std::vector<Var> occ = vars_of(clauses);
  std::unordered_map<Var, std::size_t> idx;
  idx.reserve(occ.size());
  for (std::size_t i = 0; i < occ.size(); ++i) idx[occ[i]] = i;

  std::vector<std::size_t> parent(occ.size());
  for (std::size_t i = 0; i < occ.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const Clause& c : clauses) {
    if (c.empty()) {
      out.has_empty_clause = true;
      continue;
    }
    std::size_t r = find(idx[c[0].var()]);
    for (std::size_t j = 1; j < c.size(); ++j) {
      std::size_t s = find(idx[c[j].var()]);
      if (s != r) parent[s] = r;
    }
  }

  // component index by root, components ordered by their smallest variable
  std::unordered_map<std::size_t, std::size_t> comp_of_root;
  for (std::size_t i = 0; i < occ.size(); ++i) {  // occ ascending
    std::size_t r = find(i);
    auto [it, inserted] = comp_of_root.emplace(r, out.components.size());
    if (inserted) out.components.emplace_back();
    out.components[it->second].vars.push_back(occ[i]);
  }
  for (const Clause& c : clauses) {
    if (c.empty()) continue;
    out.components[comp_of_root[find(idx[c[0].var()])]].clauses.push_back(c);
  }

  for (Var v : scope_x)
    if (!idx.count(v)) ++out.free_x;
  for (Var v : scope_y)
    if (!idx.count(v)) out.free_y.push_back(v);
  return out;
}

namespace {

// Resolve unit clauses to fixpoint. Returns the number of variables assigned,
// or -1 on conflict.
long propagate_units(std::vector<Clause>& clauses) {
  long assigned = 0;
  for (;;) {
    const Clause* unit = nullptr;
    for (const Clause& c : clauses) {
      if (c.empty()) return -1;
      if (c.size() == 1 && !unit) unit = &c;
    }
    if (!unit) return assigned;
    Lit l = (*unit)[0];
    clauses = assign_literal(clauses, l);
    ++assigned;
  }
}

BigCount count_component(const Component& comp, SharedCache& cache,
                         CounterStats* stats, bool use_cache);

BigCount count_residual(std::vector<Clause> clauses, std::size_t scope_size,
                        SharedCache& cache, CounterStats* stats, bool use_cache) {
  long assigned = propagate_units(clauses);
  if (assigned < 0) return 0;
  std::vector<Var> occ = vars_of(clauses);
  assert(scope_size >= static_cast<std::size_t>(assigned) + occ.size());
  std::size_t free_vars = scope_size - assigned - occ.size();

  SplitResult split = split_components(clauses, {}, {});
  assert(!split.has_empty_clause);
  if (stats) stats->components += split.components.size();
  BigCount result = big_pow2(free_vars);
  for (const Component& comp : split.components) {
    BigCount c = count_component(comp, cache, stats, use_cache);
    if (c == 0) return 0;
    result *= c;
  }
  return result;
}

BigCount count_component(const Component& comp, SharedCache& cache,
                         CounterStats* stats, bool use_cache) {
  std::string key;
  if (use_cache) {
    key = canonical_key(comp.clauses);
    if (const CacheEntry* e = cache.find(key, false)) return e->count;
  }

  // branch on the most frequent variable, ties to the smallest index
  std::unordered_map<Var, std::uint32_t> occ_count;
  for (const Clause& c : comp.clauses)
    for (Lit l : c) ++occ_count[l.var()];
  Var best = 0;
  std::uint32_t best_n = 0;
  for (Var v : comp.vars) {
    std::uint32_t n = occ_count[v];
    if (n > best_n) {
      best = v;
      best_n = n;
    }
  }
  assert(best != 0);
  if (stats) ++stats->decisions;

  BigCount total = 0;
  for (int phase = 0; phase < 2; ++phase) {
    std::vector<Clause> sub = assign_literal(comp.clauses, Lit(best, phase == 1));
    total += count_residual(std::move(sub), comp.vars.size() - 1, cache, stats, use_cache);
  }
  if (use_cache) cache.store(key, CacheEntry{total, std::nullopt, 0, -1});
  return total;
}

}  // namespace

BigCount count_models(const std::vector<Clause>& clauses,
                      const std::vector<Var>& scope, SharedCache& cache,
                      CounterStats* stats, bool use_cache) {
#ifndef NDEBUG
  for (Var v : vars_of(clauses))
    assert(std::binary_search(scope.begin(), scope.end(), v));
#endif
  return count_residual(clauses, scope.size(), cache, stats, use_cache);
}

BigCount count_models(const CircuitFormula& f, SharedCache& cache,
                      CounterStats* stats, bool use_cache) {
  std::vector<Var> scope = f.inputs;
  scope.insert(scope.end(), f.outputs.begin(), f.outputs.end());
  std::sort(scope.begin(), scope.end());
  return count_models(f.clauses, scope, cache, stats, use_cache);
}

BigCount count_models_scope(const std::vector<Clause>& clauses,
                            std::size_t scope_size, SharedCache& cache,
                            CounterStats* stats, bool use_cache) {
  return count_residual(clauses, scope_size, cache, stats, use_cache);
}

}  // namespace pse
