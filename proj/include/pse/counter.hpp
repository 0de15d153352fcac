#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pse/bigcount.hpp"
#include "pse/formula.hpp"

namespace pse {

// One entry per canonical component. Counting stores the count only; the
// entropy stage additionally fills entropy (and the trace node when tracing).
struct CacheEntry {
  BigCount count;
  std::optional<double> entropy;
  std::uint32_t y_count = 0;
  std::int64_t trace_id = -1;
};

struct CacheStats {
  std::uint64_t x_hits = 0;
  std::uint64_t y_hits = 0;
  std::uint64_t stores = 0;
  std::uint64_t resets = 0;
};

// Component store shared by every counting query of one engine run. Keys are
// canonical clause-set encodings, so structurally identical residuals hit
// regardless of where they arise.
class SharedCache {
 public:
  SharedCache() = default;
  explicit SharedCache(std::size_t byte_budget) : budget_(byte_budget) {}

  const CacheEntry* find(const std::string& key, bool y_kind) {
    auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    if (y_kind)
      ++stats_.y_hits;
    else
      ++stats_.x_hits;
    return &it->second;
  }

  void store(const std::string& key, CacheEntry entry);

  std::size_t size() const { return map_.size(); }
  std::size_t bytes() const { return bytes_; }
  const CacheStats& stats() const { return stats_; }

 private:
  std::unordered_map<std::string, CacheEntry> map_;
  std::size_t budget_ = 0;  // 0 = unlimited
  std::size_t bytes_ = 0;
  CacheStats stats_;
};

// Canonical byte encoding of a clause set: clauses sorted lexicographically by
// literal code, duplicates dropped. Identical active clause sets map to
// identical keys.
std::string canonical_key(const std::vector<Clause>& clauses);

struct Component {
  std::vector<Clause> clauses;
  std::vector<Var> vars;  // occurring, ascending
};

struct SplitResult {
  std::vector<Component> components;  // ordered by smallest variable
  std::uint32_t free_x = 0;           // scope X vars in no active clause
  std::vector<Var> free_y;            // scope Y vars in no active clause
  bool has_empty_clause = false;      // empty clauses are kept out of components
};

SplitResult split_components(const std::vector<Clause>& clauses,
                             const std::vector<Var>& scope_x,
                             const std::vector<Var>& scope_y);

struct CounterStats {
  std::uint64_t decisions = 0;
  std::uint64_t components = 0;
};

// Exact model count of the clause set over the given scope (which must cover
// every occurring variable); scope variables in no clause double the count.
BigCount count_models(const std::vector<Clause>& clauses,
                      const std::vector<Var>& scope, SharedCache& cache,
                      CounterStats* stats = nullptr, bool use_cache = true);

BigCount count_models(const CircuitFormula& f, SharedCache& cache,
                      CounterStats* stats = nullptr, bool use_cache = true);

// Same, with the scope given by size only; it must still cover every
// occurring variable.
BigCount count_models_scope(const std::vector<Clause>& clauses,
                            std::size_t scope_size, SharedCache& cache,
                            CounterStats* stats = nullptr, bool use_cache = true);

}  // namespace pse
