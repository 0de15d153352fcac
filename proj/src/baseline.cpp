#include "pse/baseline.hpp"

#include <cmath>
#include <stdexcept>

#include "pse/counter.hpp"

namespace pse {

BaselineResult baseline_entropy(const CircuitFormula& f) {
  if (f.outputs.size() > 20)
    throw std::invalid_argument(
        "baseline enumeration is limited to 20 output variables");

  BaselineResult out;
  std::size_t m = f.outputs.size();
  out.weights.resize(std::size_t{1} << m);
  out.total = 0;

  SharedCache cache;  // input-side residuals repeat heavily across patterns
  for (std::size_t pat = 0; pat < out.weights.size(); ++pat) {
    std::vector<Lit> lits;
    lits.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      lits.push_back(Lit(f.outputs[i], ((pat >> i) & 1) != 0));
    ConditionResult cr = condition(f, lits);
    BigCount w = 0;
    if (!cr.conflict) {
      // propagation may pin input variables too; they contribute factor 1
      std::size_t pinned = 0;
      for (Var v : f.inputs)
        if (cr.forced.defined(v)) ++pinned;
      w = count_models_scope(cr.formula.clauses, f.inputs.size() - pinned,
                             cache);
    }
    out.total += w;
    out.weights[pat] = std::move(w);
  }

  if (out.total != 0) {
    double h = 0;
    for (const BigCount& w : out.weights) {
      if (w == 0) continue;
      double p = big_ratio(w, out.total);
      h -= p * std::log2(p);
    }
    out.entropy = h < 0 ? 0 : h;
  }
  return out;
}

}  // namespace pse
