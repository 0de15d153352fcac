#pragma once

#include <vector>

#include "pse/bigcount.hpp"
#include "pse/formula.hpp"

namespace pse {

struct BaselineResult {
  double entropy = 0;
  BigCount total;                 // sum over all output patterns
  std::vector<BigCount> weights;  // per pattern; bit i = value of outputs[i]
};

// Reference entropy by explicit enumeration: one projected count per output
// pattern. Exponential in the output count, so inputs with more than 20
// outputs are rejected with std::invalid_argument.
BaselineResult baseline_entropy(const CircuitFormula& f);

}  // namespace pse
