#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pse {

// Exact nonnegative model counts. These routinely exceed 2^64 (counts grow
// like 2^|X|), so everything count-valued in the engine goes through this.
using BigCount = mpz_class;

inline BigCount big_pow2(std::uint64_t k) {
  BigCount r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), k);
  return r;
}

inline std::size_t big_bits(const BigCount& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::string big_str(const BigCount& v) { return v.get_str(); }

// num/den as a double. Both operands are shifted down by the same amount
// until they fit in 63 bits, so the relative error stays within a few ulps
// regardless of magnitude.
double big_ratio(const BigCount& num, const BigCount& den);

// Rough heap footprint, used for the cache byte budget.
std::size_t big_footprint(const BigCount& v);

}  // namespace pse
