#include "pse/bigcount.hpp"

#include <algorithm>
#include <cassert>

namespace pse {

double big_ratio(const BigCount& num, const BigCount& den) {
  assert(den > 0);
  if (num == 0) return 0.0;
  std::size_t bits = std::max(big_bits(num), big_bits(den));
  if (bits <= 63) {
    return static_cast<double>(num.get_ui()) / static_cast<double>(den.get_ui());
  }
  std::size_t shift = bits - 63;
  BigCount n = num >> shift;
  BigCount d = den >> shift;
  // A positive operand must stay positive after scaling, otherwise a ratio
  // like 1/2^100 would collapse to exact zero and poison p*log2(p) downstream.
  if (n == 0) n = 1;
  if (d == 0) d = 1;
  return static_cast<double>(n.get_ui()) / static_cast<double>(d.get_ui());
}

std::size_t big_footprint(const BigCount& v) {
  return sizeof(BigCount) + mpz_size(v.get_mpz_t()) * sizeof(mp_limb_t);
}

}  // namespace pse
