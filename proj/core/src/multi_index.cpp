#include "wm/multi_index.hpp"

#include <limits>
#include <stdexcept>

namespace wm {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // The running product is an exact multiple of i right before the division,
  // but it can transiently exceed 64 bits even when the result fits, so the
  // accumulation is done in 128-bit with the range check on the result.
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      throw std::overflow_error("binomial: value exceeds 64-bit range");
    }
  }
  return static_cast<std::int64_t>(result);
}

int ordinal(const MultiIndex& alpha) {
  if (!alpha.valid()) {
    throw std::invalid_argument("ordinal: negative multi-index component");
  }
  const std::int64_t n = binomial(alpha[2], 1) + binomial(alpha[1] + alpha[2] + 1, 2) +
                         binomial(alpha.total() + 2, 3) + 1;
  if (n > std::numeric_limits<int>::max()) {
    throw std::overflow_error("ordinal: index outside supported range");
  }
  return static_cast<int>(n);
}

static void check_order(int order) {
  if (order < 3 || order > 60) {
    throw std::invalid_argument("truncation order must satisfy 3 <= M <= 60");
  }
}

int index_set_size(int order) {
  check_order(order);
  return static_cast<int>(binomial(order + 3, 3));
}

std::vector<MultiIndex> enumerate_index_set(int order) {
  check_order(order);
  std::vector<MultiIndex> set;
  set.reserve(static_cast<size_t>(index_set_size(order)));
  for (int s = 0; s <= order; ++s) {
    for (int a23 = 0; a23 <= s; ++a23) {
      for (int a3 = 0; a3 <= a23; ++a3) {
        set.emplace_back(s - a23, a23 - a3, a3);
      }
    }
  }
  return set;
}

}  // namespace wm
