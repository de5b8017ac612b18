#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace wm {

/// Three-component multi-index used to label velocity-space basis functions.
/// Components may go negative through arithmetic (shifted indices are used
/// freely by the assembly formulas); such indices are "invalid" and every
/// consumer treats the associated coefficient as zero.
struct MultiIndex {
  std::array<int, 3> c{0, 0, 0};

  constexpr MultiIndex() = default;
  constexpr MultiIndex(int a1, int a2, int a3) : c{a1, a2, a3} {}

  constexpr int operator[](int d) const { return c[static_cast<size_t>(d)]; }
  constexpr int& operator[](int d) { return c[static_cast<size_t>(d)]; }

  constexpr int total() const { return c[0] + c[1] + c[2]; }
  constexpr bool valid() const { return c[0] >= 0 && c[1] >= 0 && c[2] >= 0; }

  constexpr MultiIndex plus(int d) const {
    MultiIndex r = *this;
    ++r[d];
    return r;
  }
  constexpr MultiIndex minus(int d) const {
    MultiIndex r = *this;
    --r[d];
    return r;
  }

  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend constexpr auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

constexpr MultiIndex unit_index(int d) {
  MultiIndex r;
  r[d] = 1;
  return r;
}

/// C(n, k) in 64-bit arithmetic; throws std::overflow_error if the exact
/// value cannot be represented.
std::int64_t binomial(int n, int k);

/// 1-based position of alpha in the graded enumeration of all multi-indices.
/// Grading: smaller |alpha| always comes first; ties are broken so that the
/// position is a closed-form sum of binomials. Throws std::invalid_argument
/// for negative components.
int ordinal(const MultiIndex& alpha);

/// Number of moments retained at truncation order M: C(M+3, 3).
/// Requires 3 <= M <= 60.
int index_set_size(int order);

/// All multi-indices with |alpha| <= M, listed so that the k-th element
/// (1-based) has ordinal k. Requires 3 <= M <= 60.
std::vector<MultiIndex> enumerate_index_set(int order);

}  // namespace wm
