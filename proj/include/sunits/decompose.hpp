#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"
#include "sunits/unit_equation.hpp"

namespace sunits {

/// A solution split into a maximum zero-sum index set J and its complement I,
/// on which the remaining coordinates form a non-degenerate solution of the
/// sub-equation with the same right-hand side. Indices are 0-based.
struct Decomposition {
  std::vector<std::size_t> zero_set;
  std::vector<std::size_t> active_set;
  Solution residual;
};

namespace detail {

// Advances idx (strictly increasing, values < n) to the next combination in
// lexicographic order; false when exhausted.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t r = idx.size();
  std::size_t i = r;
  while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace detail

/// Splits sol along a maximum-cardinality zero-sum subset J (lexicographically
/// smallest among ties). J is always proper because M != 0.
inline Decomposition decompose(const UnitEquation& eq, const Solution& sol) {
  if (!satisfies(eq, sol)) throw invalid_argument("decompose: input is not a solution");
  const auto terms = weighted_terms(eq, sol);
  const auto sums = detail::subset_sums(terms);
  const std::size_t k = terms.size();

  std::vector<std::size_t> zero;
  for (std::size_t size = k - 1; size > 0; --size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    bool found = false;
    do {
      std::uint64_t mask = 0;
      for (auto i : idx) mask |= std::uint64_t{1} << i;
      if (sums[mask] == 0) {
        zero = idx;
        found = true;
        break;
      }
    } while (detail::next_combination(idx, k));
    if (found) break;
  }

  Decomposition d;
  d.zero_set = zero;
  std::size_t z = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (z < zero.size() && zero[z] == i) {
      ++z;
      continue;
    }
    d.active_set.push_back(i);
    d.residual.push_back(sol[i]);
  }

  auto sub = eq.restrict_to(d.active_set);
  if (!satisfies(sub, d.residual) || !is_nondegenerate(sub, d.residual))
    throw consistency_error("decompose: residual on I is not a non-degenerate solution");
  return d;
}

}  // namespace sunits
