#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sunits/criterion.hpp"
#include "sunits/enumerate.hpp"
#include "sunits/errors.hpp"
#include "sunits/sunit.hpp"

namespace sunits {

/// Value -> position in the universal sequence s_n = (-1)^n a_ceil(n/2),
/// for every nonzero S-integer of absolute value <= bound.
/// a_j sits at index 2j, -a_j at 2j - 1.
class UniversalIndex {
 public:
  UniversalIndex(const PrimeSet& s, const mpz_class& bound) {
    SIntegerStream stream(s);
    while (stream.peek() <= bound) values_.push_back(stream.next().value());
  }

  std::optional<index_t> index_of(const mpz_class& v) const {
    if (v == 0) return std::nullopt;
    mpz_class a = abs(v);
    auto it = std::lower_bound(values_.begin(), values_.end(), a);
    if (it == values_.end() || *it != a) return std::nullopt;
    index_t j = static_cast<index_t>(it - values_.begin()) + 1;
    return v > 0 ? 2 * j : 2 * j - 1;
  }

  /// a_1..a_J covered by the index.
  const std::vector<mpz_class>& positive_values() const noexcept { return values_; }

 private:
  std::vector<mpz_class> values_;
};

/// Smallest k (1-based) such that every d_n with n >= k is some s_j with j >= m,
/// or nullopt if even the last term sits before m. Every d_n must be a nonzero S-integer.
inline std::optional<index_t> tail_embedding(std::span<const mpz_class> d_terms, const PrimeSet& s, index_t m) {
  mpz_class bound = 1;
  for (const auto& d : d_terms) {
    if (d == 0) throw invalid_argument("tail_embedding: zero term");
    if (!factor_over_s(d, s))
      throw invalid_argument("tail_embedding: " + d.get_str() + " is not an S-integer over {" + s.to_string() + "}");
    if (abs(d) > bound) bound = abs(d);
  }
  if (d_terms.empty()) return std::nullopt;
  UniversalIndex index(s, bound);
  index_t k = 1;
  for (index_t n = d_terms.size(); n >= 1; --n) {
    if (*index.index_of(d_terms[n - 1]) < m) {
      k = n + 1;
      break;
    }
  }
  if (k > d_terms.size()) return std::nullopt;
  return k;
}

}  // namespace sunits
