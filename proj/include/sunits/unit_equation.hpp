#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"
#include "sunits/prime_set.hpp"
#include "sunits/sunit.hpp"
#include "sunits/text.hpp"

namespace sunits {

using coeff_t = std::int64_t;

/// c_1 x_1 + ... + c_k x_k = M over a prime set, with every c_i and M nonzero.
class UnitEquation {
 public:
  UnitEquation(std::vector<coeff_t> coefficients, coeff_t rhs, PrimeSet primes)
      : coefficients_(std::move(coefficients)), rhs_(rhs), primes_(std::move(primes)) {
    if (coefficients_.empty()) throw invalid_argument("unit equation needs at least one term");
    for (auto c : coefficients_)
      if (c == 0) throw invalid_argument("unit equation coefficients must be nonzero");
    if (rhs_ == 0) throw invalid_argument("unit equation right-hand side must be nonzero");
  }

  /// Parses "c1,c2,...,ck = M over p1,p2,...".
  static UnitEquation parse(std::string_view input) {
    auto eq = input.find('=');
    auto over = input.find(" over ");
    if (eq == std::string_view::npos || over == std::string_view::npos || over < eq)
      throw parse_error("expected 'c1,...,ck = M over p1,...': '" + std::string(input) + "'");
    std::vector<coeff_t> c;
    for (auto item : text::split(input.substr(0, eq), ',')) c.push_back(text::parse_int<coeff_t>(item));
    auto m = text::parse_int<coeff_t>(input.substr(eq + 1, over - eq - 1));
    auto primes = PrimeSet::parse(input.substr(over + 6));
    return UnitEquation(std::move(c), m, std::move(primes));
  }

  std::size_t size() const noexcept { return coefficients_.size(); }
  const std::vector<coeff_t>& coefficients() const noexcept { return coefficients_; }
  coeff_t rhs() const noexcept { return rhs_; }
  const PrimeSet& primes() const noexcept { return primes_; }

  /// Sub-equation sum_{j in I} c_j x_j = M on the given (0-based, increasing) indices.
  UnitEquation restrict_to(const std::vector<std::size_t>& indices) const {
    std::vector<coeff_t> c;
    c.reserve(indices.size());
    for (auto i : indices) c.push_back(coefficients_.at(i));
    return UnitEquation(std::move(c), rhs_, primes_);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ',';
      out += std::to_string(coefficients_[i]);
    }
    return out + " = " + std::to_string(rhs_) + " over " + primes_.to_string();
  }

 private:
  std::vector<coeff_t> coefficients_;
  coeff_t rhs_;
  PrimeSet primes_;
};

/// Which S-arithmetic universe a search ranges over.
enum class Domain { s_units, s_integers };

inline std::string to_string(Domain d) { return d == Domain::s_units ? "s-units" : "s-integers"; }

inline Domain parse_domain(std::string_view s) {
  if (s == "s-units") return Domain::s_units;
  if (s == "s-integers") return Domain::s_integers;
  throw parse_error("unknown domain '" + std::string(s) + "' (expected s-units or s-integers)");
}

/// A k-tuple of S-units (candidate or actual solution).
using Solution = std::vector<SUnit>;

/// Parses "4,-4,1" or "2^1 * 3^-1, -1"; each entry goes through parse_sunit.
inline Solution parse_solution(std::string_view input, const PrimeSet& s) {
  Solution out;
  for (auto item : text::split(input, ',')) out.push_back(parse_sunit(item, s));
  return out;
}

/// "(2,-1/3)" using exact decimal values.
inline std::string format_values(const Solution& sol) {
  std::string out = "(";
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (i) out += ',';
    out += text::to_string(value_of(sol[i]));
  }
  return out + ")";
}

/// Individual terms c_i * x_i.
inline std::vector<mpq_class> weighted_terms(const UnitEquation& eq, const Solution& sol) {
  if (sol.size() != eq.size()) throw invalid_argument("solution length does not match equation");
  std::vector<mpq_class> t;
  t.reserve(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (!(sol[i].primes() == eq.primes())) throw prime_set_mismatch();
    mpq_class v = value_of(sol[i]);
    v *= mpq_class(static_cast<long>(eq.coefficients()[i]));
    t.push_back(v);
  }
  return t;
}

/// Exact substitution check sum c_i x_i == M.
inline bool satisfies(const UnitEquation& eq, const Solution& sol) {
  mpq_class sum = 0;
  for (const auto& t : weighted_terms(eq, sol)) sum += t;
  return sum == mpq_class(static_cast<long>(eq.rhs()));
}

namespace detail {

inline constexpr std::size_t max_subset_terms = 24;

/// Sums of all 2^k subsets of terms, indexed by bitmask; each sum extends the
/// one without its lowest set bit.
inline std::vector<mpq_class> subset_sums(const std::vector<mpq_class>& terms) {
  const std::size_t k = terms.size();
  if (k > max_subset_terms)
    throw invalid_argument("subset enumeration limited to " + std::to_string(max_subset_terms) + " terms");
  std::vector<mpq_class> sums(std::size_t{1} << k);
  for (std::uint64_t mask = 1; mask < sums.size(); ++mask) {
    unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
    sums[mask] = sums[mask & (mask - 1)] + terms[low];
  }
  return sums;
}

/// True iff some nonempty subset of terms sums to zero.
inline bool has_zero_subset(const std::vector<mpq_class>& terms) {
  const std::size_t k = terms.size();
  if (k > max_subset_terms)
    throw invalid_argument("subset enumeration limited to " + std::to_string(max_subset_terms) + " terms");
  std::vector<mpq_class> sums(std::size_t{1} << k);
  for (std::uint64_t mask = 1; mask < sums.size(); ++mask) {
    unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
    sums[mask] = sums[mask & (mask - 1)] + terms[low];
    if (sums[mask] == 0) return true;
  }
  return false;
}

}  // namespace detail

/// Non-degenerate iff no nonempty subset of the terms c_i x_i sums to zero.
/// Throws invalid_argument if sol does not satisfy eq.
inline bool is_nondegenerate(const UnitEquation& eq, const Solution& sol) {
  if (!satisfies(eq, sol)) throw invalid_argument("is_nondegenerate: input is not a solution");
  auto terms = weighted_terms(eq, sol);
  return !detail::has_zero_subset(terms);
}

}  // namespace sunits
