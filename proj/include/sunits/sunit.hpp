#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"
#include "sunits/prime_set.hpp"
#include "sunits/text.hpp"

namespace sunits {

using exponent_t = std::int64_t;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr Sign operator*(Sign a, Sign b) noexcept {
  return a == b ? Sign::positive : Sign::negative;
}

/// An element of U_S: sign times a product of primes of S raised to integer
/// exponents. Two units are equal iff sign, exponents and prime set agree.
class SUnit {
 public:
  explicit SUnit(PrimeSet primes)
      : primes_(std::move(primes)), exponents_(primes_.size(), 0) {}

  SUnit(PrimeSet primes, Sign sign, std::vector<exponent_t> exponents)
      : primes_(std::move(primes)), sign_(sign), exponents_(std::move(exponents)) {
    if (exponents_.size() != primes_.size())
      throw invalid_argument("exponent vector length does not match prime set");
  }

  const PrimeSet& primes() const noexcept { return primes_; }
  Sign sign() const noexcept { return sign_; }
  const std::vector<exponent_t>& exponents() const noexcept { return exponents_; }

  bool is_integral() const noexcept {
    for (auto e : exponents_)
      if (e < 0) return false;
    return true;
  }

  /// Largest absolute exponent (0 for ±1).
  exponent_t height() const noexcept {
    exponent_t h = 0;
    for (auto e : exponents_) h = std::max(h, e < 0 ? -e : e);
    return h;
  }

  friend bool operator==(const SUnit& a, const SUnit& b) {
    return a.sign_ == b.sign_ && a.exponents_ == b.exponents_ && a.primes_ == b.primes_;
  }

  /// Structural order (sign, then exponents); only meaningful within one prime set.
  friend std::strong_ordering operator<=>(const SUnit& a, const SUnit& b) {
    if (auto c = a.sign_ <=> b.sign_; c != 0) return c;
    return a.exponents_ <=> b.exponents_;
  }

 private:
  PrimeSet primes_;
  Sign sign_ = Sign::positive;
  std::vector<exponent_t> exponents_;
};

namespace detail {

inline mpz_class prime_power(prime_t p, exponent_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

/// Strips every prime of S from |n| in place and returns the exponents.
inline std::vector<exponent_t> strip_primes(mpz_class& n, const PrimeSet& s) {
  std::vector<exponent_t> e(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    mpz_class p(static_cast<unsigned long>(s[i]));
    e[i] = static_cast<exponent_t>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  }
  return e;
}

}  // namespace detail

/// Exact value sign * prod p^e.
inline mpq_class value_of(const SUnit& u) {
  mpz_class num = 1, den = 1;
  const auto& e = u.exponents();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) num *= detail::prime_power(u.primes()[i], e[i]);
    else if (e[i] < 0) den *= detail::prime_power(u.primes()[i], -e[i]);
  }
  if (u.sign() == Sign::negative) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline SUnit mul(const SUnit& a, const SUnit& b) {
  if (!(a.primes() == b.primes())) throw prime_set_mismatch();
  std::vector<exponent_t> e(a.exponents());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exponents()[i];
  return SUnit(a.primes(), a.sign() * b.sign(), std::move(e));
}

inline SUnit inverse(const SUnit& a) {
  std::vector<exponent_t> e(a.exponents());
  for (auto& x : e) x = -x;
  return SUnit(a.primes(), a.sign(), std::move(e));
}

inline SUnit operator*(const SUnit& a, const SUnit& b) { return mul(a, b); }

/// An S-unit with nonnegative exponents together with its integer value.
class SInteger {
 public:
  explicit SInteger(SUnit unit) : unit_(std::move(unit)) {
    if (!unit_.is_integral()) throw invalid_argument("S-integer must have nonnegative exponents");
    value_ = value_of(unit_).get_num();
  }

  SInteger(SUnit unit, mpz_class value) : unit_(std::move(unit)), value_(std::move(value)) {}

  const SUnit& unit() const noexcept { return unit_; }
  const mpz_class& value() const noexcept { return value_; }

  friend bool operator==(const SInteger& a, const SInteger& b) { return a.unit_ == b.unit_; }

 private:
  SUnit unit_;
  mpz_class value_;
};

/// The S-integer representation of n, or nullopt if some prime outside S divides n.
inline std::optional<SInteger> factor_over_s(const mpz_class& n, const PrimeSet& s) {
  if (n == 0) throw invalid_argument("factor_over_s: zero is not an S-unit");
  mpz_class rest = abs(n);
  auto e = detail::strip_primes(rest, s);
  if (rest != 1) return std::nullopt;
  return SInteger(SUnit(s, n < 0 ? Sign::negative : Sign::positive, std::move(e)), n);
}

/// Rational counterpart of factor_over_s: numerator and denominator must both be S-integers.
inline std::optional<SUnit> factor_unit_over_s(const mpq_class& q, const PrimeSet& s) {
  if (q == 0) throw invalid_argument("factor_over_s: zero is not an S-unit");
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  auto en = detail::strip_primes(num, s);
  if (num != 1) return std::nullopt;
  auto ed = detail::strip_primes(den, s);
  if (den != 1) return std::nullopt;
  for (std::size_t i = 0; i < en.size(); ++i) en[i] -= ed[i];
  return SUnit(s, q < 0 ? Sign::negative : Sign::positive, std::move(en));
}

/// Canonical text form: "[-]p1^e1 * p2^e2 ..." with zero exponents omitted,
/// "1" / "-1" for the empty product.
inline std::string to_string(const SUnit& u) {
  std::string out = u.sign() == Sign::negative ? "-" : "";
  bool any = false;
  for (std::size_t i = 0; i < u.exponents().size(); ++i) {
    if (u.exponents()[i] == 0) continue;
    if (any) out += " * ";
    out += std::to_string(u.primes()[i]) + "^" + std::to_string(u.exponents()[i]);
    any = true;
  }
  if (!any) out += "1";
  return out;
}

/// Inverse of to_string. Also accepts a bare prime for p^1, repeated primes
/// (exponents add) and a plain integer or fraction such as "-1/2".
inline SUnit parse_sunit(std::string_view input, const PrimeSet& s) {
  auto t = text::trim(input);
  if (t.empty()) throw parse_error("empty S-unit");
  if (t.find('^') == std::string_view::npos && t.find('*') == std::string_view::npos) {
    auto q = text::parse_rational(t);
    if (q == 0) throw parse_error("zero is not an S-unit");
    auto u = factor_unit_over_s(q, s);
    if (!u) throw parse_error("'" + std::string(t) + "' is not an S-unit over {" + s.to_string() + "}");
    return *u;
  }
  Sign sign = Sign::positive;
  if (t.front() == '-') {
    sign = Sign::negative;
    t = text::trim(t.substr(1));
  }
  std::vector<exponent_t> e(s.size(), 0);
  for (auto factor : text::split(t, '*')) {
    factor = text::trim(factor);
    auto caret = factor.find('^');
    auto base = text::parse_int<long long>(factor.substr(0, caret));
    exponent_t exp = caret == std::string_view::npos ? 1 : text::parse_int<exponent_t>(factor.substr(caret + 1));
    if (base == 1 && caret == std::string_view::npos) continue;
    std::size_t i = 0;
    while (i < s.size() && static_cast<long long>(s[i]) != base) ++i;
    if (i == s.size())
      throw parse_error("'" + std::string(factor) + "': base not in prime set {" + s.to_string() + "}");
    e[i] += exp;
  }
  return SUnit(s, sign, std::move(e));
}

}  // namespace sunits
