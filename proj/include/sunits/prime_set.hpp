#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sunits/errors.hpp"
#include "sunits/text.hpp"

namespace sunits {

using prime_t = std::uint64_t;

/// Deterministic trial division.
constexpr bool is_prime(prime_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (prime_t d = 5; d <= n / d; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

/// The finite set S of primes. Immutable; copies share storage.
class PrimeSet {
 public:
  explicit PrimeSet(std::vector<prime_t> primes)
      : primes_(std::make_shared<const std::vector<prime_t>>(std::move(primes))) {
    const auto& p = *primes_;
    if (p.empty()) throw invalid_argument("prime set must be nonempty");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!is_prime(p[i]))
        throw invalid_argument("prime set: " + std::to_string(p[i]) + " is not prime");
      if (i > 0 && p[i - 1] >= p[i])
        throw invalid_argument("prime set must be strictly increasing");
    }
  }

  PrimeSet(std::initializer_list<prime_t> primes) : PrimeSet(std::vector<prime_t>(primes)) {}

  /// Parses "2,3,5".
  static PrimeSet parse(std::string_view text) {
    std::vector<prime_t> out;
    for (auto item : text::split(text, ',')) {
      auto v = text::parse_int<long long>(text::trim(item));
      if (v <= 0) throw invalid_argument("prime set: " + std::string(item) + " is not prime");
      out.push_back(static_cast<prime_t>(v));
    }
    return PrimeSet(std::move(out));
  }

  std::span<const prime_t> primes() const noexcept { return *primes_; }
  std::size_t size() const noexcept { return primes_->size(); }
  prime_t operator[](std::size_t i) const noexcept { return (*primes_)[i]; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ',';
      out += std::to_string((*primes_)[i]);
    }
    return out;
  }

  friend bool operator==(const PrimeSet& a, const PrimeSet& b) noexcept {
    return a.primes_ == b.primes_ || *a.primes_ == *b.primes_;
  }

 private:
  std::shared_ptr<const std::vector<prime_t>> primes_;
};

}  // namespace sunits
