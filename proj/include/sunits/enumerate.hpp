#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"
#include "sunits/prime_set.hpp"
#include "sunits/sunit.hpp"

namespace sunits {

/// Produces the positive S-integers 1 = a_1 < a_2 < ... in increasing order.
///
/// Min-heap of candidates seeded with 1. A popped value x whose largest prime
/// factor is p_j pushes p_i * x only for i >= j, so every S-integer enters the
/// heap exactly once (along its non-decreasing prime factorization) and no
/// deduplication pass is needed.
///
/// Single consumer; not safe for concurrent next() calls.
class SIntegerStream {
 public:
  explicit SIntegerStream(PrimeSet primes) : primes_(std::move(primes)) {
    heap_.push(Candidate{mpz_class(1), std::vector<exponent_t>(primes_.size(), 0), 0});
  }

  /// Next S-integer; the stream is infinite.
  SInteger next() {
    Candidate top = heap_.top();
    heap_.pop();
    for (std::size_t i = top.min_prime; i < primes_.size(); ++i) {
      Candidate c{top.value * static_cast<unsigned long>(primes_[i]), top.exponents, i};
      ++c.exponents[i];
      heap_.push(std::move(c));
    }
    ++emitted_;
    return SInteger(SUnit(primes_, Sign::positive, std::move(top.exponents)), std::move(top.value));
  }

  /// Value that next() will return.
  const mpz_class& peek() const { return heap_.top().value; }

  /// Number of values emitted so far; after next() returns a_n this is n.
  std::size_t emitted() const noexcept { return emitted_; }

  const PrimeSet& primes() const noexcept { return primes_; }

 private:
  struct Candidate {
    mpz_class value;
    std::vector<exponent_t> exponents;
    std::size_t min_prime;
  };
  struct Greater {
    bool operator()(const Candidate& a, const Candidate& b) const { return a.value > b.value; }
  };

  PrimeSet primes_;
  std::priority_queue<Candidate, std::vector<Candidate>, Greater> heap_;
  std::size_t emitted_ = 0;
};

/// Stop rule for enumerate_s_integers: a count, a value bound, or both
/// (whichever fires first).
struct EnumerationStop {
  std::optional<std::size_t> count;
  std::optional<mpz_class> bound;

  static EnumerationStop first(std::size_t n) { return {n, std::nullopt}; }
  static EnumerationStop up_to(mpz_class b) { return {std::nullopt, std::move(b)}; }
};

inline std::vector<SInteger> enumerate_s_integers(const PrimeSet& s, const EnumerationStop& stop) {
  if (!stop.count && !stop.bound) throw invalid_argument("enumeration needs a count or a bound");
  if ((stop.count && *stop.count == 0) || (stop.bound && *stop.bound <= 0))
    throw invalid_argument("enumeration stop must be positive");
  std::vector<SInteger> out;
  SIntegerStream stream(s);
  while (!stop.count || out.size() < *stop.count) {
    if (stop.bound && stream.peek() > *stop.bound) break;
    out.push_back(stream.next());
  }
  return out;
}

}  // namespace sunits
