#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace sunits {

/// Primes p <= limit, by a segmented sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  // base primes up to sqrt(limit)
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  constexpr std::uint64_t segment = 1 << 16;
  std::vector<char> mark(segment);
  for (std::uint64_t lo = 2; lo <= limit; lo += segment) {
    const std::uint64_t hi = std::min(limit, lo + segment - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (auto p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (mark[n - lo]) out.push_back(n);
  }
  return out;
}

/// The first n primes.
inline std::vector<std::uint64_t> first_primes(std::size_t n) {
  if (n == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6
  double x = static_cast<double>(n);
  std::uint64_t limit = n < 6 ? 13 : static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
  auto p = primes_up_to(limit);
  while (p.size() < n) p = primes_up_to(limit *= 2);
  p.resize(n);
  return p;
}

}  // namespace sunits
