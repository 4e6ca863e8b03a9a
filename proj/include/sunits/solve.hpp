#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"
#include "sunits/sunit.hpp"
#include "sunits/unit_equation.hpp"

namespace sunits {

struct SolveOptions {
  /// Upper limit on (2E+1)^(|S|k), the nominal grid size.
  std::uint64_t ceiling = 1'000'000'000;
  /// Worker threads; the first coordinate's candidates are split among them.
  unsigned threads = 1;
};

struct SolvedSolution {
  Solution coords;
  bool degenerate = false;
};

namespace detail {

/// Nominal grid size (2E+1)^(|S|k), saturating at UINT64_MAX.
inline std::uint64_t nominal_grid_size(exponent_t bound, std::size_t primes, std::size_t k) {
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(2 * bound + 1),
                static_cast<unsigned long>(primes * k));
  if (n > mpz_class(std::to_string(UINT64_MAX), 10)) return UINT64_MAX;
  return std::stoull(n.get_str());
}

inline void check_budget(const UnitEquation& eq, exponent_t bound, const SolveOptions& opt) {
  auto grid = nominal_grid_size(bound, eq.primes().size(), eq.size());
  if (grid > opt.ceiling)
    throw budget_exceeded("search grid (2E+1)^(|S|k) = " +
                          (grid == UINT64_MAX ? std::string(">= 2^64") : std::to_string(grid)) +
                          " exceeds ceiling " + std::to_string(opt.ceiling) + " for '" + eq.to_string() +
                          "' at E=" + std::to_string(bound));
}

/// One grid point for a coordinate. `scaled` is value * D with D = prod p^E
/// in the s-units domain (1 for s-integers), so every candidate is an integer.
struct Candidate {
  SUnit unit;
  mpz_class scaled;
};

class BoundedSearch {
 public:
  BoundedSearch(const UnitEquation& eq, exponent_t bound, Domain domain)
      : eq_(eq), bound_(bound), low_(domain == Domain::s_units ? -bound : 0),
        offset_(domain == Domain::s_units ? bound : 0) {
    const auto& s = eq.primes();
    scale_ = 1;
    for (std::size_t i = 0; i < s.size(); ++i) scale_ *= prime_power(s[i], offset_);
    target_ = scale_ * mpz_class(static_cast<long>(eq.rhs()));
    build_candidates();
  }

  const std::vector<Candidate>& candidates() const noexcept { return candidates_; }

  /// Every solution whose first coordinate is one of candidates()[i] for i in `firsts`.
  /// With k = 1 `firsts` is ignored.
  std::vector<Solution> run(const std::vector<std::size_t>& firsts) const {
    std::vector<Solution> out;
    std::vector<std::size_t> prefix;
    if (eq_.size() == 1) {
      close(prefix, target_, out);
      return out;
    }
    const long c0 = static_cast<long>(eq_.coefficients()[0]);
    for (auto i : firsts) {
      const auto& cand = candidates_[i];
      prefix.push_back(i);
      mpz_class rem = target_ - c0 * cand.scaled;
      descend(prefix, rem, out);
      prefix.pop_back();
    }
    return out;
  }

 private:
  // prefix holds candidate indices of coordinates 0..depth-1; rem = M*D minus their weighted sum.
  void descend(std::vector<std::size_t>& prefix, const mpz_class& rem, std::vector<Solution>& out) const {
    const std::size_t depth = prefix.size();
    if (depth + 1 == eq_.size()) {
      close(prefix, rem, out);
      return;
    }
    const long c = static_cast<long>(eq_.coefficients()[depth]);
    mpz_class next;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      next = rem - c * candidates_[i].scaled;
      prefix.push_back(i);
      descend(prefix, next, out);
      prefix.pop_back();
    }
  }

  // Solve c_k X_k = rem for the last coordinate by exact division and factorization.
  void close(const std::vector<std::size_t>& prefix, const mpz_class& rem, std::vector<Solution>& out) const {
    if (rem == 0) return;
    const long ck = static_cast<long>(eq_.coefficients().back());
    mpz_class abs_c = ck < 0 ? -ck : ck;
    if (!mpz_divisible_p(rem.get_mpz_t(), abs_c.get_mpz_t())) return;
    mpz_class x;
    mpz_divexact(x.get_mpz_t(), rem.get_mpz_t(), abs_c.get_mpz_t());
    if (ck < 0) x = -x;
    Sign sign = x < 0 ? Sign::negative : Sign::positive;
    mpz_class rest = abs(x);
    auto e = strip_primes(rest, eq_.primes());
    if (rest != 1) return;
    for (auto& v : e) {
      v -= offset_;
      if (v < low_ || v > bound_) return;
    }
    Solution sol;
    sol.reserve(prefix.size() + 1);
    for (auto i : prefix) sol.push_back(candidates_[i].unit);
    sol.emplace_back(eq_.primes(), sign, std::move(e));
    out.push_back(std::move(sol));
  }

  void build_candidates() {
    const auto& s = eq_.primes();
    std::vector<exponent_t> e(s.size(), low_);
    for (;;) {
      mpz_class mag = 1;
      for (std::size_t i = 0; i < s.size(); ++i) mag *= prime_power(s[i], e[i] + offset_);
      candidates_.push_back({SUnit(s, Sign::positive, e), mag});
      candidates_.push_back({SUnit(s, Sign::negative, e), -mag});
      std::size_t i = 0;
      while (i < e.size() && e[i] == bound_) e[i++] = low_;
      if (i == e.size()) break;
      ++e[i];
    }
  }

  const UnitEquation& eq_;
  exponent_t bound_;
  exponent_t low_;
  exponent_t offset_;
  mpz_class scale_;
  mpz_class target_;
  std::vector<Candidate> candidates_;
};

inline void sort_canonically(std::vector<SolvedSolution>& sols) {
  std::vector<std::pair<std::vector<std::string>, std::size_t>> keys;
  keys.reserve(sols.size());
  for (std::size_t i = 0; i < sols.size(); ++i) {
    std::vector<std::string> k;
    for (const auto& x : sols[i].coords) k.push_back(to_string(x));
    keys.emplace_back(std::move(k), i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<SolvedSolution> sorted;
  sorted.reserve(sols.size());
  for (auto& [_, i] : keys) sorted.push_back(std::move(sols[i]));
  sols = std::move(sorted);
}

}  // namespace detail

/// All solutions of eq whose coordinates have every exponent in [-E, E]
/// (s-units) or [0, E] (s-integers), flagged degenerate or not, sorted
/// lexicographically by the coordinates' canonical text forms.
///
/// Coordinates 1..k-1 walk the exponent grid; the last coordinate is solved
/// for by exact division and factorization over S.
inline std::vector<SolvedSolution> solve_bounded(const UnitEquation& eq, exponent_t exp_bound,
                                                 Domain domain = Domain::s_units,
                                                 const SolveOptions& opt = {}) {
  if (exp_bound < 0) throw invalid_argument("exponent bound must be nonnegative");
  detail::check_budget(eq, exp_bound, opt);
  detail::BoundedSearch search(eq, exp_bound, domain);

  std::vector<Solution> found;
  const std::size_t n = search.candidates().size();
  const unsigned workers = eq.size() == 1 ? 1u : std::max(1u, std::min<unsigned>(opt.threads, n));
  if (workers == 1) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    found = search.run(all);
  } else {
    std::vector<std::vector<Solution>> parts(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          std::vector<std::size_t> mine;
          for (std::size_t i = w; i < n; i += workers) mine.push_back(i);
          parts[w] = search.run(mine);
        });
    }
    for (auto& p : parts)
      for (auto& s : p) found.push_back(std::move(s));
  }

  std::vector<SolvedSolution> out;
  out.reserve(found.size());
  for (auto& sol : found) {
    bool nondeg = is_nondegenerate(eq, sol);
    out.push_back({std::move(sol), !nondeg});
  }
  detail::sort_canonically(out);
  return out;
}

/// Convenience filter: only the non-degenerate solutions.
inline std::vector<Solution> nondegenerate_solutions(const UnitEquation& eq, exponent_t exp_bound,
                                                     Domain domain = Domain::s_units,
                                                     const SolveOptions& opt = {}) {
  std::vector<Solution> out;
  for (auto& s : solve_bounded(eq, exp_bound, domain, opt))
    if (!s.degenerate) out.push_back(std::move(s.coords));
  return out;
}

}  // namespace sunits
