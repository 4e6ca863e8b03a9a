#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sunits/errors.hpp"
#include "sunits/sequence.hpp"
#include "sunits/unit_equation.hpp"

namespace sunits {

using index_t = std::size_t;  // 1-based sequence index

/// Attached to every tail estimate and sweep report.
inline constexpr std::string_view evidence_caveat =
    "evidence, not proof: a finite tail m means no index tuple m < m_1 < ... < m_k <= horizon "
    "gives sum c_i s_{m_i} = M; no-tail-found means such tuples keep occurring in the final "
    "window of the horizon (falsification evidence for that (c, M) only). Finite sweeps cannot "
    "establish T-sequence status, and coefficient vectors with repeated indices merged are not "
    "enumerated separately.";

/// One instance of the forbidden-sum question: are there m < m_1 < ... < m_k <= horizon
/// with c_1 s_{m_1} + ... + c_k s_{m_k} = M?
class CriterionQuery {
 public:
  CriterionQuery(std::vector<coeff_t> c, mpz_class M, index_t horizon, index_t tail = 0)
      : c_(std::move(c)), M_(std::move(M)), horizon_(horizon), tail_(tail) {
    if (c_.empty()) throw invalid_argument("criterion query needs at least one coefficient");
    for (auto x : c_)
      if (x == 0) throw invalid_argument("criterion query coefficients must be nonzero");
    if (M_ == 0) throw invalid_argument("criterion query: M must be nonzero");
    if (tail_ >= horizon_) throw invalid_argument("criterion query: need 0 <= tail < horizon");
  }

  const std::vector<coeff_t>& c() const noexcept { return c_; }
  const mpz_class& M() const noexcept { return M_; }
  index_t horizon() const noexcept { return horizon_; }
  index_t tail() const noexcept { return tail_; }
  std::size_t k() const noexcept { return c_.size(); }

  CriterionQuery with_tail(index_t tail) const { return CriterionQuery(c_, M_, horizon_, tail); }

 private:
  std::vector<coeff_t> c_;
  mpz_class M_;
  index_t horizon_;
  index_t tail_;
};

struct ViolationReport {
  CriterionQuery query;
  std::vector<std::vector<index_t>> hits;  // strictly increasing 1-based tuples
  bool exhausted = true;                   // false iff the node budget cut the search short
  std::uint64_t nodes = 0;
};

struct SearchBudget {
  std::uint64_t nodes = 100'000'000;
};

namespace detail {

/// Depth-first search over increasing index tuples. The last index is found by
/// lookup in a value-sorted table; earlier levels are pruned by interval
/// bounds: with every remaining index >= j, sum c_i s_{m_i} lies in
/// [sum min(c_i lo_j, c_i hi_j), sum max(...)] where lo_j/hi_j are the
/// suffix min/max of the terms. The interval only shrinks as j grows, so the
/// first infeasible j ends the loop.
class ViolationSearch {
 public:
  ViolationSearch(std::span<const mpz_class> terms, const CriterionQuery& q, const SearchBudget& budget)
      : terms_(terms), q_(q), budget_(budget) {
    const index_t n = q.horizon();
    suffix_min_.resize(n + 2);
    suffix_max_.resize(n + 2);
    for (index_t j = n; j >= 1; --j) {
      const auto& v = terms_[j - 1];
      suffix_min_[j] = (j == n || v < suffix_min_[j + 1]) ? v : suffix_min_[j + 1];
      suffix_max_[j] = (j == n || v > suffix_max_[j + 1]) ? v : suffix_max_[j + 1];
    }
    for (index_t j = q.tail() + 1; j <= n; ++j) by_value_.emplace_back(terms_[j - 1], j);
    std::sort(by_value_.begin(), by_value_.end());
  }

  ViolationReport run() {
    ViolationReport r{q_, {}, true, 0};
    tuple_.clear();
    descend(0, q_.tail(), mpz_class(q_.M()), r);
    return r;
  }

 private:
  bool feasible(std::size_t depth, index_t from, const mpz_class& target) {
    lo_ = 0;
    hi_ = 0;
    for (std::size_t i = depth; i < q_.k(); ++i) {
      const long c = static_cast<long>(q_.c()[i]);
      a_ = c * suffix_min_[from];
      b_ = c * suffix_max_[from];
      if (a_ > b_) std::swap(a_, b_);
      lo_ += a_;
      hi_ += b_;
    }
    return lo_ <= target && target <= hi_;
  }

  // target = M minus the contribution of the indices chosen so far.
  void descend(std::size_t depth, index_t prev, const mpz_class& target, ViolationReport& r) {
    const index_t n = q_.horizon();
    const std::size_t k = q_.k();
    if (depth + 1 == k) {
      if (++r.nodes > budget_.nodes) {
        r.exhausted = false;
        return;
      }
      const long c = static_cast<long>(q_.c()[depth]);
      mpz_class abs_c = c < 0 ? -c : c;
      if (!mpz_divisible_p(target.get_mpz_t(), abs_c.get_mpz_t())) return;
      mpz_class want;
      mpz_divexact(want.get_mpz_t(), target.get_mpz_t(), abs_c.get_mpz_t());
      if (c < 0) want = -want;
      auto it = std::lower_bound(by_value_.begin(), by_value_.end(), std::make_pair(want, prev + 1));
      for (; it != by_value_.end() && it->first == want; ++it) {
        tuple_.push_back(it->second);
        r.hits.push_back(tuple_);
        tuple_.pop_back();
      }
      return;
    }
    const long c = static_cast<long>(q_.c()[depth]);
    const index_t last = n - (k - 1 - depth);
    mpz_class next;
    for (index_t j = prev + 1; j <= last && r.exhausted; ++j) {
      if (!feasible(depth, j, target)) break;
      if (++r.nodes > budget_.nodes) {
        r.exhausted = false;
        return;
      }
      next = target - c * terms_[j - 1];
      tuple_.push_back(j);
      descend(depth + 1, j, next, r);
      tuple_.pop_back();
    }
  }

  std::span<const mpz_class> terms_;
  const CriterionQuery& q_;
  SearchBudget budget_;
  std::vector<mpz_class> suffix_min_, suffix_max_;
  std::vector<std::pair<mpz_class, index_t>> by_value_;
  std::vector<index_t> tuple_;
  mpz_class lo_, hi_, a_, b_;
};

}  // namespace detail

/// All index tuples tail < m_1 < ... < m_k <= horizon with sum c_i s_{m_i} = M.
/// terms[i] holds s_{i+1}. A budget cutoff yields a partial report with
/// exhausted = false.
inline ViolationReport find_violations(std::span<const mpz_class> terms, const CriterionQuery& q,
                                       const SearchBudget& budget = {}) {
  if (terms.size() < q.horizon())
    throw invalid_argument("find_violations: " + std::to_string(terms.size()) +
                           " terms do not cover horizon " + std::to_string(q.horizon()));
  if (q.k() > q.horizon() - q.tail()) return ViolationReport{q, {}, true, 0};
  return detail::ViolationSearch(terms, q, budget).run();
}

struct TailOptions {
  SearchBudget budget{};
  /// Violations whose first index falls in the last max(k, ceil(late_fraction * horizon))
  /// indices count as "arbitrarily late": no tail is reported.
  double late_fraction = 0.1;
};

struct TailEstimate {
  std::optional<index_t> tail;  // smallest clean tail, if one exists before the late window
  std::size_t hits = 0;         // violations with tail 0
  index_t last_hit_start = 0;   // largest m_1 over all hits (0 if none)
  index_t late_window_start = 0;
  std::string_view caveat = evidence_caveat;
};

/// Smallest m such that no violation exists beyond m within the horizon.
///
/// The hits with tail 0 determine every tail at once: tail m is clean iff
/// m >= max m_1. If that maximum lands in the late window the violations are
/// treated as persistent and no tail is returned. Budget cutoffs throw.
inline TailEstimate estimate_tail_index(std::span<const mpz_class> terms, const std::vector<coeff_t>& c,
                                        const mpz_class& M, index_t horizon, const TailOptions& opt = {}) {
  CriterionQuery q(c, M, horizon, 0);
  auto report = find_violations(terms, q, opt.budget);
  if (!report.exhausted)
    throw budget_exceeded("violation search exceeded node budget " + std::to_string(opt.budget.nodes));
  TailEstimate est;
  est.hits = report.hits.size();
  for (const auto& h : report.hits) est.last_hit_start = std::max(est.last_hit_start, h.front());
  const auto window = std::max<index_t>(
      q.k(), static_cast<index_t>(std::ceil(opt.late_fraction * static_cast<double>(horizon))));
  est.late_window_start = horizon > window ? horizon - window : 0;
  if (est.last_hit_start <= est.late_window_start) est.tail = est.last_hit_start;
  return est;
}

enum class CoefficientOrder {
  multisets,  // c_1 <= ... <= c_k only
  ordered,    // every ordered tuple
};

struct SweepOptions {
  TailOptions tail{};
  CoefficientOrder order = CoefficientOrder::multisets;
  unsigned threads = 1;
};

enum class CellStatus { finite_tail, no_tail_found, budget_exceeded };

inline std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::finite_tail: return "finite-tail";
    case CellStatus::no_tail_found: return "no-tail-found";
    case CellStatus::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

struct SweepCell {
  std::vector<coeff_t> c;
  mpz_class M;
  CellStatus status = CellStatus::finite_tail;
  std::optional<index_t> tail;
  std::size_t hits = 0;
  index_t last_hit_start = 0;
};

struct SweepReport {
  std::size_t k_max = 0;
  coeff_t c_bound = 0;
  coeff_t m_bound = 0;
  index_t horizon = 0;
  std::vector<SweepCell> cells;
  std::string_view caveat = evidence_caveat;

  std::size_t count(CellStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [s](const SweepCell& c) { return c.status == s; }));
  }
};

/// Coefficient vectors of length 1..k_max with entries in [-bound, bound] \ {0}.
inline std::vector<std::vector<coeff_t>> coefficient_vectors(std::size_t k_max, coeff_t bound,
                                                             CoefficientOrder order) {
  std::vector<coeff_t> values;
  for (coeff_t v = -bound; v <= bound; ++v)
    if (v != 0) values.push_back(v);
  std::vector<std::vector<coeff_t>> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (pick.size() == k) {
      std::vector<coeff_t> c;
      for (auto i : pick) c.push_back(values[i]);
      out.push_back(std::move(c));
      return;
    }
    std::size_t from = (order == CoefficientOrder::multisets && !pick.empty()) ? pick.back() : 0;
    for (std::size_t i = from; i < values.size(); ++i) {
      pick.push_back(i);
      self(self, k);
      pick.pop_back();
    }
  };
  for (std::size_t k = 1; k <= k_max; ++k) rec(rec, k);
  return out;
}

/// Runs estimate_tail_index for every (c, M) with k <= k_max, 0 < |c_i| <= c_bound,
/// 0 < |M| <= m_bound. Cells are ordered by (k, c, M) regardless of threading.
inline SweepReport criterion_sweep(std::span<const mpz_class> terms, std::size_t k_max, coeff_t c_bound,
                                   coeff_t m_bound, index_t horizon, const SweepOptions& opt = {}) {
  if (k_max < 1 || c_bound < 1 || m_bound < 1 || horizon < 1)
    throw invalid_argument("criterion_sweep: all bounds must be >= 1");
  if (terms.size() < horizon)
    throw invalid_argument("criterion_sweep: sequence has fewer than " + std::to_string(horizon) + " terms");
  SweepReport report{k_max, c_bound, m_bound, horizon, {}, evidence_caveat};
  for (auto& c : coefficient_vectors(k_max, c_bound, opt.order))
    for (coeff_t M = -m_bound; M <= m_bound; ++M)
      if (M != 0) {
        SweepCell cell;
        cell.c = c;
        cell.M = static_cast<long>(M);
        report.cells.push_back(std::move(cell));
      }

  auto run_cell = [&](SweepCell& cell) {
    try {
      auto est = estimate_tail_index(terms, cell.c, cell.M, horizon, opt.tail);
      cell.tail = est.tail;
      cell.hits = est.hits;
      cell.last_hit_start = est.last_hit_start;
      cell.status = est.tail ? CellStatus::finite_tail : CellStatus::no_tail_found;
    } catch (const budget_exceeded&) {
      cell.status = CellStatus::budget_exceeded;
    }
  };

  const unsigned workers = std::max(1u, opt.threads);
  if (workers == 1) {
    for (auto& cell : report.cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < report.cells.size();) run_cell(report.cells[i]);
      });
  }
  return report;
}

inline SweepReport criterion_sweep(const SequenceSpec& spec, std::size_t k_max, coeff_t c_bound,
                                   coeff_t m_bound, index_t horizon, const SweepOptions& opt = {}) {
  if (horizon < 1) throw invalid_argument("criterion_sweep: horizon must be >= 1");
  auto terms = generate(spec, horizon);
  return criterion_sweep(terms, k_max, c_bound, m_bound, horizon, opt);
}

}  // namespace sunits
