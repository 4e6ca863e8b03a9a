#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sunits/solve.hpp"
#include "sunits/unit_equation.hpp"

namespace sunits {

/// Witness sets V_1..V_k truncated at a height bound. V_i is the union over
/// all nonempty I containing i of the i-th coordinates of non-degenerate
/// solutions to sum_{j in I} c_j x_j = M with exponents within the bound.
struct WitnessSets {
  std::vector<std::vector<SUnit>> sets;  // each sorted and deduplicated
  exponent_t height_bound = 0;
  Domain domain = Domain::s_units;

  bool contains(std::size_t i, const SUnit& x) const {
    return std::binary_search(sets.at(i).begin(), sets.at(i).end(), x);
  }

  /// True iff some coordinate x_i of sol lies in V_i.
  bool covers(const Solution& sol) const {
    for (std::size_t i = 0; i < sol.size() && i < sets.size(); ++i)
      if (contains(i, sol[i])) return true;
    return false;
  }
};

inline WitnessSets witness_sets(const UnitEquation& eq, exponent_t exp_bound,
                                Domain domain = Domain::s_units, const SolveOptions& opt = {}) {
  if (exp_bound < 0) throw invalid_argument("exponent bound must be nonnegative");
  const std::size_t k = eq.size();
  if (k > 20) throw invalid_argument("witness_sets: too many terms for subset enumeration");
  WitnessSets w;
  w.sets.resize(k);
  w.height_bound = exp_bound;
  w.domain = domain;

  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) active.push_back(i);
    auto sub = eq.restrict_to(active);
    for (const auto& sol : solve_bounded(sub, exp_bound, domain, opt)) {
      if (sol.degenerate) continue;
      for (std::size_t j = 0; j < active.size(); ++j) w.sets[active[j]].push_back(sol.coords[j]);
    }
  }
  for (auto& v : w.sets) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return w;
}

}  // namespace sunits
