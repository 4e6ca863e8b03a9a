#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sunits/decompose.hpp"
#include "sunits/enumerate.hpp"
#include "sunits/solve.hpp"
#include "sunits/witness.hpp"

using namespace sunits;

namespace {

const PrimeSet S23{2, 3};

Solution ints(std::initializer_list<long> values, const PrimeSet& s = S23) {
  Solution out;
  for (auto v : values) out.push_back(factor_over_s(v, s)->unit());
  return out;
}

oracle::Tuple as_tuple(const Solution& sol) {
  oracle::Tuple t;
  for (const auto& x : sol) {
    oracle::Coord c{static_cast<std::int64_t>(x.sign())};
    c.insert(c.end(), x.exponents().begin(), x.exponents().end());
    t.push_back(c);
  }
  return t;
}

std::set<std::vector<mpq_class>> value_set(const std::vector<Solution>& sols) {
  std::set<std::vector<mpq_class>> out;
  for (const auto& s : sols) {
    std::vector<mpq_class> v;
    for (const auto& x : s) v.push_back(value_of(x));
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(UnitEquation, ParseAndValidate) {
  auto eq = UnitEquation::parse("1, -2,3 = 5 over 2,3");
  EXPECT_EQ(eq.coefficients(), (std::vector<coeff_t>{1, -2, 3}));
  EXPECT_EQ(eq.rhs(), 5);
  EXPECT_EQ(eq.to_string(), "1,-2,3 = 5 over 2,3");
  EXPECT_THROW(UnitEquation::parse("1,1 = 0 over 2"), invalid_argument);
  EXPECT_THROW(UnitEquation::parse("1,0 = 1 over 2"), invalid_argument);
  EXPECT_THROW(UnitEquation::parse("1,1 = 1"), parse_error);
  EXPECT_THROW(UnitEquation::parse("1,1 = 1 over 4"), invalid_argument);
  EXPECT_THROW(UnitEquation({}, 1, S23), invalid_argument);
}

TEST(IsNondegenerate, Examples) {
  auto eq3 = UnitEquation::parse("1,1,1 = 1 over 2,3");
  EXPECT_FALSE(is_nondegenerate(eq3, ints({4, -4, 1})));
  auto eq2 = UnitEquation::parse("1,1 = 1 over 2,3");
  EXPECT_TRUE(is_nondegenerate(eq2, ints({3, -2})));
  auto eq1 = UnitEquation::parse("2 = 4 over 2");
  EXPECT_TRUE(is_nondegenerate(eq1, ints({2}, PrimeSet{2})));
  EXPECT_THROW(is_nondegenerate(eq2, ints({3, 2})), invalid_argument);
}

TEST(SolveBounded, PairOverTwoThreeIntegers) {
  auto eq = UnitEquation::parse("1,1 = 1 over 2,3");
  auto sols = solve_bounded(eq, 12, Domain::s_integers);
  std::vector<Solution> nondeg;
  for (auto& s : sols) {
    EXPECT_FALSE(s.degenerate);
    nondeg.push_back(s.coords);
  }
  auto expected = value_set({ints({2, -1}), ints({3, -2}), ints({4, -3}), ints({9, -8}), ints({-1, 2}),
                             ints({-2, 3}), ints({-3, 4}), ints({-8, 9})});
  EXPECT_EQ(value_set(nondeg), expected);
  EXPECT_EQ(nondeg.size(), 8u);
}

TEST(SolveBounded, PairOverTwoThreeUnitsHasTwentyOne) {
  // 21 frozen from an exact-fraction brute force at E = 8 and E = 12
  auto eq = UnitEquation::parse("1,1 = 1 over 2,3");
  EXPECT_EQ(nondegenerate_solutions(eq, 8).size(), 21u);
  EXPECT_EQ(nondegenerate_solutions(eq, 12).size(), 21u);
}

TEST(SolveBounded, SingleTerm) {
  auto eq = UnitEquation::parse("2 = 4 over 2");
  auto sols = solve_bounded(eq, 3);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(value_of(sols[0].coords[0]), 2);
  EXPECT_FALSE(sols[0].degenerate);
  // 3x = 4 has no S-unit solution over {2}
  EXPECT_TRUE(solve_bounded(UnitEquation::parse("3 = 4 over 2"), 5).empty());
}

TEST(SolveBounded, DegenerateFamilyAppears) {
  auto eq = UnitEquation::parse("1,1,1 = 1 over 2,3");
  auto sols = solve_bounded(eq, 4);
  // 1381 total, 483 degenerate: frozen from an exact-fraction brute force
  EXPECT_EQ(sols.size(), 1381u);
  EXPECT_EQ(std::count_if(sols.begin(), sols.end(), [](auto& s) { return s.degenerate; }), 483);
  std::set<oracle::Tuple> got;
  for (auto& s : sols) got.insert(as_tuple(s.coords));
  for (const auto& x : enumerate_s_integers(S23, EnumerationStop::up_to(1'000'000))) {
    if (x.unit().height() > 4) continue;
    for (Sign sg : {Sign::positive, Sign::negative}) {
      SUnit u(S23, sg, x.unit().exponents());
      Solution fam{u, SUnit(S23, sg * Sign::negative, u.exponents()), SUnit(S23)};
      EXPECT_TRUE(got.count(as_tuple(fam))) << format_values(fam);
      EXPECT_FALSE(is_nondegenerate(eq, fam));
    }
  }
}

TEST(SolveBounded, SortedCanonicallyAndVerified) {
  auto eq = UnitEquation::parse("3,-1 = 2 over 2,3");
  auto sols = solve_bounded(eq, 6);
  ASSERT_FALSE(sols.empty());
  std::vector<std::vector<std::string>> keys;
  for (auto& s : sols) {
    EXPECT_TRUE(satisfies(eq, s.coords));
    std::vector<std::string> k;
    for (auto& x : s.coords) {
      k.push_back(to_string(x));
      EXPECT_LE(x.height(), 6);
    }
    keys.push_back(k);
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(SolveBounded, BudgetGuard) {
  auto eq = UnitEquation::parse("1,1,1,1 = 1 over 2,3,5");
  SolveOptions opt;
  opt.ceiling = 1'000'000;
  EXPECT_THROW(solve_bounded(eq, 4, Domain::s_units, opt), budget_exceeded);
  EXPECT_THROW(solve_bounded(eq, -1), invalid_argument);
}

TEST(SolveBounded, ThreadsDoNotChangeOutput) {
  auto eq = UnitEquation::parse("1,2,-3 = 1 over 2,3");
  SolveOptions par;
  par.threads = 4;
  auto a = solve_bounded(eq, 3);
  auto b = solve_bounded(eq, 3, Domain::s_units, par);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].coords, b[i].coords);
    EXPECT_EQ(a[i].degenerate, b[i].degenerate);
  }
}

TEST(SolveBounded, MatchesNestedLoopOracleOnSmallGrid) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<coeff_t> cd(-5, 5), md(-10, 10);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + trial % 3;
    std::vector<coeff_t> c;
    while (c.size() < k)
      if (auto v = cd(rng)) c.push_back(v);
    coeff_t M = 0;
    while (M == 0) M = md(rng);
    const bool units = trial % 2 == 0;
    const int E = k == 3 ? 2 : 4;
    UnitEquation eq(c, M, S23);
    std::set<oracle::Tuple> got;
    for (auto& s : solve_bounded(eq, E, units ? Domain::s_units : Domain::s_integers)) {
      got.insert(as_tuple(s.coords));
      EXPECT_EQ(s.degenerate, oracle::any_zero_subset(weighted_terms(eq, s.coords)));
    }
    EXPECT_EQ(got, oracle::brute_force_solutions(c, M, {2, 3}, E, units)) << eq.to_string();
  }
}

TEST(SolveBounded, NondegenerateSetGrowsMonotonically) {
  auto eq = UnitEquation::parse("1,-1,2 = 3 over 2,3");
  std::set<oracle::Tuple> prev;
  for (int E = 0; E <= 4; ++E) {
    std::set<oracle::Tuple> cur;
    for (auto& s : nondegenerate_solutions(eq, E)) cur.insert(as_tuple(s));
    EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) << E;
    prev = cur;
  }
}

TEST(Decompose, Examples) {
  auto eq3 = UnitEquation::parse("1,1,1 = 1 over 2,3");
  auto d = decompose(eq3, ints({4, -4, 1}));
  EXPECT_EQ(d.zero_set, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.active_set, (std::vector<std::size_t>{2}));
  EXPECT_EQ(d.residual, ints({1}));

  auto eq2 = UnitEquation::parse("1,1 = 1 over 2,3");
  auto nd = decompose(eq2, ints({9, -8}));
  EXPECT_TRUE(nd.zero_set.empty());
  EXPECT_EQ(nd.active_set, (std::vector<std::size_t>{0, 1}));

  auto eq4 = UnitEquation::parse("1,1,1,1 = 1 over 2,3");
  auto d4 = decompose(eq4, ints({2, -2, 3, -2}));
  EXPECT_EQ(d4.zero_set, (std::vector<std::size_t>{0, 1}));  // {1,4} also sums to zero; {1,2} is lex-first
  EXPECT_EQ(d4.active_set, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(d4.residual, ints({3, -2}));

  EXPECT_THROW(decompose(eq2, ints({2, 2})), invalid_argument);
}

TEST(Decompose, AgreesWithSubsetOracle) {
  auto eq = UnitEquation::parse("1,1,1,-1,2 = 3 over 2,3");
  std::mt19937_64 rng(5);
  auto sols = solve_bounded(UnitEquation::parse("1,1,1,-1 = 1 over 2,3"), 1);
  int checked = 0;
  // lift 4-term solutions of "= 1" by appending x_5 = 1: 1 + 2*1 = 3
  for (auto& s : sols) {
    if (rng() % 8) continue;
    Solution full = s.coords;
    full.push_back(SUnit(S23));
    ASSERT_TRUE(satisfies(eq, full));
    auto d = decompose(eq, full);
    EXPECT_EQ(d.zero_set, oracle::max_zero_subset(weighted_terms(eq, full)));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(WitnessSets, Examples) {
  auto eq2 = UnitEquation::parse("1,1 = 1 over 2,3");
  auto w = witness_sets(eq2, 12, Domain::s_integers);
  ASSERT_EQ(w.sets.size(), 2u);
  for (long v : {2, 3, 4, 9, -1, -2, -3, -8, 1})
    EXPECT_TRUE(w.contains(0, factor_over_s(v, S23)->unit())) << v;
  EXPECT_EQ(w.sets[0].size(), 9u);

  auto eq1 = UnitEquation::parse("2 = 4 over 2");
  auto w1 = witness_sets(eq1, 3);
  ASSERT_EQ(w1.sets.size(), 1u);
  ASSERT_EQ(w1.sets[0].size(), 1u);
  EXPECT_EQ(value_of(w1.sets[0][0]), 2);
}

TEST(WitnessSets, CoverEveryBoundedSolution) {
  auto eq = UnitEquation::parse("1,1,1 = 1 over 2,3");
  auto w = witness_sets(eq, 4);
  EXPECT_TRUE(w.contains(2, SUnit(S23)));  // 1 in V_3
  for (auto& s : solve_bounded(eq, 4)) EXPECT_TRUE(w.covers(s.coords)) << format_values(s.coords);
}
