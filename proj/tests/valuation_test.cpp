// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lwca/valuation.hpp"

#include <gtest/gtest.h>

#include "lwca/coin_stream.hpp"
#include "lwca/generators.hpp"
#include "lwca/instance.hpp"

namespace lwca {
namespace {

TEST(ItemSet, BasicOperations) {
  ItemSet s = ItemSet::of({0, 2}, 4);
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.contains(0));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.unite(ItemSet::of({1}, 4)), ItemSet::of({0, 1, 2}, 4));
  EXPECT_EQ(s.minus(ItemSet::of({0}, 4)), ItemSet::of({2}, 4));
  EXPECT_TRUE(ItemSet::of({0}, 4).subset_of(s));
  EXPECT_EQ(ItemSet::full(3).bits, 0b111u);
  EXPECT_THROW(ItemSet::of({4}, 4), std::invalid_argument);
  EXPECT_THROW(ItemSet(0, 25), std::invalid_argument);
}

TEST(ItemSet, LexOrderComparesMemberLists) {
  // {0,3} precedes {1,2} even though its mask is numerically larger.
  EXPECT_TRUE(lex_less(0b1001, 0b0110));
  EXPECT_FALSE(lex_less(0b0110, 0b1001));
  EXPECT_FALSE(lex_less(0b0110, 0b0110));
  EXPECT_TRUE(lex_less(0b0011, 0b0101));  // {0,1} < {0,2}
}

TEST(Value, AdditiveSumsMemberWeights) {
  Valuation v = Valuation::additive({3, 5});
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0, 1}, 2)), 8.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::empty(2)), 0.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({1}, 2)), 5.0);
}

TEST(Value, CappedTakesMinWithCap) {
  Valuation v = Valuation::capped(Valuation::additive({3, 5}), 6.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0, 1}, 2)), 6.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0}, 2)), 3.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::empty(2)), 0.0);
}

TEST(Value, XosTakesMaxOverClauses) {
  Valuation v = Valuation::xos({AdditiveClause({4, 0}), AdditiveClause({0, 4})});
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0}, 2)), 4.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0, 1}, 2)), 4.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::empty(2)), 0.0);
}

TEST(Value, CoverageSumsCoveredElementWeights) {
  // item 0 covers {e0,e1}, item 1 covers {e1,e2}; weights (1,2,4).
  Valuation v = Valuation::coverage({0b011, 0b110}, {1, 2, 4});
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0}, 2)), 3.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({1}, 2)), 6.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::of({0, 1}, 2)), 7.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet::empty(2)), 0.0);
}

TEST(Value, RejectsUniverseMismatch) {
  Valuation v = Valuation::additive({3, 5});
  EXPECT_THROW(v.value(ItemSet::of({0}, 3)), std::invalid_argument);
}

TEST(Liquid, CapsAtBudget) {
  Bidder b(Valuation::additive({10}), 2.0);
  EXPECT_DOUBLE_EQ(liquid(b).value(ItemSet::of({0}, 1)), 2.0);
}

TEST(Liquid, InactiveCapEqualsRawValuation) {
  Valuation v = Valuation::additive({3, 5});
  Bidder b(v, 100.0);
  Valuation lv = liquid(b);
  for (std::uint32_t s = 0; s < 4; ++s)
    EXPECT_DOUBLE_EQ(lv.value(ItemSet(s, 2)), v.value(ItemSet(s, 2)));
}

TEST(Liquid, IdempotentOnEqualCap) {
  Bidder b(Valuation::capped(Valuation::additive({10}), 2.0), 2.0);
  Valuation lv = liquid(b);
  EXPECT_EQ(lv.kind(), Valuation::Kind::Capped);
  EXPECT_EQ(lv.inner().kind(), Valuation::Kind::Additive);
}

TEST(Liquid, FootnoteBidderValuesAllTwo) {
  Instance demo = footnote_demo_instance();
  Valuation lv = liquid(demo.bidders[0]);
  EXPECT_DOUBLE_EQ(lv.value(ItemSet::of({0}, 2)), 2.0);
  EXPECT_DOUBLE_EQ(lv.value(ItemSet::of({1}, 2)), 2.0);
  EXPECT_DOUBLE_EQ(lv.value(ItemSet::of({0, 1}, 2)), 2.0);
}

TEST(XosClause, UniqueMaximizer) {
  Valuation v = Valuation::xos({AdditiveClause({4, 0}), AdditiveClause({0, 4})});
  EXPECT_EQ(xos_clause(v, ItemSet::of({0}, 2)).weights, (std::vector<double>{4, 0}));
}

TEST(XosClause, TieBreaksToLowestClauseIndex) {
  Valuation v = Valuation::xos({AdditiveClause({4, 0}), AdditiveClause({0, 4})});
  EXPECT_EQ(xos_clause(v, ItemSet::of({0, 1}, 2)).weights,
            (std::vector<double>{4, 0}));
}

TEST(XosClause, AdditiveActsAsSingleClause) {
  Valuation v = Valuation::additive({3, 5});
  EXPECT_EQ(xos_clause(v, ItemSet::of({0}, 2)).weights,
            (std::vector<double>{3, 5}));
  EXPECT_EQ(xos_clause(v, ItemSet::empty(2)).weights,
            (std::vector<double>{3, 5}));
}

TEST(XosClause, EmptySetYieldsZeroClause) {
  Valuation v = Valuation::xos({AdditiveClause({4, 0}), AdditiveClause({0, 4})});
  EXPECT_EQ(xos_clause(v, ItemSet::empty(2)).weights,
            (std::vector<double>{0, 0}));
}

TEST(XosClause, RejectsNonXosKinds) {
  Valuation cov = Valuation::coverage({0b01, 0b10}, {1, 1});
  EXPECT_THROW(xos_clause(cov, ItemSet::of({0}, 2)), std::invalid_argument);
  Valuation cap = Valuation::capped(Valuation::additive({1, 1}), 1.0);
  EXPECT_THROW(xos_clause(cap, ItemSet::of({0}, 2)), std::invalid_argument);
}

TEST(LiquidXosClause, TruncatesFirstOverflowingWeight) {
  // Clause (4,3,2) on S={0,1,2} with B=5: prefix sums 4,7 -> second weight
  // truncated to 1, third zeroed.
  Valuation v = Valuation::xos({AdditiveClause({4, 3, 2})});
  AdditiveClause a = liquid_xos_clause(v, 5.0, ItemSet::full(3));
  EXPECT_EQ(a.weights, (std::vector<double>{4, 1, 0}));
}

TEST(LiquidXosClause, InactiveCapRestrictsClauseToS) {
  Valuation v = Valuation::xos({AdditiveClause({4, 3, 2})});
  AdditiveClause a = liquid_xos_clause(v, 100.0, ItemSet::of({0, 2}, 3));
  EXPECT_EQ(a.weights, (std::vector<double>{4, 0, 2}));
}

TEST(LiquidXosClause, ZeroBudgetZeroesEverything) {
  Valuation v = Valuation::xos({AdditiveClause({4, 3, 2})});
  AdditiveClause a = liquid_xos_clause(v, 0.0, ItemSet::full(3));
  EXPECT_EQ(a.weights, (std::vector<double>{0, 0, 0}));
}

TEST(LiquidXosClause, CoverageValuationsGetDominatedTightClauses) {
  GenParams params;
  params.n = 1;
  params.m = 5;
  params.element_count = 7;
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Coverage, params, seed);
    const Valuation& v = inst.bidders[0].valuation;
    double vu = v.value(ItemSet::full(params.m));
    for (double budget : {vu / 2.0, vu}) {
      for (std::uint32_t s = 0; s < (1u << params.m); s += 3) {
        AdditiveClause a = liquid_xos_clause(v, budget, ItemSet(s, params.m));
        auto bound = [&](std::uint32_t t) {
          return std::min(v.value(ItemSet(t, params.m)), budget);
        };
        EXPECT_TRUE(check_clause_dominated(params.m, a, bound, s).holds)
            << "seed " << seed << " S=" << ItemSet(s, params.m).str();
      }
    }
  }
}

TEST(RepresentativeClause, CoverageMarginalsAreTightAndDominated) {
  Valuation v = Valuation::coverage({0b011, 0b110, 0b100}, {1, 2, 4});
  ItemSet s = ItemSet::of({0, 1}, 3);
  AdditiveClause a = representative_clause(v, s);
  EXPECT_DOUBLE_EQ(a(s), v.value(s));
  for (std::uint32_t t = 0; t < 8; ++t)
    EXPECT_LE(a(ItemSet(t, 3)), v.value(ItemSet(t, 3)) + kTol);
}

TEST(CheckClass, CoverageIsSubmodular) {
  Valuation v = Valuation::coverage({0b011, 0b110, 0b101}, {1, 2, 4});
  EXPECT_TRUE(check_class(v, SetFunctionClass::Submodular).holds);
  EXPECT_TRUE(check_class(v, SetFunctionClass::Monotone).holds);
}

TEST(CheckClass, AdditiveIsSubmodular) {
  EXPECT_TRUE(check_class(Valuation::additive({1, 1}),
                          SetFunctionClass::Submodular)
                  .holds);
}

TEST(CheckClass, SuperadditiveStubFailsSubadditivityWithWitness) {
  // v({0}) = v({1}) = 1, v({0,1}) = 3.
  auto stub = [](std::uint32_t mask) {
    return mask == 0 ? 0.0 : (mask == 0b11 ? 3.0 : 1.0);
  };
  ClassCheckResult r = check_class_fn(2, stub, SetFunctionClass::Subadditive);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness_s | r.witness_t, 0b11u);
  EXPECT_NE(r.witness_s, r.witness_t);
  EXPECT_DOUBLE_EQ(r.lhs, 2.0);
  EXPECT_DOUBLE_EQ(r.rhs, 3.0);
}

TEST(CheckClass, RejectsOversizedUniverse) {
  auto zero = [](std::uint32_t) { return 0.0; };
  EXPECT_THROW(check_class_fn(11, zero, SetFunctionClass::Monotone),
               std::invalid_argument);
}

TEST(CheckClass, DetectsNonMonotoneTable) {
  auto stub = [](std::uint32_t mask) { return mask == 0b01 ? 2.0 : 1.0; };
  ClassCheckResult r = check_class_fn(2, stub, SetFunctionClass::Monotone);
  EXPECT_FALSE(r.holds);
}

// Closure of valuation classes under budget capping, checked exhaustively
// on random coverage (submodular) and XOS valuations.
TEST(LiquidClosure, CappedCoverageStaysSubmodular) {
  GenParams params;
  params.n = 1;
  params.m = 5;
  params.element_count = 7;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Coverage, params, seed);
    const Valuation& v = inst.bidders[0].valuation;
    double vu = v.value(ItemSet::full(params.m));
    for (double budget : {0.0, vu / 2.0, vu, 2.0 * vu}) {
      Valuation lv = Valuation::capped(v, budget);
      auto r = check_class(lv, SetFunctionClass::Submodular);
      EXPECT_TRUE(r.holds) << "seed " << seed << " budget " << budget;
      EXPECT_TRUE(check_class(lv, SetFunctionClass::Monotone).holds);
    }
  }
}

TEST(LiquidClosure, PrefixCappedClauseDominatedByLiquidValue) {
  GenParams params;
  params.n = 1;
  params.m = 5;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Xos, params, seed);
    const Valuation& v = inst.bidders[0].valuation;
    double vu = v.value(ItemSet::full(params.m));
    for (double budget : {0.0, vu / 2.0, vu, 2.0 * vu}) {
      for (std::uint32_t s = 0; s < (1u << params.m); ++s) {
        AdditiveClause a = liquid_xos_clause(v, budget, ItemSet(s, params.m));
        auto bound = [&](std::uint32_t t) {
          return std::min(v.value(ItemSet(t, params.m)), budget);
        };
        auto r = check_clause_dominated(params.m, a, bound, s);
        EXPECT_TRUE(r.holds) << "seed " << seed << " budget " << budget
                             << " S=" << ItemSet(s, params.m).str()
                             << " witness " << ItemSet(r.witness, params.m).str();
        if (!r.holds) return;
      }
    }
  }
}

TEST(LiquidClosure, CappedSubadditiveStubStaysSubadditive) {
  // Monotone subadditive (non-XOS) stub on three items: value a for one or
  // two items, b for all three, with a <= b <= 2a.
  CoinStream coins(7);
  for (int trial = 0; trial < 100; ++trial) {
    double a = coins.grid_uniform(1.0, 8.0);
    double b = std::min(2.0 * a, a + coins.grid_uniform(0.0, 8.0));
    auto stub = [&](std::uint32_t mask) {
      int size = std::popcount(mask);
      return size == 0 ? 0.0 : (size <= 2 ? a : b);
    };
    ASSERT_TRUE(check_class_fn(3, stub, SetFunctionClass::Subadditive).holds);
    for (double budget : {0.0, a / 2.0, a, b, 2.0 * b}) {
      auto capped = [&](std::uint32_t mask) {
        return std::min(stub(mask), budget);
      };
      EXPECT_TRUE(check_class_fn(3, capped, SetFunctionClass::Subadditive).holds);
      EXPECT_TRUE(check_class_fn(3, capped, SetFunctionClass::Monotone).holds);
    }
  }
}

// Soundness of the explicit clause oracle on random XOS valuations.
TEST(XosClause, SoundOnRandomValuations) {
  GenParams params;
  params.n = 1;
  params.m = 6;
  params.clause_count = 3;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Xos, params, seed);
    const Valuation& v = inst.bidders[0].valuation;
    for (std::uint32_t s = 0; s < (1u << params.m); ++s) {
      AdditiveClause a = xos_clause(v, ItemSet(s, params.m));
      EXPECT_NEAR(a(ItemSet(s, params.m)), v.value(ItemSet(s, params.m)), kTol);
      for (std::uint32_t t = 0; t < (1u << params.m); ++t)
        EXPECT_LE(a(ItemSet(t, params.m)),
                  v.value(ItemSet(t, params.m)) + kTol);
    }
  }
}

TEST(CappedEvaluation, MatchesExplicitMin) {
  GenParams params;
  params.n = 1;
  params.m = 6;
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    Instance inst = gen_instance(InstanceFamily::Coverage, params, seed);
    const Valuation& v = inst.bidders[0].valuation;
    Valuation lv = Valuation::capped(v, 5.0);
    for (std::uint32_t s = 0; s < (1u << params.m); ++s)
      EXPECT_DOUBLE_EQ(lv.value(ItemSet(s, params.m)),
                       std::min(v.value(ItemSet(s, params.m)), 5.0));
  }
}

TEST(ScaleValuation, ScalesEveryKind) {
  Valuation add = scale_valuation(Valuation::additive({2, 4}), 0.5);
  EXPECT_DOUBLE_EQ(add.value(ItemSet::full(2)), 3.0);
  Valuation cap =
      scale_valuation(Valuation::capped(Valuation::additive({4, 4}), 6.0), 2.0);
  EXPECT_DOUBLE_EQ(cap.value(ItemSet::full(2)), 12.0);
  Valuation zero = scale_valuation(footnote_demo_instance().bidders[0].valuation, 0.0);
  EXPECT_DOUBLE_EQ(zero.value(ItemSet::full(2)), 0.0);
}

TEST(Instance, ValidatesShape) {
  EXPECT_THROW(Instance(2, {}), std::invalid_argument);
  EXPECT_THROW(Instance(3, {Bidder(Valuation::additive({1, 1}), 1.0)}),
               std::invalid_argument);
  EXPECT_THROW(Bidder(Valuation::additive({1}), -1.0), std::invalid_argument);
}

}  // namespace
}  // namespace lwca
