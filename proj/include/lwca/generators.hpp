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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lwca/bayes.hpp"
#include "lwca/coin_stream.hpp"
#include "lwca/instance.hpp"

namespace lwca {

enum class InstanceFamily { Additive, Xos, Coverage, CloneMarket, FootnoteDemo };

struct GenParams {
  int n = 3;
  int m = 4;
  double weight_lo = 0.0;
  double weight_hi = 8.0;
  int clause_count = 2;    // xos
  int element_count = 6;   // coverage
  int cover_degree = 2;    // coverage
  double budget_lo = 1.0;
  double budget_hi = 12.0;
  int archetypes = 2;  // clone-market
  int copies = 3;      // clone-market
};

inline InstanceFamily instance_family_from_name(const std::string& name) {
  if (name == "additive") return InstanceFamily::Additive;
  if (name == "xos") return InstanceFamily::Xos;
  if (name == "coverage") return InstanceFamily::Coverage;
  if (name == "clone-market") return InstanceFamily::CloneMarket;
  if (name == "footnote-demo") return InstanceFamily::FootnoteDemo;
  throw std::invalid_argument("unknown instance family: " + name);
}

// The two-item demonstration bidder: items a=0 and b=1, value 10 for any
// bundle containing a, value 2 for b alone, budget 2. Pairs with posted
// prices (2, 1) in the demand-query demos and tests.
inline Instance footnote_demo_instance() {
  std::vector<AdditiveClause> clauses;
  clauses.emplace_back(std::vector<double>{10.0, 0.0});
  clauses.emplace_back(std::vector<double>{0.0, 2.0});
  return Instance(2, {Bidder(Valuation::xos(std::move(clauses)), 2.0)});
}

inline PriceVector footnote_demo_prices() {
  return PriceVector(std::vector<double>{2.0, 1.0});
}

inline Instance gen_instance(InstanceFamily family, const GenParams& p,
                             std::uint64_t seed) {
  require(p.m >= 1 && p.m <= kMaxItems, "gen_instance: m out of range");
  CoinStream coins(seed);
  auto budget_dist = BudgetDistribution::uniform(p.budget_lo, p.budget_hi);
  auto bidder_dist = [&](BidderDistribution::Family fam) {
    BidderDistribution d;
    d.family = fam;
    d.weight_lo = p.weight_lo;
    d.weight_hi = p.weight_hi;
    d.clause_count = p.clause_count;
    d.element_count = p.element_count;
    d.cover_degree = p.cover_degree;
    d.budget = budget_dist;
    return d;
  };

  switch (family) {
    case InstanceFamily::Additive:
    case InstanceFamily::Xos:
    case InstanceFamily::Coverage: {
      require(p.n >= 1, "gen_instance: n out of range");
      BidderDistribution d = bidder_dist(
          family == InstanceFamily::Additive
              ? BidderDistribution::Family::Additive
              : (family == InstanceFamily::Xos
                     ? BidderDistribution::Family::Xos
                     : BidderDistribution::Family::Coverage));
      std::vector<Bidder> bs;
      bs.reserve(static_cast<std::size_t>(p.n));
      for (int i = 0; i < p.n; ++i) bs.push_back(d.draw(p.m, coins));
      return Instance(p.m, std::move(bs));
    }
    case InstanceFamily::CloneMarket: {
      require(p.archetypes >= 1 && p.copies >= 1,
              "gen_instance: clone-market needs archetypes and copies");
      BidderDistribution d = bidder_dist(BidderDistribution::Family::Additive);
      std::vector<Bidder> bs;
      bs.reserve(static_cast<std::size_t>(p.archetypes * p.copies));
      for (int a = 0; a < p.archetypes; ++a) {
        Bidder archetype = d.draw(p.m, coins);
        for (int c = 0; c < p.copies; ++c) bs.push_back(archetype);
      }
      return Instance(p.m, std::move(bs));
    }
    case InstanceFamily::FootnoteDemo:
      return footnote_demo_instance();
  }
  throw std::logic_error("gen_instance: unknown family");
}

// The matching distribution for the generator families (the clone-market and
// demo families are fixed instances, not distributions).
inline DistributionSpec gen_distribution(InstanceFamily family,
                                         const GenParams& p) {
  require(family == InstanceFamily::Additive || family == InstanceFamily::Xos ||
              family == InstanceFamily::Coverage,
          "gen_distribution: family has no distribution form");
  DistributionSpec spec;
  spec.m = p.m;
  for (int i = 0; i < p.n; ++i) {
    BidderDistribution d;
    d.family = family == InstanceFamily::Additive
                   ? BidderDistribution::Family::Additive
                   : (family == InstanceFamily::Xos
                          ? BidderDistribution::Family::Xos
                          : BidderDistribution::Family::Coverage);
    d.weight_lo = p.weight_lo;
    d.weight_hi = p.weight_hi;
    d.clause_count = p.clause_count;
    d.element_count = p.element_count;
    d.cover_degree = p.cover_degree;
    d.budget = BudgetDistribution::uniform(p.budget_lo, p.budget_hi);
    spec.bidders.push_back(std::move(d));
  }
  return spec;
}

}  // namespace lwca
