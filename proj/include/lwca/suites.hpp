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
#include <sstream>
#include <string>
#include <vector>

#include "lwca/audit.hpp"
#include "lwca/experiment.hpp"
#include "lwca/generators.hpp"

namespace lwca {

// One property suite's verdict: how many unit checks ran and how many
// violated their inequality at the library tolerance.
struct SuiteResult {
  std::string name;
  bool pass = false;
  long checks = 0;
  long failures = 0;
  std::string detail;
};

namespace suites_detail {

inline InstanceFamily rotate_family(std::uint64_t i) {
  switch (i % 3) {
    case 0: return InstanceFamily::Coverage;
    case 1: return InstanceFamily::Xos;
    default: return InstanceFamily::Additive;
  }
}

inline InstanceFamily rotate_submodular_family(std::uint64_t i) {
  return i % 2 == 0 ? InstanceFamily::Coverage : InstanceFamily::Additive;
}

// Draws instances until `count` of them admit a positive scale parameter.
template <typename Fn>
inline void for_each_nondegenerate(int count, std::uint64_t seed, GenParams params,
                                   bool submodular_only, Fn&& fn) {
  int produced = 0;
  for (std::uint64_t draw = 0; produced < count; ++draw) {
    InstanceFamily family = submodular_only ? rotate_submodular_family(draw)
                                            : rotate_family(draw);
    params.m = 4 + static_cast<int>(draw % 3);      // m in {4,5,6}
    params.n = 2 + static_cast<int>((draw / 3) % 3);  // n in {2,3,4}
    Instance inst = gen_instance(family, params, mix_seed(seed, draw));
    try {
      compute_L(inst);
    } catch (const std::invalid_argument&) {
      continue;  // all-zero liquid values; no mechanism scale exists
    }
    fn(inst, draw);
    ++produced;
  }
}

}  // namespace suites_detail

// Budget capping preserves valuation classes: capped coverage valuations
// stay submodular, capped XOS valuations admit a dominated tight clause for
// every set, and capped subadditive tables stay subadditive.
inline SuiteResult lemma1_suite(int valuations = 500, std::uint64_t seed = 1) {
  SuiteResult r;
  r.name = "lemma1-closure";
  GenParams cov;
  cov.n = 1;
  cov.m = 6;
  cov.element_count = 8;
  for (int i = 0; i < valuations; ++i) {
    Instance inst =
        gen_instance(InstanceFamily::Coverage, cov, mix_seed(seed, i));
    const Valuation& v = inst.bidders[0].valuation;
    double vu = v.value(ItemSet::full(cov.m));
    for (double budget : {0.0, vu / 2.0, vu, 2.0 * vu}) {
      Valuation lv = liquid(Bidder(v, budget));
      ++r.checks;
      if (!check_class(lv, SetFunctionClass::Submodular).holds) ++r.failures;
      ++r.checks;
      if (!check_class(lv, SetFunctionClass::Monotone).holds) ++r.failures;
    }
  }

  GenParams xp;
  xp.n = 1;
  xp.m = 5;
  xp.clause_count = 3;
  for (int i = 0; i < valuations; ++i) {
    Instance inst =
        gen_instance(InstanceFamily::Xos, xp, mix_seed(seed ^ 0xa5a5, i));
    const Valuation& v = inst.bidders[0].valuation;
    double vu = v.value(ItemSet::full(xp.m));
    for (double budget : {0.0, vu / 2.0, vu, 2.0 * vu}) {
      for (std::uint32_t s = 0; s < (1u << xp.m); ++s) {
        AdditiveClause a = liquid_xos_clause(v, budget, ItemSet(s, xp.m));
        auto bound = [&](std::uint32_t t) {
          return std::min(v.value(ItemSet(t, xp.m)), budget);
        };
        ++r.checks;
        if (!check_clause_dominated(xp.m, a, bound, s).holds) ++r.failures;
      }
    }
  }

  CoinStream stub_coins(mix_seed(seed, 0x5ad));
  for (int i = 0; i < 200; ++i) {
    double a = stub_coins.grid_uniform(1.0, 8.0);
    double b = std::min(2.0 * a, a + stub_coins.grid_uniform(0.0, 8.0));
    auto stub = [&](std::uint32_t mask) {
      int size = std::popcount(mask);
      return size == 0 ? 0.0 : (size <= 2 ? a : b);
    };
    for (double budget : {0.0, a / 2.0, a, b, 2.0 * b}) {
      auto capped = [&](std::uint32_t mask) { return std::min(stub(mask), budget); };
      ++r.checks;
      if (!check_class_fn(3, capped, SetFunctionClass::Subadditive).holds)
        ++r.failures;
    }
  }

  r.pass = r.failures == 0;
  std::ostringstream os;
  os << valuations << " coverage + " << valuations
     << " XOS valuations x 4 budgets, 200 subadditive tables";
  r.detail = os.str();
  return r;
}

// The bundle a budget-constrained demand query returns satisfies both
// efficiency inequalities against every alternative bundle.
inline SuiteResult lemma3_suite(int draws = 1000, std::uint64_t seed = 2) {
  SuiteResult r;
  r.name = "lemma3-bcdq";
  const int m = 8;
  GenParams params;
  params.n = 1;
  params.m = m;
  params.element_count = 10;
  params.budget_lo = 0.0;
  params.budget_hi = 16.0;
  CoinStream coins(mix_seed(seed, 0xbcd));
  for (int i = 0; i < draws; ++i) {
    Instance inst = gen_instance(suites_detail::rotate_family(i), params,
                                 mix_seed(seed, i));
    const Bidder& b = inst.bidders[0];
    std::vector<double> prices(m);
    for (double& x : prices) x = coins.grid_uniform(0.0, 5.0);
    ItemSet avail(coins.below(1u << m), m);
    auto report = verify_bcdq_lemma(b.valuation, b.budget, avail,
                                    PriceVector(std::move(prices)));
    ++r.checks;
    if (!report.pass) ++r.failures;
  }
  r.pass = r.failures == 0;
  r.detail = std::to_string(draws) + " random (v,B,p,avail) draws, all T exhaustive";
  return r;
}

// The two-item demonstration scenario: the raw budget-constrained query
// buys item a while the liquid demand query would buy item b.
inline SuiteResult footnote_suite() {
  SuiteResult r;
  r.name = "footnote-reproduction";
  Instance demo = footnote_demo_instance();
  const Bidder& b = demo.bidders[0];
  PriceVector p = footnote_demo_prices();
  r.checks = 2;
  ItemSet bought = bc_demand_query(b.valuation, ItemSet::full(2), p, b.budget);
  if (bought != ItemSet::of({0}, 2)) ++r.failures;
  ItemSet liquid_pick = demand_query(liquid(b), ItemSet::full(2), p);
  if (liquid_pick != ItemSet::of({1}, 2)) ++r.failures;
  r.pass = r.failures == 0;
  r.detail = "BCDQ buys {a}; liquid DQ buys {b}";
  return r;
}

// The overselling run's exact inequalities and the per-item copy bound.
inline SuiteResult kv_lemmas_suite(int instances = 500, std::uint64_t seed = 3) {
  SuiteResult r;
  r.name = "kv-lemmas";
  GenParams params;
  params.budget_lo = 1.0;
  params.budget_hi = 16.0;
  suites_detail::for_each_nondegenerate(
      instances, seed, params, /*submodular_only=*/false,
      [&](const Instance& inst, std::uint64_t) {
        KvLemmaReport report = check_kv_lemmas(inst, compute_L(inst));
        r.checks += 4;
        if (!report.lb1) ++r.failures;
        if (!report.lb2) ++r.failures;
        if (!report.apx) ++r.failures;
        if (!report.copies_ok) ++r.failures;
      });
  r.pass = r.failures == 0;
  r.detail = std::to_string(instances) +
             " instances (m<=6, n<=4): lb1, lb2, 3/8 bound, copy bound";
  return r;
}

// Sampled mean welfare of the coin-gated mechanism clears q*OPT/8.
inline SuiteResult kv_statistical_suite(int instances = 20, int seeds = 2000,
                                        std::uint64_t seed = 4) {
  SuiteResult r;
  r.name = "kv-statistical";
  GenParams params;
  params.budget_lo = 1.0;
  params.budget_hi = 16.0;
  suites_detail::for_each_nondegenerate(
      instances, seed, params, /*submodular_only=*/false,
      [&](const Instance& inst, std::uint64_t draw) {
        double opt = opt_welfare(inst, Objective::Lw).value;
        KvConfig cfg;
        cfg.L = compute_L(inst);
        cfg.q = default_q(inst.m);
        double sum = 0.0, sumsq = 0.0;
        for (int t = 0; t < seeds; ++t) {
          CoinStream coins(mix_seed(seed ^ draw, 99) +
                           static_cast<std::uint64_t>(t));
          double lw = outcome_welfare(inst, run_kv(inst, cfg, coins)).lw;
          sum += lw;
          sumsq += lw * lw;
        }
        double mean = sum / seeds;
        double se = std::sqrt(
            std::max(0.0, (sumsq - seeds * mean * mean) / (seeds - 1)) / seeds);
        ++r.checks;
        if (mean < cfg.q * opt / 8.0 - 3.0 * se - kTol) ++r.failures;
      });
  r.pass = r.failures == 0;
  r.detail = std::to_string(instances) + " instances x " +
             std::to_string(seeds) + " seeds, mean lw >= q*OPT/8 - 3se";
  return r;
}

// The marginal-value greedy allocator is a 2-approximation on instances
// whose liquid valuations are submodular.
inline SuiteResult greedy_suite(int instances = 500, std::uint64_t seed = 5) {
  SuiteResult r;
  r.name = "greedy-2apx";
  GenParams params;
  params.budget_lo = 1.0;
  params.budget_hi = 12.0;
  suites_detail::for_each_nondegenerate(
      instances, seed, params, /*submodular_only=*/true,
      [&](const Instance& inst, std::uint64_t) {
        GreedyResult g = greedy_alloc(inst, identity_order(inst.n()));
        double greedy_lw = allocation_lw(inst, g.allocation);
        double opt = opt_welfare(inst, Objective::Lw).value;
        ++r.checks;
        if (2.0 * greedy_lw < opt - kTol) ++r.failures;
      });
  r.pass = r.failures == 0;
  r.detail = std::to_string(instances) +
             " submodular instances: 2*lw(greedy) >= OPT";
  return r;
}

// Clone markets clear the closed-form constant with beta = 2, using the
// measured competitiveness of the market at the chosen eps.
inline SuiteResult cm_statistical_suite(int seeds = 1000, std::uint64_t seed = 6) {
  SuiteResult r;
  r.name = "cm-statistical";
  struct Market {
    Instance inst;
    double eps;
  };
  // eps < 2(beta-1)/(3beta-1) = 0.4 keeps the beta = 2 bound positive.
  std::vector<Market> markets;
  {
    GenParams params;
    params.archetypes = 1;
    params.copies = 6;
    params.m = 3;
    params.budget_lo = 6.0;
    params.budget_hi = 12.0;
    markets.push_back(
        {gen_instance(InstanceFamily::CloneMarket, params, mix_seed(seed, 0)),
         0.25});
    params.m = 2;
    markets.push_back(
        {gen_instance(InstanceFamily::CloneMarket, params, mix_seed(seed, 1)),
         0.1});
  }
  {
    // Two near-equal archetypes: even the split that drops the stronger
    // one keeps 15/18 of the optimum, so the market is competitive at
    // eps = 0.35 with no failures at all.
    Bidder strong(Valuation::additive({6, 6, 6}), 12.0);
    Bidder weak(Valuation::additive({5, 5, 5}), 10.0);
    markets.push_back(
        {Instance(3, {strong, strong, strong, weak, weak, weak}), 0.35});
  }
  std::ostringstream os;
  for (std::size_t c = 0; c < markets.size(); ++c) {
    const Instance& inst = markets[c].inst;
    double opt = opt_welfare(inst, Objective::Lw).value;
    CompetitivenessReport comp =
        measure_competitiveness(inst, markets[c].eps, 400, mix_seed(seed, 7 + c));
    double delta = std::min(comp.upper95, 0.5);
    double bound = cm_bound(markets[c].eps, delta, 2.0);

    CmConfig cfg;
    cfg.beta = 2.0;
    double sum = 0.0;
    for (int t = 0; t < seeds; ++t) {
      CoinStream coins(mix_seed(seed ^ c, 55) + static_cast<std::uint64_t>(t));
      sum += outcome_welfare(inst, run_cm(inst, cfg, coins).outcome).lw;
    }
    double mean = sum / seeds;
    ++r.checks;
    if (mean < bound * opt - kTol) ++r.failures;
    os << (c > 0 ? "; " : "") << "market " << c << ": mean=" << mean
       << " bound=" << bound * opt << " (delta95=" << delta << ")";
  }
  r.pass = r.failures == 0;
  r.detail = os.str();
  return r;
}

// Posted prices estimated from ghost samples recover at least a quarter of
// the baseline's expected liquid welfare, for several arrival orders, and
// deterministically on point masses.
inline SuiteResult bayes_statistical_suite(int trials = 2000, int k_prices = 500,
                                           std::uint64_t seed = 8) {
  SuiteResult r;
  r.name = "bayes-statistical";
  GenParams params;
  params.n = 3;
  params.m = 4;
  params.budget_lo = 1.0;
  params.budget_hi = 12.0;
  DistributionSpec dist = gen_distribution(InstanceFamily::Additive, params);
  CoinStream order_coins(mix_seed(seed, 0x0d3));
  for (int k = 0; k < 5; ++k) {
    std::vector<int> order = identity_order(dist.n());
    order_coins.shuffle(order);
    GuaranteeReport g = evaluate_guarantee(dist, AllocAlg::Exact, k_prices,
                                           trials, mix_seed(seed, k), order);
    ++r.checks;
    if (!g.pass) ++r.failures;
  }

  // Point mass: the quarter bound holds with no slack for noise.
  DistributionSpec point;
  point.m = 2;
  BidderDistribution d;
  d.family = BidderDistribution::Family::Finite;
  d.options = {Bidder(Valuation::additive({6, 4}), 100.0)};
  point.bidders = {d};
  GuaranteeReport g = evaluate_guarantee(point, AllocAlg::Exact, 4, 4, seed);
  ++r.checks;
  if (!(g.pass && g.mech_mean >= g.alg_mean / 4.0 - kTol)) ++r.failures;

  r.pass = r.failures == 0;
  r.detail = "5 random orders x " + std::to_string(trials) +
             " trials (k=" + std::to_string(k_prices) + ") + point mass";
  return r;
}

// Allocations supported by their liquid clause prices survive the
// halved-price fixed auction with at least a quarter of the price mass.
inline SuiteResult fixed_price_suite(int count = 200, std::uint64_t seed = 9) {
  SuiteResult r;
  r.name = "fixed-price-lemma";
  GenParams params;
  params.budget_lo = 1.0;
  params.budget_hi = 12.0;
  suites_detail::for_each_nondegenerate(
      count, seed, params, /*submodular_only=*/false,
      [&](const Instance& inst, std::uint64_t draw) {
        // Alternate between the exact optimum and the greedy allocation as
        // the supported-allocation source.
        std::vector<ItemSet> alloc =
            draw % 2 == 0
                ? opt_welfare(inst, Objective::Lw).allocation
                : greedy_alloc(inst, identity_order(inst.n())).allocation;
        PriceVector prices = supporting_prices(inst, alloc, true);
        std::vector<int> order = identity_order(inst.n());
        CoinStream coins(mix_seed(seed, draw));
        coins.shuffle(order);
        ++r.checks;
        try {
          if (!check_fixed_price_lemma(inst, alloc, prices, order).pass)
            ++r.failures;
        } catch (const std::invalid_argument&) {
          ++r.failures;  // support verification must not fail here
        }
      });
  r.pass = r.failures == 0;
  r.detail = std::to_string(count) +
             " supported allocations, strong profitability verified first";
  return r;
}

// No structured misreport gains any bidder more than the audit tolerance,
// for all three mechanisms, across instances and coin seeds.
inline SuiteResult truthfulness_suite(int instances = 100, int seeds_per = 10,
                                      std::uint64_t seed = 10) {
  SuiteResult r;
  r.name = "truthfulness";
  std::ostringstream os;
  double worst_gain = 0.0;

  // Worst-case mechanism.
  {
    GenParams params;
    params.budget_lo = 1.0;
    params.budget_hi = 10.0;
    suites_detail::for_each_nondegenerate(
        instances, mix_seed(seed, 1), params, false,
        [&](const Instance& inst, std::uint64_t draw) {
          AuditParams ap;
          ap.mechanism = MechanismId::Kv;
          for (int s = 0; s < seeds_per; ++s)
            for (int bidder = 0; bidder < inst.n(); ++bidder) {
              DeviationReport rep = audit_truthfulness(
                  ap, inst, bidder, mix_seed(seed ^ draw, s));
              ++r.checks;
              if (!rep.pass) ++r.failures;
              worst_gain = std::max(worst_gain, rep.max_gain);
            }
        });
  }

  // Competitive-market mechanism.
  {
    GenParams params;
    params.budget_lo = 1.0;
    params.budget_hi = 10.0;
    suites_detail::for_each_nondegenerate(
        instances, mix_seed(seed, 2), params, false,
        [&](const Instance& inst, std::uint64_t draw) {
          AuditParams ap;
          ap.mechanism = MechanismId::Cm;
          for (int s = 0; s < seeds_per; ++s)
            for (int bidder = 0; bidder < inst.n(); ++bidder) {
              DeviationReport rep = audit_truthfulness(
                  ap, inst, bidder, mix_seed(seed ^ draw, 100 + s));
              ++r.checks;
              if (!rep.pass) ++r.failures;
              worst_gain = std::max(worst_gain, rep.max_gain);
            }
        });
  }

  // Bayesian fixed-price mechanism: prices estimated from the generating
  // distribution, never from the audited reports.
  {
    GenParams params;
    params.n = 3;
    params.m = 4;
    params.budget_lo = 1.0;
    params.budget_hi = 10.0;
    for (int i = 0; i < instances; ++i) {
      InstanceFamily family = suites_detail::rotate_family(i);
      if (family == InstanceFamily::Coverage) params.element_count = 6;
      DistributionSpec dist = gen_distribution(family, params);
      PriceEstimate est =
          estimate_prices(dist, AllocAlg::Exact, 25, mix_seed(seed, 500 + i));
      CoinStream draws(mix_seed(seed, 900 + i));
      Instance inst = dist.draw(draws);
      AuditParams ap;
      ap.mechanism = MechanismId::BayesFixedPrice;
      ap.bayes_prices = est.prices;
      for (int s = 0; s < seeds_per; ++s)
        for (int bidder = 0; bidder < inst.n(); ++bidder) {
          DeviationReport rep =
              audit_truthfulness(ap, inst, bidder, mix_seed(seed ^ i, 200 + s));
          ++r.checks;
          if (!rep.pass) ++r.failures;
          worst_gain = std::max(worst_gain, rep.max_gain);
        }
    }
  }

  r.pass = r.failures == 0;
  os << "3 mechanisms x " << instances << " instances x " << seeds_per
     << " seeds, all bidders; max gain " << worst_gain;
  r.detail = os.str();
  return r;
}

// Identical seeds reproduce byte-identical results (timing aside) and the
// file formats round-trip exactly.
inline SuiteResult determinism_suite(std::uint64_t seed = 11) {
  SuiteResult r;
  r.name = "determinism-roundtrip";

  GenParams params;
  params.n = 3;
  params.m = 4;
  auto rows_without_ms = [](const std::vector<ResultRow>& rows) {
    std::string out;
    for (const auto& row : rows) {
      std::string line = csv_row(row);
      out += line.substr(0, line.rfind(',')) + "\n";
    }
    return out;
  };

  for (std::string mech : {"kv", "cm", "bayes"}) {
    ExperimentSpec spec;
    spec.mechanism = mech;
    if (mech == "bayes") {
      spec.source = gen_distribution(InstanceFamily::Additive, params);
      spec.k_samples = 50;
    } else {
      spec.source = gen_instance(InstanceFamily::Xos, params, mix_seed(seed, 1));
      if (mech == "cm") spec.beta = 2.0;
    }
    spec.trials = 30;
    spec.seed_base = mix_seed(seed, 2);
    auto [rows_a, sum_a] = run_experiment(spec);
    auto [rows_b, sum_b] = run_experiment(spec);
    ++r.checks;
    if (rows_without_ms(rows_a) != rows_without_ms(rows_b) ||
        !sum_a.invariants_ok || !sum_b.invariants_ok)
      ++r.failures;
  }

  for (auto family : {InstanceFamily::Additive, InstanceFamily::Xos,
                      InstanceFamily::Coverage, InstanceFamily::CloneMarket,
                      InstanceFamily::FootnoteDemo}) {
    Instance inst = gen_instance(family, params, mix_seed(seed, 3));
    ++r.checks;
    if (!(inst == instance_from_json(instance_to_json(inst)))) ++r.failures;
  }
  for (auto family : {InstanceFamily::Additive, InstanceFamily::Xos,
                      InstanceFamily::Coverage}) {
    DistributionSpec spec = gen_distribution(family, params);
    ++r.checks;
    if (!(spec == distribution_from_json(distribution_to_json(spec))))
      ++r.failures;
  }

  r.pass = r.failures == 0;
  r.detail = "3 mechanisms x 30 trials replayed; instance/distribution round-trips";
  return r;
}

inline SuiteResult run_named_suite(const std::string& name, int count,
                                   std::uint64_t seed) {
  if (name == "lemma1") return lemma1_suite(count > 0 ? count : 500, seed);
  if (name == "lemma3") return lemma3_suite(count > 0 ? count : 1000, seed);
  if (name == "kv-lemmas") return kv_lemmas_suite(count > 0 ? count : 500, seed);
  if (name == "fixed-price")
    return fixed_price_suite(count > 0 ? count : 200, seed);
  if (name == "truthfulness")
    return truthfulness_suite(count > 0 ? count : 100, 10, seed);
  throw std::invalid_argument("unknown check suite: " + name);
}

}  // namespace lwca
