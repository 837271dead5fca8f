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
#include <limits>
#include <string>
#include <vector>

#include "lwca/bayes.hpp"
#include "lwca/cm.hpp"
#include "lwca/kv.hpp"

namespace lwca {

enum class MechanismId { Kv, Cm, BayesFixedPrice };

// Mechanism parameters held fixed across an audit: they are decided before
// any report is read (the scale parameter L comes from a sampling phase, the
// Bayesian prices from ghost samples), so a deviating report must not move
// them.
struct AuditParams {
  MechanismId mechanism = MechanismId::Kv;
  double kv_L = 0.0;  // <= 0: derive from the audited instance once
  double kv_q = 0.0;  // <= 0: default_q(m)
  double cm_beta = 2.0;
  PriceVector bayes_prices;  // empty: half the liquid OPT supporting prices
};

// One structured misreport: a replacement valuation and/or budget.
struct Deviation {
  Valuation valuation;
  double budget;
  std::string label;
};

// The structured deviation family for one bidder: valuation scalings by
// {0, 1/4, 1/2, 2, 4}, single-clause drops for XOS valuations, budget
// misreports {0, B/2, 2B, unbounded}, and all pairings of the two, minus
// the truthful report itself.
inline std::vector<Deviation> deviation_family(const Bidder& truthful) {
  std::vector<std::pair<Valuation, std::string>> vals;
  vals.emplace_back(truthful.valuation, "v");
  for (double c : {0.0, 0.25, 0.5, 2.0, 4.0})
    vals.emplace_back(scale_valuation(truthful.valuation, c),
                      "v*" + std::to_string(c));
  if (truthful.valuation.kind() == Valuation::Kind::Xos &&
      truthful.valuation.clauses().size() > 1) {
    const auto& cs = truthful.valuation.clauses();
    for (std::size_t drop = 0; drop < cs.size(); ++drop) {
      std::vector<AdditiveClause> kept;
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (k != drop) kept.push_back(cs[k]);
      vals.emplace_back(Valuation::xos(std::move(kept)),
                        "v-clause" + std::to_string(drop));
    }
  }

  std::vector<std::pair<double, std::string>> budgets;
  budgets.emplace_back(truthful.budget, "B");
  budgets.emplace_back(0.0, "B=0");
  budgets.emplace_back(truthful.budget / 2.0, "B/2");
  budgets.emplace_back(truthful.budget * 2.0, "B*2");
  budgets.emplace_back(std::numeric_limits<double>::infinity(), "B=inf");

  std::vector<Deviation> out;
  for (std::size_t vi = 0; vi < vals.size(); ++vi)
    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
      if (vi == 0 && bi == 0) continue;  // the truthful report
      out.push_back(Deviation{vals[vi].first, budgets[bi].first,
                              vals[vi].second + "," + budgets[bi].second});
    }
  return out;
}

struct DeviationReport {
  int bidder = -1;
  int deviations_tested = 0;
  int deviations_infeasible = 0;  // payment exceeded a budget side condition
  double max_gain = 0.0;
  bool pass = true;
  std::string witness;  // label of the best deviation when gain > tolerance
};

namespace detail {

inline Outcome run_audited_mechanism(const Instance& inst,
                                     const AuditParams& params,
                                     double L, double q,
                                     const PriceVector& bayes_prices,
                                     std::uint64_t coin_seed) {
  CoinStream coins(coin_seed);
  switch (params.mechanism) {
    case MechanismId::Kv: {
      KvConfig cfg;
      cfg.L = L;
      cfg.q = q;
      return run_kv(inst, cfg, coins);
    }
    case MechanismId::Cm: {
      CmConfig cfg;
      cfg.beta = params.cm_beta;
      return run_cm(inst, cfg, coins).outcome;
    }
    case MechanismId::BayesFixedPrice: {
      PostedPriceConfig cfg;
      cfg.order = identity_order(inst.n());
      cfg.init = bayes_prices;
      cfg.q = 1.0;
      return run_posted_price(inst, cfg, coins);
    }
  }
  throw std::logic_error("audit: unknown mechanism");
}

}  // namespace detail

// Replays the mechanism under every structured misreport of one bidder with
// the same coin realization and the same mechanism parameters, and reports
// the largest utility gain. Utilities always use the bidder's true
// valuation; deviations whose payment exceeds either the reported or the
// true budget are discarded as infeasible rather than scored.
inline DeviationReport audit_truthfulness(const AuditParams& params,
                                          const Instance& inst, int bidder,
                                          std::uint64_t coin_seed) {
  require(bidder >= 0 && bidder < inst.n(), "audit: bidder index out of range");
  const Bidder& truthful = inst.bidders[static_cast<std::size_t>(bidder)];

  double L = params.kv_L;
  double q = params.kv_q;
  PriceVector bayes_prices = params.bayes_prices;
  if (params.mechanism == MechanismId::Kv) {
    if (L <= 0.0) L = compute_L(inst);
    if (q <= 0.0) q = default_q(inst.m);
  } else if (params.mechanism == MechanismId::BayesFixedPrice &&
             bayes_prices.size() == 0) {
    OptResult opt = opt_welfare(inst, Objective::Lw);
    bayes_prices = supporting_prices(inst, opt.allocation, true);
    for (double& p : bayes_prices.prices) p /= 2.0;
  }

  auto run = [&](const Instance& i) {
    return detail::run_audited_mechanism(i, params, L, q, bayes_prices,
                                         coin_seed);
  };

  Outcome truth_outcome = run(inst);
  auto truth_bundle = truth_outcome.allocation[static_cast<std::size_t>(bidder)];
  double truth_pay = truth_outcome.payments[static_cast<std::size_t>(bidder)];
  double truth_utility = truthful.valuation.value(truth_bundle) - truth_pay;

  DeviationReport report;
  report.bidder = bidder;
  for (const Deviation& dev : deviation_family(truthful)) {
    Instance misreported = inst;
    misreported.bidders[static_cast<std::size_t>(bidder)] =
        Bidder(dev.valuation, dev.budget);
    Outcome o = run(misreported);
    ++report.deviations_tested;
    double pay = o.payments[static_cast<std::size_t>(bidder)];
    // Side conditions: the payment must fit under the reported budget and
    // under the true budget; otherwise the deviation is not realizable.
    if (pay > dev.budget + kTol || pay > truthful.budget + kTol) {
      ++report.deviations_infeasible;
      continue;
    }
    double utility =
        truthful.valuation.value(
            o.allocation[static_cast<std::size_t>(bidder)]) -
        pay;
    double gain = utility - truth_utility;
    if (gain > report.max_gain) {
      report.max_gain = gain;
      report.witness = dev.label;
    }
  }
  report.pass = report.max_gain <= kGainTol;
  return report;
}

}  // namespace lwca
