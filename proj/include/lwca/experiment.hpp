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

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lwca/audit.hpp"
#include "lwca/io.hpp"

namespace lwca {

// Shortest round-trip decimal representation; keeps CSV output byte-stable
// across runs and platforms.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  require(ec == std::errc(), "format_double: conversion failed");
  return std::string(buf, ptr);
}

enum class BidderOrder { Index, Random };

struct ExperimentSpec {
  std::string mechanism;  // kv | kv-oversell | cm | bayes
  std::variant<Instance, DistributionSpec> source;
  std::string source_desc;

  std::optional<double> q;      // kv only
  std::optional<double> beta;   // cm only
  std::optional<int> k_samples;  // bayes only
  int trials = 1;
  std::uint64_t seed_base = 0;
  BidderOrder order = BidderOrder::Index;
  bool trace = false;
  std::string csv_path;

  ExperimentSpec() : source(std::in_place_type<DistributionSpec>) {}
};

struct ResultRow {
  std::uint64_t seed = 0;
  std::string mechanism;
  int n = 0;
  int m = 0;
  double lw = 0.0;
  double sw = 0.0;
  double revenue = 0.0;
  std::optional<double> opt_lw;
  std::optional<double> ratio;
  std::uint64_t bcdq_count = 0;
  std::uint64_t dq_count = 0;
  double ms = 0.0;
};

struct ExperimentSummary {
  int trials = 0;
  double mean_lw = 0.0;
  double stderr_lw = 0.0;
  double mean_revenue = 0.0;
  double min_ratio = 0.0;
  bool has_ratio = false;
  bool invariants_ok = true;
  std::string first_violation;
};

inline const char* kCsvHeader =
    "seed,mechanism,n,m,lw,sw,revenue,opt_lw,ratio,bcdq_count,dq_count,ms";

inline std::string csv_row(const ResultRow& r) {
  std::string line = std::to_string(r.seed) + "," + r.mechanism + "," +
                     std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                     format_double(r.lw) + "," + format_double(r.sw) + "," +
                     format_double(r.revenue) + ",";
  line += r.opt_lw ? format_double(*r.opt_lw) : "";
  line += ",";
  line += r.ratio ? format_double(*r.ratio) : "";
  line += "," + std::to_string(r.bcdq_count) + "," + std::to_string(r.dq_count) +
          "," + format_double(r.ms);
  return line;
}

inline void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  out << kCsvHeader << "\n";
  for (const auto& r : rows) out << csv_row(r) << "\n";
}

// Ensures every declared parameter applies to the chosen mechanism.
inline void validate_experiment(const ExperimentSpec& spec) {
  const std::string& mech = spec.mechanism;
  require(mech == "kv" || mech == "kv-oversell" || mech == "cm" ||
              mech == "bayes",
          "experiment: unknown mechanism '" + mech + "'");
  require(spec.trials >= 1, "experiment: trials must be >= 1");
  if (spec.q) require(mech == "kv", "experiment: --q only applies to kv");
  if (spec.beta) require(mech == "cm", "experiment: --beta only applies to cm");
  if (spec.k_samples)
    require(mech == "bayes", "experiment: --k-samples only applies to bayes");
  if (mech == "bayes") {
    require(std::holds_alternative<DistributionSpec>(spec.source),
            "experiment: bayes needs a distribution source");
  } else {
    require(std::holds_alternative<Instance>(spec.source),
            "experiment: mechanism '" + mech + "' needs an instance source");
    if (mech == "cm")
      require(std::get<Instance>(spec.source).n() >= 2,
              "experiment: cm needs at least two bidders");
  }
}

namespace detail {

inline bool within_opt_caps(int n, int m) {
  return std::pow(static_cast<double>(n) + 1.0, m) <=
         static_cast<double>(kMaxOptMaps);
}

inline std::vector<int> trial_order(int n, BidderOrder order, CoinStream& coins) {
  std::vector<int> o = identity_order(n);
  if (order == BidderOrder::Random) coins.shuffle(o);
  return o;
}

struct InvariantCheck {
  bool ok = true;
  std::string what;

  void fail(const std::string& msg) {
    if (ok) {
      ok = false;
      what = msg;
    }
  }
};

inline void check_outcome_invariants(const Instance& inst, const Outcome& o,
                                     const WelfareSummary& w,
                                     InvariantCheck& check) {
  ItemSet seen = ItemSet::empty(inst.m);
  for (int i = 0; i < inst.n(); ++i) {
    const Bidder& b = inst.bidders[static_cast<std::size_t>(i)];
    const ItemSet& s = o.allocation[static_cast<std::size_t>(i)];
    double pay = o.payments[static_cast<std::size_t>(i)];
    if (b.valuation.value(s) - pay < -kTol)
      check.fail("individual rationality violated for bidder " + std::to_string(i));
    if (pay > b.budget + kTol)
      check.fail("payment exceeds budget for bidder " + std::to_string(i));
    if (!o.overselling) {
      if (!seen.intersect(s).is_empty())
        check.fail("allocation not disjoint at bidder " + std::to_string(i));
      seen = seen.unite(s);
    }
  }
  if (w.revenue > w.lw + kTol) check.fail("revenue exceeds liquid welfare");
}

inline Json trace_to_json(std::uint64_t seed, const Instance& inst,
                          const Outcome& o) {
  Json steps = Json::array();
  for (const auto& step : o.trace) {
    Json js;
    js["bidder"] = step.bidder;
    js["prices"] = step.prices.prices;
    js["provisional"] = step.provisional.members();
    js["coin_win"] = step.coin_win;
    js["allocated"] = step.allocated.members();
    js["payment"] = step.payment;
    steps.push_back(std::move(js));
  }
  Json jt;
  jt["seed"] = seed;
  jt["instance"] = instance_to_json(inst);
  jt["overselling"] = o.overselling;
  jt["steps"] = std::move(steps);
  return jt;
}

}  // namespace detail

inline std::pair<std::vector<ResultRow>, ExperimentSummary> run_experiment(
    const ExperimentSpec& spec) {
  validate_experiment(spec);
  std::vector<ResultRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.trials));
  detail::InvariantCheck check;
  Json traces = Json::array();

  // Fixed-instance mechanisms share one optimum; bayes recomputes per draw.
  std::optional<double> fixed_opt;
  std::optional<PriceEstimate> bayes_prices;
  if (spec.mechanism == "bayes") {
    const auto& dist = std::get<DistributionSpec>(spec.source);
    AllocAlg alg = detail::within_opt_caps(dist.n(), dist.m) ? AllocAlg::Exact
                                                             : AllocAlg::Greedy;
    bayes_prices = estimate_prices(dist, alg, spec.k_samples.value_or(100),
                                   spec.seed_base);
  } else {
    const auto& inst = std::get<Instance>(spec.source);
    if (detail::within_opt_caps(inst.n(), inst.m))
      fixed_opt = opt_welfare(inst, Objective::Lw).value;
  }

  for (int t = 0; t < spec.trials; ++t) {
    std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(t);
    auto started = std::chrono::steady_clock::now();

    std::optional<Instance> realized;
    Outcome outcome;
    std::optional<double> opt = fixed_opt;

    if (spec.mechanism == "kv" || spec.mechanism == "kv-oversell") {
      realized = std::get<Instance>(spec.source);
      CoinStream coins(seed);
      KvConfig cfg;
      cfg.L = compute_L(*realized);
      cfg.q = spec.q.value_or(default_q(realized->m));
      CoinStream order_coins = coins.fork(1);
      cfg.order = detail::trial_order(realized->n(), spec.order, order_coins);
      outcome = spec.mechanism == "kv" ? run_kv(*realized, cfg, coins)
                                       : run_kv_overselling(*realized, cfg.L);
    } else if (spec.mechanism == "cm") {
      realized = std::get<Instance>(spec.source);
      CoinStream coins(seed);
      CmConfig cfg;
      cfg.beta = spec.beta.value_or(2.0);
      outcome = run_cm(*realized, cfg, coins).outcome;
    } else {  // bayes
      const auto& dist = std::get<DistributionSpec>(spec.source);
      CoinStream order_coins(mix_seed(seed, 2));
      std::vector<int> order =
          detail::trial_order(dist.n(), spec.order, order_coins);
      BayesRun run = run_bayes(dist, bayes_prices->prices, order, seed);
      realized = std::move(run.realized);
      outcome = std::move(run.outcome);
      if (detail::within_opt_caps(realized->n(), realized->m))
        opt = opt_welfare(*realized, Objective::Lw).value;
    }

    WelfareSummary w = outcome_welfare(*realized, outcome);
    detail::check_outcome_invariants(*realized, outcome, w, check);

    ResultRow row;
    row.seed = seed;
    row.mechanism = spec.mechanism;
    row.n = realized->n();
    row.m = realized->m;
    row.lw = w.lw;
    row.sw = w.sw;
    row.revenue = w.revenue;
    row.bcdq_count = outcome.queries.bcdq_count;
    row.dq_count = outcome.queries.dq_count;
    if (opt && !outcome.overselling) {
      row.opt_lw = *opt;
      double ratio = *opt > 0.0 ? w.lw / *opt : 0.0;
      row.ratio = ratio;
      if (ratio < -kTol || ratio > 1.0 + kTol)
        check.fail("welfare ratio outside [0, 1] at seed " + std::to_string(seed));
    } else if (opt) {
      row.opt_lw = *opt;  // overselling welfare may exceed the optimum
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    row.ms = std::chrono::duration<double, std::milli>(elapsed).count();
    if (spec.trace)
      traces.push_back(detail::trace_to_json(seed, *realized, outcome));
    rows.push_back(std::move(row));
  }

  if (!spec.csv_path.empty()) {
    write_csv(spec.csv_path, rows);
    if (spec.trace)
      detail::save_json_file(spec.csv_path + ".trace.json", traces);
  }

  ExperimentSummary summary;
  summary.trials = spec.trials;
  double sum = 0.0, sumsq = 0.0;
  double min_ratio = 2.0;
  for (const auto& r : rows) {
    sum += r.lw;
    sumsq += r.lw * r.lw;
    summary.mean_revenue += r.revenue;
    if (r.ratio) {
      summary.has_ratio = true;
      min_ratio = std::min(min_ratio, *r.ratio);
    }
  }
  summary.mean_lw = sum / spec.trials;
  summary.mean_revenue /= spec.trials;
  if (spec.trials > 1) {
    double var = std::max(
        0.0, (sumsq - spec.trials * summary.mean_lw * summary.mean_lw) /
                 (spec.trials - 1));
    summary.stderr_lw = std::sqrt(var / spec.trials);
  }
  summary.min_ratio = summary.has_ratio ? min_ratio : 0.0;
  summary.invariants_ok = check.ok;
  summary.first_violation = check.what;
  return {std::move(rows), std::move(summary)};
}

}  // namespace lwca
