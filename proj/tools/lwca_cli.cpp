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

// Command-line interface: instance/distribution generation, mechanism runs
// with CSV output, property-check suites, the brute-force welfare oracle,
// and market competitiveness measurement.
//
// Exit codes: 0 success, 1 invariant/check failure, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lwca/experiment.hpp"
#include "lwca/generators.hpp"
#include "lwca/io.hpp"
#include "lwca/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

// BCA_SEED in the environment overrides any --seed flag.
std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("BCA_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0') return static_cast<std::uint64_t>(v);
    throw std::invalid_argument("BCA_SEED is not an unsigned integer");
  }
  return flag_seed;
}

struct GenCli {
  std::string family;
  std::string out;
  std::uint64_t seed = 0;
  bool as_distribution = false;
  lwca::GenParams params;
};

int run_gen(const GenCli& cli) {
  lwca::InstanceFamily family = lwca::instance_family_from_name(cli.family);
  std::uint64_t seed = effective_seed(cli.seed);
  if (cli.as_distribution) {
    lwca::DistributionSpec spec = lwca::gen_distribution(family, cli.params);
    lwca::save_distribution(cli.out, spec);
    std::printf("wrote distribution family=%s n=%d m=%d -> %s\n",
                cli.family.c_str(), spec.n(), spec.m, cli.out.c_str());
  } else {
    lwca::Instance inst = lwca::gen_instance(family, cli.params, seed);
    lwca::save_instance(cli.out, inst);
    std::printf("wrote instance family=%s n=%d m=%d seed=%llu -> %s\n",
                cli.family.c_str(), inst.n(), inst.m,
                static_cast<unsigned long long>(seed), cli.out.c_str());
  }
  return kExitPass;
}

struct RunCli {
  std::string mechanism;
  std::string instance_path;
  std::string gen_family;
  std::uint64_t gen_seed = 0;
  lwca::GenParams gen_params;
  std::optional<double> q;
  std::optional<double> beta;
  std::optional<int> k_samples;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string order = "index";
  bool trace = false;
  std::string csv_path;
};

int run_run(const RunCli& cli) {
  lwca::ExperimentSpec spec;
  spec.mechanism = cli.mechanism;
  spec.q = cli.q;
  spec.beta = cli.beta;
  spec.k_samples = cli.k_samples;
  spec.trials = cli.trials;
  spec.seed_base = effective_seed(cli.seed);
  spec.trace = cli.trace;
  spec.csv_path = cli.csv_path;
  if (cli.order == "index") {
    spec.order = lwca::BidderOrder::Index;
  } else if (cli.order == "random") {
    spec.order = lwca::BidderOrder::Random;
  } else {
    throw std::invalid_argument("--order must be 'index' or 'random'");
  }
  if (cli.trace && cli.csv_path.empty())
    throw std::invalid_argument("--trace requires --csv");

  if (!cli.instance_path.empty()) {
    if (lwca::file_is_distribution(cli.instance_path)) {
      spec.source = lwca::load_distribution(cli.instance_path);
    } else {
      spec.source = lwca::load_instance(cli.instance_path);
    }
    spec.source_desc = cli.instance_path;
  } else if (!cli.gen_family.empty()) {
    lwca::InstanceFamily family = lwca::instance_family_from_name(cli.gen_family);
    if (cli.mechanism == "bayes") {
      spec.source = lwca::gen_distribution(family, cli.gen_params);
    } else {
      spec.source = lwca::gen_instance(family, cli.gen_params,
                                       effective_seed(cli.gen_seed));
    }
    spec.source_desc = "gen:" + cli.gen_family;
  } else {
    throw std::invalid_argument("run: provide --instance FILE or --gen FAMILY");
  }

  auto [rows, summary] = lwca::run_experiment(spec);
  std::printf("mechanism=%s trials=%d mean_lw=%s stderr_lw=%s mean_revenue=%s",
              spec.mechanism.c_str(), summary.trials,
              lwca::format_double(summary.mean_lw).c_str(),
              lwca::format_double(summary.stderr_lw).c_str(),
              lwca::format_double(summary.mean_revenue).c_str());
  if (summary.has_ratio)
    std::printf(" min_ratio=%s", lwca::format_double(summary.min_ratio).c_str());
  std::printf("\n");
  if (!spec.csv_path.empty())
    std::printf("csv=%s rows=%zu\n", spec.csv_path.c_str(), rows.size());
  if (!summary.invariants_ok) {
    std::fprintf(stderr, "invariant violation: %s\n",
                 summary.first_violation.c_str());
    return kExitCheckFailure;
  }
  return kExitPass;
}

struct CheckCli {
  std::string suite;
  int count = 0;  // 0 = suite default
  std::uint64_t seed = 1;
};

int run_check(const CheckCli& cli) {
  lwca::SuiteResult r =
      lwca::run_named_suite(cli.suite, cli.count, effective_seed(cli.seed));
  std::printf("[%s] %s checks=%ld failures=%ld %s\n", r.pass ? "PASS" : "FAIL",
              r.name.c_str(), r.checks, r.failures, r.detail.c_str());
  return r.pass ? kExitPass : kExitCheckFailure;
}

struct OptCli {
  std::string path;
  std::string objective = "lw";
};

int run_opt(const OptCli& cli) {
  lwca::Instance inst = lwca::load_instance(cli.path);
  if (cli.objective != "lw" && cli.objective != "sw")
    throw std::invalid_argument("--objective must be 'lw' or 'sw'");
  lwca::Objective obj =
      cli.objective == "sw" ? lwca::Objective::Sw : lwca::Objective::Lw;
  lwca::OptResult r = lwca::opt_welfare(inst, obj);
  std::printf("objective=%s value=%s\n", cli.objective.c_str(),
              lwca::format_double(r.value).c_str());
  for (int i = 0; i < inst.n(); ++i)
    std::printf("bidder %d: %s\n", i,
                r.allocation[static_cast<std::size_t>(i)].str().c_str());
  return kExitPass;
}

struct CompetitivenessCli {
  std::string path;
  double eps = 0.5;
  int trials = 200;
  std::uint64_t seed = 0;
};

int run_competitiveness(const CompetitivenessCli& cli) {
  lwca::Instance inst = lwca::load_instance(cli.path);
  lwca::CompetitivenessReport r = lwca::measure_competitiveness(
      inst, cli.eps, cli.trials, effective_seed(cli.seed));
  std::printf(
      "eps=%s trials=%d failures=%d delta_hat=%s stderr=%s upper95=%s opt_lw=%s\n",
      lwca::format_double(r.eps).c_str(), r.trials, r.failures,
      lwca::format_double(r.delta_hat).c_str(),
      lwca::format_double(r.std_error).c_str(),
      lwca::format_double(r.upper95).c_str(),
      lwca::format_double(r.opt_lw).c_str());
  return kExitPass;
}

void add_gen_param_flags(CLI::App* cmd, lwca::GenParams& p) {
  cmd->add_option("--n", p.n, "bidder count");
  cmd->add_option("--m", p.m, "item count");
  cmd->add_option("--weight-lo", p.weight_lo, "minimum weight");
  cmd->add_option("--weight-hi", p.weight_hi, "maximum weight");
  cmd->add_option("--clauses", p.clause_count, "XOS clauses per bidder");
  cmd->add_option("--elements", p.element_count, "coverage ground elements");
  cmd->add_option("--cover-degree", p.cover_degree, "elements covered per item");
  cmd->add_option("--budget-lo", p.budget_lo, "minimum budget");
  cmd->add_option("--budget-hi", p.budget_hi, "maximum budget");
  cmd->add_option("--archetypes", p.archetypes, "clone-market archetypes");
  cmd->add_option("--copies", p.copies, "clone-market copies per archetype");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "liquid-welfare combinatorial auction lab: posted-price mechanisms for "
      "budget-constrained bidders with exact brute-force baselines"};
  app.require_subcommand(1);

  GenCli gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "generate an instance or distribution file");
  gen_cmd
      ->add_option("family", gen.family,
                   "additive | xos | coverage | clone-market | footnote-demo")
      ->required();
  gen_cmd->add_option("--out", gen.out, "output path")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_flag("--dist", gen.as_distribution,
                    "write a distribution instead of a sampled instance");
  add_gen_param_flags(gen_cmd, gen.params);

  RunCli run;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run a mechanism and emit per-trial rows");
  run_cmd->add_option("mechanism", run.mechanism, "kv | kv-oversell | cm | bayes")
      ->required();
  run_cmd->add_option("--instance", run.instance_path,
                      "instance (or, for bayes, distribution) file");
  run_cmd->add_option("--gen", run.gen_family, "generate the source instead");
  run_cmd->add_option("--gen-seed", run.gen_seed, "generator seed for --gen");
  add_gen_param_flags(run_cmd, run.gen_params);
  double q_val = 0.0, beta_val = 0.0;
  int k_val = 0;
  auto* q_opt = run_cmd->add_option("--q", q_val, "allocation probability (kv)");
  auto* beta_opt = run_cmd->add_option("--beta", beta_val, "price scale (cm)");
  auto* k_opt =
      run_cmd->add_option("--k-samples", k_val, "pricing samples (bayes)");
  run_cmd->add_option("--trials", run.trials, "number of seeded trials");
  run_cmd->add_option("--seed", run.seed, "base seed (trial t uses seed+t)");
  run_cmd->add_option("--order", run.order, "bidder order: index | random");
  run_cmd->add_flag("--trace", run.trace, "persist per-trial traces");
  run_cmd->add_option("--csv", run.csv_path, "CSV output path");

  CheckCli check;
  CLI::App* check_cmd = app.add_subcommand("check", "run a property suite");
  check_cmd
      ->add_option("suite", check.suite,
                   "lemma1 | lemma3 | kv-lemmas | fixed-price | truthfulness")
      ->required();
  check_cmd->add_option("--count", check.count, "override the suite's scale");
  check_cmd->add_option("--seed", check.seed, "suite seed");

  OptCli opt;
  CLI::App* opt_cmd =
      app.add_subcommand("opt", "brute-force welfare optimum of an instance");
  opt_cmd->add_option("file", opt.path, "instance file")->required();
  opt_cmd->add_option("--objective", opt.objective, "lw | sw");

  CompetitivenessCli comp;
  CLI::App* comp_cmd = app.add_subcommand(
      "competitiveness", "measure failure frequency of random half-splits");
  comp_cmd->add_option("file", comp.path, "instance file")->required();
  comp_cmd->add_option("--eps", comp.eps, "welfare loss parameter in [0,2)");
  comp_cmd->add_option("--trials", comp.trials, "number of random splits");
  comp_cmd->add_option("--seed", comp.seed, "split seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (run_cmd->parsed()) {
      if (q_opt->count() > 0) run.q = q_val;
      if (beta_opt->count() > 0) run.beta = beta_val;
      if (k_opt->count() > 0) run.k_samples = k_val;
      return run_run(run);
    }
    if (check_cmd->parsed()) return run_check(check);
    if (opt_cmd->parsed()) return run_opt(opt);
    if (comp_cmd->parsed()) return run_competitiveness(comp);
  } catch (const lwca::ParseError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailure;
  }
  return kExitUsage;
}
