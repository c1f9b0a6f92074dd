// rfq: run experiments, dump exact oracles, evaluate saved Q-functions.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rfq/domains/domain.hpp"
#include "rfq/error.hpp"
#include "rfq/harness/config.hpp"
#include "rfq/harness/experiment.hpp"
#include "rfq/harness/metrics.hpp"
#include "rfq/harness/value_iteration.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/numeric.hpp"
#include "rfq/qlearn/learner.hpp"

namespace {

using namespace rfq;

std::string one_line(const logic::State& s) {
  std::string out;
  for (const auto& f : s.facts()) {
    out += (out.empty() ? "" : " ") + logic::to_string(f);
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& algorithm, std::int64_t seed_base,
            const std::string& out_dir, bool resume, bool quiet) {
  auto config = harness::load_run_config(config_path);
  if (!algorithm.empty()) {
    config.algorithm = qlearn::parse_algorithm(algorithm);
  }
  if (seed_base >= 0) {
    config.seed_base = static_cast<std::uint64_t>(seed_base);
  }
  if (!out_dir.empty()) {
    config.output = out_dir;
  }
  config.resume = resume;
  harness::IterationObserver progress;
  if (!quiet) {
    progress = [&](std::uint64_t seed, const harness::IterationMetrics& m) {
      std::cerr << config.domain << ' ' << qlearn::to_string(config.algorithm) << " seed " << seed << " iter "
                << m.iteration << " err "
                << (m.mean_abs_bellman_error ? format_fixed(*m.mean_abs_bellman_error, 4) : std::string("-"))
                << " reward " << format_fixed(m.avg_test_reward, 3) << " goals " << format_fixed(m.pct_goals, 2)
                << '\n';
    };
  }
  auto files = harness::run_experiment(config, progress);
  std::cout << files.aggregate_csv.string() << '\n';
  return 0;
}

int cmd_oracle(const std::string& domain_name, const std::string& counts_text, double gamma, double tol) {
  auto domain = domains::make_domain(domain_name);
  auto states = domain->all_states(domain->parse_counts(counts_text));
  auto table = harness::tabular_value_iteration(*domain, states, gamma, tol);
  std::cout << "# state <id> goal=<0|1> optimal=<steps> value=<V*> : <facts>\n"
            << "# q <state> <action> -> <next> reward=<r> q=<Q*>\n";
  for (std::size_t i = 0; i < table.states.size(); ++i) {
    const auto& s = table.states[i];
    auto opt = domain->optimal_steps(s);
    std::cout << "state " << i << " goal=" << (domain->is_goal(s) ? 1 : 0)
              << " optimal=" << (opt ? std::to_string(*opt) : std::string("?"))
              << " value=" << format_double(table.value(i)) << " : " << one_line(s) << '\n';
  }
  for (std::size_t i = 0; i < table.states.size(); ++i) {
    for (const auto& e : table.entries[i]) {
      std::cout << "q " << i << ' ' << logic::to_string(e.action) << " -> " << e.next
                << " reward=" << format_double(e.reward) << " q=" << format_double(e.q) << '\n';
    }
  }
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& domain_name, int episodes,
             const std::string& counts_text, std::uint64_t seed, int max_steps, int goal_slack) {
  std::ifstream in(model_path);
  if (!in) {
    throw ConfigError("cannot read model " + model_path);
  }
  auto q = qlearn::read_q_function(in);
  auto domain = domains::make_domain(domain_name);
  auto counts = harness::parse_counts_list(
      *domain, counts_text.empty() ? harness::default_counts(domain_name).second : counts_text);
  Rng rng = make_rng(seed, {});
  auto tests = harness::make_test_set(*domain, counts, episodes, rng);
  auto result = harness::evaluate_policy(q, *domain, tests, max_steps, goal_slack);
  std::cout << "episodes " << episodes << "\navg_reward " << format_fixed(result.avg_reward, 6) << "\npct_goals "
            << format_fixed(result.pct_goals, 6) << '\n';
  return 0;
}

int cmd_expert(const std::string& domain_name, const std::string& counts_text, int episodes, std::uint64_t seed,
               int max_steps, const std::string& out_path) {
  auto domain = domains::make_domain(domain_name);
  auto counts = harness::parse_counts_list(*domain, counts_text);
  Rng rng = make_rng(seed, {});
  auto demos = qlearn::optimal_trajectories(*domain, counts, episodes, max_steps, rng);
  std::ofstream out(out_path);
  if (!out) {
    throw ConfigError("cannot write " + out_path);
  }
  qlearn::write_episodes(out, demos);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relational fitted Q-learning with boosted relational regression trees"};
  app.require_subcommand(1);

  std::string config_path;
  std::string algorithm;
  std::int64_t seed_base = -1;
  std::string out_dir;
  bool resume = false;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Train and evaluate every seed of a config");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--algorithm", algorithm, "Override the algorithm")->check(CLI::IsMember({"gbql", "rbfq", "rrt"}));
  run->add_option("--seed-base", seed_base, "Override the first seed")->check(CLI::NonNegativeNumber);
  run->add_option("--out", out_dir, "Override the output directory");
  run->add_flag("--resume", resume, "Continue from checkpoints in the output directory");
  run->add_flag("--quiet", quiet, "No per-iteration progress on stderr");

  std::string domain_name;
  std::string counts;
  double gamma = 0.99;
  double tol = 1e-9;
  auto* oracle = app.add_subcommand("oracle", "Exact Q* and optimal steps of a small instance");
  oracle->add_option("--domain", domain_name, "stack, unstack, on or logistics")->required();
  oracle->add_option("--counts", counts, "Object counts, e.g. 3 or 2:1:1")->required();
  oracle->add_option("--gamma", gamma, "Discount")->capture_default_str();
  oracle->add_option("--tol", tol, "Convergence tolerance")->capture_default_str();

  std::string model_path;
  int episodes = 10;
  std::uint64_t seed = 0;
  int max_steps = 50;
  int goal_slack = 2;
  auto* eval = app.add_subcommand("eval", "Greedy evaluation of a saved Q-function");
  eval->add_option("--model", model_path, "Model file written by run")->required()->check(CLI::ExistingFile);
  eval->add_option("--domain", domain_name, "stack, unstack, on or logistics")->required();
  eval->add_option("--episodes", episodes, "Test episodes")->required()->check(CLI::PositiveNumber);
  eval->add_option("--counts", counts, "Test object counts (default: the task's test counts)");
  eval->add_option("--seed", seed, "Seed for the test starts")->capture_default_str();
  eval->add_option("--max-steps", max_steps, "Step cap per episode")->capture_default_str();
  eval->add_option("--goal-slack", goal_slack, "Allowed steps beyond optimal")->capture_default_str();

  std::string out_path;
  auto* expert = app.add_subcommand("expert", "Write shortest-path demonstration episodes");
  expert->add_option("--domain", domain_name, "stack, unstack, on or logistics")->required();
  expert->add_option("--counts", counts, "Object counts list")->required();
  expert->add_option("--episodes", episodes, "Episodes")->required()->check(CLI::PositiveNumber);
  expert->add_option("--seed", seed, "Seed for the start states")->capture_default_str();
  expert->add_option("--max-steps", max_steps, "Step cap per episode")->capture_default_str();
  expert->add_option("--out", out_path, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cmd_run(config_path, algorithm, seed_base, out_dir, resume, quiet);
    }
    if (*oracle) {
      return cmd_oracle(domain_name, counts, gamma, tol);
    }
    if (*eval) {
      return cmd_eval(model_path, domain_name, episodes, counts, seed, max_steps, goal_slack);
    }
    if (*expert) {
      return cmd_expert(domain_name, counts, episodes, seed, max_steps, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "rfq: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
