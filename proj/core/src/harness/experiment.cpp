#include "rfq/harness/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rfq/error.hpp"
#include "rfq/numeric.hpp"
#include "rfq/qlearn/learner.hpp"

namespace rfq::harness {

namespace fs = std::filesystem;

const char* const kSeedCsvHeader = "seed,iteration,mean_abs_bellman_error,avg_test_reward,pct_goals,elapsed_ms";
const char* const kAggregateCsvHeader =
    "iteration,mean_abs_bellman_error_mean,mean_abs_bellman_error_std,avg_test_reward_mean,avg_test_reward_std,"
    "pct_goals_mean,pct_goals_std,elapsed_ms_mean,elapsed_ms_std";

namespace {

constexpr std::uint64_t kTestStream = 3;
constexpr int kDecimals = 6;

std::string field(const std::optional<double>& v) { return v ? format_fixed(*v, kDecimals) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

struct SeedRun {
  std::ostream* csv = nullptr;
  fs::path checkpoint;  // empty: no checkpoints
  std::vector<IterationMetrics> prior;
};

SeedResult run_seed_impl(const RunConfig& config, std::uint64_t seed, SeedRun io, const IterationObserver& observer) {
  auto domain = domains::make_domain(config.domain, config.domain_options);
  qlearn::LearnParams params = config.learn;
  params.seed = seed;
  qlearn::FittedQLearner learner(*domain, config.algorithm, params, config.train_counts);
  if (!config.demonstrations.empty()) {
    std::ifstream in(config.demonstrations);
    if (!in) {
      throw ConfigError("cannot read demonstrations " + config.demonstrations.string());
    }
    learner.set_demonstrations(qlearn::read_episodes(in, *domain), config.demonstration_iterations);
  }
  if (!io.prior.empty()) {
    std::ifstream in(io.checkpoint);
    learner.load_checkpoint(in);
  }

  Rng test_rng = make_rng(seed, {kTestStream});
  TestSet tests = make_test_set(*domain, config.test_counts, config.test_trajectories, test_rng);

  SeedResult result;
  result.seed = seed;
  result.metrics = std::move(io.prior);
  const double offset = result.metrics.empty() ? 0.0 : result.metrics.back().elapsed_ms;
  const auto start = std::chrono::steady_clock::now();
  while (learner.iteration() < params.iterations) {
    learner.step();
    IterationMetrics m;
    m.iteration = learner.iteration();
    m.mean_abs_bellman_error = mean_abs_bellman_error(learner.q(), *domain, learner.training_set(), params.gamma);
    auto eval = evaluate_policy(learner.q(), *domain, tests, config.test_max_steps, config.goal_slack);
    m.avg_test_reward = eval.avg_reward;
    m.pct_goals = eval.pct_goals;
    if (config.timing) {
      m.elapsed_ms =
          offset + std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (io.csv) {
      write_metrics_row(*io.csv, seed, m);
      io.csv->flush();
    }
    if (!io.checkpoint.empty()) {
      std::ostringstream ckpt;
      learner.save_checkpoint(ckpt);
      write_atomically(io.checkpoint, ckpt.str());
    }
    result.metrics.push_back(m);
    if (observer) {
      observer(seed, m);
    }
  }
  result.q = learner.q();
  return result;
}

}  // namespace

void write_metrics_row(std::ostream& out, std::uint64_t seed, const IterationMetrics& m) {
  out << seed << ',' << m.iteration << ',' << field(m.mean_abs_bellman_error) << ','
      << format_fixed(m.avg_test_reward, kDecimals) << ',' << format_fixed(m.pct_goals, kDecimals) << ','
      << format_fixed(m.elapsed_ms, kDecimals) << '\n';
}

std::vector<IterationMetrics> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSeedCsvHeader) {
    throw ParseError("metrics file lacks the expected header");
  }
  std::vector<IterationMetrics> out;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    auto cells = split_csv(line);
    if (cells.size() != 6) {
      throw ParseError("metrics row with " + std::to_string(cells.size()) + " fields");
    }
    IterationMetrics m;
    m.iteration = static_cast<int>(parse_int(cells[1]));
    if (!cells[2].empty()) {
      m.mean_abs_bellman_error = parse_double(cells[2]);
    }
    m.avg_test_reward = parse_double(cells[3]);
    m.pct_goals = parse_double(cells[4]);
    m.elapsed_ms = parse_double(cells[5]);
    out.push_back(m);
  }
  return out;
}

void write_aggregate(std::ostream& out, const std::vector<std::vector<IterationMetrics>>& per_seed) {
  out << kAggregateCsvHeader << '\n';
  if (per_seed.empty()) {
    return;
  }
  const std::size_t rows = per_seed.front().size();
  for (const auto& s : per_seed) {
    if (s.size() != rows) {
      throw std::invalid_argument("seeds ran different numbers of iterations");
    }
  }
  auto summarize = [](const std::vector<double>& xs) -> std::pair<std::optional<double>, std::optional<double>> {
    if (xs.empty()) {
      return {};
    }
    double mean = 0.0;
    for (double x : xs) {
      mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
      ss += (x - mean) * (x - mean);
    }
    double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return {mean, sd};
  };
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> err;
    std::vector<double> reward;
    std::vector<double> pct;
    std::vector<double> ms;
    for (const auto& s : per_seed) {
      if (s[r].mean_abs_bellman_error) {
        err.push_back(*s[r].mean_abs_bellman_error);
      }
      reward.push_back(s[r].avg_test_reward);
      pct.push_back(s[r].pct_goals);
      ms.push_back(s[r].elapsed_ms);
    }
    out << per_seed.front()[r].iteration;
    for (const auto& xs : {err, reward, pct, ms}) {
      auto [mean, sd] = summarize(xs);
      out << ',' << field(mean) << ',' << field(sd);
    }
    out << '\n';
  }
}

SeedResult run_seed(const RunConfig& config, std::uint64_t seed, std::ostream* csv,
                    const IterationObserver& observer) {
  config.validate();
  SeedRun io;
  io.csv = csv;
  if (csv) {
    *csv << kSeedCsvHeader << '\n';
  }
  return run_seed_impl(config, seed, std::move(io), observer);
}

ExperimentFiles run_experiment(const RunConfig& config, const IterationObserver& observer) {
  config.validate();
  fs::create_directories(config.output);
  const std::string prefix = config.domain + "_" + std::string(qlearn::to_string(config.algorithm));
  ExperimentFiles files;
  std::vector<std::vector<IterationMetrics>> all;
  for (int k = 0; k < config.runs; ++k) {
    const std::uint64_t seed = config.seed_base + static_cast<std::uint64_t>(k);
    const std::string stem = prefix + "_seed" + std::to_string(seed);
    const fs::path csv_path = config.output / (stem + ".csv");
    const fs::path model_path = config.output / (stem + ".model");
    const fs::path ckpt_path = config.output / (stem + ".ckpt");

    SeedRun io;
    if (config.checkpoint || config.resume) {
      io.checkpoint = ckpt_path;
    }
    if (config.resume && fs::exists(ckpt_path) && fs::exists(csv_path)) {
      std::ifstream ckpt(ckpt_path);
      std::string word;
      std::string kind;
      int done = 0;
      ckpt >> word >> kind >> done;
      std::ifstream old(csv_path);
      auto rows = read_metrics_csv(old);
      if (static_cast<int>(rows.size()) < done) {
        throw ConfigError(csv_path.string() + " has fewer rows than its checkpoint");
      }
      rows.resize(static_cast<std::size_t>(done));
      io.prior = std::move(rows);
    }

    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) {
      throw std::runtime_error("cannot write " + csv_path.string());
    }
    csv << kSeedCsvHeader << '\n';
    for (const auto& m : io.prior) {
      write_metrics_row(csv, seed, m);
    }
    csv.flush();
    io.csv = &csv;

    SeedResult r = run_seed_impl(config, seed, std::move(io), observer);
    csv.close();
    std::ostringstream model;
    qlearn::write_q_function(model, r.q);
    write_atomically(model_path, model.str());
    files.seed_csvs.push_back(csv_path);
    files.models.push_back(model_path);
    // Aggregate what was written, so a resumed run matches an uninterrupted one.
    std::ifstream written(csv_path);
    all.push_back(read_metrics_csv(written));
  }
  files.aggregate_csv = config.output / (prefix + "_aggregate.csv");
  std::ostringstream agg;
  write_aggregate(agg, all);
  write_atomically(files.aggregate_csv, agg.str());
  return files;
}

}  // namespace rfq::harness
