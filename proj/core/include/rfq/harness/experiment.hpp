#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rfq/harness/config.hpp"
#include "rfq/harness/metrics.hpp"
#include "rfq/qlearn/q_function.hpp"

namespace rfq::harness {

struct SeedResult {
  std::uint64_t seed = 0;
  std::vector<IterationMetrics> metrics;
  qlearn::QFunction q;
};

/// Called after every finished iteration.
using IterationObserver = std::function<void(std::uint64_t seed, const IterationMetrics&)>;

/// The full learning loop for one seed. When `csv` is given, every row is
/// written and flushed before the next iteration starts.
SeedResult run_seed(const RunConfig& config, std::uint64_t seed, std::ostream* csv = nullptr,
                    const IterationObserver& observer = {});

struct ExperimentFiles {
  std::vector<std::filesystem::path> seed_csvs;
  std::vector<std::filesystem::path> models;
  std::filesystem::path aggregate_csv;
};

/// Runs seeds seed_base .. seed_base + runs - 1 and writes, under
/// config.output:
///   <domain>_<algorithm>_seed<k>.csv     per-iteration metrics
///   <domain>_<algorithm>_seed<k>.model   final Q-function
///   <domain>_<algorithm>_aggregate.csv   mean and sample std per iteration
ExperimentFiles run_experiment(const RunConfig& config, const IterationObserver& observer = {});

extern const char* const kSeedCsvHeader;
extern const char* const kAggregateCsvHeader;

void write_metrics_row(std::ostream& out, std::uint64_t seed, const IterationMetrics& m);

/// Parses rows written by write_metrics_row (header included).
std::vector<IterationMetrics> read_metrics_csv(std::istream& in);

/// Mean and sample standard deviation per iteration across seeds; seeds
/// must have equally long metric lists.
void write_aggregate(std::ostream& out, const std::vector<std::vector<IterationMetrics>>& per_seed);

}  // namespace rfq::harness
