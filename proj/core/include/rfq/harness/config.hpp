#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rfq/domains/domain.hpp"
#include "rfq/qlearn/learner.hpp"

namespace rfq::harness {

/// Everything one experiment needs. Loaded from a flat `key = value` file;
/// see README.md for the key list.
struct RunConfig {
  qlearn::Algorithm algorithm = qlearn::Algorithm::Gbql;
  std::string domain = "stack";
  domains::DomainOptions domain_options;
  qlearn::LearnParams learn;
  std::vector<domains::ObjectCounts> train_counts;
  std::vector<domains::ObjectCounts> test_counts;
  int runs = 10;
  std::uint64_t seed_base = 0;
  int test_trajectories = 10;
  int goal_slack = 2;
  int test_max_steps = 50;
  std::filesystem::path output = "results";
  std::filesystem::path demonstrations;  // empty: none
  int demonstration_iterations = 0;
  bool timing = true;       // false writes elapsed_ms as 0 for reproducible files
  bool checkpoint = false;  // write a resumable checkpoint after every iteration
  bool resume = false;      // continue from checkpoints found in `output`

  /// Throws ConfigError.
  void validate() const;
};

/// Default train and test counts per task, as counts-list text.
std::pair<std::string, std::string> default_counts(std::string_view domain);

/// "3,4,5" or "5:3:3,7:3:5", parsed by the domain's count syntax.
std::vector<domains::ObjectCounts> parse_counts_list(const domains::Domain& domain, std::string_view text);
std::string format_counts_list(const domains::Domain& domain, const std::vector<domains::ObjectCounts>& counts);

/// Relative paths in the text resolve against `base_dir`. Unknown or
/// repeated keys and malformed values throw ConfigError naming the line.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Every recognised key, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace rfq::harness
