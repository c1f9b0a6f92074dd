#include "rfq/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/numeric.hpp"

namespace rfq::harness {

namespace {

struct Raw {
  std::string train_counts;
  std::string test_counts;
  std::filesystem::path base_dir;
};

int to_int(std::string_view v) {
  long long n = parse_int(v);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
    throw ParseError("integer out of range: " + std::string(v));
  }
  return static_cast<int>(n);
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off") {
    return false;
  }
  throw ParseError("expected true or false, got '" + std::string(v) + "'");
}

std::filesystem::path to_path(std::string_view v, const Raw& raw) {
  std::filesystem::path p{std::string(v)};
  return p.is_relative() && !raw.base_dir.empty() ? raw.base_dir / p : p;
}

using Setter = std::function<void(RunConfig&, Raw&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"algorithm", [](RunConfig& c, Raw&, std::string_view v) { c.algorithm = qlearn::parse_algorithm(v); }},
      {"domain", [](RunConfig& c, Raw&, std::string_view v) { c.domain = std::string(v); }},
      {"train_counts", [](RunConfig&, Raw& r, std::string_view v) { r.train_counts = std::string(v); }},
      {"test_counts", [](RunConfig&, Raw& r, std::string_view v) { r.test_counts = std::string(v); }},
      {"runs", [](RunConfig& c, Raw&, std::string_view v) { c.runs = to_int(v); }},
      {"seed_base",
       [](RunConfig& c, Raw&, std::string_view v) {
         long long s = parse_int(v);
         if (s < 0) {
           throw ParseError("seed_base must be non-negative");
         }
         c.seed_base = static_cast<std::uint64_t>(s);
       }},
      {"iterations", [](RunConfig& c, Raw&, std::string_view v) { c.learn.iterations = to_int(v); }},
      {"stages", [](RunConfig& c, Raw&, std::string_view v) { c.learn.stages = to_int(v); }},
      {"trajectories", [](RunConfig& c, Raw&, std::string_view v) { c.learn.trajectories = to_int(v); }},
      {"alpha", [](RunConfig& c, Raw&, std::string_view v) { c.learn.alpha = parse_double(v); }},
      {"gamma", [](RunConfig& c, Raw&, std::string_view v) { c.learn.gamma = parse_double(v); }},
      {"epsilon0", [](RunConfig& c, Raw&, std::string_view v) { c.learn.epsilon0 = parse_double(v); }},
      {"epsilon_decay", [](RunConfig& c, Raw&, std::string_view v) { c.learn.epsilon_decay = parse_double(v); }},
      {"epsilon_min", [](RunConfig& c, Raw&, std::string_view v) { c.learn.epsilon_min = parse_double(v); }},
      {"replay_fraction", [](RunConfig& c, Raw&, std::string_view v) { c.learn.replay_fraction = parse_double(v); }},
      {"replay_capacity",
       [](RunConfig& c, Raw&, std::string_view v) {
         int n = to_int(v);
         if (n < 0) {
           throw ParseError("replay_capacity must be non-negative");
         }
         c.learn.replay_capacity = static_cast<std::size_t>(n);
       }},
      {"max_episode_steps", [](RunConfig& c, Raw&, std::string_view v) { c.learn.max_episode_steps = to_int(v); }},
      {"action_failure_prob",
       [](RunConfig& c, Raw&, std::string_view v) { c.learn.action_failure_prob = parse_double(v); }},
      {"max_depth", [](RunConfig& c, Raw&, std::string_view v) { c.learn.tree.max_depth = to_int(v); }},
      {"min_leaf", [](RunConfig& c, Raw&, std::string_view v) { c.learn.tree.min_leaf = to_int(v); }},
      {"max_candidate_literals",
       [](RunConfig& c, Raw&, std::string_view v) { c.learn.tree.max_candidate_literals = to_int(v); }},
      {"min_variance_reduction",
       [](RunConfig& c, Raw&, std::string_view v) { c.learn.tree.min_variance_reduction = parse_double(v); }},
      {"rbfq_tree_depth", [](RunConfig& c, Raw&, std::string_view v) { c.learn.rbfq_tree_depth = to_int(v); }},
      {"test_trajectories", [](RunConfig& c, Raw&, std::string_view v) { c.test_trajectories = to_int(v); }},
      {"test_max_steps", [](RunConfig& c, Raw&, std::string_view v) { c.test_max_steps = to_int(v); }},
      {"goal_slack", [](RunConfig& c, Raw&, std::string_view v) { c.goal_slack = to_int(v); }},
      {"on_base_penalty",
       [](RunConfig& c, Raw&, std::string_view v) { c.domain_options.on_base_penalty = parse_double(v); }},
      {"on_offtower_penalty",
       [](RunConfig& c, Raw&, std::string_view v) { c.domain_options.on_offtower_penalty = parse_double(v); }},
      {"output", [](RunConfig& c, Raw& r, std::string_view v) { c.output = to_path(v, r); }},
      {"demonstrations", [](RunConfig& c, Raw& r, std::string_view v) { c.demonstrations = to_path(v, r); }},
      {"demonstration_iterations",
       [](RunConfig& c, Raw&, std::string_view v) { c.demonstration_iterations = to_int(v); }},
      {"timing", [](RunConfig& c, Raw&, std::string_view v) { c.timing = to_bool(v); }},
      {"checkpoint", [](RunConfig& c, Raw&, std::string_view v) { c.checkpoint = to_bool(v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) {
      out.push_back(k);
    }
    return out;
  }();
  return keys;
}

std::pair<std::string, std::string> default_counts(std::string_view domain) {
  if (domain == "stack") {
    return {"3,4,5", "6,7"};
  }
  if (domain == "unstack") {
    return {"4,5,6", "7"};
  }
  if (domain == "on") {
    return {"4", "5,6,7"};
  }
  if (domain == "logistics") {
    return {"5:3:3", "7:3:5"};
  }
  throw ConfigError("unknown domain '" + std::string(domain) + "'");
}

std::vector<domains::ObjectCounts> parse_counts_list(const domains::Domain& domain, std::string_view text) {
  std::vector<domains::ObjectCounts> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    auto item = logic::trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) {
      throw ConfigError("empty entry in counts list '" + std::string(text) + "'");
    }
    try {
      out.push_back(domain.parse_counts(item));
    } catch (const ParseError& e) {
      throw ConfigError("bad counts '" + std::string(item) + "': " + e.what());
    }
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

std::string format_counts_list(const domains::Domain& domain, const std::vector<domains::ObjectCounts>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += (i ? "," : "") + domain.format_counts(counts[i]);
  }
  return out;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) {
      throw ConfigError(what);
    }
  };
  require(runs >= 1, "runs must be at least 1");
  require(test_trajectories >= 1, "test_trajectories must be at least 1");
  require(test_max_steps >= 1, "test_max_steps must be at least 1");
  require(goal_slack >= 0, "goal_slack must be non-negative");
  require(demonstration_iterations >= 0, "demonstration_iterations must be non-negative");
  require(!train_counts.empty() && !test_counts.empty(), "train_counts and test_counts must be set");
  require(demonstrations.empty() || demonstration_iterations > 0,
          "demonstrations need demonstration_iterations > 0");
  learn.validate();
  domains::make_domain(domain, domain_options);
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig config;
  Raw raw;
  raw.base_dir = base_dir;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = logic::trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    auto where = "line " + std::to_string(line_no) + ": ";
    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value'");
    }
    std::string key{logic::trim(body.substr(0, eq))};
    auto value = logic::trim(body.substr(eq + 1));
    auto it = std::ranges::find_if(setters(), [&](const auto& s) { return s.first == key; });
    if (it == setters().end()) {
      throw ConfigError(where + "unknown key '" + key + "'");
    }
    if (auto [prev, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ConfigError(where + "'" + key + "' already set on line " + std::to_string(prev->second));
    }
    if (value.empty()) {
      throw ConfigError(where + "'" + key + "' has no value");
    }
    try {
      it->second(config, raw, value);
    } catch (const ParseError& e) {
      throw ConfigError(where + key + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  auto domain = domains::make_domain(config.domain, config.domain_options);
  auto [train, test] = default_counts(config.domain);
  config.train_counts = parse_counts_list(*domain, raw.train_counts.empty() ? train : raw.train_counts);
  config.test_counts = parse_counts_list(*domain, raw.test_counts.empty() ? test : raw.test_counts);
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.parent_path());
}

}  // namespace rfq::harness
