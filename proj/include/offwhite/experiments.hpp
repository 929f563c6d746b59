#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "offwhite/error.hpp"

namespace offwhite::cli {

inline constexpr int kSchemaVersion = 1;

/// Bad configuration: unknown keys, wrong types, out-of-range values.
class ConfigError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  int threads = 1;
  nlohmann::json params = nlohmann::json::object();
  std::string source;  // raw config text for line-numbered diagnostics; not serialized

  nlohmann::json to_json() const;
  /// `source` is the raw text the JSON came from, used for line numbers.
  static ExperimentConfig from_json(const nlohmann::json& j, const std::string& source = {});
  static ExperimentConfig load(const std::filesystem::path& path);
};

const std::vector<std::string>& command_names();

/// Runs the named experiment, writes its CSV files and summary.json into
/// config.output_dir and returns the summary.
nlohmann::json run_experiment(const ExperimentConfig& config);

nlohmann::json run_separation(const ExperimentConfig& config);
nlohmann::json run_flipdecay(const ExperimentConfig& config);
nlohmann::json run_randomset(const ExperimentConfig& config);
nlohmann::json run_kab(const ExperimentConfig& config);
nlohmann::json run_gauss(const ExperimentConfig& config);
nlohmann::json run_spectral_check(const ExperimentConfig& config);

/// Command-line entry point. Exit codes: 0 success, 2 configuration error,
/// 3 numerical contract violation.
int cli_main(int argc, char** argv);

}  // namespace offwhite::cli
