// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_EXPERIMENT_HPP
#define NETGEN_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netgen/evaluation.hpp"
#include "netgen/generators.hpp"

namespace netgen {

struct ModelSpec {
  std::string name;  // unique; used in file names and seed labels
  std::string kind;  // see fit_model
  nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
  std::optional<GeneratorConfig> generator;  // exactly one of generator / dataset
  std::filesystem::path dataset;  // SNAP ego directory or a graphset file
  std::vector<std::size_t> network_sizes{4, 6, 8, 10, 20};
  std::vector<ModelSpec> models;
  std::size_t n_train = 200;
  std::size_t n_sample = 30;
  std::vector<StatisticKind> statistics{StatisticKind::MeanInDegree,
                                        StatisticKind::MeanClustering};
  double alpha = 0.05;
  std::size_t n_perm = kDefaultPermutations;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "netgen-out";
  unsigned threads = 0;  // cells run concurrently; 0 = default_thread_count()
};

/// Parses and validates a JSON config. Schema:
///   {
///     "ground_truth": {"generator": "er|config|krapivsky", "er_p": 0.3,
///                      "exponent": 2.5, "krapivsky_p": 0.4,
///                      "lambda": 1, "mu": 1}
///                   | {"dataset": "path"},
///     "network_sizes": [4, 6, 8, 10, 20],
///     "models": [{"name": "deep", "kind": "deep", "params": {...}}, ...],
///     "n_train": 200, "n_sample": 30,
///     "statistics": ["in-degree", "clustering"],
///     "alpha": 0.05, "n_perm": 1000, "master_seed": 0,
///     "output_dir": "netgen-out", "threads": 0
///   }
/// Throws ConfigError on anything unknown or out of range.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);

struct ExperimentResult {
  nlohmann::json report;   // deterministic given the config
  nlohmann::json timings;  // wall-clock seconds per cell; not deterministic
};

/// Runs every (size, model) cell. Cell failures are recorded in the report
/// ("status": "failed", "error": ...) and do not stop the run.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes pvalues.csv, pvalues.txt, effect_sizes.csv and
/// adjacency/<who>_n<size>.{csv,pgm} into `directory`.
void render_report(const nlohmann::json& report, const std::filesystem::path& directory);

/// Serialized report text; identical configs give identical bytes.
std::string report_text(const nlohmann::json& report);

}  // namespace netgen

#endif  // NETGEN_EXPERIMENT_HPP
