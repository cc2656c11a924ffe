#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scld/affinity.hpp"
#include "scld/datagen.hpp"
#include "scld/solver.hpp"
#include "scld/types.hpp"

namespace scld {

NLOHMANN_JSON_SERIALIZE_ENUM(NoiseModel,
                             {{NoiseModel::variance_scaled, "variance_scaled"},
                              {NoiseModel::std_scaled, "std_scaled"}})

NLOHMANN_JSON_SERIALIZE_ENUM(AffinitySide, {{AffinitySide::left, "left"},
                                            {AffinitySide::right, "right"}})

struct PipelineConfig {
  std::optional<std::string> input_path;   // CSV matrix, columns are samples
  std::optional<std::string> labels_path;  // ground truth alongside input_path
  std::optional<SyntheticSpec> synthetic;  // generate instead of reading a file
  int k = 5;
  SolverConfig solver;
  int alpha = 2;
  AffinitySide side = AffinitySide::left;
  double rank_tol = 1e-6;
  std::uint64_t seed = 0;
  std::string output_path;  // empty: stdout only

  // Exactly one data source, k >= 2, nested configs valid.
  void validate() const;
};

struct RunRecord {
  std::vector<int> labels;
  std::optional<double> error_rate;  // set when ground truth was available
  int iterations = 0;
  std::vector<double> residual_trace;
  std::vector<double> objective_trace;
  std::string termination;
  PipelineConfig config;
  double duration_seconds = 0.0;
};

void to_json(nlohmann::json& j, const SyntheticSpec& s);
void from_json(const nlohmann::json& j, SyntheticSpec& s);
void to_json(nlohmann::json& j, const SolverConfig& c);
void from_json(const nlohmann::json& j, SolverConfig& c);
void to_json(nlohmann::json& j, const PipelineConfig& c);
void from_json(const nlohmann::json& j, PipelineConfig& c);
void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

// Parses the headerless CSV matrix format; columns are data points.
DenseMatrix ingest_matrix(const std::string& path);

// Representation -> affinity -> clusters, with diagnostics and optional
// scoring against ground truth.
RunRecord run_pipeline(const PipelineConfig& config);

}  // namespace scld
