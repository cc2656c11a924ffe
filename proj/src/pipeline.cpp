#include "scld/pipeline.hpp"

#include <chrono>

#include "scld/evaluation.hpp"
#include "scld/io.hpp"
#include "scld/logdet.hpp"
#include "scld/spectral.hpp"

namespace scld {

namespace {

nlohmann::json matrix_to_json(const DenseMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("expected a nonempty array of rows", 0);
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("ragged matrix rows in JSON", 0);
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
  }
  return m;
}

}  // namespace

void PipelineConfig::validate() const {
  if (input_path.has_value() == synthetic.has_value()) {
    throw InvalidArgument(
        "pipeline config: exactly one data source (input file or synthetic "
        "spec) must be selected");
  }
  if (labels_path && !input_path) {
    throw InvalidArgument(
        "pipeline config: labels file only applies to file input");
  }
  if (k < 2) throw InvalidArgument("pipeline config: k must be >= 2");
  if (alpha < 1) throw InvalidArgument("pipeline config: alpha must be >= 1");
  if (!(rank_tol > 0.0) || !(rank_tol < 1.0)) {
    throw InvalidArgument("pipeline config: rank_tol must lie in (0, 1)");
  }
  solver.validate();
  if (synthetic) synthetic->validate();
}

void to_json(nlohmann::json& j, const SyntheticSpec& s) {
  j = nlohmann::json{{"ambient_dim", s.ambient_dim},
                     {"num_subspaces", s.num_subspaces},
                     {"subspace_dim", s.subspace_dim},
                     {"points_per_subspace", s.points_per_subspace},
                     {"corruption_fraction", s.corruption_fraction},
                     {"noise_scale", s.noise_scale},
                     {"noise_model", s.noise_model},
                     {"seed", s.seed}};
}

void from_json(const nlohmann::json& j, SyntheticSpec& s) {
  j.at("ambient_dim").get_to(s.ambient_dim);
  j.at("num_subspaces").get_to(s.num_subspaces);
  j.at("subspace_dim").get_to(s.subspace_dim);
  j.at("points_per_subspace").get_to(s.points_per_subspace);
  j.at("corruption_fraction").get_to(s.corruption_fraction);
  j.at("noise_scale").get_to(s.noise_scale);
  j.at("noise_model").get_to(s.noise_model);
  j.at("seed").get_to(s.seed);
}

void to_json(nlohmann::json& j, const SolverConfig& c) {
  j = nlohmann::json{{"rho", c.rho},
                     {"beta0", c.beta0},
                     {"gamma", c.gamma},
                     {"tol", c.tol},
                     {"max_iters", c.max_iters},
                     {"cache_gram_eigs", c.cache_gram_eigs},
                     {"z_init", nullptr}};
  if (c.z_init) j["z_init"] = matrix_to_json(*c.z_init);
}

void from_json(const nlohmann::json& j, SolverConfig& c) {
  j.at("rho").get_to(c.rho);
  j.at("beta0").get_to(c.beta0);
  j.at("gamma").get_to(c.gamma);
  j.at("tol").get_to(c.tol);
  j.at("max_iters").get_to(c.max_iters);
  j.at("cache_gram_eigs").get_to(c.cache_gram_eigs);
  c.z_init.reset();
  if (j.contains("z_init") && !j.at("z_init").is_null()) {
    c.z_init = matrix_from_json(j.at("z_init"));
  }
}

void to_json(nlohmann::json& j, const PipelineConfig& c) {
  j = nlohmann::json{{"input_path", nullptr},
                     {"labels_path", nullptr},
                     {"synthetic", nullptr},
                     {"k", c.k},
                     {"solver", c.solver},
                     {"alpha", c.alpha},
                     {"affinity_side", c.side},
                     {"rank_tol", c.rank_tol},
                     {"seed", c.seed},
                     {"output_path", c.output_path}};
  if (c.input_path) j["input_path"] = *c.input_path;
  if (c.labels_path) j["labels_path"] = *c.labels_path;
  if (c.synthetic) j["synthetic"] = *c.synthetic;
}

void from_json(const nlohmann::json& j, PipelineConfig& c) {
  c.input_path.reset();
  c.labels_path.reset();
  c.synthetic.reset();
  if (!j.at("input_path").is_null()) c.input_path = j.at("input_path").get<std::string>();
  if (!j.at("labels_path").is_null()) c.labels_path = j.at("labels_path").get<std::string>();
  if (!j.at("synthetic").is_null()) c.synthetic = j.at("synthetic").get<SyntheticSpec>();
  j.at("k").get_to(c.k);
  j.at("solver").get_to(c.solver);
  j.at("alpha").get_to(c.alpha);
  j.at("affinity_side").get_to(c.side);
  j.at("rank_tol").get_to(c.rank_tol);
  j.at("seed").get_to(c.seed);
  j.at("output_path").get_to(c.output_path);
}

void to_json(nlohmann::json& j, const RunRecord& r) {
  j = nlohmann::json{{"labels", r.labels},
                     {"error_rate", nullptr},
                     {"iterations", r.iterations},
                     {"residual_trace", r.residual_trace},
                     {"objective_trace", r.objective_trace},
                     {"termination", r.termination},
                     {"config", r.config},
                     {"duration_seconds", r.duration_seconds}};
  if (r.error_rate) j["error_rate"] = *r.error_rate;
}

void from_json(const nlohmann::json& j, RunRecord& r) {
  j.at("labels").get_to(r.labels);
  r.error_rate.reset();
  if (!j.at("error_rate").is_null()) r.error_rate = j.at("error_rate").get<double>();
  j.at("iterations").get_to(r.iterations);
  j.at("residual_trace").get_to(r.residual_trace);
  j.at("objective_trace").get_to(r.objective_trace);
  j.at("termination").get_to(r.termination);
  j.at("config").get_to(r.config);
  j.at("duration_seconds").get_to(r.duration_seconds);
}

DenseMatrix ingest_matrix(const std::string& path) {
  return read_matrix_csv(path);
}

RunRecord run_pipeline(const PipelineConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  DenseMatrix x;
  std::optional<std::vector<int>> truth;
  if (config.synthetic) {
    LabeledDataset data = generate(*config.synthetic);
    x = std::move(data.x);
    truth = std::move(data.labels);
  } else {
    x = ingest_matrix(*config.input_path);
    if (config.labels_path) {
      std::vector<int> read = read_labels_file(*config.labels_path);
      if (static_cast<Eigen::Index>(read.size()) != x.cols()) {
        throw DimensionMismatch(
            "labels file has " + std::to_string(read.size()) +
            " entries but the matrix has " + std::to_string(x.cols()) +
            " columns");
      }
      truth = std::move(read);
    }
  }
  if (x.cols() < config.k) {
    throw InvalidArgument("need at least k = " + std::to_string(config.k) +
                          " samples, got " + std::to_string(x.cols()));
  }

  const SolverResult rep = solve(x, config.solver);
  const SpectralDecomposition skinny = skinny_svd(rep.z_star, config.rank_tol);
  const AffinityMatrix graph = build_affinity(skinny, config.alpha, config.side);
  const ClusteringResult clusters = spectral_cluster(graph, config.k, config.seed);

  RunRecord record;
  record.labels = clusters.labels;
  if (truth) {
    record.error_rate = clustering_error(record.labels, *truth).error_rate;
  }
  record.iterations = rep.iterations;
  record.residual_trace = rep.residual_trace;
  record.objective_trace = rep.objective_trace;
  record.termination =
      rep.termination == Termination::converged ? "converged" : "max_iters";
  record.config = config;
  record.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

}  // namespace scld
