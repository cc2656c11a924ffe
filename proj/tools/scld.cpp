// Command-line front end: synthetic data generation, the low-rank
// representation solver, the full clustering pipeline, and the two
// parameter sweeps. One pipeline per process; see --help per subcommand.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scld/evaluation.hpp"
#include "scld/io.hpp"
#include "scld/pipeline.hpp"

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    scld::atomic_write_text(path, j.dump(2) + "\n");
    std::cout << "wrote " << path << '\n';
  }
}

// Adds the flags shared by every subcommand that builds a SyntheticSpec.
void add_synthetic_flags(CLI::App* cmd, scld::SyntheticSpec& spec) {
  cmd->add_option("--ambient-dim", spec.ambient_dim,
                  "ambient dimension of the data vectors")
      ->capture_default_str();
  cmd->add_option("--subspaces", spec.num_subspaces, "number of subspaces")
      ->capture_default_str();
  cmd->add_option("--subspace-dim", spec.subspace_dim,
                  "dimension of each subspace")
      ->capture_default_str();
  cmd->add_option("--points", spec.points_per_subspace,
                  "points sampled per subspace")
      ->capture_default_str();
  cmd->add_option("--corruption", spec.corruption_fraction,
                  "fraction of columns receiving additive Gaussian noise")
      ->capture_default_str();
  cmd->add_option("--noise-scale", spec.noise_scale,
                  "noise magnitude parameter, scaled by each column's norm")
      ->capture_default_str();
  static const std::map<std::string, scld::NoiseModel> noise_names{
      {"variance_scaled", scld::NoiseModel::variance_scaled},
      {"std_scaled", scld::NoiseModel::std_scaled}};
  cmd->add_option("--noise-model", spec.noise_model,
                  "variance_scaled: per-entry variance = scale*|x|; "
                  "std_scaled: per-entry std = scale*|x|")
      ->transform(CLI::CheckedTransformer(noise_names, CLI::ignore_case));
  cmd->add_option("--data-seed", spec.seed, "RNG seed for data generation")
      ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, scld::SolverConfig& cfg) {
  cmd->add_option("--rho", cfg.rho,
                  "self-representation fidelity weight; the default suits "
                  "motion-trajectory-like data, try 0.03-0.08 for raw "
                  "face-image-like data")
      ->capture_default_str();
  cmd->add_option("--beta0", cfg.beta0, "initial penalty weight")
      ->capture_default_str();
  cmd->add_option("--gamma", cfg.gamma, "penalty growth factor (> 1)")
      ->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "relative change stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iters", cfg.max_iters, "iteration cap")
      ->capture_default_str();
}

void add_affinity_side_flag(CLI::App* cmd, scld::AffinitySide& side) {
  static const std::map<std::string, scld::AffinitySide> side_names{
      {"left", scld::AffinitySide::left}, {"right", scld::AffinitySide::right}};
  cmd->add_option("--side", side,
                  "build the affinity from left or right principal directions "
                  "(left when columns are samples)")
      ->transform(CLI::CheckedTransformer(side_names, CLI::ignore_case));
}

struct GenArgs {
  scld::SyntheticSpec spec;
  std::string out;
  std::string labels_out;
};

struct SolveArgs {
  std::string input;
  bool synthetic = false;
  scld::SyntheticSpec spec;
  scld::SolverConfig solver;
  std::string output;
  std::string z_out;
};

struct ClusterArgs {
  scld::PipelineConfig config;
  std::string input;
  std::string labels;
  bool synthetic = false;
  scld::SyntheticSpec spec;
};

struct SweepCorruptionArgs {
  scld::SyntheticSpec spec;
  std::vector<double> fractions{0.0, 0.1, 0.3, 0.5, 0.7};
  int trials = 10;
  scld::SolverConfig solver;
  scld::ClusterParams params;
  std::string out_csv;
  std::string out_json;
};

struct SweepRhoArgs {
  std::string input;
  std::string labels;
  bool synthetic = false;
  scld::SyntheticSpec spec;
  std::vector<double> rhos{1.0, 5.0, 20.0, 55.0, 100.0, 200.0};
  int k = 5;
  scld::SolverConfig solver;
  scld::ClusterParams params;
  std::string out_csv;
  std::string out_json;
};

void run_gen(const GenArgs& a) {
  a.spec.validate();
  const scld::LabeledDataset data = scld::generate(a.spec);
  scld::write_matrix_csv(a.out, data.x);
  std::cout << "wrote " << data.x.rows() << "x" << data.x.cols()
            << " matrix to " << a.out << '\n';
  if (!a.labels_out.empty()) {
    scld::write_labels_file(a.labels_out, data.labels);
    std::cout << "wrote " << data.labels.size() << " labels to "
              << a.labels_out << '\n';
  }
}

void run_solve(const SolveArgs& a) {
  if (a.input.empty() == !a.synthetic) {
    throw scld::InvalidArgument(
        "solve: pass exactly one of --input or --synthetic");
  }
  scld::DenseMatrix x;
  if (a.synthetic) {
    a.spec.validate();
    x = scld::generate(a.spec).x;
  } else {
    x = scld::ingest_matrix(a.input);
  }
  const scld::SolverResult res = scld::solve(x, a.solver);
  nlohmann::json j{
      {"iterations", res.iterations},
      {"termination", res.termination == scld::Termination::converged
                          ? "converged"
                          : "max_iters"},
      {"residual_trace", res.residual_trace},
      {"objective_trace", res.objective_trace},
      {"solver", a.solver},
      {"z_rows", res.z_star.rows()},
      {"z_cols", res.z_star.cols()}};
  emit_json(j, a.output);
  if (!a.z_out.empty()) {
    scld::write_matrix_csv(a.z_out, res.z_star);
    std::cout << "wrote representation matrix to " << a.z_out << '\n';
  }
}

void run_cluster(ClusterArgs& a) {
  if (!a.input.empty()) a.config.input_path = a.input;
  if (!a.labels.empty()) a.config.labels_path = a.labels;
  if (a.synthetic) a.config.synthetic = a.spec;
  const scld::RunRecord record = scld::run_pipeline(a.config);
  emit_json(record, a.config.output_path);
  if (record.error_rate) {
    std::cout << "clustering error rate: " << *record.error_rate << '\n';
  }
}

void run_sweep_corruption(const SweepCorruptionArgs& a) {
  a.spec.validate();
  const std::vector<scld::CorruptionSweepRow> table = scld::corruption_sweep(
      a.spec, a.fractions, a.trials, a.solver, a.params);
  std::string csv = "fraction,mean_error,std_error,trials\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table) {
    std::printf("fraction %.3f: mean error %.4f (std %.4f, %d trials)\n",
                row.fraction, row.mean_error, row.std_error, row.trials);
    csv += fmt(row.fraction) + "," + fmt(row.mean_error) + "," +
           fmt(row.std_error) + "," + std::to_string(row.trials) + "\n";
    rows.push_back({{"fraction", row.fraction},
                    {"mean_error", row.mean_error},
                    {"std_error", row.std_error},
                    {"trials", row.trials}});
  }
  if (!a.out_csv.empty()) {
    scld::atomic_write_text(a.out_csv, csv);
    std::cout << "wrote " << a.out_csv << '\n';
  }
  if (!a.out_json.empty()) emit_json(rows, a.out_json);
}

void run_sweep_rho(const SweepRhoArgs& a) {
  if (a.input.empty() == !a.synthetic) {
    throw scld::InvalidArgument(
        "sweep-rho: pass exactly one of --input or --synthetic");
  }
  scld::LabeledDataset dataset;
  int k = a.k;
  if (a.synthetic) {
    a.spec.validate();
    dataset = scld::generate(a.spec);
    k = a.spec.num_subspaces;
  } else {
    if (a.labels.empty()) {
      throw scld::InvalidArgument(
          "sweep-rho: --input requires --labels for scoring");
    }
    dataset.x = scld::ingest_matrix(a.input);
    dataset.labels = scld::read_labels_file(a.labels);
    if (static_cast<Eigen::Index>(dataset.labels.size()) != dataset.x.cols()) {
      throw scld::DimensionMismatch(
          "labels file has " + std::to_string(dataset.labels.size()) +
          " entries but the matrix has " + std::to_string(dataset.x.cols()) +
          " columns");
    }
  }
  const std::vector<scld::RhoSweepRow> table =
      scld::rho_sweep(dataset, a.rhos, k, a.solver, a.params);
  std::string csv = "rho,error\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table) {
    std::printf("rho %-8g error %.4f\n", row.rho, row.error);
    csv += fmt(row.rho) + "," + fmt(row.error) + "\n";
    rows.push_back({{"rho", row.rho}, {"error", row.error}});
  }
  if (!a.out_csv.empty()) {
    scld::atomic_write_text(a.out_csv, csv);
    std::cout << "wrote " << a.out_csv << '\n';
  }
  if (!a.out_json.empty()) emit_json(rows, a.out_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Subspace clustering by low-rank self-representation: a smooth "
      "rank surrogate on the representation's singular values, minimized "
      "with an augmented-Lagrangian scheme, followed by principal-angle "
      "affinities and normalized spectral clustering."};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen", "generate a synthetic union-of-subspaces dataset to CSV");
  add_synthetic_flags(gen_cmd, gen.spec);
  gen_cmd->add_option("--out", gen.out, "output matrix CSV path")->required();
  gen_cmd->add_option("--labels-out", gen.labels_out,
                      "optional output labels path (one integer per line)");

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "compute the low-rank self-representation only");
  solve_cmd->add_option("--input", solve_args.input,
                        "input CSV matrix (rows = features, columns = samples)");
  solve_cmd->add_flag("--synthetic", solve_args.synthetic,
                      "generate synthetic data instead of reading a file");
  add_synthetic_flags(solve_cmd, solve_args.spec);
  add_solver_flags(solve_cmd, solve_args.solver);
  solve_cmd->add_option("--output", solve_args.output,
                        "diagnostics JSON path (default: stdout)");
  solve_cmd->add_option("--z-out", solve_args.z_out,
                        "optional CSV path for the representation matrix");

  ClusterArgs cluster;
  CLI::App* cluster_cmd =
      app.add_subcommand("cluster", "run the full clustering pipeline");
  cluster_cmd->add_option("--input", cluster.input,
                          "input CSV matrix (rows = features, columns = samples)");
  cluster_cmd->add_option("--labels", cluster.labels,
                          "optional ground-truth labels for scoring");
  cluster_cmd->add_flag("--synthetic", cluster.synthetic,
                        "generate synthetic data instead of reading a file");
  add_synthetic_flags(cluster_cmd, cluster.spec);
  cluster_cmd->add_option("--k", cluster.config.k, "number of clusters")
      ->capture_default_str();
  add_solver_flags(cluster_cmd, cluster.config.solver);
  cluster_cmd->add_option("--alpha", cluster.config.alpha,
                          "cosine sharpening exponent (affinity = cos^(2*alpha))")
      ->capture_default_str();
  add_affinity_side_flag(cluster_cmd, cluster.config.side);
  cluster_cmd->add_option("--rank-tol", cluster.config.rank_tol,
                          "relative singular value cutoff for the skinny SVD")
      ->capture_default_str();
  cluster_cmd->add_option("--seed", cluster.config.seed, "k-means seed")
      ->capture_default_str();
  cluster_cmd->add_option("--output", cluster.config.output_path,
                          "result JSON path (default: stdout)");

  SweepCorruptionArgs sweep_corr;
  CLI::App* sweep_corr_cmd = app.add_subcommand(
      "sweep-corruption",
      "mean clustering error vs. corruption fraction on synthetic data");
  add_synthetic_flags(sweep_corr_cmd, sweep_corr.spec);
  sweep_corr_cmd
      ->add_option("--fractions", sweep_corr.fractions,
                   "comma-separated corruption fractions")
      ->delimiter(',');
  sweep_corr_cmd->add_option("--trials", sweep_corr.trials,
                             "trials per fraction")
      ->capture_default_str();
  add_solver_flags(sweep_corr_cmd, sweep_corr.solver);
  sweep_corr_cmd->add_option("--alpha", sweep_corr.params.alpha,
                             "cosine sharpening exponent")
      ->capture_default_str();
  add_affinity_side_flag(sweep_corr_cmd, sweep_corr.params.side);
  sweep_corr_cmd->add_option("--seed", sweep_corr.params.seed,
                             "base seed for per-cell k-means seeding")
      ->capture_default_str();
  sweep_corr_cmd->add_option("--out-csv", sweep_corr.out_csv,
                             "sweep table CSV path");
  sweep_corr_cmd->add_option("--out-json", sweep_corr.out_json,
                             "sweep table JSON path");

  SweepRhoArgs sweep_rho_args;
  CLI::App* sweep_rho_cmd = app.add_subcommand(
      "sweep-rho", "clustering error vs. rho on a fixed dataset");
  sweep_rho_cmd->add_option("--input", sweep_rho_args.input,
                            "input CSV matrix (rows = features, columns = samples)");
  sweep_rho_cmd->add_option("--labels", sweep_rho_args.labels,
                            "ground-truth labels (required with --input)");
  sweep_rho_cmd->add_flag("--synthetic", sweep_rho_args.synthetic,
                          "generate synthetic data instead of reading a file");
  add_synthetic_flags(sweep_rho_cmd, sweep_rho_args.spec);
  sweep_rho_cmd->add_option("--rhos", sweep_rho_args.rhos,
                            "comma-separated rho values")
      ->delimiter(',');
  sweep_rho_cmd->add_option("--k", sweep_rho_args.k,
                            "number of clusters (file input only; synthetic "
                            "uses its subspace count)")
      ->capture_default_str();
  add_solver_flags(sweep_rho_cmd, sweep_rho_args.solver);
  sweep_rho_cmd->add_option("--alpha", sweep_rho_args.params.alpha,
                            "cosine sharpening exponent")
      ->capture_default_str();
  add_affinity_side_flag(sweep_rho_cmd, sweep_rho_args.params.side);
  sweep_rho_cmd->add_option("--seed", sweep_rho_args.params.seed,
                            "k-means seed")
      ->capture_default_str();
  sweep_rho_cmd->add_option("--out-csv", sweep_rho_args.out_csv,
                            "sweep table CSV path");
  sweep_rho_cmd->add_option("--out-json", sweep_rho_args.out_json,
                            "sweep table JSON path");

  try {
    app.parse(argc, argv);
    if (gen_cmd->parsed()) run_gen(gen);
    if (solve_cmd->parsed()) run_solve(solve_args);
    if (cluster_cmd->parsed()) run_cluster(cluster);
    if (sweep_corr_cmd->parsed()) run_sweep_corruption(sweep_corr);
    if (sweep_rho_cmd->parsed()) run_sweep_rho(sweep_rho_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const scld::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const scld::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const scld::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const scld::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
