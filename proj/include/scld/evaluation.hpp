#pragma once

#include <cstdint>
#include <vector>

#include "scld/affinity.hpp"
#include "scld/datagen.hpp"
#include "scld/solver.hpp"
#include "scld/spectral.hpp"
#include "scld/types.hpp"

namespace scld {

struct ErrorReport {
  double error_rate = 0.0;              // misclassified / total, best matching
  std::vector<int> matched_permutation; // predicted label -> matched truth label
  Eigen::MatrixXi confusion;            // (truth, predicted) counts, k x k
};

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian /
/// shortest augmenting path). Returns the column assigned to each row.
std::vector<int> min_cost_assignment(const DenseMatrix& cost);

/// Fraction of points misclassified under the best bijection between
/// predicted and truth label names.
ErrorReport clustering_error(const std::vector<int>& predicted,
                             const std::vector<int>& truth);

/// Affinity + clustering knobs shared by the experiment drivers.
struct ClusterParams {
  int alpha = 2;
  AffinitySide side = AffinitySide::left;
  double rank_tol = 1e-6;
  std::uint64_t seed = 0;  // k-means seed
};

/// solve -> skinny SVD -> affinity -> spectral clustering.
ClusteringResult run_clustering(const DenseMatrix& x, int k,
                                const SolverConfig& solver,
                                const ClusterParams& params);

struct CorruptionSweepRow {
  double fraction = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

struct RhoSweepRow {
  double rho = 0.0;
  double error = 0.0;
};

/// Mean/std clustering error per corruption fraction; every trial re-draws
/// subspaces, points and corruption from a seed derived from
/// (spec.seed, fraction index, trial index), so cells are independent and
/// may run concurrently. Thread count honors the SCLD_THREADS environment
/// variable.
std::vector<CorruptionSweepRow> corruption_sweep(
    const SyntheticSpec& spec, const std::vector<double>& fractions,
    int trials, const SolverConfig& solver, const ClusterParams& params);

/// End-to-end error on one fixed dataset per fidelity weight.
std::vector<RhoSweepRow> rho_sweep(const LabeledDataset& dataset,
                                   const std::vector<double>& rhos, int k,
                                   const SolverConfig& solver,
                                   const ClusterParams& params);

}  // namespace scld
