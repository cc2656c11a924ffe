#include "scld/spectral.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace scld {

namespace {

constexpr int kRestarts = 20;
constexpr int kMaxKmeansIters = 300;
constexpr double kDegreeFloor = 1e-12;

// D^2-weighted index draw via a cumulative walk; keeps the sampling
// independent of std::discrete_distribution internals.
Eigen::Index weighted_pick(const Vector& weights, std::mt19937_64& rng) {
  const double total = weights.sum();
  if (!(total > 0.0)) return 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng) * total;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u <= acc) return i;
  }
  return weights.size() - 1;
}

struct KmeansRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_once(const DenseMatrix& points, int k, std::uint64_t seed) {
  const Eigen::Index n = points.rows();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> uniform_index(0, n - 1);

  // k-means++ seeding.
  DenseMatrix centers(k, points.cols());
  centers.row(0) = points.row(uniform_index(rng));
  Vector dist2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const Eigen::Index pick = dist2.sum() > 0.0 ? weighted_pick(dist2, rng)
                                                : uniform_index(rng);
    centers.row(c) = points.row(pick);
    dist2 = dist2.cwiseMin(
        (points.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> labels(n, 0);
  DenseMatrix point_center_dist2(n, k);
  for (int iter = 0; iter < kMaxKmeansIters; ++iter) {
    for (int c = 0; c < k; ++c) {
      point_center_dist2.col(c) =
          (points.rowwise() - centers.row(c)).rowwise().squaredNorm();
    }
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      point_center_dist2.row(i).minCoeff(&best);
      if (labels[i] != static_cast<int>(best)) {
        labels[i] = static_cast<int>(best);
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    for (int c = 0; c < k; ++c) {
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(points.cols());
      int count = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (labels[i] == c) {
          mean += points.row(i);
          ++count;
        }
      }
      if (count > 0) {
        centers.row(c) = mean / count;
      } else {
        // Re-seat an empty cluster on the point farthest from its center.
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d = point_center_dist2(i, labels[i]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = points.row(far);
      }
    }
  }

  KmeansRun run;
  run.labels = std::move(labels);
  run.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    run.inertia += (points.row(i) - centers.row(run.labels[i])).squaredNorm();
  }
  return run;
}

}  // namespace

DenseMatrix spectral_embedding(const AffinityMatrix& w, int k) {
  const Eigen::Index n = w.values.rows();
  if (w.values.cols() != n) {
    throw InvalidArgument("spectral_embedding: affinity must be square");
  }
  if (k < 2 || k > n) {
    throw InvalidArgument("spectral_embedding: need 2 <= k <= n");
  }

  // Degree floor keeps isolated nodes from producing infinities.
  const Vector inv_sqrt_deg =
      (w.values.rowwise().sum().array() + kDegreeFloor).rsqrt().matrix();
  DenseMatrix laplacian = -(inv_sqrt_deg.asDiagonal() * w.values *
                            inv_sqrt_deg.asDiagonal());
  laplacian.diagonal().array() += 1.0;

  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(
      0.5 * (laplacian + laplacian.transpose()));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("spectral_embedding: eigensolver failed");
  }

  // Ascending eigenvalues; the bottom k columns span the cluster indicator
  // space.
  DenseMatrix embedding = eig.eigenvectors().leftCols(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }
  return embedding;
}

ClusteringResult kmeans(const DenseMatrix& points, int k, std::uint64_t seed) {
  if (k < 1 || k > points.rows()) {
    throw InvalidArgument("kmeans: need 1 <= k <= #points");
  }
  // Restart seeds are drawn upfront so runs are order-independent.
  std::mt19937_64 seeder(seed);
  std::vector<std::uint64_t> restart_seeds(kRestarts);
  for (auto& s : restart_seeds) s = seeder();

  KmeansRun best;
  for (int r = 0; r < kRestarts; ++r) {
    KmeansRun run = kmeans_once(points, k, restart_seeds[r]);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  ClusteringResult result;
  result.labels = std::move(best.labels);
  result.k = k;
  result.kmeans_inertia = best.inertia;
  return result;
}

ClusteringResult spectral_cluster(const AffinityMatrix& w, int k,
                                  std::uint64_t seed) {
  const DenseMatrix embedding = spectral_embedding(w, k);
  return kmeans(embedding, k, seed);
}

}  // namespace scld
