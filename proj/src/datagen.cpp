#include "scld/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/QR>

namespace scld {

namespace {

DenseMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

DenseMatrix orthonormal_from(std::mt19937_64& rng, int rows, int cols,
                             bool proper) {
  const DenseMatrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(rows, cols);
  const DenseMatrix r =
      qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  // Sign-fix against the R diagonal so the factorization is unique.
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (proper && rows == cols && q.determinant() < 0.0) {
    q.col(cols - 1) = -q.col(cols - 1);
  }
  return q;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (ambient_dim < 1 || num_subspaces < 1 || subspace_dim < 1 ||
      points_per_subspace < 1) {
    throw InvalidArgument("SyntheticSpec: all counts must be >= 1");
  }
  if (subspace_dim > ambient_dim) {
    throw InvalidArgument(
        "SyntheticSpec: subspace_dim must not exceed ambient_dim");
  }
  if (!(corruption_fraction >= 0.0) || !(corruption_fraction <= 1.0)) {
    throw InvalidArgument(
        "SyntheticSpec: corruption_fraction must lie in [0, 1]");
  }
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw InvalidArgument("SyntheticSpec: noise_scale must be >= 0");
  }
}

DenseMatrix random_orthonormal(int rows, int cols, std::uint64_t seed,
                               bool proper) {
  if (rows < 1 || cols < 1 || cols > rows) {
    throw InvalidArgument("random_orthonormal: need 1 <= cols <= rows");
  }
  std::mt19937_64 rng(seed);
  return orthonormal_from(rng, rows, cols, proper);
}

LabeledDataset generate(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  const int d = spec.ambient_dim;
  const int n = spec.num_subspaces * spec.points_per_subspace;

  // Chained bases: U_{i+1} = R U_i from one base subspace and one rotation.
  DenseMatrix basis = orthonormal_from(rng, d, spec.subspace_dim, false);
  const DenseMatrix rotation = orthonormal_from(rng, d, d, true);

  LabeledDataset out;
  out.x.resize(d, n);
  out.labels.resize(n);
  for (int j = 0; j < spec.num_subspaces; ++j) {
    if (j > 0) basis = rotation * basis;
    const DenseMatrix coeffs =
        gaussian_matrix(spec.subspace_dim, spec.points_per_subspace, rng);
    out.x.middleCols(j * spec.points_per_subspace, spec.points_per_subspace) =
        basis * coeffs;
    std::fill_n(out.labels.begin() + j * spec.points_per_subspace,
                spec.points_per_subspace, j);
  }

  const int corrupted = static_cast<int>(std::llround(spec.corruption_fraction * n));
  if (corrupted > 0) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int t = 0; t < corrupted; ++t) {
      const int col = order[t];
      const double norm = out.x.col(col).norm();
      const double sd = spec.noise_model == NoiseModel::variance_scaled
                            ? std::sqrt(spec.noise_scale * norm)
                            : spec.noise_scale * norm;
      for (int i = 0; i < d; ++i) out.x(i, col) += sd * normal(rng);
    }
  }
  return out;
}

}  // namespace scld
