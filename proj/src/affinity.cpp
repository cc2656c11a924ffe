#include "scld/affinity.hpp"

#include <cmath>

namespace scld {

SpectralDecomposition skinny_svd(const DenseMatrix& z, double rank_tol) {
  if (!is_finite(z)) throw InvalidArgument("skinny_svd: non-finite input");
  if (!(rank_tol > 0.0) || !(rank_tol < 1.0)) {
    throw InvalidArgument("skinny_svd: rank_tol must lie in (0, 1)");
  }
  SpectralDecomposition full = thin_svd(z);
  const double top = full.singular_values.size() > 0 ? full.singular_values[0] : 0.0;
  if (top <= 0.0) {
    throw InvalidArgument("skinny_svd: zero matrix has no principal directions");
  }
  Eigen::Index r = 0;
  const double cutoff = rank_tol * top;
  while (r < full.singular_values.size() && full.singular_values[r] > cutoff) {
    ++r;
  }
  if (r < 1) r = 1;
  SpectralDecomposition out;
  out.left_vectors = full.left_vectors.leftCols(r);
  out.singular_values = full.singular_values.head(r);
  out.right_vectors = full.right_vectors.leftCols(r);
  return out;
}

AffinityMatrix build_affinity(const SpectralDecomposition& decomp, int alpha,
                              AffinitySide side) {
  if (alpha < 1) throw InvalidArgument("build_affinity: alpha must be >= 1");

  const DenseMatrix& vectors = side == AffinitySide::left
                                   ? decomp.left_vectors
                                   : decomp.right_vectors;
  const Eigen::Index n = vectors.rows();

  // Feature rows f_i = sqrt(Sigma) weighted singular-vector rows, normalized
  // to unit length so only angles survive.
  DenseMatrix features =
      vectors * decomp.singular_values.cwiseSqrt().asDiagonal();
  Vector norms = features.rowwise().norm();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (norms[i] > 0.0) {
      features.row(i) /= norms[i];
    } else {
      features.row(i).setZero();
    }
  }

  DenseMatrix cosines = features * features.transpose();
  cosines = 0.5 * (cosines + cosines.transpose()).eval();

  AffinityMatrix out;
  out.values = cosines.array()
                   .max(-1.0)
                   .min(1.0)
                   .pow(2 * alpha)
                   .matrix();
  out.values.diagonal().setOnes();
  return out;
}

}  // namespace scld
