#pragma once

#include <cstdint>
#include <vector>

#include "scld/types.hpp"

namespace scld {

/// How "noise of scale c ||x||" is read when corrupting a column x:
/// per-entry variance c ||x|| (std = sqrt(c ||x||)), or per-entry
/// std = c ||x||.
enum class NoiseModel { variance_scaled, std_scaled };

struct SyntheticSpec {
  int ambient_dim = 100;
  int num_subspaces = 5;
  int subspace_dim = 4;
  int points_per_subspace = 20;
  double corruption_fraction = 0.0;  // in [0, 1]
  double noise_scale = 0.2;
  NoiseModel noise_model = NoiseModel::variance_scaled;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LabeledDataset {
  DenseMatrix x;            // ambient_dim x n, columns are points
  std::vector<int> labels;  // length n, block-constant in generation order
};

/// Union-of-subspaces sampler: a random orthonormal basis chained through a
/// random rotation gives the subspace bases; coefficients are iid standard
/// normal; a uniformly random fraction of columns receives additive Gaussian
/// noise scaled by the column norm.
LabeledDataset generate(const SyntheticSpec& spec);

/// Random matrix with orthonormal columns (QR of a Gaussian matrix with the
/// R-diagonal sign fixed). When square and `proper`, the determinant is
/// corrected to +1.
DenseMatrix random_orthonormal(int rows, int cols, std::uint64_t seed,
                               bool proper = false);

}  // namespace scld
