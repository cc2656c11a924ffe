#pragma once

#include <cstdint>
#include <vector>

#include "scld/affinity.hpp"
#include "scld/types.hpp"

namespace scld {

struct ClusteringResult {
  std::vector<int> labels;      // length n, values in [0, k)
  int k = 0;
  double kmeans_inertia = 0.0;  // best within-cluster squared distance
};

/// Row-normalized bottom-k eigenvector embedding of the symmetric normalized
/// Laplacian L = I - D^{-1/2} W D^{-1/2}. Zero rows stay zero.
DenseMatrix spectral_embedding(const AffinityMatrix& w, int k);

/// Seeded k-means (k-means++ starts, 20 restarts, 300 iterations each,
/// best inertia kept) on an n x d feature matrix.
ClusteringResult kmeans(const DenseMatrix& points, int k, std::uint64_t seed);

/// Normalized spectral clustering: embed, then k-means on the embedding.
ClusteringResult spectral_cluster(const AffinityMatrix& w, int k,
                                  std::uint64_t seed);

}  // namespace scld
