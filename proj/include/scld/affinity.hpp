#pragma once

#include "scld/logdet.hpp"
#include "scld/types.hpp"

namespace scld {

/// Symmetric nonnegative n x n similarity graph with unit diagonal,
/// entries in [0, 1].
struct AffinityMatrix {
  DenseMatrix values;
};

/// Which weighted factor carries the per-point feature rows: the left
/// singular vectors (U sqrt(Sigma)) or the right ones (V sqrt(Sigma)).
enum class AffinitySide { left, right };

/// Rank-truncated SVD of the representation: keeps the r components with
/// sigma_i > rank_tol * sigma_1 (at least one). All-zero input is degenerate.
SpectralDecomposition skinny_svd(const DenseMatrix& z, double rank_tol);

/// Powered-cosine affinity between the weighted principal-direction rows:
/// W_ij = (cos angle(f_i, f_j))^(2 alpha) with f_i the i-th row of
/// U sqrt(Sigma) (or V sqrt(Sigma) for the right side). Rows with zero norm
/// get affinity 0 against every other point and 1 on the diagonal.
AffinityMatrix build_affinity(const SpectralDecomposition& decomp, int alpha,
                              AffinitySide side = AffinitySide::left);

}  // namespace scld
