#pragma once

#include "scld/types.hpp"

namespace scld {

/// Thin SVD with a fixed sign convention: the largest-magnitude entry of
/// each left singular vector is positive. Singular values nonincreasing.
struct SpectralDecomposition {
  DenseMatrix left_vectors;    // U, m x r, orthonormal columns
  Vector singular_values;      // sigma, length r, nonincreasing, >= 0
  DenseMatrix right_vectors;   // V, n x r, orthonormal columns
};

SpectralDecomposition thin_svd(const DenseMatrix& m);

/// One singular value's shrinkage subproblem:
/// minimize over sigma >= 0 of log(1 + sigma^2) + (beta/2) (sigma - target)^2.
struct ScalarProxProblem {
  double target = 0.0;  // >= 0, a singular value of the anchor
  double beta = 1.0;    // > 0, quadratic penalty weight
};

/// Global scalar minimizer. Always in [0, target]; strictly below target
/// when beta > 1/4 and target > 0. Ties resolve toward the smaller value.
double scalar_prox(const ScalarProxProblem& p);

/// Proximal map of F(Z) = log det(I + Z'Z) at the anchor:
/// argmin_Z F(Z) + (beta/2) ||Z - anchor||_F^2, computed by shrinking the
/// anchor's singular values through scalar_prox.
DenseMatrix logdet_prox_matrix(const DenseMatrix& anchor, double beta);

/// Gradient of F: U diag(2 sigma_i / (1 + sigma_i^2)) V'. Every diagonal
/// factor lies in [0, 1], which bounds the dual variable of the solver.
DenseMatrix logdet_gradient(const DenseMatrix& z);

/// F(Z) = sum_i log(1 + sigma_i^2). Nonnegative, zero only at Z = 0, and
/// never above the nuclear norm.
double logdet_value(const DenseMatrix& z);

/// Objective of the scalar subproblem, exposed for root selection and tests.
double scalar_prox_objective(double sigma, const ScalarProxProblem& p);

}  // namespace scld
