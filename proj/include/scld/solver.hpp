#pragma once

#include <optional>
#include <vector>

#include "scld/types.hpp"

namespace scld {

/// Knobs of the alternating minimization loop.
struct SolverConfig {
  double rho = 55.0;      // data-fidelity weight, > 0
  double beta0 = 0.3;     // initial penalty, > 0
  double gamma = 1.1;     // penalty growth, > 1
  double tol = 1e-5;      // relative-change stopping tolerance on Z
  int max_iters = 100;

  // Optional warm start for Z; identity when absent.
  std::optional<DenseMatrix> z_init;

  // Reuse one eigendecomposition of X'X for every penalty value instead of
  // refactorizing per iteration.
  bool cache_gram_eigs = false;

  void validate() const;
};

enum class Termination { converged, max_iters };

struct SolverResult {
  DenseMatrix z_star;                  // n x n representation
  int iterations = 0;
  std::vector<double> residual_trace;  // ||Z - W||_F per iteration
  std::vector<double> objective_trace; // logdet(W) + rho ||X - XW||_F^2
  Termination termination = Termination::max_iters;
};

/// Eigendecomposition of X'X, shared across penalty values: the system
/// beta I + 2 rho X'X diagonalizes in the same basis for every beta.
struct GramSpectralCache {
  DenseMatrix basis;   // Q with X'X = Q diag(eigenvalues) Q'
  Vector eigenvalues;  // ascending, >= 0 up to roundoff

  static GramSpectralCache from_data(const DenseMatrix& x);
};

/// W = (beta I + 2 rho X'X)^{-1} (2 rho X'X + Y + beta Z) via an SPD solve.
/// Pass a cache to reuse the spectral factorization of X'X.
DenseMatrix update_w(const DenseMatrix& x, const DenseMatrix& z,
                     const DenseMatrix& y, double beta, double rho,
                     const GramSpectralCache* cache = nullptr);

/// Z = prox of the logdet surrogate at W - Y/beta.
DenseMatrix update_z(const DenseMatrix& w, const DenseMatrix& y, double beta);

/// Y <- Y + beta (Z - W); dual ascent on the split constraint.
DenseMatrix update_dual(const DenseMatrix& y, const DenseMatrix& z,
                        const DenseMatrix& w, double beta);

/// Augmented Lagrangian
/// logdet(Z) + rho ||X - XW||_F^2 + (beta/2) ||Z - W||_F^2 + <Y, Z - W>.
double augmented_lagrangian(const DenseMatrix& x, const DenseMatrix& z,
                            const DenseMatrix& w, const DenseMatrix& y,
                            double beta, double rho);

/// Alternating loop: W-update from the current Z, then the proximal Z-update,
/// then dual ascent, then geometric penalty growth. Stops on relative change
/// ||Z_{k+1} - Z_k||_F / max(1, ||Z_k||_F) <= tol or at max_iters.
SolverResult solve(const DenseMatrix& x, const SolverConfig& config);

}  // namespace scld
