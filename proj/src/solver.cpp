#include "scld/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "scld/logdet.hpp"

namespace scld {

void SolverConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidArgument("SolverConfig: rho must be > 0");
  }
  if (!(beta0 > 0.0) || !std::isfinite(beta0)) {
    throw InvalidArgument("SolverConfig: beta0 must be > 0");
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("SolverConfig: gamma must be > 1");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidArgument("SolverConfig: tol must be > 0");
  }
  if (max_iters < 1) {
    throw InvalidArgument("SolverConfig: max_iters must be >= 1");
  }
  if (z_init && !is_finite(*z_init)) {
    throw InvalidArgument("SolverConfig: z_init has non-finite entries");
  }
}

GramSpectralCache GramSpectralCache::from_data(const DenseMatrix& x) {
  const DenseMatrix gram = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("GramSpectralCache: eigendecomposition failed");
  }
  return {eig.eigenvectors(), eig.eigenvalues()};
}

namespace {

DenseMatrix solve_shifted_gram(const DenseMatrix& gram, const DenseMatrix& rhs,
                               double beta, double rho,
                               const GramSpectralCache* cache) {
  if (cache) {
    // (beta I + 2 rho Q D Q')^{-1} = Q (beta I + 2 rho D)^{-1} Q'.
    const Vector inv_diag =
        (beta + 2.0 * rho * cache->eigenvalues.array()).inverse().matrix();
    return cache->basis *
           (inv_diag.asDiagonal() * (cache->basis.transpose() * rhs));
  }
  const Eigen::Index n = gram.rows();
  DenseMatrix system = 2.0 * rho * gram;
  system.diagonal().array() += beta;
  Eigen::LLT<DenseMatrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("update_w: Cholesky factorization failed");
  }
  DenseMatrix w = llt.solve(rhs);
  // One refinement pass keeps the defining-equation residual near roundoff
  // even when 2 rho ||X'X|| dwarfs beta.
  w += llt.solve(rhs - system * w);
  return w;
}

}  // namespace

DenseMatrix update_w(const DenseMatrix& x, const DenseMatrix& z,
                     const DenseMatrix& y, double beta, double rho,
                     const GramSpectralCache* cache) {
  if (!(beta > 0.0) || !(rho > 0.0)) {
    throw InvalidArgument("update_w: beta and rho must be > 0");
  }
  if (x.cols() != z.rows() || z.rows() != z.cols() || y.rows() != z.rows() ||
      y.cols() != z.cols()) {
    throw DimensionMismatch("update_w: Z and Y must be n x n with n = cols(X)");
  }
  const DenseMatrix gram = x.transpose() * x;
  const DenseMatrix rhs = 2.0 * rho * gram + y + beta * z;
  return solve_shifted_gram(gram, rhs, beta, rho, cache);
}

DenseMatrix update_z(const DenseMatrix& w, const DenseMatrix& y, double beta) {
  if (w.rows() != y.rows() || w.cols() != y.cols()) {
    throw DimensionMismatch("update_z: W and Y shapes differ");
  }
  return logdet_prox_matrix(w - y / beta, beta);
}

DenseMatrix update_dual(const DenseMatrix& y, const DenseMatrix& z,
                        const DenseMatrix& w, double beta) {
  if (y.rows() != z.rows() || y.cols() != z.cols() || w.rows() != z.rows() ||
      w.cols() != z.cols()) {
    throw DimensionMismatch("update_dual: Y, Z, W shapes differ");
  }
  return y + beta * (z - w);
}

double augmented_lagrangian(const DenseMatrix& x, const DenseMatrix& z,
                            const DenseMatrix& w, const DenseMatrix& y,
                            double beta, double rho) {
  const DenseMatrix gap = z - w;
  return logdet_value(z) + rho * (x - x * w).squaredNorm() +
         0.5 * beta * gap.squaredNorm() + (y.array() * gap.array()).sum();
}

SolverResult solve(const DenseMatrix& x, const SolverConfig& config) {
  config.validate();
  if (!is_finite(x)) throw InvalidArgument("solve: X has non-finite entries");
  const Eigen::Index n = x.cols();
  if (n < 2) throw InvalidArgument("solve: need at least two data columns");
  if (config.z_init &&
      (config.z_init->rows() != n || config.z_init->cols() != n)) {
    throw DimensionMismatch("solve: z_init must be n x n");
  }

  DenseMatrix z =
      config.z_init ? *config.z_init : DenseMatrix::Identity(n, n);
  DenseMatrix y = DenseMatrix::Zero(n, n);

  const DenseMatrix gram = x.transpose() * x;
  const DenseMatrix fidelity_rhs = 2.0 * config.rho * gram;
  GramSpectralCache cache;
  if (config.cache_gram_eigs) cache = GramSpectralCache::from_data(x);

  SolverResult result;
  result.residual_trace.reserve(config.max_iters);
  result.objective_trace.reserve(config.max_iters);

  for (int k = 0; k < config.max_iters; ++k) {
    // beta_k = beta0 gamma^k, computed from k so the schedule cannot drift.
    const double beta = config.beta0 * std::pow(config.gamma, k);
    DenseMatrix w;
    DenseMatrix z_next;
    try {
      const DenseMatrix rhs = fidelity_rhs + y + beta * z;
      w = solve_shifted_gram(gram, rhs, beta, config.rho,
                             config.cache_gram_eigs ? &cache : nullptr);
      z_next = update_z(w, y, beta);
    } catch (const NumericalError& e) {
      throw NumericalError("solve: iteration " + std::to_string(k) + ": " +
                           e.what());
    }
    y = update_dual(y, z_next, w, beta);

    result.residual_trace.push_back((z_next - w).norm());
    result.objective_trace.push_back(logdet_value(w) +
                                     config.rho * (x - x * w).squaredNorm());

    const double rel_change =
        (z_next - z).norm() / std::max(1.0, z.norm());
    z = std::move(z_next);
    result.iterations = k + 1;

    if (rel_change <= config.tol) {
      result.termination = Termination::converged;
      break;
    }
  }
  result.z_star = std::move(z);
  return result;
}

}  // namespace scld
