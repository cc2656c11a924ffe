#include "scld/logdet.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "scld/cubic.hpp"

namespace scld {

namespace {

void check_finite(const DenseMatrix& m, const char* who) {
  if (!is_finite(m)) {
    throw InvalidArgument(std::string(who) + ": matrix has non-finite entries");
  }
}

// Stationarity residual of the scalar subproblem.
double scalar_grad(double sigma, double target, double beta) {
  return 2.0 * sigma / (1.0 + sigma * sigma) + beta * (sigma - target);
}

double scalar_grad_deriv(double sigma, double beta) {
  const double s2 = sigma * sigma;
  const double den = (1.0 + s2) * (1.0 + s2);
  return 2.0 * (1.0 - s2) / den + beta;
}

// Newton polish on the stationarity residual; closed-form cubic roots lose
// digits for near-degenerate discriminants.
double polish_root(double sigma, double target, double beta) {
  for (int i = 0; i < 3; ++i) {
    const double g = scalar_grad(sigma, target, beta);
    const double dg = scalar_grad_deriv(sigma, beta);
    if (dg == 0.0) break;
    const double next = sigma - g / dg;
    if (!std::isfinite(next) || next < 0.0) break;
    if (next == sigma) break;
    sigma = next;
  }
  return sigma;
}

}  // namespace

double scalar_prox_objective(double sigma, const ScalarProxProblem& p) {
  const double d = sigma - p.target;
  return std::log1p(sigma * sigma) + 0.5 * p.beta * d * d;
}

double scalar_prox(const ScalarProxProblem& p) {
  if (!std::isfinite(p.target) || !std::isfinite(p.beta)) {
    throw InvalidArgument("scalar_prox: non-finite input");
  }
  if (p.target < 0.0) throw InvalidArgument("scalar_prox: target must be >= 0");
  if (p.beta <= 0.0) throw InvalidArgument("scalar_prox: beta must be > 0");
  if (p.target == 0.0) return 0.0;

  const double s = p.target;
  const double beta = p.beta;

  // Stationary points solve beta x^3 - beta s x^2 + (beta + 2) x - beta s = 0.
  const CubicRoots roots = real_cubic_roots(beta, -beta * s, beta + 2.0, -beta * s);

  // Candidates are zero plus the polished nonnegative roots; pick the lowest
  // objective. Roots come sorted ascending, so requiring a strict improvement
  // breaks ties toward the smaller argument (lower rank).
  double best = 0.0;
  double best_obj = scalar_prox_objective(0.0, p);
  for (int i = 0; i < roots.count; ++i) {
    double r = roots.roots[i];
    if (r <= 0.0) continue;
    r = polish_root(r, s, beta);
    if (r > s) r = s;  // stationary points live in [0, s]
    const double obj = scalar_prox_objective(r, p);
    if (obj < best_obj - 1e-14 * (1.0 + std::abs(best_obj))) {
      best_obj = obj;
      best = r;
    }
  }
  return best;
}

SpectralDecomposition thin_svd(const DenseMatrix& m) {
  check_finite(m, "thin_svd");
  Eigen::BDCSVD<DenseMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("thin_svd: SVD did not converge");
  }
  SpectralDecomposition out;
  out.left_vectors = svd.matrixU();
  out.singular_values = svd.singularValues();
  out.right_vectors = svd.matrixV();

  // Deterministic sign: largest-magnitude entry of each left vector positive.
  for (Eigen::Index j = 0; j < out.left_vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    out.left_vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.left_vectors(imax, j) < 0.0) {
      out.left_vectors.col(j) = -out.left_vectors.col(j);
      out.right_vectors.col(j) = -out.right_vectors.col(j);
    }
  }
  return out;
}

DenseMatrix logdet_prox_matrix(const DenseMatrix& anchor, double beta) {
  check_finite(anchor, "logdet_prox_matrix");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("logdet_prox_matrix: beta must be positive");
  }
  SpectralDecomposition d = thin_svd(anchor);
  Vector shrunk(d.singular_values.size());
  for (Eigen::Index i = 0; i < shrunk.size(); ++i) {
    shrunk[i] = scalar_prox({d.singular_values[i], beta});
  }
  return d.left_vectors * shrunk.asDiagonal() * d.right_vectors.transpose();
}

DenseMatrix logdet_gradient(const DenseMatrix& z) {
  check_finite(z, "logdet_gradient");
  SpectralDecomposition d = thin_svd(z);
  Vector theta(d.singular_values.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double s = d.singular_values[i];
    theta[i] = 2.0 * s / (1.0 + s * s);
  }
  return d.left_vectors * theta.asDiagonal() * d.right_vectors.transpose();
}

double logdet_value(const DenseMatrix& z) {
  check_finite(z, "logdet_value");
  Eigen::BDCSVD<DenseMatrix> svd(z);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("logdet_value: SVD did not converge");
  }
  double sum = 0.0;
  const Vector& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) sum += std::log1p(s[i] * s[i]);
  return sum;
}

}  // namespace scld
