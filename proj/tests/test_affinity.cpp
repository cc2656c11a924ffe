#include <cmath>
#include <random>

#include "doctest.h"
#include "scld/affinity.hpp"
#include "scld/datagen.hpp"
#include "scld/solver.hpp"

using scld::AffinityMatrix;
using scld::AffinitySide;
using scld::DenseMatrix;
using scld::SpectralDecomposition;
using scld::Vector;

namespace {

SpectralDecomposition from_rows(const DenseMatrix& rows, const Vector& sigma) {
  SpectralDecomposition d;
  d.left_vectors = rows;
  d.singular_values = sigma;
  d.right_vectors = rows;  // immaterial for left-side affinities
  return d;
}

}  // namespace

TEST_CASE("skinny_svd input validation and truncation") {
  CHECK_THROWS_AS(scld::skinny_svd(DenseMatrix::Zero(3, 3), 1e-6),
                  scld::InvalidArgument);
  CHECK_THROWS_AS(scld::skinny_svd(DenseMatrix::Identity(3, 3), 0.0),
                  scld::InvalidArgument);
  CHECK_THROWS_AS(scld::skinny_svd(DenseMatrix::Identity(3, 3), 1.0),
                  scld::InvalidArgument);

  Vector d(3);
  d << 5.0, 3.0, 1e-9;
  const SpectralDecomposition s =
      scld::skinny_svd(DenseMatrix(d.asDiagonal()), 1e-6);
  CHECK(s.singular_values.size() == 2);
  CHECK(s.singular_values[0] == doctest::Approx(5.0));
  CHECK(s.left_vectors.cols() == 2);
  CHECK(s.right_vectors.cols() == 2);

  // The leading direction always survives, however tight the ratio cutoff.
  const SpectralDecomposition tiny =
      scld::skinny_svd(1e-20 * DenseMatrix::Identity(4, 4), 0.999);
  CHECK(tiny.singular_values.size() >= 1);
}

TEST_CASE("skinny_svd reconstructs the truncated part") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix low = DenseMatrix::Zero(8, 8);
  for (int r = 0; r < 3; ++r) {
    Vector u(8), v(8);
    for (int i = 0; i < 8; ++i) {
      u[i] = normal(rng);
      v[i] = normal(rng);
    }
    low += (4.0 - r) * u * v.transpose() / (u.norm() * v.norm());
  }
  const SpectralDecomposition s = scld::skinny_svd(low, 1e-8);
  CHECK(s.singular_values.size() == 3);
  const DenseMatrix back =
      s.left_vectors * s.singular_values.asDiagonal() * s.right_vectors.transpose();
  CHECK((back - low).norm() <= 1e-10 * low.norm());
}

TEST_CASE("build_affinity rejects alpha < 1") {
  const SpectralDecomposition d =
      scld::skinny_svd(DenseMatrix::Identity(3, 3), 1e-6);
  CHECK_THROWS_AS(scld::build_affinity(d, 0), scld::InvalidArgument);
}

TEST_CASE("powered cosine values on hand-built directions") {
  DenseMatrix rows(3, 2);
  const double h = std::sqrt(0.5);
  rows << 1.0, 0.0,  //
      h, h,          //
      0.0, 1.0;
  Vector sigma = Vector::Ones(2);

  SUBCASE("alpha 2 gives cos^4") {
    const AffinityMatrix w = scld::build_affinity(from_rows(rows, sigma), 2);
    CHECK(w.values(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w.values(1, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w.values(0, 2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.values.diagonal().isOnes());
  }
  SUBCASE("alpha 1 gives cos^2") {
    const AffinityMatrix w = scld::build_affinity(from_rows(rows, sigma), 1);
    CHECK(w.values(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("sharper exponents never increase an affinity") {
    const AffinityMatrix soft = scld::build_affinity(from_rows(rows, sigma), 1);
    const AffinityMatrix sharp = scld::build_affinity(from_rows(rows, sigma), 3);
    CHECK(((sharp.values.array() - soft.values.array()) <= 1e-12).all());
  }
}

TEST_CASE("affinity is symmetric, bounded and scale invariant") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix rows(7, 3);
  for (Eigen::Index i = 0; i < rows.size(); ++i) rows(i) = normal(rng);
  Vector sigma(3);
  sigma << 2.0, 1.0, 0.25;

  const AffinityMatrix w = scld::build_affinity(from_rows(rows, sigma), 2);
  CHECK((w.values - w.values.transpose()).norm() == 0.0);
  CHECK((w.values.array() >= 0.0).all());
  CHECK((w.values.array() <= 1.0).all());

  // Scaling every singular value scales all feature rows equally, so the
  // angles (and the affinity) do not move.
  const AffinityMatrix scaled =
      scld::build_affinity(from_rows(rows, 4.0 * sigma), 2);
  CHECK((scaled.values - w.values).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("row permutation conjugates the affinity") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix rows(6, 2);
  for (Eigen::Index i = 0; i < rows.size(); ++i) rows(i) = normal(rng);
  Vector sigma(2);
  sigma << 1.5, 0.5;

  std::vector<int> perm{3, 0, 5, 1, 4, 2};
  DenseMatrix shuffled(6, 2);
  for (int i = 0; i < 6; ++i) shuffled.row(i) = rows.row(perm[i]);

  const DenseMatrix a = scld::build_affinity(from_rows(rows, sigma), 2).values;
  const DenseMatrix b =
      scld::build_affinity(from_rows(shuffled, sigma), 2).values;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      CHECK(b(i, j) == doctest::Approx(a(perm[i], perm[j])).epsilon(1e-13));
    }
  }
}

TEST_CASE("zero rows are isolated with a unit self-loop") {
  DenseMatrix rows = DenseMatrix::Zero(4, 2);
  rows(0, 0) = 1.0;
  rows(1, 1) = 1.0;
  rows(3, 0) = 1.0;  // row 2 stays zero
  const AffinityMatrix w =
      scld::build_affinity(from_rows(rows, Vector::Ones(2)), 2);
  CHECK(w.values(2, 2) == 1.0);
  for (int j = 0; j < 4; ++j) {
    if (j != 2) {
      CHECK(w.values(2, j) == 0.0);
      CHECK(w.values(j, 2) == 0.0);
    }
  }
}

TEST_CASE("left and right sides coincide for symmetric representations") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix m(5, 5);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = normal(rng);
  const DenseMatrix sym = m + m.transpose() + 6.0 * DenseMatrix::Identity(5, 5);

  const SpectralDecomposition d = scld::skinny_svd(sym, 1e-10);
  const DenseMatrix left =
      scld::build_affinity(d, 2, AffinitySide::left).values;
  const DenseMatrix right =
      scld::build_affinity(d, 2, AffinitySide::right).values;
  CHECK((left - right).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("converged representation of clean subspace data has rank 20") {
  scld::SyntheticSpec spec;
  spec.seed = 0;
  const DenseMatrix x = scld::generate(spec).x;
  const scld::SolverResult res = scld::solve(x, scld::SolverConfig{});
  REQUIRE(res.termination == scld::Termination::converged);

  // 5 subspaces x dimension 4: the minimizer reproduces the data's rank.
  const SpectralDecomposition s = scld::skinny_svd(res.z_star, 1e-6);
  CHECK(s.singular_values.size() == 20);

  const AffinityMatrix w = scld::build_affinity(s, 2);
  CHECK((w.values.array() >= 0.0).all());
  CHECK((w.values.array() <= 1.0 + 1e-12).all());
  CHECK((w.values - w.values.transpose()).norm() == 0.0);
}
