#include <cmath>
#include <limits>

#include "doctest.h"
#include "trivopt/errors.hpp"
#include "trivopt/linalg.hpp"
#include "trivopt/rng.hpp"

using namespace trivopt;

TEST_SUITE("core_matrix") {

TEST_CASE("seeded streams replay exactly and children are independent") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
  Rng c0 = Rng(9).child(0), c1 = Rng(9).child(1);
  int same = 0;
  for (int i = 0; i < 20; ++i) {
    if (c0.uniform() == c1.uniform()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("uniform draws live in [0,1) and normals have sane moments") {
  Rng rng(2718);
  double sum = 0.0, sumsq = 0.0;
  const int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double g = rng.normal();
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / kDraws;
  const double var = sumsq / kDraws - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("argument guards reject non-finite, non-square, non-skew input") {
  Matrix bad(2, 2);
  bad << 1.0, 2.0, 3.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(bad, "test"), DomainError);
  CHECK_THROWS_AS(require_square(Matrix::Zero(2, 3), "test"), DimensionError);
  Matrix sym(2, 2);
  sym << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(require_skew(sym, "test"), DomainError);
  CHECK_NOTHROW(require_skew(Matrix::Zero(3, 3), "test"));
}

TEST_CASE("frobenius inner product and skew projection basics") {
  CHECK(frobenius_inner(Matrix::Identity(4, 4), Matrix::Identity(4, 4)) ==
        doctest::Approx(4.0));
  Matrix A(2, 2);
  A << 1.0, 2.0, 3.0, 4.0;
  const Matrix S = skew_project(A);
  CHECK(S(0, 1) == doctest::Approx(-0.5));
  CHECK(S(1, 0) == doctest::Approx(0.5));
  CHECK(S(0, 0) == 0.0);
  // The projection is exactly antisymmetric in floating point, not just
  // approximately: (a-b)/2 and (b-a)/2 are exact negations.
  Rng rng(100);
  const Matrix R = skew_project(gaussian_matrix(rng, 6, 6));
  CHECK((R + R.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operator norms agree with hand values") {
  Matrix A(2, 2);
  A << 1.0, -2.0, 3.0, 4.0;
  CHECK(one_norm(A) == doctest::Approx(6.0));
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = -5.0;
  CHECK(spectral_norm(D) == doctest::Approx(5.0));
}

TEST_CASE("orthonormalize produces a rotation spanning the input columns") {
  Rng rng(7);
  const Matrix M = gaussian_matrix(rng, 6, 6);
  const Matrix Q = orthonormalize(M);
  CHECK((Q.transpose() * Q - Matrix::Identity(6, 6)).norm() <= 1e-13);
  CHECK(Q.determinant() > 0.0);
  // Q must span col(M): projecting M onto span(Q) changes nothing.
  CHECK((Q * (Q.transpose() * M) - M).norm() <= 1e-12 * M.norm());
}

TEST_CASE("orthonormalize rejects rank-deficient input") {
  Matrix M = Matrix::Zero(3, 3);
  M.col(0) << 1.0, 2.0, 3.0;
  M.col(1) = 2.0 * M.col(0);
  M.col(2) << 0.0, 1.0, 0.0;
  CHECK_THROWS_AS(orthonormalize(M), SingularityError);
}

TEST_CASE("polar factor is the trace-maximizing orthogonal matrix") {
  Rng rng(11);
  const Matrix M = gaussian_matrix(rng, 4, 4);
  const Matrix U = polar_orthogonal(M);
  CHECK((U.transpose() * U - Matrix::Identity(4, 4)).norm() <= 1e-12);
  const double best = (U.transpose() * M).trace();
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix V = random_special_orthogonal(rng, 4);
    CHECK((V.transpose() * M).trace() <= best + 1e-10);
  }
}

TEST_CASE("polar factor of an orthogonal matrix is itself") {
  Rng rng(12);
  const Matrix Q = random_special_orthogonal(rng, 5);
  CHECK((polar_orthogonal(Q) - Q).norm() <= 1e-13);
}

TEST_CASE("power iteration resolves the dominant eigenpair") {
  Rng rng(3);
  const Matrix V = random_special_orthogonal(rng, 5);
  Vector evals(5);
  evals << 5.0, 2.0, 1.0, 0.5, 0.1;
  const Matrix M = V * evals.asDiagonal() * V.transpose();
  const EigenPair top = power_iteration(M, 3);
  CHECK(std::abs(top.value - 5.0) <= 1e-9);
  CHECK((M * top.vector - top.value * top.vector).norm() <=
        1e-10 * std::max(1.0, std::abs(top.value)));
  CHECK(std::abs(top.vector.dot(V.col(0))) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("power iteration rejects asymmetric matrices") {
  Matrix M(2, 2);
  M << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(power_iteration(M, 1), DomainError);
}

TEST_CASE("random samplers deliver valid draws") {
  Rng rng(77);
  const Matrix S = random_skew(rng, 5);
  CHECK((S + S.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const Matrix T = random_skew_with_spectral_norm(rng, 5, 1.7);
  CHECK(spectral_norm(T) == doctest::Approx(1.7).epsilon(1e-12));

  const Matrix Q = random_special_orthogonal(rng, 6);
  CHECK((Q.transpose() * Q - Matrix::Identity(6, 6)).norm() <= 1e-13);
  CHECK(Q.determinant() > 0.0);

  const Vector u = random_unit_vector(rng, 9);
  CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

}  // TEST_SUITE
