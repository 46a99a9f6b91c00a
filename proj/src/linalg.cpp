#include "trivopt/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace trivopt {

void require_finite(const Matrix& M, const char* who) {
  if (!M.allFinite()) {
    throw DomainError(std::string(who) + ": non-finite entries");
  }
}

void require_square(const Matrix& M, const char* who) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw DimensionError(std::string(who) + ": expected a nonempty square matrix, got " +
                         std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
}

void require_same_shape(const Matrix& A, const Matrix& B, const char* who) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw DimensionError(std::string(who) + ": shape mismatch " +
                         std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                         " vs " + std::to_string(B.rows()) + "x" +
                         std::to_string(B.cols()));
  }
}

void require_skew(const Matrix& M, const char* who) {
  require_square(M, who);
  require_finite(M, who);
  const double defect = (M + M.transpose()).norm();
  const double scale = std::max(1.0, M.norm());
  if (defect > 1e-14 * scale) {
    throw DomainError(std::string(who) + ": matrix is not skew-symmetric (defect " +
                      std::to_string(defect) + ")");
  }
}

double frobenius_inner(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "frobenius_inner");
  return (A.array() * B.array()).sum();
}

Matrix skew_project(const Matrix& M) {
  require_square(M, "skew_project");
  return 0.5 * (M - M.transpose());
}

double one_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return M.cwiseAbs().colwise().sum().maxCoeff();
}

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  require_finite(M, "spectral_norm");
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

Matrix orthonormalize(const Matrix& M) {
  require_square(M, "orthonormalize");
  require_finite(M, "orthonormalize");
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(sv.size() - 1) < 1e-10 * sv(0)) {
    throw SingularityError("orthonormalize: input is numerically rank deficient");
  }
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix Q = qr.householderQ() * Matrix::Identity(M.rows(), M.cols());
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the sign ambiguity of QR so the factorization is the unique one with
  // a positive-diagonal R.
  for (int j = 0; j < Q.cols(); ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  if (Q.determinant() < 0.0) {
    Q.col(Q.cols() - 1) = -Q.col(Q.cols() - 1);
  }
  return Q;
}

Matrix polar_orthogonal(const Matrix& M) {
  require_square(M, "polar_orthogonal");
  require_finite(M, "polar_orthogonal");
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0)))) {
    throw SingularityError("polar_orthogonal: input is numerically singular");
  }
  Matrix U = M;
  for (int it = 0; it < 100; ++it) {
    const Matrix next = 0.5 * (U + U.inverse().transpose());
    const double delta = (next - U).norm();
    U = next;
    if (delta <= 1e-14 * std::max(1.0, U.norm())) return U;
  }
  throw ConvergenceError("polar_orthogonal: Newton iteration failed to settle");
}

EigenPair power_iteration(const Matrix& M, std::uint64_t seed) {
  require_square(M, "power_iteration");
  require_finite(M, "power_iteration");
  const double sym_defect = (M - M.transpose()).norm();
  if (sym_defect > 1e-12 * std::max(1.0, M.norm())) {
    throw DomainError("power_iteration: matrix is not symmetric");
  }
  const int n = static_cast<int>(M.rows());
  Rng rng(seed);
  Vector v = random_unit_vector(rng, n);
  double lambda = 0.0;
  for (std::int64_t it = 0; it < 100000; ++it) {
    Vector w = M * v;
    const double norm = w.norm();
    if (norm == 0.0) {
      // The start vector lies in the kernel; for symmetric M that still means
      // eigenvalue 0 with eigenvector v.
      return {0.0, v};
    }
    v = w / norm;
    lambda = v.dot(M * v);
    const double residual = (M * v - lambda * v).norm();
    if (residual <= 1e-10 * std::max(1.0, std::abs(lambda))) {
      return {lambda, v};
    }
  }
  throw ConvergenceError("power_iteration: no convergence within 1e5 iterations");
}

Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  Matrix M(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      M(i, j) = rng.normal();
    }
  }
  return M;
}

Vector gaussian_vector(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

Matrix random_skew(Rng& rng, int n) {
  Matrix S = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const double x = rng.normal();
      S(i, j) = x;
      S(j, i) = -x;
    }
  }
  return S;
}

Matrix random_skew_with_spectral_norm(Rng& rng, int n, double target) {
  Matrix S = random_skew(rng, n);
  const double norm = spectral_norm(S);
  if (norm == 0.0) {
    throw DomainError("random_skew_with_spectral_norm: degenerate draw (n < 2?)");
  }
  return S * (target / norm);
}

Matrix random_special_orthogonal(Rng& rng, int n) {
  return orthonormalize(gaussian_matrix(rng, n, n));
}

Vector random_unit_vector(Rng& rng, int n) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Vector v = gaussian_vector(rng, n);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw DomainError("random_unit_vector: repeatedly drew a near-zero vector");
}

}  // namespace trivopt
