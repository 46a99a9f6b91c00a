#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "trivopt/errors.hpp"
#include "trivopt/rng.hpp"

namespace trivopt {

/// Dense real matrix, the universal numeric carrier (64-bit precision).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Alias for a skew-symmetric square matrix (Om + Om^T = 0 to within
/// 1e-14 * max(1, ||Om||_F)).  The invariant is enforced by `require_skew`
/// at the API boundaries that demand it rather than by a wrapper type.
using SkewMatrix = Matrix;

// ---- precondition helpers (throw DimensionError / DomainError) ------------
void require_finite(const Matrix& M, const char* who);
void require_square(const Matrix& M, const char* who);
void require_same_shape(const Matrix& A, const Matrix& B, const char* who);
void require_skew(const Matrix& M, const char* who);

/// trace(A^T B); the Frobenius inner product.
double frobenius_inner(const Matrix& A, const Matrix& B);

/// Orthogonal projection onto skew-symmetric matrices: (M - M^T) / 2.
Matrix skew_project(const Matrix& M);

/// Maximum absolute column sum.
double one_norm(const Matrix& M);

/// Largest singular value.
double spectral_norm(const Matrix& M);

/// Orthogonal factor of the QR factorization with positive-diagonal R; if the
/// result has determinant -1 its last column is flipped, so the returned Q is
/// always special orthogonal for full-rank input.  Used to repair
/// orthogonality drift of points on the rotation group.
/// Throws SingularityError when the smallest singular value is below
/// 1e-10 times the largest.
Matrix orthonormalize(const Matrix& M);

/// Orthogonal polar factor U of M = U P (P symmetric positive definite),
/// computed by the Newton iteration U <- (U + U^-T)/2 until successive
/// iterates differ by at most 1e-14 in Frobenius norm.  U maximizes
/// trace(U^T M) over orthogonal U.
Matrix polar_orthogonal(const Matrix& M);

struct EigenPair {
  double value = 0.0;
  Vector vector;
};

/// Dominant eigenpair of a symmetric matrix by power iteration, converged when
/// the residual ||Mv - lambda v|| falls to 1e-10; throws ConvergenceError
/// after 1e5 iterations.
EigenPair power_iteration(const Matrix& M, std::uint64_t seed);

// ---- deterministic random samplers ----------------------------------------
Matrix gaussian_matrix(Rng& rng, int rows, int cols);
Vector gaussian_vector(Rng& rng, int n);
Matrix random_skew(Rng& rng, int n);
Matrix random_skew_with_spectral_norm(Rng& rng, int n, double target);
Matrix random_special_orthogonal(Rng& rng, int n);
Vector random_unit_vector(Rng& rng, int n);

}  // namespace trivopt
