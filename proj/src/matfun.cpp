#include "trivopt/matfun.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <numbers>

namespace trivopt {
namespace {

// Degree-12 truncation threshold.  With the scaled matrix bounded by 0.5 in
// the 1-norm the dropped tail is below 0.5^13/13! ~ 2e-14, comfortably inside
// the advertised 1e-12 relative accuracy even after the squaring phase.
constexpr double kExpmTheta = 0.5;

/// zeta(k) for even k >= 2, exact closed forms through k = 14; beyond that
/// the defining series truncated at 8 terms is already exact to double
/// precision (the tail is below 9^-16 ~ 5e-16 relative).
double zeta_even(int k) {
  const double pi = std::numbers::pi;
  switch (k) {
    case 2:  return pi * pi / 6.0;
    case 4:  return std::pow(pi, 4) / 90.0;
    case 6:  return std::pow(pi, 6) / 945.0;
    case 8:  return std::pow(pi, 8) / 9450.0;
    case 10: return std::pow(pi, 10) / 93555.0;
    case 12: return 691.0 * std::pow(pi, 12) / 638512875.0;
    case 14: return 2.0 * std::pow(pi, 14) / 18243225.0;
    default: {
      double s = 0.0;
      for (int m = 1; m <= 8; ++m) s += std::pow(static_cast<double>(m), -k);
      return s;
    }
  }
}

/// One Denman-Beavers square root with determinant scaling for fast
/// convergence.  Verifies its own result squares back to the input.
Matrix db_sqrt(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  Matrix Y = A;
  Matrix Z = Matrix::Identity(n, n);
  for (int it = 0; it < 40; ++it) {
    const double dy = std::abs(Y.partialPivLu().determinant());
    const double dz = std::abs(Z.partialPivLu().determinant());
    if (dy == 0.0 || dz == 0.0) {
      throw SingularityError("logm_principal: singular iterate in the square-root phase");
    }
    const double gamma = std::exp(-(std::log(dy) + std::log(dz)) / (2.0 * n));
    const Matrix Yn = 0.5 * (gamma * Y + (1.0 / gamma) * Z.inverse());
    const Matrix Zn = 0.5 * (gamma * Z + (1.0 / gamma) * Y.inverse());
    const double delta = (Yn - Y).norm();
    Y = Yn;
    Z = Zn;
    if (delta <= 1e-14 * std::max(1.0, Y.norm())) break;
    if (it == 39) {
      throw ConvergenceError("logm_principal: square-root iteration failed to settle");
    }
  }
  if ((Y * Y - A).norm() > 1e-11 * std::max(1.0, A.norm())) {
    throw ConvergenceError("logm_principal: square root lost accuracy");
  }
  return Y;
}

}  // namespace

ExpmReport expm(const Matrix& A) {
  require_square(A, "expm");
  require_finite(A, "expm");
  const int n = static_cast<int>(A.rows());
  const Matrix I = Matrix::Identity(n, n);
  const double norm = one_norm(A);
  if (norm == 0.0) return {I, 0, 0};

  int s = 0;
  if (norm > kExpmTheta) {
    s = static_cast<int>(std::ceil(std::log2(norm / kExpmTheta)));
    if (s < 0) s = 0;
  }
  const Matrix B = A * std::ldexp(1.0, -s);  // exact power-of-two scaling

  // Degree-12 Taylor polynomial in 5 matrix products: the explicit powers
  // B^2, B^3, B^4 and a two-level Horner recombination in B^4.
  const Matrix B2 = B * B;
  const Matrix B3 = B2 * B;
  const Matrix B4 = B2 * B2;
  const Matrix C0 = I + B + B2 / 2.0 + B3 / 6.0;
  const Matrix C1 = I / 24.0 + B / 120.0 + B2 / 720.0 + B3 / 5040.0;
  const Matrix C2 = I / 40320.0 + B / 362880.0 + B2 / 3628800.0 + B3 / 39916800.0;
  Matrix P = C2 + B4 / 479001600.0;
  P = C1 + B4 * P;
  P = C0 + B4 * P;

  for (int i = 0; i < s; ++i) P = P * P;
  return {P, 5, s};
}

LogmReport logm_principal(const Matrix& Q) {
  require_square(Q, "logm_principal");
  require_finite(Q, "logm_principal");
  const int n = static_cast<int>(Q.rows());
  const Matrix I = Matrix::Identity(n, n);

  // Principal-branch domain check: no eigenvalue on the closed negative real
  // axis.  (Zero eigenvalues -- a singular input -- fail the same test.)
  {
    Eigen::EigenSolver<Matrix> es(Q, /*computeEigenvectors=*/false);
    const auto& ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
      const double re = ev(i).real();
      const double im = ev(i).imag();
      if (re <= 0.0 && std::abs(im) <= 1e-6 * std::max(1.0, std::abs(ev(i)))) {
        throw BranchError(
            "logm_principal: eigenvalue on the closed negative real axis");
      }
    }
    // Cheap redundant check catching a -1 eigenvalue the solver reports with
    // spurious imaginary part: Q + I is then numerically singular.
    Eigen::JacobiSVD<Matrix> svd(Q + I);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-6) {
      throw BranchError("logm_principal: spectrum touches -1");
    }
  }

  // Inverse scaling: take square roots until the Gregory series converges
  // quickly.
  Matrix X = Q;
  int k = 0;
  while (one_norm(X - I) >= 0.25) {
    if (k >= 20) {
      throw ConvergenceError("logm_principal: square-root phase did not contract");
    }
    X = db_sqrt(X);
    ++k;
  }

  // log X = 2 * sum_{j>=0} Zc^{2j+1} / (2j+1) with Zc = (X - I)(X + I)^{-1}.
  const Matrix Zc = (X - I) * (X + I).inverse();
  const Matrix Zc2 = Zc * Zc;
  Matrix term = Zc;
  Matrix sum = Zc;
  for (int j = 1; j <= 100; ++j) {
    term = term * Zc2;
    sum += term / (2.0 * j + 1.0);
    if (one_norm(term) <= 1e-17 * std::max(1.0, one_norm(sum))) break;
    if (j == 100) {
      throw ConvergenceError("logm_principal: series failed to converge");
    }
  }
  Matrix L = std::ldexp(2.0, k) * sum;

  // An orthogonal input has an exactly skew logarithm; snap to it so callers
  // on the rotation group get a clean generator.
  if ((Q.transpose() * Q - I).norm() <= 1e-8 * n) {
    L = skew_project(L);
  }

  if ((expm(L).result - Q).norm() > 1e-8 * std::max(1.0, Q.norm())) {
    throw ConvergenceError("logm_principal: result fails to exponentiate back");
  }
  return {L, k};
}

Matrix dexp(const Matrix& Om, const Matrix& E) {
  require_square(Om, "dexp");
  require_same_shape(Om, E, "dexp");
  require_finite(Om, "dexp");
  require_finite(E, "dexp");
  const int n = static_cast<int>(Om.rows());
  // exp of the block matrix [[Om, E], [0, Om]] carries the directional
  // derivative in its top-right block.
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = Om;
  block.topRightCorner(n, n) = E;
  block.bottomRightCorner(n, n) = Om;
  return expm(block).result.topRightCorner(n, n);
}

Matrix dexp_adjoint(const Matrix& Om, const Matrix& F) {
  require_square(Om, "dexp_adjoint");
  require_same_shape(Om, F, "dexp_adjoint");
  return dexp(Om.transpose(), F);
}

Matrix dexp_inverse(const Matrix& Om, const Matrix& E) {
  require_square(Om, "dexp_inverse");
  require_same_shape(Om, E, "dexp_inverse");
  require_finite(Om, "dexp_inverse");
  require_finite(E, "dexp_inverse");
  const int n = static_cast<int>(Om.rows());
  const double pi = std::numbers::pi;
  const double sigma = spectral_norm(Om);
  if (sigma >= pi) {
    throw BranchError(
        "dexp_inverse: derivative operator is singular (spectral norm >= pi)");
  }

  if (sigma > 0.9 * pi) {
    // Near the invertibility boundary the commutator series converges too
    // slowly; materialize the n^2 x n^2 operator of G -> dexp(Om, G)
    // column by column and solve directly.
    Matrix L(n * n, n * n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        Matrix Eij = Matrix::Zero(n, n);
        Eij(i, j) = 1.0;
        const Matrix D = dexp(Om, Eij);
        L.col(static_cast<Eigen::Index>(j) * n + i) =
            Eigen::Map<const Vector>(D.data(), static_cast<Eigen::Index>(n) * n);
      }
    }
    const Vector rhs = Eigen::Map<const Vector>(E.data(), static_cast<Eigen::Index>(n) * n);
    const Vector g = L.partialPivLu().solve(rhs);
    return Eigen::Map<const Matrix>(g.data(), n, n);
  }

  // Solve psi(ad_Om) G = e^{-Om} E where psi(z) = (1 - e^{-z})/z, via the
  // power series of psi^{-1} in the *scaled* commutator ad_Om / (2*pi): the
  // scaling keeps the coefficients bounded (c_0 = 1, c_1 = pi, even
  // c_k = +-2 zeta(k)) so neither factor overflows.
  const Matrix Y = expm(-Om).result * E;
  Matrix M = Y;
  Matrix G = M;  // c_0 = 1
  const double target = 1e-16 * E.norm();
  bool converged = false;
  for (int k = 1; k <= 400; ++k) {
    M = (Om * M - M * Om) / (2.0 * pi);
    double c = 0.0;
    if (k == 1) {
      c = pi;
    } else if (k % 2 == 0) {
      const double sign = (k / 2 % 2 == 0) ? -1.0 : 1.0;
      c = sign * 2.0 * zeta_even(k);
    }
    if (c != 0.0) G += c * M;
    // All remaining coefficients are below 3.3 in magnitude and the terms
    // contract by at least sigma/pi per step, so this bounds the tail.
    if (3.3 * M.norm() <= target) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("dexp_inverse: commutator series failed to converge");
  }
  return G;
}

}  // namespace trivopt
