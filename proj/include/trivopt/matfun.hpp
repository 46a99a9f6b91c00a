#pragma once

#include "trivopt/linalg.hpp"

namespace trivopt {

/// Matrix exponential with an audit of the polynomial-evaluation budget.
/// `polynomial_products` counts matrix-matrix products spent on the truncated
/// Taylor polynomial (at most 5 by construction); the final repeated
/// squarings are reported separately.
struct ExpmReport {
  Matrix result;
  int polynomial_products = 0;
  int squarings = 0;
};

/// Principal matrix logarithm plus the number of square roots taken by the
/// inverse scaling phase.
struct LogmReport {
  Matrix result;
  int square_roots_taken = 0;
};

/// Scaling-and-squaring exponential: pick s = max(0, ceil(log2(|A|_1/theta))),
/// evaluate a degree-12 Taylor polynomial of e^{A/2^s} in 5 matrix products
/// (Paterson-Stockmeyer), then square s times.
ExpmReport expm(const Matrix& A);

/// Principal logarithm by inverse scaling-and-squaring: Denman-Beavers square
/// roots until |Q^{1/2^k} - I|_1 < 0.25, a Gregory series for log of the
/// remainder, then multiplication by 2^k.  For orthogonal input the result is
/// cleaned to an exactly skew-symmetric generator.  Throws BranchError when
/// the input has an eigenvalue on the closed negative real axis (for a
/// rotation: angle at pi), i.e. outside the principal branch.
LogmReport logm_principal(const Matrix& Q);

/// Frechet derivative of the exponential: d/dt|_0 e^{Om + t E}, computed from
/// the doubled block identity exp([[Om, E], [0, Om]]) = [[e^Om, L], [0, e^Om]].
Matrix dexp(const Matrix& Om, const Matrix& E);

/// Adjoint of dexp(Om, .) under the Frobenius inner product; equals
/// dexp(Om^T, F) by the integral representation of the derivative.
Matrix dexp_adjoint(const Matrix& Om, const Matrix& F);

/// Solves dexp(Om, G) = E for G.  Requires the spectral radius of
/// ad_Om : X -> Om X - X Om to be below 2*pi, guaranteed when the spectral
/// norm of Om is below pi (throws BranchError otherwise).  Uses the scaled
/// Bernoulli-number series of z/(1 - e^{-z}) applied to ad_Om; near the
/// boundary (spectral norm above 0.9*pi) the dense n^2 x n^2 operator is
/// materialized and solved directly instead.
Matrix dexp_inverse(const Matrix& Om, const Matrix& E);

}  // namespace trivopt
