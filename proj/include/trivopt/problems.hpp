#pragma once

#include <cstdint>
#include <string>

#include "trivopt/engine.hpp"

namespace trivopt {

/// Orthogonal Procrustes alignment: f(Q) = |A Q - B|_F^2 / 2 with
/// B = A Q*, so the optimum value 0 is attained at the planted rotation Q*.
/// A is n x n with singular values resampled into [1, 2] so the problem is
/// well conditioned and the minimizer is unique.
Problem make_procrustes_problem(const Matrix& A, const Matrix& q_star,
                                std::uint64_t validation_seed);

/// Rayleigh quotient on the sphere: f(x) = -x^T M x / 2 for a symmetric M;
/// minimized at the dominant eigenvector with value -lambda_max/2.
Problem make_rayleigh_sphere_problem(const Matrix& M,
                                     std::uint64_t validation_seed);

/// Squared geodesic distance to a target rotation: f(Q) = d(Q, Q*)^2 / 2.
/// Smooth inside the injectivity radius around Q*; the gradient evaluation
/// throws BranchError on the cut locus.
Problem make_geodesic_distance_problem(const Matrix& q_star,
                                       std::uint64_t validation_seed);

/// Seeded factory for the named families above ("procrustes",
/// "rayleigh-sphere", "geodesic-distance").  All randomness (A, Q*, M)
/// derives from `seed`; the gradient of every built instance is
/// finite-difference checked before it is returned.
Problem build_problem(const std::string& name, int n, std::uint64_t seed);

}  // namespace trivopt
