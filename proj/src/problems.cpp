#include "trivopt/problems.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "trivopt/matfun.hpp"

namespace trivopt {

Problem make_procrustes_problem(const Matrix& A, const Matrix& q_star,
                                std::uint64_t validation_seed) {
  require_square(A, "make_procrustes_problem");
  require_same_shape(A, q_star, "make_procrustes_problem");
  require_finite(A, "make_procrustes_problem");
  const int n = static_cast<int>(A.rows());
  make_point(ManifoldKind::SpecialOrthogonal, q_star);  // must be a rotation
  const Matrix B = A * q_star;

  Problem pb;
  pb.name = "procrustes";
  pb.kind = ManifoldKind::SpecialOrthogonal;
  pb.n = n;
  pb.objective = [A, B](const Matrix& X) { return 0.5 * (A * X - B).squaredNorm(); };
  pb.ambient_gradient = [A, B](const Matrix& X) {
    return Matrix(A.transpose() * (A * X - B));
  };
  // The alignment optimum has the closed-form polar-factor solution; evaluate
  // f there rather than assuming exact zero so the oracle stays honest under
  // roundoff.
  const Matrix x_star = polar_orthogonal(A.transpose() * B);
  pb.optimum_point = x_star;
  pb.known_optimum = pb.objective(x_star);
  // Ambient Hessian of the quadratic is A^T A in each column; its operator
  // norm is the gradient-Lipschitz constant entering the certified step size.
  const double smax = spectral_norm(A);
  pb.hessian_bound = smax * smax;
  validate_problem(pb, validation_seed);
  return pb;
}

Problem make_rayleigh_sphere_problem(const Matrix& M,
                                     std::uint64_t validation_seed) {
  require_square(M, "make_rayleigh_sphere_problem");
  require_finite(M, "make_rayleigh_sphere_problem");
  const double asym = (M - M.transpose()).norm();
  if (asym > 1e-12 * std::max(1.0, M.norm())) {
    throw DomainError("make_rayleigh_sphere_problem: matrix is not symmetric");
  }
  const int n = static_cast<int>(M.rows());
  if (n < 2) throw DimensionError("make_rayleigh_sphere_problem: n must be >= 2");
  // Work with the exactly symmetrized copy so objective and gradient agree to
  // machine precision.
  const Matrix S = 0.5 * (M + M.transpose());

  Problem pb;
  pb.name = "rayleigh-sphere";
  pb.kind = ManifoldKind::Sphere;
  pb.n = n;
  pb.objective = [S](const Matrix& x) {
    return -0.5 * (x.transpose() * S * x)(0, 0);
  };
  pb.ambient_gradient = [S](const Matrix& x) { return Matrix(-S * x); };
  // Dominant eigenpair oracle.  The plain power iteration chases the largest
  // |eigenvalue|, which may be the most negative one; shifting by the 1-norm
  // makes the spectrum positive so the true lambda_max wins.
  const double shift = one_norm(S);
  const EigenPair top = power_iteration(
      S + shift * Matrix::Identity(n, n), validation_seed);
  const double lambda_max = top.value - shift;
  pb.known_optimum = -0.5 * lambda_max;
  pb.optimum_point = Matrix(top.vector);
  validate_problem(pb, validation_seed);
  return pb;
}

Problem make_geodesic_distance_problem(const Matrix& q_star,
                                       std::uint64_t validation_seed) {
  const Point target = make_point(ManifoldKind::SpecialOrthogonal, q_star);
  const int n = static_cast<int>(q_star.rows());

  Problem pb;
  pb.name = "geodesic-distance";
  pb.kind = ManifoldKind::SpecialOrthogonal;
  pb.n = n;
  // f(X) = d(X, Q*)^2 / 2.  Smooth off the cut locus; on it the principal
  // logarithm refuses a branch and the BranchError surfaces to the caller.
  pb.objective = [q_star](const Matrix& X) {
    const Matrix W = logm_principal(X.transpose() * q_star).result;
    return 0.5 * W.squaredNorm();
  };
  // Riemannian gradient is -log_X(Q*); report it as the ambient direction
  // X * (-W), which projects back to exactly that tangent.
  pb.ambient_gradient = [q_star](const Matrix& X) {
    const Matrix W = logm_principal(X.transpose() * q_star).result;
    return Matrix(-X * W);
  };
  pb.known_optimum = 0.0;
  pb.optimum_point = q_star;
  // Non-negative sectional curvature keeps the Hessian of half the squared
  // distance dominated by the identity.
  pb.hessian_bound = 1.0;
  validate_problem(pb, validation_seed);
  return pb;
}

Problem build_problem(const std::string& name, int n, std::uint64_t seed) {
  if (n < 2) throw ConfigError("build_problem: n must be >= 2");
  const Rng root(seed);
  if (name == "procrustes") {
    Rng a_rng = root.child(1);
    const Matrix raw = gaussian_matrix(a_rng, n, n);
    // Resample the singular values into [1, 2]: well conditioned, and the
    // planted rotation is the unique global minimizer.
    Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vector sv(n);
    for (int i = 0; i < n; ++i) sv(i) = 1.0 + a_rng.uniform();
    const Matrix A = svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
    Rng q_rng = root.child(2);
    const Matrix q_star = random_special_orthogonal(q_rng, n);
    return make_procrustes_problem(A, q_star, root.child(3).seed());
  }
  if (name == "rayleigh-sphere") {
    Rng m_rng = root.child(1);
    const Matrix raw = gaussian_matrix(m_rng, n, n);
    const Matrix M = 0.5 * (raw + raw.transpose());
    return make_rayleigh_sphere_problem(M, root.child(3).seed());
  }
  if (name == "geodesic-distance") {
    Rng q_rng = root.child(2);
    const Matrix q_star = random_special_orthogonal(q_rng, n);
    return make_geodesic_distance_problem(q_star, root.child(3).seed());
  }
  throw ConfigError("build_problem: unknown problem '" + name +
                    "' (expected procrustes, rayleigh-sphere, or geodesic-distance)");
}

}  // namespace trivopt
