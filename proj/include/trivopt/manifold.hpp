#pragma once

#include <vector>

#include "trivopt/linalg.hpp"
#include "trivopt/rng.hpp"

namespace trivopt {

/// Supported spaces.  SpecialOrthogonal is SO(n) embedded in R^{n x n};
/// Sphere is S^{n-1} embedded in R^n; Euclidean is the flat reference space
/// R^n (points and tangents are n-vectors, all charts are the identity).
enum class ManifoldKind {
  SpecialOrthogonal,
  Sphere,
  Euclidean,
};

/// A point on a manifold.  For SpecialOrthogonal, `coords` is the n x n
/// rotation matrix; for Sphere and Euclidean it is an n x 1 column.
struct Point {
  ManifoldKind kind = ManifoldKind::Euclidean;
  Matrix coords;
};

/// A tangent vector attached to a base point.  For SpecialOrthogonal the
/// coordinates are the left-trivialized generator: the skew matrix Om with
/// the ambient direction Q*Om at base Q.  For Sphere the coordinates are the
/// ambient vector orthogonal to the base point.  For Euclidean they are a
/// free n-vector.
struct Tangent {
  ManifoldKind kind = ManifoldKind::Euclidean;
  Matrix base;
  Matrix coords;
};

/// Side length of the ambient container: n for an n x n rotation or an
/// n-vector.
int ambient_n(const Point& p);

/// Intrinsic dimension: n(n-1)/2 for SO(n), n-1 for S^{n-1}, n for R^n.
int tangent_dim(const Point& p);

/// Validates membership (orthogonality + positive determinant, unit norm, or
/// finiteness) and returns the point.  Throws DomainError on violation.
Point make_point(ManifoldKind kind, const Matrix& coords);

/// Validates tangency against `base` (skew-symmetry, orthogonality to the
/// base point, or finiteness) and returns the tangent.  Throws DomainError
/// on violation.
Tangent make_tangent(const Point& base, const Matrix& coords);

Tangent zero_tangent(const Point& base);

/// Orthogonal projection of arbitrary ambient coordinates onto the tangent
/// space at `base` (skew part of the left-trivialized matrix for rotations,
/// removal of the radial component for the sphere).
Tangent project_tangent(const Point& base, const Matrix& ambient);

double tangent_norm(const Tangent& v);
double tangent_inner(const Tangent& a, const Tangent& b);

/// The tangent vector as a direction in the embedding space (Q*Om for
/// rotations; the coordinates themselves otherwise).
Matrix ambient_direction(const Tangent& v);

/// Riemannian exponential: geodesic from the base point with initial
/// velocity v, evaluated at time 1.  Exact for all three spaces.
Point exp_point(const Tangent& v);

/// Inverse of exp_point: the tangent at p pointing to q along the minimizing
/// geodesic.  Throws BranchError when q is at or beyond the injectivity
/// boundary seen from p (antipodal sphere points; rotation angle at pi).
Tangent log_point(const Point& p, const Point& q);

/// Converts the gradient of the ambient extension of a function into the
/// Riemannian gradient at `base`.  `euclidean_gradient` has ambient shape.
Tangent egrad_to_rgrad(const Point& base, const Matrix& euclidean_gradient);

/// Parallel transport of v along the minimizing geodesic from v.base to q
/// (Levi-Civita connection).  Throws BranchError in the same situations as
/// log_point.
Tangent parallel_transport(const Tangent& v, const Point& q);

/// Transports w around the piecewise-geodesic loop
/// p -> waypoints[0] -> ... -> waypoints.back() -> p and returns the result,
/// still based at p.  Exposes curvature: the loop map is a nontrivial
/// isometry of the tangent space.
Tangent holonomy_loop(const Point& p, const std::vector<Point>& waypoints,
                      const Tangent& w);

/// First-order retraction alternative to exp_point.  For rotations this is
/// the Cayley transform Q*(I - Om/2)^{-1}(I + Om/2); for the sphere the
/// chordal normalization (p + v)/|p + v|; identity translation for
/// Euclidean.  Throws SingularityError if the Cayley resolvent is singular.
Point cayley_retract(const Tangent& v);

/// Geodesic distance induced by the embedded metric.
double distance(const Point& p, const Point& q);

/// Packs tangent coordinates into a dense R^{tangent_dim} vector.  Rotations
/// use the strict lower triangle of the generator in column-major order; the
/// sphere uses a deterministic Householder basis of the hyperplane normal to
/// the base point; Euclidean is the identity.  tangent_from_flat inverts the
/// packing exactly.
Vector tangent_to_flat(const Tangent& v);
Tangent tangent_from_flat(const Point& base, const Vector& flat);

Point random_point(ManifoldKind kind, int n, Rng& rng);
Tangent random_tangent(const Point& base, Rng& rng);

}  // namespace trivopt
