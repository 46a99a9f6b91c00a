#include "trivopt/manifold.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trivopt/matfun.hpp"

namespace trivopt {
namespace {

void require_same_kind(const Point& p, const Point& q, const char* who) {
  if (p.kind != q.kind) {
    throw DomainError(std::string(who) + ": points live on different manifolds");
  }
  if (p.coords.rows() != q.coords.rows() || p.coords.cols() != q.coords.cols()) {
    throw DimensionError(std::string(who) + ": points have different sizes");
  }
}

bool is_exactly_zero(const Matrix& M) { return (M.array() == 0.0).all(); }

/// Orthonormal basis of the hyperplane normal to the unit vector p, as the
/// first n-1 columns of the Householder reflector sending p to -sign(p_n) e_n.
/// Deterministic and well conditioned for every p (the reflector never
/// degenerates because |u|^2 = 2(1 + |p_n|) >= 2).
Matrix sphere_tangent_basis(const Vector& p) {
  const int n = static_cast<int>(p.size());
  const double s = p(n - 1) >= 0.0 ? 1.0 : -1.0;
  Vector u = p;
  u(n - 1) += s;
  const Matrix H =
      Matrix::Identity(n, n) - (2.0 / u.squaredNorm()) * (u * u.transpose());
  return H.leftCols(n - 1);
}

}  // namespace

int ambient_n(const Point& p) { return static_cast<int>(p.coords.rows()); }

int tangent_dim(const Point& p) {
  const int n = ambient_n(p);
  switch (p.kind) {
    case ManifoldKind::SpecialOrthogonal: return n * (n - 1) / 2;
    case ManifoldKind::Sphere: return n - 1;
    case ManifoldKind::Euclidean: return n;
  }
  throw UnsupportedError("tangent_dim: unknown manifold kind");
}

Point make_point(ManifoldKind kind, const Matrix& coords) {
  require_finite(coords, "make_point");
  switch (kind) {
    case ManifoldKind::SpecialOrthogonal: {
      require_square(coords, "make_point");
      const int n = static_cast<int>(coords.rows());
      if (n < 2) throw DimensionError("make_point: rotation group needs n >= 2");
      const double defect =
          (coords.transpose() * coords - Matrix::Identity(n, n)).norm();
      if (defect > 1e-10 * n) {
        throw DomainError("make_point: matrix is not orthogonal (defect " +
                          std::to_string(defect) + ")");
      }
      if (coords.determinant() < 0.0) {
        throw DomainError("make_point: orthogonal matrix is a reflection");
      }
      break;
    }
    case ManifoldKind::Sphere: {
      if (coords.cols() != 1 || coords.rows() < 2) {
        throw DimensionError("make_point: sphere point must be an n-vector, n >= 2");
      }
      if (std::abs(coords.norm() - 1.0) > 1e-12) {
        throw DomainError("make_point: vector does not have unit norm");
      }
      break;
    }
    case ManifoldKind::Euclidean: {
      if (coords.cols() != 1 || coords.rows() < 1) {
        throw DimensionError("make_point: point must be a nonempty column vector");
      }
      break;
    }
  }
  return Point{kind, coords};
}

Tangent make_tangent(const Point& base, const Matrix& coords) {
  require_finite(coords, "make_tangent");
  switch (base.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      require_same_shape(base.coords, coords, "make_tangent");
      require_skew(coords, "make_tangent");
      break;
    }
    case ManifoldKind::Sphere: {
      require_same_shape(base.coords, coords, "make_tangent");
      const double radial = (base.coords.transpose() * coords)(0, 0);
      if (std::abs(radial) > 1e-12 * std::max(1.0, coords.norm())) {
        throw DomainError("make_tangent: vector has a radial component (" +
                          std::to_string(radial) + ")");
      }
      break;
    }
    case ManifoldKind::Euclidean: {
      require_same_shape(base.coords, coords, "make_tangent");
      break;
    }
  }
  return Tangent{base.kind, base.coords, coords};
}

Tangent zero_tangent(const Point& base) {
  return Tangent{base.kind, base.coords,
                 Matrix::Zero(base.coords.rows(), base.coords.cols())};
}

Tangent project_tangent(const Point& base, const Matrix& ambient) {
  require_finite(ambient, "project_tangent");
  require_same_shape(base.coords, ambient, "project_tangent");
  switch (base.kind) {
    case ManifoldKind::SpecialOrthogonal:
      return Tangent{base.kind, base.coords,
                     skew_project(base.coords.transpose() * ambient)};
    case ManifoldKind::Sphere: {
      const double radial = (base.coords.transpose() * ambient)(0, 0);
      return Tangent{base.kind, base.coords, ambient - radial * base.coords};
    }
    case ManifoldKind::Euclidean:
      return Tangent{base.kind, base.coords, ambient};
  }
  throw UnsupportedError("project_tangent: unknown manifold kind");
}

double tangent_norm(const Tangent& v) { return v.coords.norm(); }

double tangent_inner(const Tangent& a, const Tangent& b) {
  if (a.kind != b.kind) {
    throw DomainError("tangent_inner: tangents live on different manifolds");
  }
  return frobenius_inner(a.coords, b.coords);
}

Matrix ambient_direction(const Tangent& v) {
  if (v.kind == ManifoldKind::SpecialOrthogonal) return v.base * v.coords;
  return v.coords;
}

Point exp_point(const Tangent& v) {
  if (is_exactly_zero(v.coords)) {
    return Point{v.kind, v.base};  // bit-exact: a zero step must not move
  }
  switch (v.kind) {
    case ManifoldKind::SpecialOrthogonal:
      return Point{v.kind, v.base * expm(v.coords).result};
    case ManifoldKind::Sphere: {
      const double theta = v.coords.norm();
      Matrix q = std::cos(theta) * v.base + (std::sin(theta) / theta) * v.coords;
      q /= q.norm();
      return Point{v.kind, q};
    }
    case ManifoldKind::Euclidean:
      return Point{v.kind, v.base + v.coords};
  }
  throw UnsupportedError("exp_point: unknown manifold kind");
}

Tangent log_point(const Point& p, const Point& q) {
  require_same_kind(p, q, "log_point");
  switch (p.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      const Matrix W = logm_principal(p.coords.transpose() * q.coords).result;
      if (spectral_norm(W) >= std::numbers::pi - 1e-6) {
        throw BranchError("log_point: target within 1e-6 of the cut locus");
      }
      return Tangent{p.kind, p.coords, W};
    }
    case ManifoldKind::Sphere: {
      if ((p.coords + q.coords).norm() <= 1e-8) {
        throw BranchError("log_point: target is antipodal");
      }
      const double c =
          std::clamp((p.coords.transpose() * q.coords)(0, 0), -1.0, 1.0);
      const Matrix residual = q.coords - c * p.coords;
      const double s = residual.norm();
      const double theta = std::atan2(s, c);
      if (theta >= std::numbers::pi - 1e-6) {
        throw BranchError("log_point: target within 1e-6 of the antipode");
      }
      if (s == 0.0) return zero_tangent(p);
      return Tangent{p.kind, p.coords, (theta / s) * residual};
    }
    case ManifoldKind::Euclidean:
      return Tangent{p.kind, p.coords, q.coords - p.coords};
  }
  throw UnsupportedError("log_point: unknown manifold kind");
}

Tangent egrad_to_rgrad(const Point& base, const Matrix& euclidean_gradient) {
  // Orthogonal projection realizes the gradient for an isometrically embedded
  // metric; for rotations this lands in left-trivialized coordinates.
  return project_tangent(base, euclidean_gradient);
}

Tangent parallel_transport(const Tangent& v, const Point& q) {
  const Point p{v.kind, v.base};
  require_same_kind(p, q, "parallel_transport");
  if (v.base.rows() == q.coords.rows() && v.base.cols() == q.coords.cols() &&
      (v.base.array() == q.coords.array()).all()) {
    return Tangent{v.kind, q.coords, v.coords};
  }
  switch (v.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      const Matrix W = log_point(p, q).coords;
      const Matrix half = expm(0.5 * W).result;
      // Left-trivialized transport along exp(tW): conjugation by e^{W/2}.
      return Tangent{v.kind, q.coords, half.transpose() * v.coords * half};
    }
    case ManifoldKind::Sphere: {
      const Matrix w = log_point(p, q).coords;
      const double theta = w.norm();
      if (theta == 0.0) return Tangent{v.kind, q.coords, v.coords};
      const Matrix u = w / theta;
      const double along = (u.transpose() * v.coords)(0, 0);
      const Matrix moved = v.coords + (std::cos(theta) - 1.0) * along * u -
                           std::sin(theta) * along * p.coords;
      return Tangent{v.kind, q.coords, moved};
    }
    case ManifoldKind::Euclidean:
      return Tangent{v.kind, q.coords, v.coords};
  }
  throw UnsupportedError("parallel_transport: unknown manifold kind");
}

Tangent holonomy_loop(const Point& p, const std::vector<Point>& waypoints,
                      const Tangent& w) {
  Tangent cur = w;
  for (const Point& stop : waypoints) cur = parallel_transport(cur, stop);
  return parallel_transport(cur, p);
}

Point cayley_retract(const Tangent& v) {
  switch (v.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      const int n = static_cast<int>(v.base.rows());
      const Matrix I = Matrix::Identity(n, n);
      Eigen::FullPivLU<Matrix> lu(I - 0.5 * v.coords);
      if (!lu.isInvertible()) {
        throw SingularityError("cayley_retract: resolvent I - Om/2 is singular");
      }
      return Point{v.kind, v.base * lu.solve(I + 0.5 * v.coords)};
    }
    case ManifoldKind::Sphere: {
      const Matrix chord = v.base + v.coords;
      return Point{v.kind, chord / chord.norm()};
    }
    case ManifoldKind::Euclidean:
      return Point{v.kind, v.base + v.coords};
  }
  throw UnsupportedError("cayley_retract: unknown manifold kind");
}

double distance(const Point& p, const Point& q) {
  return tangent_norm(log_point(p, q));
}

Vector tangent_to_flat(const Tangent& v) {
  switch (v.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      const int n = static_cast<int>(v.coords.rows());
      Vector flat(n * (n - 1) / 2);
      int idx = 0;
      for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) flat(idx++) = v.coords(i, j);
      }
      return flat;
    }
    case ManifoldKind::Sphere:
      return sphere_tangent_basis(v.base).transpose() * v.coords;
    case ManifoldKind::Euclidean:
      return v.coords;
  }
  throw UnsupportedError("tangent_to_flat: unknown manifold kind");
}

Tangent tangent_from_flat(const Point& base, const Vector& flat) {
  if (flat.size() != tangent_dim(base)) {
    throw DimensionError("tangent_from_flat: coordinate length " +
                         std::to_string(flat.size()) + " != tangent dimension " +
                         std::to_string(tangent_dim(base)));
  }
  switch (base.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      const int n = ambient_n(base);
      Matrix Om = Matrix::Zero(n, n);
      int idx = 0;
      for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
          const double c = flat(idx++);
          Om(i, j) = c;
          Om(j, i) = -c;
        }
      }
      return Tangent{base.kind, base.coords, Om};
    }
    case ManifoldKind::Sphere:
      return Tangent{base.kind, base.coords, sphere_tangent_basis(base.coords) * flat};
    case ManifoldKind::Euclidean:
      return Tangent{base.kind, base.coords, flat};
  }
  throw UnsupportedError("tangent_from_flat: unknown manifold kind");
}

Point random_point(ManifoldKind kind, int n, Rng& rng) {
  switch (kind) {
    case ManifoldKind::SpecialOrthogonal:
      return Point{kind, random_special_orthogonal(rng, n)};
    case ManifoldKind::Sphere:
      return Point{kind, random_unit_vector(rng, n)};
    case ManifoldKind::Euclidean:
      return Point{kind, gaussian_vector(rng, n)};
  }
  throw UnsupportedError("random_point: unknown manifold kind");
}

Tangent random_tangent(const Point& base, Rng& rng) {
  switch (base.kind) {
    case ManifoldKind::SpecialOrthogonal:
      return Tangent{base.kind, base.coords, random_skew(rng, ambient_n(base))};
    case ManifoldKind::Sphere:
      return project_tangent(base, gaussian_vector(rng, ambient_n(base)));
    case ManifoldKind::Euclidean:
      return Tangent{base.kind, base.coords, gaussian_vector(rng, ambient_n(base))};
  }
  throw UnsupportedError("random_tangent: unknown manifold kind");
}

}  // namespace trivopt
