#include "trivopt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trivopt/matfun.hpp"

namespace trivopt {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Eval {
  double f = 0.0;
  Matrix G;
};

Eval evaluate(const Problem& problem, const Point& x) {
  Eval e;
  e.f = problem.objective(x.coords);
  e.G = problem.ambient_gradient(x.coords);
  return e;
}

/// Geodesic distance, falling back to the ambient chord when the two points
/// straddle the cut locus (where the geodesic formula refuses to pick a
/// branch); only used for the step_dist diagnostic column.
double safe_distance(const Point& a, const Point& b) {
  try {
    return distance(a, b);
  } catch (const BranchError&) {
    return (a.coords - b.coords).norm();
  }
}

/// Steps along v and repairs accumulated orthogonality drift on the rotation
/// group (the sphere re-normalizes inside exp_point already).  Every engine
/// moves its iterate through this one helper so that algorithms specified to
/// coincide do so bit-for-bit.
Point step_to(const Tangent& v) {
  Point q = exp_point(v);
  if (q.kind == ManifoldKind::SpecialOrthogonal) {
    const int n = static_cast<int>(q.coords.rows());
    const double drift =
        (q.coords.transpose() * q.coords - Matrix::Identity(n, n)).norm();
    if (drift > 1e-12) q.coords = orthonormalize(q.coords);
  }
  return q;
}

/// True when the coordinate has drifted to the injectivity boundary of its
/// chart, i.e. the trivialization is about to stop being invertible.
bool chart_radius_exceeded(const Tangent& v) {
  switch (v.kind) {
    case ManifoldKind::SpecialOrthogonal:
      return spectral_norm(v.coords) >= std::numbers::pi - 1e-6;
    case ManifoldKind::Sphere:
      return v.coords.norm() >= std::numbers::pi - 1e-6;
    case ManifoldKind::Euclidean:
      return false;
  }
  throw UnsupportedError("chart_radius_exceeded: unknown manifold kind");
}

// ---------------------------------------------------------------------------
// Chart calculus.  A chart at p with coordinate w is the map w -> exp_p(w);
// the engines need its differential's adjoint (to move optimizer outputs out
// of the anchor tangent space) and the adjoint of the inverse differential
// (to move them in).  Rotation group: both reduce to dexp/dexp_inverse in
// left-trivialized coordinates.  Sphere: closed forms from the Jacobi fields,
// which scale the component orthogonal to the geodesic by sin(theta)/theta.
// ---------------------------------------------------------------------------

Matrix so_chart_adjoint(const Matrix& W, const Matrix& Y) {
  // adjoint of E -> e^{-W} dexp(W, E) is Y -> e^{W} dexp(-W, Y)
  return expm(W).result * dexp(-W, Y);
}

Matrix so_chart_inverse_adjoint(const Matrix& W, const Matrix& E) {
  return dexp_inverse(-W, expm(-W).result * E);
}

struct SphereChart {
  Vector p;        ///< chart base point
  Vector q;        ///< chart image exp_p(w)
  Vector u;        ///< unit coordinate direction w/theta
  Vector u_q;      ///< u transported to q (terminal geodesic velocity)
  double theta = 0.0;
  double sin_t = 0.0;
  double cos_t = 1.0;
  bool tiny = true;  ///< theta below noise: every chart map is the identity
};

SphereChart sphere_chart(const Matrix& p, const Matrix& w) {
  SphereChart c;
  c.p = p;
  c.q = p;
  c.theta = w.norm();
  if (c.theta < 1e-12) return c;
  c.tiny = false;
  c.u = w / c.theta;
  c.sin_t = std::sin(c.theta);
  c.cos_t = std::cos(c.theta);
  c.q = c.cos_t * c.p + c.sin_t * c.u;
  c.u_q = c.cos_t * c.u - c.sin_t * c.p;
  return c;
}

/// Parallel transport along the chart geodesic from p to q.
Vector sphere_transport_fwd(const SphereChart& c, const Vector& z) {
  if (c.tiny) return z;
  const double a = c.u.dot(z);
  return z + (c.cos_t - 1.0) * a * c.u - c.sin_t * a * c.p;
}

/// Parallel transport along the same geodesic from q back to p.
Vector sphere_transport_back(const SphereChart& c, const Vector& y) {
  if (c.tiny) return y;
  const double a = c.u_q.dot(y);
  return y + (c.cos_t - 1.0) * a * c.u_q + c.sin_t * a * c.q;
}

/// Adjoint of the chart differential: tangent at q -> coordinate direction.
Vector sphere_chart_adjoint(const SphereChart& c, const Vector& y) {
  if (c.tiny) return y;
  const Vector z = sphere_transport_back(c, y);
  const double a = c.u.dot(z);
  return a * c.u + (c.sin_t / c.theta) * (z - a * c.u);
}

/// Adjoint of the inverse differential: coordinate direction -> tangent at q.
Vector sphere_chart_inverse_adjoint(const SphereChart& c, const Vector& e) {
  if (c.tiny) return e;
  if (c.sin_t <= 1e-9) {
    throw BranchError("sphere chart is degenerate near the antipode");
  }
  const double a = c.u.dot(e);
  const Vector scaled = a * c.u + (c.theta / c.sin_t) * (e - a * c.u);
  return sphere_transport_fwd(c, scaled);
}

/// Gradient of f composed with the chart at `anchor`, given the chart
/// coordinate w, the evaluated point x = exp_anchor(w), and the ambient
/// gradient G of f at x.
Tangent pullback_from_ambient(const Point& anchor, const Tangent& w,
                              const Point& x, const Matrix& G) {
  switch (anchor.kind) {
    case ManifoldKind::SpecialOrthogonal:
      // chain rule through X = P0 e^W: the adjoint of E -> P0 dexp(W, E)
      // is G -> dexp(W^T, P0^T G), projected to the skew directions.
      return Tangent{anchor.kind, anchor.coords,
                     skew_project(dexp(w.coords.transpose(),
                                       anchor.coords.transpose() * G))};
    case ManifoldKind::Sphere: {
      const SphereChart c = sphere_chart(anchor.coords, w.coords);
      const Vector gx = project_tangent(x, G).coords;
      if (c.tiny) {
        if ((w.coords.array() == 0.0).all()) {
          return Tangent{anchor.kind, anchor.coords, gx};
        }
        return project_tangent(anchor, gx);
      }
      return project_tangent(anchor, sphere_chart_adjoint(c, gx));
    }
    case ManifoldKind::Euclidean:
      return Tangent{anchor.kind, anchor.coords, G};
  }
  throw UnsupportedError("pullback_from_ambient: unknown manifold kind");
}

/// Core of steepest_transport once x = exp_{p_i}(v) and w = log_{p0}(x) are
/// known: adjoint of the inverse chart differential at the anchor, then
/// adjoint of the chart differential at the trivialization point.
Tangent steepest_core(const Tangent& v, const Tangent& w, const Tangent& dir) {
  switch (v.kind) {
    case ManifoldKind::SpecialOrthogonal: {
      const Matrix at_x = so_chart_inverse_adjoint(w.coords, dir.coords);
      return Tangent{v.kind, v.base,
                     skew_project(so_chart_adjoint(v.coords, at_x))};
    }
    case ManifoldKind::Sphere: {
      const SphereChart anchor_chart = sphere_chart(dir.base, w.coords);
      const SphereChart triv_chart = sphere_chart(v.base, v.coords);
      const Vector at_x = sphere_chart_inverse_adjoint(anchor_chart, dir.coords);
      const Vector out = sphere_chart_adjoint(triv_chart, at_x);
      return project_tangent(Point{v.kind, v.base}, out);
    }
    case ManifoldKind::Euclidean:
      return Tangent{v.kind, v.base, dir.coords};
  }
  throw UnsupportedError("steepest_core: unknown manifold kind");
}

// ---------------------------------------------------------------------------
// Run bookkeeping shared by every engine.
// ---------------------------------------------------------------------------

struct Recorder {
  RunRecord rec;
  bool has_prev = false;
  Point prev;

  /// Records one evaluated iterate; returns false (without recording) when
  /// the evaluation is non-finite, which the caller turns into an abort.
  bool record(std::int64_t i, std::int64_t k, const Point& x, const Eval& e,
              std::int64_t restarts) {
    if (!std::isfinite(e.f) || !e.G.allFinite()) return false;
    IterationRow row;
    row.iter_outer = i;
    row.iter_inner = k;
    row.f = e.f;
    row.grad_norm = tangent_norm(egrad_to_rgrad(x, e.G));
    row.step_dist = has_prev ? safe_distance(prev, x) : 0.0;
    row.restarts = restarts;
    rec.rows.push_back(row);
    rec.points.push_back(x);
    prev = x;
    has_prev = true;
    return true;
  }

  void abort(const std::string& reason) {
    rec.aborted = true;
    rec.abort_reason = reason;
  }
};

void finalize(Recorder& r, const Problem& problem, const Point& p0,
              std::int64_t restarts) {
  RunRecord& rec = r.rec;
  rec.restarts = restarts;
  if (rec.rows.empty()) {
    rec.terminal = p0;
    rec.final_f = rec.best_f = kNan;
    if (!rec.aborted) {
      try {
        rec.final_f = rec.best_f = problem.objective(p0.coords);
      } catch (const Error& e) {
        r.abort(e.what());
      }
    }
    return;
  }
  rec.terminal = rec.points.back();
  rec.final_f = rec.rows.back().f;
  double best = rec.rows.front().f;
  for (const IterationRow& row : rec.rows) best = std::min(best, row.f);
  rec.best_f = best;
}

void check_run_args(const Problem& problem, double eta, std::int64_t iters,
                    const Point& p0) {
  if (!problem.objective || !problem.ambient_gradient) {
    throw ConfigError("run: problem has no objective/gradient registered");
  }
  if (p0.kind != problem.kind) {
    throw ConfigError("run: starting point lives on the wrong manifold");
  }
  if (ambient_n(p0) != problem.n) {
    throw DimensionError("run: starting point size does not match the problem");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ConfigError("run: step size must be positive and finite");
  }
  if (iters < 0) throw ConfigError("run: iteration count must be non-negative");
  make_point(p0.kind, p0.coords);  // validates manifold membership
}

}  // namespace

void validate_problem(const Problem& problem, std::uint64_t seed) {
  if (!problem.objective || !problem.ambient_gradient) {
    throw ConfigError("validate_problem: objective/gradient not registered");
  }
  const double h = 1e-5;
  Rng rng(seed);
  int done = 0;
  for (int attempt = 0; attempt < 50 && done < 10; ++attempt) {
    try {
      const Point p = random_point(problem.kind, problem.n, rng);
      Tangent u = random_tangent(p, rng);
      const double un = tangent_norm(u);
      if (un == 0.0) continue;
      u.coords /= un;
      Tangent step = u;
      step.coords = h * u.coords;
      const double f_plus = problem.objective(exp_point(step).coords);
      step.coords = -h * u.coords;
      const double f_minus = problem.objective(exp_point(step).coords);
      const double fd = (f_plus - f_minus) / (2.0 * h);
      const double an =
          frobenius_inner(problem.ambient_gradient(p.coords), ambient_direction(u));
      const double tol = 1e-5 * std::max({std::abs(fd), std::abs(an), 1e-6});
      if (std::abs(fd - an) > tol) {
        throw DomainError(
            "validate_problem: gradient disagrees with finite differences "
            "(directional derivative " + std::to_string(fd) + " vs pairing " +
            std::to_string(an) + ")");
      }
      ++done;
    } catch (const BranchError&) {
      continue;  // drew a point on a cut locus; try another
    }
  }
  if (done < 10) {
    throw DomainError("validate_problem: could not evaluate 10 test points");
  }
}

Tangent pullback_gradient(const Problem& problem, const Point& anchor,
                          const Tangent& w) {
  if (w.kind != anchor.kind) {
    throw DomainError("pullback_gradient: coordinate is not based at the anchor");
  }
  const Point x = exp_point(w);
  const Matrix G = problem.ambient_gradient(x.coords);
  require_finite(G, "pullback_gradient");
  return pullback_from_ambient(anchor, w, x, G);
}

Tangent steepest_transport(const Tangent& v, const Tangent& direction) {
  if (v.kind != direction.kind) {
    throw DomainError("steepest_transport: mixed manifold kinds");
  }
  const Point x = exp_point(v);
  const Point anchor{direction.kind, direction.base};
  const Tangent w = log_point(anchor, x);
  return steepest_core(v, w, direction);
}

RunRecord atriv_run(const Problem& problem, OptimizerRule rule, int horizon_k,
                    double eta, std::int64_t iters, const Point& p0,
                    OptimizerHyper hyper) {
  check_run_args(problem, eta, iters, p0);
  if (horizon_k < 0) throw ConfigError("atriv_run: horizon must be >= 0");

  OptimizerState opt(rule, tangent_dim(p0), hyper);
  Point anchor = p0;  // tangent space that owns the optimizer state
  Point triv = p0;    // current trivialization point
  Tangent v = zero_tangent(triv);
  std::int64_t inner = 0, outer = 0, restarts = 0;
  Recorder r;
  try {
    for (std::int64_t t = 0; t < iters; ++t) {
      const Point x = exp_point(v);
      Tangent w;
      try {
        w = log_point(anchor, x);
      } catch (const BranchError&) {
        // Restart: re-base the anchor here and forget the optimizer state,
        // whose coordinates no longer mean anything.
        anchor = x;
        triv = x;
        v = zero_tangent(x);
        opt.reset();
        inner = 0;
        ++restarts;
        w = zero_tangent(anchor);
      }
      const Eval e = evaluate(problem, x);
      if (!r.record(outer, inner, x, e, restarts)) {
        r.abort("non-finite objective or gradient");
        break;
      }
      const Tangent g = pullback_from_ambient(anchor, w, x, e.G);
      const Vector ghat_flat = opt.step(tangent_to_flat(g));
      const Tangent ghat = tangent_from_flat(anchor, ghat_flat);
      Tangent gtilde;
      try {
        gtilde = steepest_core(v, w, ghat);
      } catch (const BranchError&) {
        anchor = x;
        triv = x;
        v = zero_tangent(x);
        opt.reset();
        inner = 0;
        ++restarts;
        continue;  // the direction was computed in a dead chart; drop it
      }
      v.coords -= eta * gtilde.coords;
      ++inner;
      if (horizon_k != kInfiniteHorizon && inner >= horizon_k) {
        triv = step_to(v);
        v = zero_tangent(triv);
        inner = 0;
        ++outer;
      }
    }
  } catch (const Error& e) {
    r.abort(e.what());
  }
  finalize(r, problem, p0, restarts);
  return r.rec;
}

RunRecord dtriv_run(const Problem& problem, OptimizerRule rule, int horizon_k,
                    double eta, std::int64_t iters, const Point& p0,
                    OptimizerHyper hyper) {
  check_run_args(problem, eta, iters, p0);
  if (horizon_k < 0) throw ConfigError("dtriv_run: horizon must be >= 0");

  OptimizerState opt(rule, tangent_dim(p0), hyper);
  Point triv = p0;
  Tangent v = zero_tangent(triv);
  std::int64_t inner = 0, outer = 0, restarts = 0;
  Recorder r;
  try {
    for (std::int64_t t = 0; t < iters; ++t) {
      if (chart_radius_exceeded(v)) {
        // Forced re-base at the injectivity boundary.  Deliberately naive:
        // the moment arrays are carried over unchanged even though their
        // coordinate frame just moved -- this is the baseline behavior the
        // anchored variant corrects.
        triv = step_to(v);
        v = zero_tangent(triv);
        inner = 0;
        ++restarts;
      }
      const Point x = exp_point(v);
      const Eval e = evaluate(problem, x);
      if (!r.record(outer, inner, x, e, restarts)) {
        r.abort("non-finite objective or gradient");
        break;
      }
      const Tangent g = pullback_from_ambient(triv, v, x, e.G);
      const Vector ghat_flat = opt.step(tangent_to_flat(g));
      v.coords -= eta * tangent_from_flat(triv, ghat_flat).coords;
      ++inner;
      if (horizon_k != kInfiniteHorizon && inner >= horizon_k) {
        triv = step_to(v);
        v = zero_tangent(triv);
        inner = 0;
        ++outer;
      }
    }
  } catch (const Error& e) {
    r.abort(e.what());
  }
  finalize(r, problem, p0, restarts);
  return r.rec;
}

RunRecord static_triv_run(const Problem& problem, OptimizerRule rule,
                          double eta, std::int64_t iters, const Point& p0,
                          OptimizerHyper hyper) {
  check_run_args(problem, eta, iters, p0);
  OptimizerState opt(rule, tangent_dim(p0), hyper);
  Tangent w = zero_tangent(p0);
  Recorder r;
  try {
    for (std::int64_t t = 0; t < iters; ++t) {
      if (chart_radius_exceeded(w)) {
        throw BranchError(
            "static trivialization left its chart's injectivity domain");
      }
      const Point x = exp_point(w);
      const Eval e = evaluate(problem, x);
      if (!r.record(0, t, x, e, 0)) {
        r.abort("non-finite objective or gradient");
        break;
      }
      const Tangent g = pullback_from_ambient(p0, w, x, e.G);
      const Vector ghat_flat = opt.step(tangent_to_flat(g));
      w.coords -= eta * tangent_from_flat(p0, ghat_flat).coords;
    }
  } catch (const Error& e) {
    r.abort(e.what());
  }
  finalize(r, problem, p0, 0);
  return r.rec;
}

RunRecord rgd_run(const Problem& problem, double eta, std::int64_t iters,
                  const Point& p0, Retraction retraction) {
  check_run_args(problem, eta, iters, p0);
  Point p = p0;
  Recorder r;
  try {
    for (std::int64_t t = 0; t < iters; ++t) {
      const Eval e = evaluate(problem, p);
      if (!r.record(t, 0, p, e, 0)) {
        r.abort("non-finite objective or gradient");
        break;
      }
      const Tangent g = egrad_to_rgrad(p, e.G);
      Tangent step{p.kind, p.coords, -eta * g.coords};
      if (retraction == Retraction::Exponential) {
        p = step_to(step);
      } else {
        // Cayley resolvent can be singular for doctored tangents; halve the
        // step until it is not (the honest failure mode past 30 halvings is
        // an aborted run).
        int halvings = 0;
        for (;;) {
          try {
            Point q = cayley_retract(step);
            if (q.kind == ManifoldKind::SpecialOrthogonal) {
              const int n = static_cast<int>(q.coords.rows());
              const double drift =
                  (q.coords.transpose() * q.coords - Matrix::Identity(n, n)).norm();
              if (drift > 1e-12) q.coords = orthonormalize(q.coords);
            }
            p = q;
            break;
          } catch (const SingularityError&) {
            if (++halvings > 30) {
              throw ConvergenceError(
                  "rgd_run: Cayley step stayed singular after 30 halvings");
            }
            step.coords *= 0.5;
          }
        }
      }
    }
  } catch (const Error& e) {
    r.abort(e.what());
  }
  finalize(r, problem, p0, 0);
  return r.rec;
}

RunRecord rgd_momentum_transport_run(const Problem& problem, double eta,
                                     double mu, std::int64_t iters,
                                     const Point& p0) {
  check_run_args(problem, eta, iters, p0);
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw ConfigError("rgd_momentum_transport_run: mu must lie in [0, 1)");
  }
  Point p = p0;
  Tangent m = zero_tangent(p);
  std::int64_t restarts = 0;
  Recorder r;
  try {
    for (std::int64_t t = 0; t < iters; ++t) {
      const Eval e = evaluate(problem, p);
      if (!r.record(t, 0, p, e, restarts)) {
        r.abort("non-finite objective or gradient");
        break;
      }
      if (t > 0) {
        try {
          m = parallel_transport(m, p);  // bring momentum to the new iterate
        } catch (const BranchError&) {
          m = zero_tangent(p);  // restart policy: momentum dies at the boundary
          ++restarts;
        }
      }
      const Tangent g = egrad_to_rgrad(p, e.G);
      m.coords = g.coords + mu * m.coords;
      p = step_to(Tangent{p.kind, p.coords, -eta * m.coords});
    }
  } catch (const Error& e) {
    r.abort(e.what());
  }
  finalize(r, problem, p0, restarts);
  return r.rec;
}

RunRecord rgd_momentum_full_history_run(const Problem& problem, double eta,
                                        double mu, std::int64_t iters,
                                        const Point& p0) {
  check_run_args(problem, eta, iters, p0);
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw ConfigError("rgd_momentum_full_history_run: mu must lie in [0, 1)");
  }
  Point p = p0;
  std::vector<Tangent> history;   // each gradient still based where it was seen
  std::vector<double> weights;    // its current geometric weight
  std::int64_t dropped = 0;
  Recorder r;
  try {
    for (std::int64_t t = 0; t < iters; ++t) {
      const Eval e = evaluate(problem, p);
      if (!r.record(t, 0, p, e, 0)) {
        r.abort("non-finite objective or gradient");
        break;
      }
      for (double& wgt : weights) wgt *= mu;
      history.push_back(egrad_to_rgrad(p, e.G));
      weights.push_back(1.0);

      // Re-materialize the momentum: transport every stored gradient along
      // the direct geodesic from where it was observed to the current
      // iterate.  Quadratic in run length; reference-scale only.
      Tangent m = zero_tangent(p);
      std::vector<std::size_t> dead;
      for (std::size_t j = 0; j < history.size(); ++j) {
        try {
          const bool already_here =
              (history[j].base.array() == p.coords.array()).all();
          const Tangent moved =
              already_here ? history[j] : parallel_transport(history[j], p);
          m.coords += weights[j] * moved.coords;
        } catch (const BranchError&) {
          dead.push_back(j);  // stored point fell outside the log domain
        }
      }
      for (auto it = dead.rbegin(); it != dead.rend(); ++it) {
        history.erase(history.begin() + static_cast<std::ptrdiff_t>(*it));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(*it));
        ++dropped;
      }
      p = step_to(Tangent{p.kind, p.coords, -eta * m.coords});
    }
  } catch (const Error& e) {
    r.abort(e.what());
  }
  finalize(r, problem, p0, 0);
  r.rec.dropped_gradients = dropped;
  return r.rec;
}

double certified_step_size(const Problem& problem, double chart_radius) {
  if (problem.kind != ManifoldKind::SpecialOrthogonal) {
    throw UnsupportedError(
        "certified_step_size: the curvature constant is only derived for the "
        "rotation group");
  }
  if (!problem.hessian_bound) {
    throw ConfigError("certified_step_size: problem has no hessian_bound");
  }
  if (!(chart_radius >= 0.0) || !std::isfinite(chart_radius)) {
    throw ConfigError("certified_step_size: chart radius must be >= 0");
  }
  const double alpha = *problem.hessian_bound;
  if (!(alpha > 0.0)) {
    throw ConfigError("certified_step_size: hessian_bound must be positive");
  }
  return 1.0 / ((1.0 + chart_radius / 3.0) * alpha);
}

}  // namespace trivopt
