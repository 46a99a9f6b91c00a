#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trivopt/manifold.hpp"
#include "trivopt/optimizer.hpp"

namespace trivopt {

/// An optimization problem on one of the supported spaces.  `objective` and
/// `ambient_gradient` receive the ambient coordinates of a feasible point;
/// the gradient is the ordinary Euclidean gradient of the ambient extension
/// (the engines project it).  `known_optimum` is the exact minimum value when
/// available, `hessian_bound` a Lipschitz constant for the pulled-back
/// gradient, and `optimum_point` the minimizer itself when it is known in
/// closed form.
struct Problem {
  std::string name;
  ManifoldKind kind = ManifoldKind::Euclidean;
  int n = 0;
  std::function<double(const Matrix&)> objective;
  std::function<Matrix(const Matrix&)> ambient_gradient;
  std::optional<double> known_optimum;
  std::optional<double> hessian_bound;
  std::optional<Matrix> optimum_point;
};

/// Finite-difference check of `ambient_gradient` against `objective` along
/// random geodesics through random points.  Throws DomainError with a
/// diagnostic message on disagreement.
void validate_problem(const Problem& problem, std::uint64_t seed);

/// One recorded iteration: counters at evaluation time, objective value,
/// Riemannian gradient norm, geodesic distance moved since the previous
/// evaluation, and the cumulative restart count.
struct IterationRow {
  std::int64_t iter_outer = 0;
  std::int64_t iter_inner = 0;
  double f = 0.0;
  double grad_norm = 0.0;
  double step_dist = 0.0;
  std::int64_t restarts = 0;
};

struct RunRecord {
  std::vector<IterationRow> rows;
  std::vector<Point> points;  ///< evaluation point per row
  Point terminal;
  std::int64_t restarts = 0;
  std::int64_t dropped_gradients = 0;
  bool aborted = false;
  std::string abort_reason;
  double final_f = 0.0;
  double best_f = 0.0;
};

/// Horizon value meaning "never re-base the chart".
inline constexpr int kInfiniteHorizon = 0;

/// Gradient of the objective composed with the chart exp_{anchor}, evaluated
/// at the chart coordinate w (a tangent at `anchor`).  This is the exact
/// chain rule through the geodesic chart, not a projection heuristic.
Tangent pullback_gradient(const Problem& problem, const Point& anchor,
                          const Tangent& w);

/// Moves a descent direction expressed at the chart anchor (tangent at
/// `anchor`, alongside the current coordinate v there) into the tangent space
/// the next coordinate update lives in, such that stepping v -> v - eta *
/// result decreases the objective steepest-descent-fashion for the metric
/// pulled back through the chart.  Throws BranchError outside the chart's
/// injectivity radius.
Tangent steepest_transport(const Tangent& v, const Tangent& direction);

/// Trivialized optimization with the optimizer state anchored at the chart
/// base: every K outer steps the chart is re-centred at the current point and
/// the optimizer state is reset; within a window, gradients are pulled back
/// to the anchor, processed by the flat-space rule there, and returned to the
/// moving coordinate by steepest_transport.  K = kInfiniteHorizon keeps one
/// chart for the whole run.
RunRecord atriv_run(const Problem& problem, OptimizerRule rule, int horizon_k,
                    double eta, std::int64_t iters, const Point& p0,
                    OptimizerHyper hyper = {});

/// Dynamic-chart baseline: identical re-basing schedule, but the optimizer
/// state is interpreted in whatever chart is current and is *not* reset or
/// transported at re-bases, so its moment averages silently mix coordinate
/// systems.
RunRecord dtriv_run(const Problem& problem, OptimizerRule rule, int horizon_k,
                    double eta, std::int64_t iters, const Point& p0,
                    OptimizerHyper hyper = {});

/// Single fixed chart (the K = infinity schedule) with no re-base and no
/// transport at all; aborts instead of re-basing when the coordinate leaves
/// the chart's domain.
RunRecord static_triv_run(const Problem& problem, OptimizerRule rule,
                          double eta, std::int64_t iters, const Point& p0,
                          OptimizerHyper hyper = {});

enum class Retraction {
  Exponential,
  Cayley,
};

/// Riemannian gradient descent: project, step, retract.
RunRecord rgd_run(const Problem& problem, double eta, std::int64_t iters,
                  const Point& p0, Retraction retraction = Retraction::Exponential);

/// Riemannian momentum keeping one momentum vector that is parallel-transported
/// to each new iterate before being updated.
RunRecord rgd_momentum_transport_run(const Problem& problem, double eta,
                                     double mu, std::int64_t iters,
                                     const Point& p0);

/// Riemannian momentum re-materializing the momentum at every step as the
/// mu-weighted sum of *all* past gradients, each parallel-transported from
/// where it was observed to the current iterate along the direct geodesic.
/// Quadratic in the iteration count; a reference implementation for small
/// runs.  Gradients whose transport crosses an injectivity boundary are
/// dropped (counted in dropped_gradients).
RunRecord rgd_momentum_full_history_run(const Problem& problem, double eta,
                                        double mu, std::int64_t iters,
                                        const Point& p0);

/// Step size eta = 1 / ((1 + r/3) * alpha) guaranteeing sufficient decrease
/// of the pulled-back objective within chart radius r, where alpha is the
/// problem's registered gradient-Lipschitz bound.  Only meaningful for the
/// rotation group (UnsupportedError otherwise); ConfigError when the problem
/// carries no hessian_bound.
double certified_step_size(const Problem& problem, double chart_radius);

}  // namespace trivopt
