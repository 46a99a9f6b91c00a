#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trivopt/linalg.hpp"

namespace trivopt {

enum class OptimizerRule {
  Sgd,
  Momentum,
  Adagrad,
  RmsProp,
  Adam,
};

std::string optimizer_rule_name(OptimizerRule rule);
OptimizerRule optimizer_rule_from_name(const std::string& name);

struct OptimizerHyper {
  double mu = 0.9;     ///< momentum coefficient
  double beta1 = 0.9;  ///< first-moment decay
  double beta2 = 0.99; ///< second-moment decay
  double eps = 1e-8;   ///< denominator floor
};

/// Stateful first-order update rule acting on flat R^d coordinates.  step()
/// consumes a raw gradient and returns the *unscaled* search direction: the
/// caller applies the learning rate.  The state (moments, step counter) must
/// live in a fixed coordinate system for the moment averages to make sense;
/// the optimization engines guarantee that by working in one chart at a time
/// and resetting on chart changes.
class OptimizerState {
 public:
  OptimizerState(OptimizerRule rule, int dim, OptimizerHyper hyper = {});

  /// Applies one update and returns the direction to descend along.
  Vector step(const Vector& gradient);

  /// Forgets all accumulated moments and the step counter.
  void reset();

  OptimizerRule rule() const { return rule_; }
  int dim() const { return dim_; }
  const OptimizerHyper& hyper() const { return hyper_; }
  std::int64_t steps_taken() const { return steps_; }
  const Vector& first_moment() const { return m_; }
  const Vector& second_moment() const { return v_; }

 private:
  OptimizerRule rule_;
  int dim_;
  OptimizerHyper hyper_;
  std::int64_t steps_ = 0;
  Vector m_;  ///< momentum / first moment
  Vector v_;  ///< accumulated squared gradients / second moment
};

/// Demonstration that the diagonal second moment is not equivariant under
/// orthogonal changes of the coordinate frame: feeding the same gradient
/// stream to Adagrad in a rotated frame and rotating the result back
/// disagrees with the unrotated run.  `deviation` is the norm of that
/// disagreement after ten steps; it exceeds 1e-3 for a generic rotation yet
/// vanishes (<= 1e-12) when the rotation is a signed permutation, for which
/// taking the diagonal commutes with the frame change.
struct NoninvarianceWitness {
  Matrix rotation;
  std::vector<Vector> gradients;
  double deviation = 0.0;
};

NoninvarianceWitness coordinate_noninvariance_witness(std::uint64_t seed);
NoninvarianceWitness coordinate_noninvariance_witness(std::uint64_t seed,
                                                      const Matrix& rotation);

}  // namespace trivopt
