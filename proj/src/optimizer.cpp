#include "trivopt/optimizer.hpp"

#include <cmath>

#include "trivopt/rng.hpp"

namespace trivopt {
namespace {

/// Entrywise num/den with the convention 0-denominator -> 0.  A denominator
/// entry can only vanish (with eps = 0) when every gradient ever accumulated
/// in that coordinate was zero, in which case the numerator is zero too and
/// "no movement" is the right answer.
Vector safe_quotient(const Vector& num, const Vector& den) {
  Vector out(num.size());
  for (Eigen::Index i = 0; i < num.size(); ++i) {
    out(i) = den(i) <= 0.0 ? 0.0 : num(i) / den(i);
  }
  return out;
}

}  // namespace

std::string optimizer_rule_name(OptimizerRule rule) {
  switch (rule) {
    case OptimizerRule::Sgd: return "sgd";
    case OptimizerRule::Momentum: return "momentum";
    case OptimizerRule::Adagrad: return "adagrad";
    case OptimizerRule::RmsProp: return "rmsprop";
    case OptimizerRule::Adam: return "adam";
  }
  throw ConfigError("optimizer_rule_name: unknown rule");
}

OptimizerRule optimizer_rule_from_name(const std::string& name) {
  if (name == "sgd") return OptimizerRule::Sgd;
  if (name == "momentum") return OptimizerRule::Momentum;
  if (name == "adagrad") return OptimizerRule::Adagrad;
  if (name == "rmsprop") return OptimizerRule::RmsProp;
  if (name == "adam") return OptimizerRule::Adam;
  throw ConfigError("unknown optimizer rule '" + name + "'");
}

OptimizerState::OptimizerState(OptimizerRule rule, int dim, OptimizerHyper hyper)
    : rule_(rule), dim_(dim), hyper_(hyper) {
  if (dim <= 0) {
    throw DimensionError("OptimizerState: dimension must be positive");
  }
  if (!(hyper.mu >= 0.0 && hyper.mu < 1.0)) {
    throw ConfigError("OptimizerState: mu must lie in [0, 1)");
  }
  if (!(hyper.beta1 >= 0.0 && hyper.beta1 < 1.0) ||
      !(hyper.beta2 >= 0.0 && hyper.beta2 < 1.0)) {
    throw ConfigError("OptimizerState: beta coefficients must lie in [0, 1)");
  }
  if (!(hyper.eps >= 0.0)) {
    throw ConfigError("OptimizerState: eps must be non-negative");
  }
  m_ = Vector::Zero(dim);
  v_ = Vector::Zero(dim);
}

Vector OptimizerState::step(const Vector& gradient) {
  if (gradient.size() != dim_) {
    throw DimensionError("OptimizerState::step: gradient length mismatch");
  }
  if (!gradient.allFinite()) {
    throw DomainError("OptimizerState::step: non-finite gradient");
  }
  ++steps_;
  switch (rule_) {
    case OptimizerRule::Sgd:
      return gradient;
    case OptimizerRule::Momentum:
      m_ = hyper_.mu * m_ + gradient;
      return m_;
    case OptimizerRule::Adagrad: {
      v_ += gradient.cwiseProduct(gradient);
      const Vector den = v_.cwiseSqrt().array() + hyper_.eps;
      return safe_quotient(gradient, den);
    }
    case OptimizerRule::RmsProp: {
      v_ = hyper_.beta2 * v_ +
           (1.0 - hyper_.beta2) * gradient.cwiseProduct(gradient);
      const Vector den = v_.cwiseSqrt().array() + hyper_.eps;
      return safe_quotient(gradient, den);
    }
    case OptimizerRule::Adam: {
      m_ = hyper_.beta1 * m_ + (1.0 - hyper_.beta1) * gradient;
      v_ = hyper_.beta2 * v_ +
           (1.0 - hyper_.beta2) * gradient.cwiseProduct(gradient);
      const double t = static_cast<double>(steps_);
      const Vector m_hat = m_ / (1.0 - std::pow(hyper_.beta1, t));
      const Vector v_hat = v_ / (1.0 - std::pow(hyper_.beta2, t));
      const Vector den = v_hat.cwiseSqrt().array() + hyper_.eps;
      return safe_quotient(m_hat, den);
    }
  }
  throw ConfigError("OptimizerState::step: unknown rule");
}

void OptimizerState::reset() {
  steps_ = 0;
  m_.setZero();
  v_.setZero();
}

namespace {

NoninvarianceWitness run_witness(std::uint64_t seed, Matrix rotation) {
  constexpr int kDim = 6;
  constexpr int kSteps = 10;
  Rng gradient_rng = Rng(seed).child(1);
  NoninvarianceWitness w;
  w.rotation = std::move(rotation);
  for (int t = 0; t < kSteps; ++t) {
    w.gradients.push_back(gaussian_vector(gradient_rng, kDim));
  }
  OptimizerState plain(OptimizerRule::Adagrad, kDim);
  OptimizerState rotated(OptimizerRule::Adagrad, kDim);
  Vector out_plain, out_back;
  for (const Vector& g : w.gradients) {
    out_plain = plain.step(g);
    out_back = w.rotation.transpose() * rotated.step(w.rotation * g);
  }
  w.deviation = (out_back - out_plain).norm();
  return w;
}

}  // namespace

NoninvarianceWitness coordinate_noninvariance_witness(std::uint64_t seed) {
  Rng rotation_rng = Rng(seed).child(0);
  return run_witness(seed, random_special_orthogonal(rotation_rng, 6));
}

NoninvarianceWitness coordinate_noninvariance_witness(std::uint64_t seed,
                                                      const Matrix& rotation) {
  if (rotation.rows() != 6 || rotation.cols() != 6) {
    throw DimensionError("coordinate_noninvariance_witness: rotation must be 6x6");
  }
  return run_witness(seed, rotation);
}

}  // namespace trivopt
