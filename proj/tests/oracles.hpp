// Independent reference implementations the test suites compare the library
// against.  Everything here is deliberately slow and simple: extended
// precision, brute-force series, quadrature, and ODE integration, sharing no
// code path with the algorithms under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "trivopt/linalg.hpp"
#include "trivopt/manifold.hpp"

namespace oracle {

using LongMatrix =
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline double rel_err(const trivopt::Matrix& got, const trivopt::Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

/// Matrix exponential in extended precision: scale by 2^-16, sum 200 Taylor
/// terms with compensated (Kahan) accumulation, then square 16 times.
inline LongMatrix expm_taylor_extended(const trivopt::Matrix& A) {
  const Eigen::Index n = A.rows();
  const LongMatrix As = A.cast<long double>() / 65536.0L;
  LongMatrix sum = LongMatrix::Identity(n, n);
  LongMatrix comp = LongMatrix::Zero(n, n);  // running Kahan compensation
  LongMatrix term = LongMatrix::Identity(n, n);
  for (int k = 1; k <= 200; ++k) {
    term = (term * As / static_cast<long double>(k)).eval();
    const LongMatrix y = term - comp;
    const LongMatrix t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  for (int k = 0; k < 16; ++k) sum = (sum * sum).eval();
  return sum;
}

inline trivopt::Matrix expm_taylor(const trivopt::Matrix& A) {
  return expm_taylor_extended(A).cast<double>();
}

/// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration on the
/// Legendre recurrence.
struct Quadrature {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

inline Quadrature gauss_legendre_unit(int n) {
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < n; ++i) {
    // Root of P_n on [-1, 1], seeded by the Chebyshev approximation.
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    q.nodes[static_cast<std::size_t>(i)] = 0.5L * (x + 1.0L);
    q.weights[static_cast<std::size_t>(i)] = 1.0L / ((1.0L - x * x) * dp * dp);
  }
  return q;
}

/// Derivative of the exponential through its integral representation
/// d exp_Om(E) = Int_0^1 e^{s Om} E e^{(1-s) Om} ds, evaluated by
/// Gauss-Legendre quadrature in extended precision.
inline trivopt::Matrix dexp_quadrature(const trivopt::Matrix& Om,
                                       const trivopt::Matrix& E,
                                       int points = 1024) {
  const Quadrature q = gauss_legendre_unit(points);
  const LongMatrix El = E.cast<long double>();
  LongMatrix acc = LongMatrix::Zero(Om.rows(), Om.cols());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const long double s = q.nodes[i];
    const LongMatrix left =
        expm_taylor_extended(static_cast<double>(s) * Om);
    const LongMatrix right =
        expm_taylor_extended(static_cast<double>(1.0L - s) * Om);
    acc += q.weights[i] * (left * El * right);
  }
  return acc.cast<double>();
}

/// Closed-form rotation exponential in three dimensions (axis-angle formula).
inline trivopt::Matrix rodrigues(const trivopt::Matrix& Om) {
  const double wx = Om(2, 1), wy = Om(0, 2), wz = Om(1, 0);
  const double theta = std::sqrt(wx * wx + wy * wy + wz * wz);
  const trivopt::Matrix I = trivopt::Matrix::Identity(3, 3);
  if (theta < 1e-30) return I;
  return I + (std::sin(theta) / theta) * Om +
         ((1.0 - std::cos(theta)) / (theta * theta)) * (Om * Om);
}

/// Parallel transport along the sphere geodesic gamma(t) = exp_p(t v) by RK4
/// on the ambient transport equation w' = -(w . gamma') gamma.
inline trivopt::Vector transport_rk4_sphere(const trivopt::Vector& p,
                                            const trivopt::Vector& v,
                                            const trivopt::Vector& w0,
                                            int steps = 2000) {
  const double theta = v.norm();
  if (theta == 0.0) return w0;
  const trivopt::Vector u = v / theta;
  const auto gamma = [&](double t) -> trivopt::Vector {
    return std::cos(theta * t) * p + std::sin(theta * t) * u;
  };
  const auto gamma_dot = [&](double t) -> trivopt::Vector {
    return theta * (-std::sin(theta * t) * p + std::cos(theta * t) * u);
  };
  const auto rhs = [&](double t, const trivopt::Vector& w) -> trivopt::Vector {
    return -(w.dot(gamma_dot(t))) * gamma(t);
  };
  trivopt::Vector w = w0;
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const trivopt::Vector k1 = rhs(t, w);
    const trivopt::Vector k2 = rhs(t + 0.5 * h, w + 0.5 * h * k1);
    const trivopt::Vector k3 = rhs(t + 0.5 * h, w + 0.5 * h * k2);
    const trivopt::Vector k4 = rhs(t + h, w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

/// Parallel transport along the rotation-group geodesic t -> Q e^{t W} in
/// left-trivialized coordinates: om' = -[W, om]/2, integrated by RK4.
inline trivopt::Matrix transport_rk4_rotation(const trivopt::Matrix& W,
                                              const trivopt::Matrix& om0,
                                              int steps = 2000) {
  const auto rhs = [&](const trivopt::Matrix& om) -> trivopt::Matrix {
    return -0.5 * (W * om - om * W);
  };
  trivopt::Matrix om = om0;
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const trivopt::Matrix k1 = rhs(om);
    const trivopt::Matrix k2 = rhs(om + 0.5 * h * k1);
    const trivopt::Matrix k3 = rhs(om + 0.5 * h * k2);
    const trivopt::Matrix k4 = rhs(om + h * k3);
    om += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return om;
}

}  // namespace oracle
