#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "eckart/errors.hpp"
#include "eckart/model.hpp"
#include "eckart/quadrature.hpp"
#include "eckart/special_functions.hpp"
#include "eckart/spectrum.hpp"

namespace eckart {

/// Normalization constant of
///
///   R(r) = N s^{sqrtC} (1-s)^{L1} 2F1(-n, n + 2 sqrtC + 2 L1; 2 sqrtC + 1; s)
///
/// such that the integral of R^2 over r in (0, inf) is one:
///
///   N^2 = 2 sqrtC (n + sqrtC + L1) G(n + 2 sqrtC + 1) G(n + 2 sqrtC + 2 L1)
///         / [ a n! (n + L1) G(n + 2 L1) G(2 sqrtC + 1)^2 ]
///
/// All gamma functions enter through log-gamma differences.
inline double radial_norm_constant(const BoundState& state, const EckartModel& model) {
  using special::log_gamma;
  const double n = state.q.n_r;
  const double c = state.sqrtC;
  const double L1 = state.L1;
  const double log_n2 = std::log(2.0 * c * (n + c + L1)) + log_gamma(n + 2.0 * c + 1.0) +
                        log_gamma(n + 2.0 * c + 2.0 * L1) - std::log(model.a()) -
                        log_gamma(n + 1.0) - std::log(n + L1) - log_gamma(n + 2.0 * L1) -
                        2.0 * log_gamma(2.0 * c + 1.0);
  return std::exp(0.5 * log_n2);
}

struct RadialWavefunction {
  BoundState state;
  double a;
  double L1;
  double norm;
};

inline RadialWavefunction make_radial_wavefunction(const BoundState& state,
                                                   const EckartModel& model) {
  return {state, model.a(), state.L1, radial_norm_constant(state, model)};
}

inline double radial_value(const RadialWavefunction& w, double r) {
  if (!(r > 0.0)) {
    throw DomainError("radial_value: r must be positive");
  }
  const double x = r / w.a;
  const double s = std::exp(-x);
  const double c = w.state.sqrtC;
  const int n = w.state.q.n_r;
  // s^c (1-s)^L1 in log form; both factors underflow separately at the ends
  const double log_env = -c * x + w.L1 * std::log(-std::expm1(-x));
  const double poly = special::hyp2f1_terminating(n, n + 2.0 * c + 2.0 * w.L1, 2.0 * c + 1.0, s);
  return w.norm * std::exp(log_env) * poly;
}

/// Integral of R^2 over (0, r_max] by adaptive Gauss-Legendre.
inline double radial_norm_integral(const RadialWavefunction& w, double r_max_in_a = 60.0,
                                   double abs_tol = 1e-10) {
  auto density = [&w](double r) {
    if (r <= 0.0) return 0.0;
    const double v = radial_value(w, r);
    return v * v;
  };
  return quadrature::integrate(density, 0.0, r_max_in_a * w.a, abs_tol);
}

/// Interior sign changes of R on a uniform grid of (0, r_max].
inline int radial_node_count(const RadialWavefunction& w, double r_max_in_a = 60.0,
                             int samples = 10000) {
  int nodes = 0;
  double prev = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double v = radial_value(w, r_max_in_a * w.a * i / samples);
    // ignore the underflowed tail
    if (v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0)) {
      ++nodes;
    }
    if (v != 0.0) prev = v;
  }
  return nodes;
}

/// Hyperspherical harmonic labels (mu_1, ..., mu_{D-1}) with
/// l = mu_1 >= mu_2 >= ... >= mu_{D-2} >= |mu_{D-1}| = |m|.
struct AngularState {
  int dim = 3;
  std::vector<int> mu;

  int ell() const { return mu.empty() ? 0 : mu.front(); }
  int m() const { return mu.empty() ? 0 : mu.back(); }

  void check() const {
    if (dim < 3) {
      throw DomainError("AngularState: dimension must be >= 3");
    }
    if (static_cast<int>(mu.size()) != dim - 1) {
      throw DomainError("AngularState: expected D-1 labels");
    }
    for (std::size_t j = 0; j + 1 < mu.size(); ++j) {
      const int next = (j + 2 == mu.size()) ? std::abs(mu[j + 1]) : mu[j + 1];
      if (mu[j] < 0 || mu[j] < next) {
        throw DomainError("AngularState: labels must satisfy l >= mu_2 >= ... >= |m|");
      }
    }
  }
};

namespace detail {

// mu_{j+1} as it enters the j-th factor; the last label contributes |m|.
inline int lower_label(const AngularState& ang, std::size_t j) {
  return (j + 2 == ang.mu.size()) ? std::abs(ang.mu[j + 1]) : ang.mu[j + 1];
}

inline double alpha_j(int dim, std::size_t j) { return 0.5 * (dim - static_cast<int>(j) - 2); }

}  // namespace detail

/// N for Y = N e^{i m theta_{D-1}} prod_j C^{alpha_j + mu_{j+1}}_{mu_j - mu_{j+1}}(cos theta_j)
/// (sin theta_j)^{mu_{j+1}}, alpha_j = (D - j - 1)/2 with j counted from 1.
inline double angular_norm_constant(const AngularState& ang) {
  ang.check();
  using special::log_gamma;
  double log_n2 = -std::log(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j + 1 < ang.mu.size(); ++j) {
    const double aj = detail::alpha_j(ang.dim, j);
    const double upper = ang.mu[j];
    const double lower = detail::lower_label(ang, j);
    log_n2 += std::log(aj + upper) + log_gamma(upper - lower + 1.0) +
              2.0 * log_gamma(aj + lower) - std::log(std::numbers::pi) -
              (1.0 - 2.0 * aj - 2.0 * lower) * std::numbers::ln2 -
              log_gamma(2.0 * aj + upper + lower);
  }
  return std::exp(0.5 * log_n2);
}

/// angles = (theta_1, ..., theta_{D-1}); theta_j in [0, pi] for j < D-1 and
/// the azimuth theta_{D-1} in [0, 2 pi].
inline std::complex<double> angular_value(const AngularState& ang, std::span<const double> angles) {
  ang.check();
  if (angles.size() != ang.mu.size()) {
    throw DomainError("angular_value: expected D-1 angles");
  }
  for (std::size_t j = 0; j + 1 < angles.size(); ++j) {
    if (!(angles[j] >= 0.0 && angles[j] <= std::numbers::pi)) {
      throw DomainError("angular_value: polar angle out of [0, pi]");
    }
  }
  const double phi = angles.back();
  if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi)) {
    throw DomainError("angular_value: azimuth out of [0, 2 pi]");
  }
  double product = angular_norm_constant(ang);
  for (std::size_t j = 0; j + 1 < ang.mu.size(); ++j) {
    const int lower = detail::lower_label(ang, j);
    const double lambda = detail::alpha_j(ang.dim, j) + lower;
    product *= special::gegenbauer_c(ang.mu[j] - lower, lambda, std::cos(angles[j])) *
               std::pow(std::sin(angles[j]), lower);
  }
  return std::polar(product, ang.m() * phi);
}

/// psi(r, Omega) = r^{(1-D)/2} R(r) Y(Omega).
inline std::complex<double> full_eigenfunction(const RadialWavefunction& w,
                                               const AngularState& ang, double r,
                                               std::span<const double> angles) {
  if (ang.dim != w.state.q.dim || ang.ell() != w.state.q.ell) {
    throw DomainError("full_eigenfunction: radial and angular labels disagree");
  }
  const double radial = std::pow(r, 0.5 * (1 - ang.dim)) * radial_value(w, r);
  return radial * angular_value(ang, angles);
}

}  // namespace eckart
