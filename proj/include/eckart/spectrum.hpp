#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "eckart/centrifugal.hpp"
#include "eckart/errors.hpp"
#include "eckart/model.hpp"

namespace eckart {

/// Dimensionless constants of the hypergeometric-type equation in s.
struct NUConstants {
  double A;
  double B;
  double C;
  double eps0_sq;  // -2 mu a^2 E / hbar^2
  double L1;
};

/// A level from the closed-form spectrum. sqrtC is the decay exponent of
/// s^{sqrtC}; the level is a normalizable bound state only when sqrtC > 0
/// and energy < 0.
struct Level {
  double energy;
  double sqrtC;
  double L1;
};

struct BoundState {
  QuantumNumbers q;
  double energy;
  double sqrtC;
  double L1;
  ApproximationScheme scheme;
};

/// L1 = 1/2 + sqrt(1/4 + 2 mu a^2 beta/hbar^2 + L(L+1) y3), the exponent of
/// (1-s) in the radial solution, i.e. R ~ r^{L1} near the origin.
inline double origin_exponent(const EckartModel& model, const ApproximationScheme& scheme,
                              const QuantumNumbers& q) {
  const double disc = origin_discriminant(scheme, model, q);
  if (disc < 0.0) {
    throw SchemeInvalid("origin_exponent: negative discriminant for " + to_string(q));
  }
  return 0.5 + std::sqrt(disc);
}

/// Closed-form level without any existence check. The energy is the
/// analytic continuation used by the degeneracy conditions; sqrtC may be
/// non-positive.
inline Level closed_form_level(const EckartModel& model, const ApproximationScheme& scheme,
                               const QuantumNumbers& q) {
  const double L1 = origin_exponent(model, scheme, q);
  const double strength = centrifugal_strength(q);
  const double g = model.coupling_scale();
  const double nu = q.n_r + L1;
  const double Q = (0.5 * g * model.alpha() - 0.5 * strength * (scheme.y2 - scheme.y3)) / nu - 0.5 * nu;
  const double unit = model.energy_unit();
  const double energy = unit * (strength * scheme.y1 - Q * Q);
  return {energy, Q, L1};
}

inline NUConstants nu_constants(const EckartModel& model, const ApproximationScheme& scheme,
                                const QuantumNumbers& q, double energy) {
  const double g = model.coupling_scale();
  const double strength = centrifugal_strength(q);
  NUConstants k{};
  k.eps0_sq = -g * energy;
  k.C = k.eps0_sq + strength * scheme.y1;
  k.A = g * model.alpha() - strength * (scheme.y2 - scheme.y3) + k.C;
  k.B = g * (model.alpha() - model.beta()) - strength * scheme.y2 + 2.0 * k.C;
  k.L1 = origin_exponent(model, scheme, q);
  return k;
}

inline bool is_bound(const Level& level) { return level.sqrtC > 0.0 && level.energy < 0.0; }

inline bool exists(const EckartModel& model, const ApproximationScheme& scheme,
                   const QuantumNumbers& q) {
  return is_bound(closed_form_level(model, scheme, q));
}

inline BoundState energy(const EckartModel& model, const ApproximationScheme& scheme,
                         const QuantumNumbers& q) {
  q.check();
  const Level level = closed_form_level(model, scheme, q);
  if (!is_bound(level)) {
    throw StateDoesNotExist("energy: no bound state " + to_string(q));
  }
  return {q, level.energy, level.sqrtC, level.L1, scheme};
}

/// Largest n_r with a bound state, or -1. sqrtC decreases strictly with n_r,
/// so the scan stops at the first failure.
inline int n_max(const EckartModel& model, const ApproximationScheme& scheme, int ell, int dim) {
  int n = -1;
  while (exists(model, scheme, QuantumNumbers{n + 1, ell, dim})) {
    ++n;
  }
  return n;
}

inline std::vector<BoundState> enumerate_bound_states(const EckartModel& model,
                                                      const ApproximationScheme& scheme,
                                                      int ell_max, int dim) {
  std::vector<BoundState> states;
  for (int ell = 0; ell <= ell_max; ++ell) {
    const int top = n_max(model, scheme, ell, dim);
    for (int n = 0; n <= top; ++n) {
      states.push_back(energy(model, scheme, QuantumNumbers{n, ell, dim}));
    }
  }
  std::stable_sort(states.begin(), states.end(),
                   [](const BoundState& x, const BoundState& y) { return x.energy < y.energy; });
  return states;
}

}  // namespace eckart
