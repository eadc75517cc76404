#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "eckart/centrifugal.hpp"
#include "eckart/errors.hpp"
#include "eckart/model.hpp"
#include "eckart/spectrum.hpp"

namespace eckart::degeneracy {

// Points in the range parameter a at which a level of the f1 spectrum
// reaches zero energy, or two levels cross. alpha is tied to a through a
// user supplied law (alpha = 1/a by default).

using AlphaLaw = std::function<double(double)>;

inline AlphaLaw inverse_range_law() {
  return [](double a) { return 1.0 / a; };
}

enum class Branch { Plus, Minus };

inline std::string to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

struct Bracket {
  double lo;
  double hi;
};

struct DegeneracyProblem {
  QuantumNumbers first;
  QuantumNumbers second;
  Branch sign = Branch::Plus;
  AlphaLaw law = inverse_range_law();
  double beta = 1e-4;
  PhysicalConstants constants{};
};

using SchemeFactory = std::function<ApproximationScheme(const EckartModel&)>;

inline SchemeFactory f1_factory() {
  return [](const EckartModel&) { return make_f1(); };
}

inline EckartModel model_at(double a, const AlphaLaw& law, double beta,
                            const PhysicalConstants& constants) {
  return EckartModel(law(a), beta, a, constants);
}

namespace detail {

inline double coupling(double a, const PhysicalConstants& c) {
  return 2.0 * c.mu * a * a / (c.hbar * c.hbar);
}

// sqrt((L + 1/2)^2 + 2 mu a^2 beta / hbar^2), with 2L + 1 = 2l + D - 2
inline double root_term(const QuantumNumbers& q, double g_beta) {
  const double half = q.ell + 0.5 * (q.dim - 2);
  return std::sqrt(half * half + g_beta);
}

/// Bisection to machine resolution on a sign-changing bracket.
template <typename F>
double bisect(F&& f, double lo, double hi) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NoSignChange("bisect: residual does not change sign on the bracket");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Zero-energy condition for the level (n_r, l, D) under f1, unsquared:
///
///   8 mu a^2 (alpha - beta)/hbar^2 - (2n+1)^2 - (2l+D-2)^2
///     - 2 (2n+1) sqrt((2l+D-2)^2 + 8 mu a^2 beta/hbar^2) = 0.
///
/// Squaring gives the polynomial form; only this branch has sqrtC = 0.
inline double zero_energy_residual(const QuantumNumbers& q, const AlphaLaw& law, double beta,
                                   const PhysicalConstants& constants, double a) {
  const double g = detail::coupling(a, constants);
  const double odd = 2.0 * q.n_r + 1.0;
  const double k = 2.0 * q.ell + q.dim - 2.0;
  const double lhs = 4.0 * g * (law(a) - beta) - odd * odd - k * k;
  return lhs - 2.0 * odd * std::sqrt(k * k + 4.0 * g * beta);
}

/// Squared (polynomial) form of the zero-energy condition, LHS - RHS.
inline double zero_energy_residual_squared(const QuantumNumbers& q, const AlphaLaw& law,
                                           double beta, const PhysicalConstants& constants,
                                           double a) {
  const double g = detail::coupling(a, constants);
  const double odd = 2.0 * q.n_r + 1.0;
  const double k = 2.0 * q.ell + q.dim - 2.0;
  const double lhs = 4.0 * g * (law(a) - beta) - odd * odd - k * k;
  return lhs * lhs - 4.0 * odd * odd * (k * k + 4.0 * g * beta);
}

/// Three-dimensional form, written with (2l+1) in place of (2l+D-2).
inline double zero_energy_residual_3d(int n_r, int ell, const AlphaLaw& law, double beta,
                                      const PhysicalConstants& constants, double a) {
  const double g = detail::coupling(a, constants);
  const double odd = 2.0 * n_r + 1.0;
  const double k = 2.0 * ell + 1.0;
  return 4.0 * g * (law(a) - beta) - odd * odd - k * k -
         2.0 * odd * std::sqrt(k * k + 4.0 * g * beta);
}

inline double zero_energy_a(const QuantumNumbers& q, const AlphaLaw& law, double beta,
                            const PhysicalConstants& constants, Bracket bracket) {
  q.check();
  return detail::bisect(
      [&](double a) { return zero_energy_residual(q, law, beta, constants, a); }, bracket.lo,
      bracket.hi);
}

inline double zero_energy_a_3d(int n_r, int ell, const AlphaLaw& law, double beta,
                               const PhysicalConstants& constants, Bracket bracket) {
  return detail::bisect(
      [&](double a) { return zero_energy_residual_3d(n_r, ell, law, beta, constants, a); },
      bracket.lo, bracket.hi);
}

/// Crossing condition for two f1 levels, general sign branch:
///
///   G alpha (1/N1 -+ 1/N2) - [ (1 -+ 1)/2 + n1 -+ n2 + S1 -+ S2 ],
///
/// with G = 2 mu a^2/hbar^2, S_i = sqrt((l_i + (D_i-2)/2)^2 + G beta) and
/// N_i = n_i + 1/2 + S_i.
inline double crossing_residual(const DegeneracyProblem& p, double a) {
  const double g = detail::coupling(a, p.constants);
  const double s1 = detail::root_term(p.first, g * p.beta);
  const double s2 = detail::root_term(p.second, g * p.beta);
  const double n1 = p.first.n_r + 0.5 + s1;
  const double n2 = p.second.n_r + 0.5 + s2;
  const double sign = p.sign == Branch::Plus ? 1.0 : -1.0;
  const double lhs = g * p.law(a) * (1.0 / n1 + sign / n2);
  const double rhs = 0.5 * (1.0 + sign) + p.first.n_r + sign * p.second.n_r + s1 + sign * s2;
  return lhs - rhs;
}

/// Product form of the plus branch: G alpha - N1 N2.
inline double crossing_residual_product(const DegeneracyProblem& p, double a) {
  const double g = detail::coupling(a, p.constants);
  const double n1 = p.first.n_r + 0.5 + detail::root_term(p.first, g * p.beta);
  const double n2 = p.second.n_r + 0.5 + detail::root_term(p.second, g * p.beta);
  return g * p.law(a) - n1 * n2;
}

/// Same product form written with three-dimensional labels (2l+1)/2.
inline double crossing_residual_product_3d(const DegeneracyProblem& p, double a) {
  const double g = detail::coupling(a, p.constants);
  auto term = [&](const QuantumNumbers& q) {
    const double half = q.ell + 0.5;
    return q.n_r + 0.5 + std::sqrt(half * half + g * p.beta);
  };
  return g * p.law(a) - term(p.first) * term(p.second);
}

enum class CrossingStatus { Root, AlwaysDegenerate };

struct CrossingResult {
  CrossingStatus status = CrossingStatus::Root;
  double a = 0.0;
  double residual = 0.0;
  double energy_gap = 0.0;  // |E1 - E2| from the f1 closed form at a
  bool first_bound = false;
  bool second_bound = false;
};

/// Same n_r and the same L: both levels coincide for every a.
inline bool same_level(const QuantumNumbers& x, const QuantumNumbers& y) {
  return x.n_r == y.n_r && (2 * x.ell + x.dim) == (2 * y.ell + y.dim);
}

inline CrossingResult evaluate_crossing(const DegeneracyProblem& p, double a) {
  const EckartModel model = model_at(a, p.law, p.beta, p.constants);
  const auto f1 = make_f1();
  const Level e1 = closed_form_level(model, f1, p.first);
  const Level e2 = closed_form_level(model, f1, p.second);
  CrossingResult r;
  r.a = a;
  r.residual = crossing_residual(p, a);
  r.energy_gap = std::abs(e1.energy - e2.energy);
  r.first_bound = is_bound(e1);
  r.second_bound = is_bound(e2);
  return r;
}

/// Root of the crossing condition in the bracket. Pairs with equal n_r and L
/// are reported as degenerate for all a; identical states are rejected.
inline CrossingResult degeneracy_a(const DegeneracyProblem& p, Bracket bracket) {
  p.first.check();
  p.second.check();
  if (p.first == p.second) {
    throw DomainError("degeneracy_a: the two states are identical");
  }
  if (same_level(p.first, p.second)) {
    CrossingResult r;
    r.status = CrossingStatus::AlwaysDegenerate;
    return r;
  }
  auto residual = [&](double a) {
    return p.sign == Branch::Plus ? crossing_residual_product(p, a) : crossing_residual(p, a);
  };
  const double a = detail::bisect(residual, bracket.lo, bracket.hi);
  return evaluate_crossing(p, a);
}

struct ScanEntry {
  QuantumNumbers first;
  QuantumNumbers second;
  CrossingResult result;
};

/// Samples the crossing residual of every pair on a uniform grid of n_samples
/// points over a_range, refines each sign change and returns the roots sorted
/// by a. Equal-level pairs appear once with AlwaysDegenerate status.
inline std::vector<ScanEntry> scan_degeneracies(
    const std::vector<std::pair<QuantumNumbers, QuantumNumbers>>& pairs, const AlphaLaw& law,
    double beta, const PhysicalConstants& constants, Bracket a_range, int n_samples,
    Branch sign = Branch::Plus) {
  if (n_samples < 2) {
    throw DomainError("scan_degeneracies: need at least two samples");
  }
  std::vector<ScanEntry> found;
  std::vector<ScanEntry> always;
  for (const auto& [first, second] : pairs) {
    DegeneracyProblem p{first, second, sign, law, beta, constants};
    if (same_level(first, second)) {
      if (!(first == second)) {
        always.push_back({first, second, degeneracy_a(p, a_range)});
      }
      continue;
    }
    const double step = (a_range.hi - a_range.lo) / (n_samples - 1);
    auto residual = [&](double a) {
      return sign == Branch::Plus ? crossing_residual_product(p, a) : crossing_residual(p, a);
    };
    double a_prev = a_range.lo;
    double f_prev = residual(a_prev);
    for (int i = 1; i < n_samples; ++i) {
      const double a = (i + 1 == n_samples) ? a_range.hi : a_range.lo + i * step;
      const double f = residual(a);
      if (f_prev != 0.0 && (f == 0.0 || (f < 0.0) != (f_prev < 0.0))) {
        found.push_back({first, second, degeneracy_a(p, {a_prev, a})});
      }
      a_prev = a;
      f_prev = f;
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const ScanEntry& x, const ScanEntry& y) { return x.result.a < y.result.a; });
  found.insert(found.end(), always.begin(), always.end());
  return found;
}

/// Crossing of two levels under an arbitrary scheme, found as a root of the
/// difference of their closed-form energies. The scheme is rebuilt at every
/// a because f4 and f5 depend on the model through r0.
inline double numeric_degeneracy_a(const QuantumNumbers& first, const QuantumNumbers& second,
                                   const AlphaLaw& law, double beta,
                                   const PhysicalConstants& constants,
                                   const SchemeFactory& scheme_at, Bracket bracket) {
  auto gap = [&](double a) {
    const EckartModel model = model_at(a, law, beta, constants);
    const auto scheme = scheme_at(model);
    return closed_form_level(model, scheme, first).energy -
           closed_form_level(model, scheme, second).energy;
  };
  return detail::bisect(gap, bracket.lo, bracket.hi);
}

/// Zero-energy point under an arbitrary scheme: sqrtC^2 = L(L+1) y1 on the
/// sqrtC > 0 branch.
inline double numeric_zero_energy_a(const QuantumNumbers& q, const AlphaLaw& law, double beta,
                                    const PhysicalConstants& constants,
                                    const SchemeFactory& scheme_at, Bracket bracket) {
  auto residual = [&](double a) {
    const EckartModel model = model_at(a, law, beta, constants);
    const auto scheme = scheme_at(model);
    const Level level = closed_form_level(model, scheme, q);
    return level.sqrtC - std::sqrt(centrifugal_strength(q) * scheme.y1);
  };
  return detail::bisect(residual, bracket.lo, bracket.hi);
}

}  // namespace eckart::degeneracy
