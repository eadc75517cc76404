#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "eckart/errors.hpp"
#include "eckart/model.hpp"

namespace eckart {

// Approximations to 1/r^2 of the form
//
//   f(r) = (1/a^2) [ y1 + y2 s/(1-s) + y3 s^2/(1-s)^2 ],   s = exp(-r/a).

enum class SchemeKind { F1, F2, F3, F4, F5 };

inline std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::F1: return "f1";
    case SchemeKind::F2: return "f2";
    case SchemeKind::F3: return "f3";
    case SchemeKind::F4: return "f4";
    case SchemeKind::F5: return "f5";
  }
  return "?";
}

using Coefficients = std::array<double, 3>;

struct ApproximationScheme {
  double y1 = 0.0;
  double y2 = 1.0;
  double y3 = 1.0;

  SchemeKind kind = SchemeKind::F1;
  double xi1 = 1.0;                       // F2 and F5
  double xi2 = 1.0;                       // F2 and F5
  double r0 = 0.0;                        // F4 and F5
  std::array<double, 4> lambdas{1, 0, 0, 0};  // F5 only

  Coefficients coefficients() const { return {y1, y2, y3}; }
};

struct ValidityReport {
  bool sum_ok = true;
  bool y1_ok = true;
  bool l1_ok = true;

  bool admissible() const { return sum_ok && y1_ok && l1_ok; }
};

inline constexpr double kWeightSumTolerance = 1e-12;

namespace detail {

// Taylor coefficients of the Pekeris coefficients in u, obtained by expanding
// each term of the form (p0 + p1 u) exp(c u) and dividing by u^4.
struct ExpTerm {
  double p0;
  double p1;
  double c;
};

inline constexpr int kPekerisSeriesTerms = 28;

template <std::size_t N>
std::array<double, kPekerisSeriesTerms> series_over_u4(const std::array<ExpTerm, N>& terms,
                                                       double scale) {
  std::array<double, kPekerisSeriesTerms> out{};
  for (int j = 0; j < kPekerisSeriesTerms; ++j) {
    const int k = j + 4;
    long double acc = 0.0L;
    for (const auto& t : terms) {
      // [u^k] (p0 + p1 u) e^{cu} = p0 c^k / k! + p1 c^{k-1} / (k-1)!
      long double ck = 1.0L, ckm1 = 1.0L, fact = 1.0L, factm1 = 1.0L;
      for (int i = 1; i <= k; ++i) {
        ck *= t.c;
        fact *= i;
        if (i < k) {
          ckm1 *= t.c;
          factm1 *= i;
        }
      }
      acc += t.p0 * ck / fact + t.p1 * ckm1 / factm1;
    }
    out[j] = static_cast<double>(scale * acc);
  }
  return out;
}

inline const std::array<std::array<double, kPekerisSeriesTerms>, 3>& pekeris_series() {
  // u^4 x1 = (3+u) e^{-2u} + (2u-6) e^{-u} + (3 - 3u + u^2); the polynomial
  // part only touches orders below 4.
  static const auto table = [] {
    std::array<std::array<double, kPekerisSeriesTerms>, 3> t{};
    t[0] = series_over_u4(std::array<ExpTerm, 2>{{{3, 1, -2}, {-6, 2, -1}}}, 1.0);
    // u^4 x2 / 2 = (3+u)(1 - 2e^{-u} + e^{-2u}) + (2u-3)(e^{u} - 2 + e^{-u})
    t[1] = series_over_u4(std::array<ExpTerm, 6>{{{3, 1, 0},
                                                   {-6, -2, -1},
                                                   {3, 1, -2},
                                                   {-3, 2, 1},
                                                   {6, -4, 0},
                                                   {-3, 2, -1}}},
                          2.0);
    // -u^4 x3 = (3+u)(e^{u} - 3 + 3e^{-u} - e^{-2u})
    //         + (u-3)(e^{2u} - 3e^{u} + 3 - e^{-u})
    t[2] = series_over_u4(std::array<ExpTerm, 8>{{{3, 1, 1},
                                                   {-9, -3, 0},
                                                   {9, 3, -1},
                                                   {-3, -1, -2},
                                                   {-3, 1, 2},
                                                   {9, -3, 1},
                                                   {-9, 3, 0},
                                                   {3, -1, -1}}},
                          -1.0);
    return t;
  }();
  return table;
}

inline double horner(const std::array<double, kPekerisSeriesTerms>& c, double u) {
  double acc = 0.0;
  for (int j = kPekerisSeriesTerms - 1; j >= 0; --j) {
    acc = acc * u + c[j];
  }
  return acc;
}

}  // namespace detail

/// Coefficients of the approximation that matches 1/r^2 and its first two
/// derivatives at r0 = u a. The closed form cancels catastrophically for
/// small u (all three numerators vanish like u^4), so below u = 1 a Taylor
/// series is used instead.
inline Coefficients pekeris_coefficients(double u) {
  if (!(u > 0.0)) {
    throw DomainError("pekeris_coefficients: u must be positive");
  }
  if (u < 1.0) {
    const auto& series = detail::pekeris_series();
    return {detail::horner(series[0], u), detail::horner(series[1], u),
            detail::horner(series[2], u)};
  }
  const double s0 = std::exp(-u);
  const double m = -std::expm1(-u);
  const double u4 = u * u * u * u;
  const double x1 = ((3.0 + u) * s0 * s0 + (2.0 * u - 6.0) * s0 + (3.0 - 3.0 * u + u * u)) / u4;
  const double x2 = 2.0 / u4 * m * m * (3.0 + u + (2.0 * u - 3.0) / s0);
  const double x3 = -1.0 / u4 * m * m * m * ((3.0 + u) / s0 + (u - 3.0) / (s0 * s0));
  return {x1, x2, x3};
}

inline double default_r0(const EckartModel& model) { return potential_minimum(model).r0; }

/// Greene-Aldrich form, exact as r -> 0.
inline ApproximationScheme make_f1() {
  ApproximationScheme s;
  s.kind = SchemeKind::F1;
  s.y1 = 0.0;
  s.y2 = 1.0;
  s.y3 = 1.0;
  return s;
}

inline ApproximationScheme make_f2(double xi1, double xi2) {
  ApproximationScheme s;
  s.kind = SchemeKind::F2;
  s.y1 = 0.0;
  s.y2 = xi1;
  s.y3 = xi2;
  s.xi1 = xi1;
  s.xi2 = xi2;
  return s;
}

inline ApproximationScheme make_f3() {
  ApproximationScheme s;
  s.kind = SchemeKind::F3;
  s.y1 = 1.0 / 12.0;
  s.y2 = 1.0;
  s.y3 = 1.0;
  return s;
}

/// Pekeris-type form tangent to 1/r^2 at r0.
inline ApproximationScheme make_f4(const EckartModel& model, double r0) {
  if (!(r0 > 0.0)) {
    throw DomainError("make_f4: r0 must be positive");
  }
  const auto x = pekeris_coefficients(r0 / model.a());
  ApproximationScheme s;
  s.kind = SchemeKind::F4;
  s.y1 = x[0];
  s.y2 = x[1];
  s.y3 = x[2];
  s.r0 = r0;
  return s;
}

inline ApproximationScheme make_f4(const EckartModel& model) {
  return make_f4(model, default_r0(model));
}

/// Weighted combination y_i = sum_j lambda_j x_ij of f1..f4. The weights must
/// sum to one; negative weights are accepted here and judged by validate().
inline ApproximationScheme make_f5(const std::array<double, 4>& lambdas, double xi1, double xi2,
                                   const EckartModel& model, double r0) {
  const double sum = lambdas[0] + lambdas[1] + lambdas[2] + lambdas[3];
  if (!(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
    throw WeightError("make_f5: weights must sum to 1");
  }
  const std::array<Coefficients, 4> parts = {make_f1().coefficients(),
                                             make_f2(xi1, xi2).coefficients(),
                                             make_f3().coefficients(),
                                             make_f4(model, r0).coefficients()};
  Coefficients y{0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      y[i] += lambdas[j] * parts[j][i];
    }
  }
  ApproximationScheme s;
  s.kind = SchemeKind::F5;
  s.y1 = y[0];
  s.y2 = y[1];
  s.y3 = y[2];
  s.xi1 = xi1;
  s.xi2 = xi2;
  s.r0 = r0;
  s.lambdas = lambdas;
  return s;
}

inline ApproximationScheme make_f5(const std::array<double, 4>& lambdas, double xi1, double xi2,
                                   const EckartModel& model) {
  return make_f5(lambdas, xi1, xi2, model, default_r0(model));
}

/// 1/4 + 2 mu a^2 beta / hbar^2 + L(L+1) y3; must be non-negative for the
/// origin exponent to be real.
inline double origin_discriminant(const ApproximationScheme& scheme, const EckartModel& model,
                                  const QuantumNumbers& q) {
  return 0.25 + model.coupling_scale() * model.beta() + centrifugal_strength(q) * scheme.y3;
}

inline ValidityReport validate(const ApproximationScheme& scheme, const EckartModel& model,
                               const QuantumNumbers& q) {
  ValidityReport report;
  if (scheme.kind == SchemeKind::F5) {
    const auto& l = scheme.lambdas;
    report.sum_ok = std::abs(l[0] + l[1] + l[2] + l[3] - 1.0) <= kWeightSumTolerance;
  }
  report.y1_ok = scheme.y1 >= 0.0;
  report.l1_ok = origin_discriminant(scheme, model, q) >= 0.0;
  return report;
}

inline double evaluate_inv_r2(const ApproximationScheme& scheme, double r, double a) {
  if (!(r > 0.0)) {
    throw DomainError("evaluate_inv_r2: r must be positive");
  }
  const double x = r / a;
  const double s = std::exp(-x);
  const double t = s / (-std::expm1(-x));  // s/(1-s)
  return (scheme.y1 + scheme.y2 * t + scheme.y3 * t * t) / (a * a);
}

struct ErrorSample {
  double r;
  double error;
};

/// L(L+1) (1/r^2 - f(r)) on the given grid; at D = 3 this is l(l+1)(...).
inline std::vector<ErrorSample> error_profile(const ApproximationScheme& scheme,
                                              const EckartModel& model, int ell,
                                              std::span<const double> r_grid, int dim = 3) {
  if (r_grid.empty()) {
    throw DomainError("error_profile: empty grid");
  }
  const double strength = centrifugal_strength(QuantumNumbers{0, ell, dim});
  std::vector<ErrorSample> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    const double f = evaluate_inv_r2(scheme, r, model.a());
    out.push_back({r, strength * (1.0 / (r * r) - f)});
  }
  return out;
}

}  // namespace eckart
