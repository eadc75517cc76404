#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "eckart/errors.hpp"

namespace eckart::quadrature {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes from Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
  if (n < 1) {
    throw DomainError("gauss_legendre: n must be positive");
  }
  if (n == 1) {
    return {{0.0}, {2.0}};
  }
  // P_n(x) and P_n'(x) by upward recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <typename F>
double fixed(const Rule& rule, F&& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

namespace detail {

template <typename F>
double adapt(const Rule& rule, F& f, double lo, double hi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = fixed(rule, f, lo, mid);
  const double right = fixed(rule, f, mid, hi);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol || depth <= 0) {
    return refined;
  }
  return adapt(rule, f, lo, mid, left, 0.5 * tol, depth - 1) +
         adapt(rule, f, mid, hi, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Legendre: panels are bisected until the two-half estimate
/// agrees with the whole-panel estimate to the (split) absolute tolerance.
/// The interval is first cut into `initial_panels` equal pieces so that
/// narrow features are not missed by the coarsest estimate.
template <typename F>
double integrate(F&& f, double lo, double hi, double abs_tol = 1e-10, int initial_panels = 64,
                 int order = 20, int max_depth = 30) {
  const Rule rule = gauss_legendre(order);
  const double width = (hi - lo) / initial_panels;
  double total = 0.0;
  for (int p = 0; p < initial_panels; ++p) {
    const double a = lo + p * width;
    const double b = (p + 1 == initial_panels) ? hi : a + width;
    const double whole = fixed(rule, f, a, b);
    total += detail::adapt(rule, f, a, b, whole, abs_tol / initial_panels, max_depth);
  }
  return total;
}

}  // namespace eckart::quadrature
