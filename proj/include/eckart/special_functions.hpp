#pragma once

#include <cmath>
#include <concepts>

#include "eckart/errors.hpp"

namespace eckart::special {

template <std::floating_point T>
T log_gamma(T x) {
  if (!(x > T(0))) {
    throw DomainError("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

/// Gamma(a) / Gamma(b) via log-gamma, for positive a and b.
template <std::floating_point T>
T gamma_ratio(T a, T b) {
  return std::exp(log_gamma(a) - log_gamma(b));
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
template <std::floating_point T>
T pochhammer(T a, int k) {
  if (k < 0) {
    throw DomainError("pochhammer: k must be non-negative");
  }
  T result = 1;
  for (int i = 0; i < k; ++i) {
    result *= a + T(i);
  }
  return result;
}

inline bool is_non_positive_integer(double c) {
  return c <= 0.0 && c == std::floor(c);
}

/// 2F1(-n, b; c; s) for integer n >= 0. The series stops after n+1 terms.
template <std::floating_point T>
T hyp2f1_terminating(int n, T b, T c, T s) {
  if (n < 0) {
    throw DomainError("hyp2f1_terminating: n must be non-negative");
  }
  if (is_non_positive_integer(static_cast<double>(c))) {
    throw DomainError("hyp2f1_terminating: c must not be a non-positive integer");
  }
  T term = 1;
  T sum = 1;
  for (int k = 0; k < n; ++k) {
    term *= (T(k - n) * (b + T(k))) / ((c + T(k)) * T(k + 1)) * s;
    sum += term;
  }
  return sum;
}

/// Jacobi polynomial P_n^{(a,b)}(x) from the three-term recurrence.
template <std::floating_point T>
T jacobi_p(int n, T a, T b, T x) {
  if (n < 0) {
    throw DomainError("jacobi_p: degree must be non-negative");
  }
  if (n == 0) return T(1);
  T p_prev = 1;
  T p = (a + T(1)) + (a + b + T(2)) * (x - T(1)) / T(2);
  for (int k = 1; k < n; ++k) {
    const T kk = k;
    const T sum = T(2) * kk + a + b;
    const T c1 = T(2) * (kk + T(1)) * (kk + a + b + T(1)) * sum;
    const T c2 = (sum + T(1)) * (a * a - b * b);
    const T c3 = sum * (sum + T(1)) * (sum + T(2));
    const T c4 = T(2) * (kk + a) * (kk + b) * (sum + T(2));
    const T next = ((c2 + c3 * x) * p - c4 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return p;
}

/// Gegenbauer polynomial C_n^{alpha}(t).
template <std::floating_point T>
T gegenbauer_c(int n, T alpha, T t) {
  if (n < 0) {
    throw DomainError("gegenbauer_c: degree must be non-negative");
  }
  if (n == 0) return T(1);
  T c_prev = 1;
  T c = T(2) * alpha * t;
  for (int k = 1; k < n; ++k) {
    const T kk = k;
    const T next = (T(2) * t * (kk + alpha) * c - (kk + T(2) * alpha - T(1)) * c_prev) / (kk + T(1));
    c_prev = c;
    c = next;
  }
  return c;
}

}  // namespace eckart::special
