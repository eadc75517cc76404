#pragma once

#include <cmath>
#include <string>

#include "eckart/errors.hpp"

namespace eckart {

struct PhysicalConstants {
  double hbar = 1.0;
  double mu = 1.0;  // reduced mass

  void check() const {
    if (!(hbar > 0.0) || !(mu > 0.0)) {
      throw DomainError("PhysicalConstants: hbar and mu must be positive");
    }
  }
};

/// Eckart potential
///
///   V(r) = -alpha s/(1-s) + beta s/(1-s)^2,   s = exp(-r/a)
///
/// alpha and beta are energies (natural units), a is the range.
class EckartModel {
 public:
  EckartModel(double alpha, double beta, double a, PhysicalConstants constants = {})
      : alpha_(alpha), beta_(beta), a_(a), constants_(constants) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(a > 0.0)) {
      throw DomainError("EckartModel: alpha, beta and a must be positive");
    }
    constants_.check();
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double a() const { return a_; }
  const PhysicalConstants& constants() const { return constants_; }

  /// 2 mu a^2 / hbar^2, the factor that turns energies into the dimensionless
  /// couplings of the s = exp(-r/a) equation.
  double coupling_scale() const {
    return 2.0 * constants_.mu * a_ * a_ / (constants_.hbar * constants_.hbar);
  }

  /// hbar^2 / (2 mu a^2)
  double energy_unit() const { return 1.0 / coupling_scale(); }

  bool has_minimum() const { return alpha_ > beta_; }

 private:
  double alpha_;
  double beta_;
  double a_;
  PhysicalConstants constants_;
};

struct QuantumNumbers {
  int n_r = 0;
  int ell = 0;
  int dim = 3;

  void check() const {
    if (n_r < 0 || ell < 0) {
      throw DomainError("QuantumNumbers: n_r and ell must be non-negative");
    }
    if (dim < 3) {
      throw DomainError("QuantumNumbers: dimension must be an integer >= 3");
    }
  }

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

inline std::string to_string(const QuantumNumbers& q) {
  return "(n_r=" + std::to_string(q.n_r) + ", l=" + std::to_string(q.ell) +
         ", D=" + std::to_string(q.dim) + ")";
}

/// L = l + (D-3)/2
inline double effective_L(const QuantumNumbers& q) {
  q.check();
  return q.ell + 0.5 * (q.dim - 3);
}

/// L(L+1), the strength of the centrifugal barrier.
inline double centrifugal_strength(const QuantumNumbers& q) {
  const double L = effective_L(q);
  return L * (L + 1.0);
}

inline double eval_potential(const EckartModel& model, double r) {
  if (!(r > 0.0)) {
    throw DomainError("eval_potential: r must be positive");
  }
  const double x = r / model.a();
  const double s = std::exp(-x);
  const double one_minus_s = -std::expm1(-x);
  const double ratio = s / one_minus_s;
  return ratio * (-model.alpha() + model.beta() / one_minus_s);
}

struct PotentialMinimum {
  double r0;
  double value;
};

inline PotentialMinimum potential_minimum(const EckartModel& model) {
  if (!model.has_minimum()) {
    throw NoMinimum("potential_minimum: requires alpha > beta");
  }
  const double alpha = model.alpha();
  const double beta = model.beta();
  // log1p form keeps r0 accurate when alpha >> beta
  const double r0 = model.a() * std::log1p(2.0 * beta / (alpha - beta));
  const double depth = (alpha - beta) * (alpha - beta) / (4.0 * beta);
  return {r0, -depth};
}

}  // namespace eckart
