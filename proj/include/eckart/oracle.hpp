#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eckart/centrifugal.hpp"
#include "eckart/errors.hpp"
#include "eckart/model.hpp"
#include "eckart/spectrum.hpp"

namespace eckart::oracle {

// Numerov shooting solver for
//
//   R'' = [ 2 mu/hbar^2 (V(r) - E) + L(L+1) f(r) ] R,
//
// with f(r) = 1/r^2 (exact) or an approximation scheme. The equation is
// integrated on a uniform grid in x = ln r with R = r^{1/2} u, which turns it
// into u'' = (r^2 g(r) + 1/4) u and keeps the Numerov form free of first
// derivatives. The log grid resolves the r^{L1} behaviour at the origin.

struct RadialSolverConfig {
  double r_min_in_a = 1e-6;
  double r_max_in_a = 60.0;
  int n_points = 20000;
  double energy_tol = 1e-12;  // relative to the depth of the effective well
  int max_bisections = 200;

  void check() const {
    if (!(r_min_in_a > 0.0) || !(r_max_in_a > r_min_in_a)) {
      throw DomainError("RadialSolverConfig: need 0 < r_min < r_max");
    }
    if (n_points < 1000) {
      throw DomainError("RadialSolverConfig: n_points must be >= 1000");
    }
  }
};

struct ExactCentrifugal {};

using CentrifugalMode = std::variant<ExactCentrifugal, ApproximationScheme>;

inline std::string mode_name(const CentrifugalMode& mode) {
  if (std::holds_alternative<ExactCentrifugal>(mode)) return "exact";
  return to_string(std::get<ApproximationScheme>(mode).kind);
}

namespace detail {

class RadialProblem {
 public:
  RadialProblem(const EckartModel& model, const QuantumNumbers& q, const CentrifugalMode& mode,
                const RadialSolverConfig& cfg)
      : n_(cfg.n_points) {
    cfg.check();
    q.check();
    const double a = model.a();
    const double strength = centrifugal_strength(q);
    const double g = 2.0 * model.constants().mu /
                     (model.constants().hbar * model.constants().hbar);
    const double x_min = std::log(cfg.r_min_in_a * a);
    const double x_max = std::log(cfg.r_max_in_a * a);
    h_ = (x_max - x_min) / (n_ - 1);
    r_.resize(n_);
    static_part_.resize(n_);
    r2_.resize(n_);
    const auto* scheme = std::get_if<ApproximationScheme>(&mode);
    double exponent_sq = g * model.beta() * a * a;  // beta a^2 / r^2 near the origin
    exponent_sq += strength * (scheme ? scheme->y3 : 1.0);
    threshold_ = scheme ? strength * scheme->y1 / (g * a * a) : 0.0;
    well_bottom_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) {
      const double r = std::exp(x_min + i * h_);
      const double f = scheme ? evaluate_inv_r2(*scheme, r, a) : 1.0 / (r * r);
      const double veff = eval_potential(model, r) + strength * f / g;
      r_[i] = r;
      r2_[i] = g * r * r;
      // r^2 g(r) + 1/4 without the energy term
      static_part_[i] = r2_[i] * veff + 0.25;
      well_bottom_ = std::min(well_bottom_, veff);
    }
    // R ~ r^{L1} with L1 (L1 - 1) = exponent_sq, so u ~ r^{L1 - 1/2}
    start_power_ = std::sqrt(0.25 + exponent_sq);
  }

  double well_bottom() const { return well_bottom_; }
  double threshold() const { return threshold_; }

  /// Sign changes of the outward solution. Integration stops once the
  /// solution has grown through more than ~e^{-70} of classically forbidden
  /// region past the last turning point; beyond that no node can appear at
  /// double precision.
  int node_count(double energy) const {
    const double h2 = h_ * h_ / 12.0;
    auto F = [&](int i) { return static_part_[i] - r2_[i] * energy; };
    int last_allowed = 0;
    for (int i = 0; i < n_; ++i) {
      if (F(i) < 0.0) last_allowed = i;
    }
    double u_prev = std::pow(r_[0], start_power_);
    double u = std::pow(r_[1], start_power_);
    const double scale = u;
    u_prev /= scale;
    u /= scale;
    double w_prev = (1.0 - h2 * F(0)) * u_prev;
    double w = (1.0 - h2 * F(1)) * u;
    int nodes = 0;
    double log_growth = 0.0;
    double log_at_turn = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i + 1 < n_; ++i) {
      const double w_next = 2.0 * w - w_prev + 12.0 * h2 * F(i) * u;
      const double u_next = w_next / (1.0 - h2 * F(i + 1));
      if (u_next == 0.0 || (u_next < 0.0) != (u < 0.0)) {
        ++nodes;
      }
      w_prev = w;
      w = w_next;
      u = u_next;
      if (std::abs(u) > 1e100) {
        w_prev *= 1e-100;
        w *= 1e-100;
        u *= 1e-100;
        log_growth += 100.0 * std::log(10.0);
      }
      if (i + 1 >= last_allowed && std::isnan(log_at_turn)) {
        log_at_turn = log_growth + std::log(std::abs(u));
      }
      if (i + 1 > last_allowed && !std::isnan(log_at_turn) &&
          log_growth + std::log(std::abs(u)) - log_at_turn > 160.0) {
        break;
      }
    }
    return nodes;
  }

 private:
  int n_;
  double h_ = 0.0;
  std::vector<double> r_;
  std::vector<double> r2_;
  std::vector<double> static_part_;
  double well_bottom_ = 0.0;
  double threshold_ = 0.0;
  double start_power_ = 0.0;
};

}  // namespace detail

/// Number of nodes of the outward solution at trial energy E. This counts
/// the grid eigenvalues below E and is non-decreasing in E.
inline int node_count(const EckartModel& model, const QuantumNumbers& q,
                      const CentrifugalMode& mode, const RadialSolverConfig& cfg, double energy) {
  return detail::RadialProblem(model, q, mode, cfg).node_count(energy);
}

/// Energy of the state with n_r nodes, bracketed between the bottom of the
/// effective well and the continuum threshold and refined by bisection on
/// the node count.
inline double solve_state(const EckartModel& model, const QuantumNumbers& q,
                          const CentrifugalMode& mode, const RadialSolverConfig& cfg = {}) {
  const detail::RadialProblem problem(model, q, mode, cfg);
  double lo = problem.well_bottom();
  const double scale = std::max(std::abs(lo), std::abs(problem.threshold()));
  double hi = problem.threshold() - 1e-12 * scale;
  if (!(lo < hi)) {
    throw NoStateFound("solve_state: effective well is empty for " + to_string(q));
  }
  if (problem.node_count(hi) <= q.n_r) {
    throw NoStateFound("solve_state: fewer than n_r + 1 levels below threshold for " +
                       to_string(q));
  }
  const double tol = cfg.energy_tol * scale;
  for (int it = 0; it < cfg.max_bisections; ++it) {
    if (hi - lo < tol) {
      return 0.5 * (lo + hi);
    }
    const double mid = 0.5 * (lo + hi);
    if (problem.node_count(mid) > q.n_r) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw NonConverged("solve_state: bisection budget exhausted for " + to_string(q));
}

struct TableCell {
  std::string mode;
  std::optional<double> oracle;       // empty on solver failure
  std::optional<double> closed_form;  // approximation modes only; empty if no bound state
  std::string error;                  // solver or closed-form failure, if any

  std::optional<double> difference() const {
    if (oracle && closed_form) return *oracle - *closed_form;
    return std::nullopt;
  }
};

struct TableRow {
  QuantumNumbers q;
  std::vector<TableCell> cells;
};

/// Oracle (and closed-form, where defined) energies for each state and mode.
/// Failures are recorded per cell.
inline std::vector<TableRow> spectrum_table(const EckartModel& model,
                                            const std::vector<CentrifugalMode>& modes,
                                            const std::vector<QuantumNumbers>& states,
                                            const RadialSolverConfig& cfg = {}) {
  std::vector<TableRow> rows;
  rows.reserve(states.size());
  for (const auto& q : states) {
    TableRow row{q, {}};
    for (const auto& mode : modes) {
      TableCell cell;
      cell.mode = mode_name(mode);
      try {
        cell.oracle = solve_state(model, q, mode, cfg);
      } catch (const Error& e) {
        cell.error = e.what();
      }
      if (const auto* scheme = std::get_if<ApproximationScheme>(&mode)) {
        try {
          if (exists(model, *scheme, q)) {
            cell.closed_form = closed_form_level(model, *scheme, q).energy;
          }
        } catch (const Error& e) {
          cell.error = e.what();
        }
      }
      row.cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace eckart::oracle
