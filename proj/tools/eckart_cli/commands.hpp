#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "eckart_cli/config.hpp"
#include "eckart/wavefunction.hpp"

namespace eckart::cli {

// Each command renders its whole output in memory; main writes it once.

struct CommandOutput {
  std::string text;
  bool numeric_failure = false;
};

inline constexpr const char* kMissing = "…";

namespace detail {

inline std::string fixed7(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", x);
  return buf;
}

// shortest text that reads back to the same double
inline std::string full(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

inline Json state_json(const QuantumNumbers& q) {
  return Json{{"n_r", q.n_r}, {"ell", q.ell}, {"dim", q.dim}};
}

inline std::string state_csv(const QuantumNumbers& q) {
  return std::to_string(q.n_r) + "," + std::to_string(q.ell) + "," + std::to_string(q.dim);
}

inline Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::string opt_csv(const std::optional<double>& v) { return v ? full(*v) : kMissing; }

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::vector<ApproximationScheme> build_schemes(const RunConfig& cfg, const EckartModel& model) {
  std::vector<ApproximationScheme> out;
  for (const auto& spec : cfg.schemes) {
    try {
      out.push_back(spec.build(model));
    } catch (const Error& e) {
      throw ConfigError("scheme '" + spec.name + "': " + e.what());
    }
  }
  return out;
}

inline void require_model(const RunConfig& cfg) {
  if (cfg.model.betas.empty()) throw ConfigError("a [model] section is required");
}

enum class CellStatus { Ok, Missing, SchemeInvalid };

struct Cell {
  CellStatus status = CellStatus::Missing;
  double energy = 0.0;
};

inline Cell closed_form_cell(const EckartModel& model, const ApproximationScheme& s,
                             const QuantumNumbers& q) {
  if (!validate(s, model, q).admissible()) return {CellStatus::SchemeInvalid, 0.0};
  const Level level = closed_form_level(model, s, q);
  if (!is_bound(level)) return {CellStatus::Missing, 0.0};
  return {CellStatus::Ok, level.energy};
}

inline const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const NoStateFound*>(&e)) return "no_state_found";
  if (dynamic_cast<const NonConverged*>(&e)) return "non_converged";
  if (dynamic_cast<const NoSignChange*>(&e)) return "no_sign_change";
  if (dynamic_cast<const SchemeInvalid*>(&e)) return "scheme_invalid";
  return "error";
}

}  // namespace detail

/// Binding energies -E, one column per scheme. CSV carries a 7-decimal
/// column and a full-precision "<name>_full" column per scheme.
inline CommandOutput cmd_energies(const RunConfig& cfg, const std::string& format) {
  using namespace detail;
  require_model(cfg);
  std::vector<std::string> names;
  for (const auto& s : cfg.schemes) names.push_back(s.name);

  std::ostringstream csv;
  csv << "beta,n_r,ell,dim";
  for (const auto& n : names) csv << "," << n;
  for (const auto& n : names) csv << "," << n << "_full";
  csv << "\n";

  Json blocks = Json::array();
  for (double beta : cfg.model.betas) {
    const EckartModel model = cfg.model.at(beta);
    const auto schemes = build_schemes(cfg, model);
    Json rows = Json::array();
    for (const auto& q : cfg.states) {
      std::vector<Cell> cells;
      for (const auto& s : schemes) cells.push_back(closed_form_cell(model, s, q));
      csv << full(beta) << "," << state_csv(q);
      for (const auto& c : cells) {
        csv << "," << (c.status == CellStatus::Ok ? fixed7(-c.energy)
                       : c.status == CellStatus::Missing ? std::string(kMissing)
                                                          : std::string("error:scheme_invalid"));
      }
      for (const auto& c : cells) {
        csv << "," << (c.status == CellStatus::Ok ? full(-c.energy)
                       : c.status == CellStatus::Missing ? std::string(kMissing)
                                                          : std::string("error:scheme_invalid"));
      }
      csv << "\n";
      Json row = state_json(q);
      Json values = Json::object();
      Json errors = Json::object();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        values[names[i]] = cells[i].status == CellStatus::Ok ? Json(-cells[i].energy) : Json(nullptr);
        if (cells[i].status == CellStatus::SchemeInvalid) errors[names[i]] = "scheme_invalid";
      }
      row["minus_energy"] = values;
      row["errors"] = errors;
      rows.push_back(row);
    }
    blocks.push_back(Json{{"beta", beta}, {"rows", rows}});
  }
  if (format == "csv") return {csv.str(), false};

  Json states = Json::array();
  for (const auto& q : cfg.states) states.push_back(state_json(q));
  Json out{{"command", "energies"}, {"quantity", "minus_energy"}, {"schemes", names},
           {"states", states}, {"blocks", blocks}};
  return {dump(out), false};
}

/// L(L+1) (1/r^2 - f(r)) for every scheme on every configured grid. Grid
/// points with r <= 0 are skipped.
inline CommandOutput cmd_error_profile(const RunConfig& cfg, const std::string& format) {
  using namespace detail;
  require_model(cfg);
  if (cfg.profile.grids.empty()) throw ConfigError("profile: at least one grid is required");
  const EckartModel model = cfg.model.at(cfg.model.betas.front());
  const auto schemes = build_schemes(cfg, model);

  std::ostringstream csv;
  csv << "grid,r";
  for (const auto& s : cfg.schemes) csv << "," << s.name;
  csv << "\n";
  Json grids = Json::array();
  for (const auto& g : cfg.profile.grids) {
    const double shift = g.around_r0 ? potential_minimum(model).r0 : 0.0;
    std::vector<double> r;
    for (int i = 0; i < g.points; ++i) {
      const double x = shift + g.lo + (g.hi - g.lo) * i / (g.points - 1);
      if (x > 0.0) r.push_back(x);
    }
    if (r.empty()) throw ConfigError("grid '" + g.label + "' has no positive radii");
    std::vector<std::vector<ErrorSample>> columns;
    for (const auto& s : schemes) {
      columns.push_back(error_profile(s, model, cfg.profile.ell, r, cfg.profile.dim));
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      csv << g.label << "," << full(r[i]);
      for (const auto& c : columns) csv << "," << full(c[i].error);
      csv << "\n";
    }
    Json errors = Json::object();
    for (std::size_t k = 0; k < columns.size(); ++k) {
      Json col = Json::array();
      for (const auto& e : columns[k]) col.push_back(e.error);
      errors[cfg.schemes[k].name] = col;
    }
    grids.push_back(Json{{"label", g.label}, {"r", r}, {"error", errors}});
  }
  if (format == "csv") return {csv.str(), false};
  Json out{{"command", "error-profile"},
           {"ell", cfg.profile.ell},
           {"dim", cfg.profile.dim},
           {"grids", grids}};
  return {dump(out), false};
}

/// Closed-form energies against the oracle with the exact 1/r^2 term (and,
/// with compare.approx_mode, against the oracle run on the scheme itself).
inline CommandOutput cmd_compare_oracle(const RunConfig& cfg, const std::string& format) {
  using namespace detail;
  require_model(cfg);
  std::ostringstream csv;
  csv << "beta,n_r,ell,dim,scheme,closed_form,oracle_exact,abs_diff_exact,oracle_approx,"
         "abs_diff_approx,status\n";
  Json rows = Json::array();
  for (double beta : cfg.model.betas) {
    const EckartModel model = cfg.model.at(beta);
    const auto schemes = build_schemes(cfg, model);
    for (const auto& q : cfg.states) {
      std::optional<double> exact;
      std::string exact_error;
      try {
        exact = oracle::solve_state(model, q, oracle::ExactCentrifugal{}, cfg.solver);
      } catch (const Error& e) {
        exact_error = error_kind(e);
      }
      for (std::size_t k = 0; k < schemes.size(); ++k) {
        const Cell cell = closed_form_cell(model, schemes[k], q);
        std::optional<double> closed;
        if (cell.status == CellStatus::Ok) closed = cell.energy;
        std::optional<double> approx;
        std::string status = cell.status == CellStatus::Ok        ? "ok"
                             : cell.status == CellStatus::Missing ? "missing"
                                                                   : "scheme_invalid";
        if (!exact_error.empty()) status = "oracle_exact:" + exact_error;
        if (cfg.approx_mode && cell.status == CellStatus::Ok) {
          try {
            approx = oracle::solve_state(model, q, schemes[k], cfg.solver);
          } catch (const Error& e) {
            status = std::string("oracle_approx:") + error_kind(e);
          }
        }
        std::optional<double> diff_exact;
        std::optional<double> diff_approx;
        if (closed && exact) diff_exact = std::abs(*closed - *exact);
        if (closed && approx) diff_approx = std::abs(*closed - *approx);
        csv << full(beta) << "," << state_csv(q) << "," << cfg.schemes[k].name << ","
            << opt_csv(closed) << "," << opt_csv(exact) << ","
            << (diff_exact ? sci(*diff_exact) : kMissing) << "," << opt_csv(approx) << ","
            << (diff_approx ? sci(*diff_approx) : kMissing) << "," << status << "\n";
        Json row{{"beta", beta}};
        row.update(state_json(q));
        row["scheme"] = cfg.schemes[k].name;
        row["closed_form"] = opt(closed);
        row["oracle_exact"] = opt(exact);
        row["abs_diff_exact"] = opt(diff_exact);
        row["oracle_approx"] = opt(approx);
        row["abs_diff_approx"] = opt(diff_approx);
        row["status"] = status;
        rows.push_back(row);
      }
    }
  }
  if (format == "csv") return {csv.str(), false};
  return {dump(Json{{"command", "compare-oracle"}, {"rows", rows}}), false};
}

/// Zero-energy points and level crossings of the f1 spectrum in the range
/// parameter, with alpha = alpha_coefficient / a.
inline CommandOutput cmd_degeneracy(const RunConfig& cfg, const std::string& format) {
  using namespace detail;
  const auto& d = cfg.degeneracy;
  if (!d.beta && cfg.model.betas.empty()) {
    throw ConfigError("degeneracy: beta is required (or a [model] section)");
  }
  const double beta = d.beta ? *d.beta : cfg.model.betas.front();
  const PhysicalConstants units = cfg.model.constants;
  const double k = d.alpha_coefficient;
  const degeneracy::AlphaLaw law = [k](double a) { return k / a; };
  for (const auto& [x, y] : d.pairs) {
    if (x == y) throw ConfigError("degeneracy: pair " + to_string(x) + " repeats one state");
  }

  std::ostringstream csv;
  csv << "kind,n_r1,ell1,dim1,n_r2,ell2,dim2,a,equation_residual,energy_residual,"
         "relative_to_vmin,first_bound,second_bound,status\n";
  Json rows = Json::array();
  const std::string blank3 = std::string(kMissing) + "," + kMissing + "," + kMissing;
  auto emit = [&](const std::string& kind, const QuantumNumbers& x,
                  const std::optional<QuantumNumbers>& y, std::optional<double> a,
                  std::optional<double> eq, std::optional<double> en, std::optional<double> rel,
                  std::optional<bool> b1, std::optional<bool> b2, const std::string& status) {
    auto flag = [](const std::optional<bool>& b) -> std::string {
      return b ? (*b ? "true" : "false") : kMissing;
    };
    csv << kind << "," << state_csv(x) << "," << (y ? state_csv(*y) : blank3) << ","
        << opt_csv(a) << "," << (eq ? sci(*eq) : kMissing) << "," << (en ? sci(*en) : kMissing)
        << "," << (rel ? sci(*rel) : kMissing) << "," << flag(b1) << "," << flag(b2) << ","
        << status << "\n";
    Json row{{"kind", kind}, {"first", state_json(x)}};
    row["second"] = y ? state_json(*y) : Json(nullptr);
    row["a"] = opt(a);
    row["equation_residual"] = opt(eq);
    row["energy_residual"] = opt(en);
    row["relative_to_vmin"] = opt(rel);
    row["first_bound"] = b1 ? Json(*b1) : Json(nullptr);
    row["second_bound"] = b2 ? Json(*b2) : Json(nullptr);
    row["status"] = status;
    rows.push_back(row);
  };

  const double step = (d.bracket.hi - d.bracket.lo) / (d.samples - 1);
  for (const auto& q : d.zero_energy) {
    auto residual = [&](double a) { return degeneracy::zero_energy_residual(q, law, beta, units, a); };
    int found = 0;
    double a_prev = d.bracket.lo;
    double f_prev = residual(a_prev);
    for (int i = 1; i < d.samples; ++i) {
      const double a = (i + 1 == d.samples) ? d.bracket.hi : d.bracket.lo + i * step;
      const double f = residual(a);
      if (f_prev != 0.0 && (f == 0.0 || (f < 0.0) != (f_prev < 0.0))) {
        const double root = degeneracy::zero_energy_a(q, law, beta, units, {a_prev, a});
        const EckartModel model = degeneracy::model_at(root, law, beta, units);
        const Level level = closed_form_level(model, make_f1(), q);
        const double vmin = std::abs(potential_minimum(model).value);
        emit("zero_energy", q, std::nullopt, root, residual(root), std::abs(level.energy),
             std::abs(level.energy) / vmin, std::nullopt, std::nullopt, "root");
        ++found;
      }
      a_prev = a;
      f_prev = f;
    }
    if (found == 0) {
      emit("zero_energy", q, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
           std::nullopt, std::nullopt, "no_sign_change");
    }
  }
  for (const auto& [x, y] : d.pairs) {
    const auto entries = degeneracy::scan_degeneracies({{x, y}}, law, beta, units, d.bracket,
                                                       d.samples, d.branch);
    if (entries.empty()) {
      emit("crossing", x, y, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
           std::nullopt, "no_sign_change");
    }
    for (const auto& e : entries) {
      if (e.result.status == degeneracy::CrossingStatus::AlwaysDegenerate) {
        emit("crossing", x, y, std::nullopt, 0.0, 0.0, 0.0, std::nullopt, std::nullopt,
             "always_degenerate");
        continue;
      }
      const EckartModel model = degeneracy::model_at(e.result.a, law, beta, units);
      const double vmin = std::abs(potential_minimum(model).value);
      emit("crossing", x, y, e.result.a, e.result.residual, e.result.energy_gap,
           e.result.energy_gap / vmin, e.result.first_bound, e.result.second_bound, "root");
    }
  }
  if (format == "csv") return {csv.str(), false};
  return {dump(Json{{"command", "degeneracy"}, {"beta", beta}, {"alpha_coefficient", k},
                    {"branch", degeneracy::to_string(d.branch)}, {"rows", rows}}),
          false};
}

/// Quadrature of R^2 and node count for every existing state; a deviation
/// above normalize.tolerance or a wrong node count is a numeric failure.
inline CommandOutput cmd_normalize_check(const RunConfig& cfg, const std::string& format) {
  using namespace detail;
  require_model(cfg);
  std::ostringstream csv;
  csv << "beta,n_r,ell,dim,scheme,norm_constant,norm_integral,deviation,nodes,status\n";
  Json rows = Json::array();
  bool failed = false;
  for (double beta : cfg.model.betas) {
    const EckartModel model = cfg.model.at(beta);
    const auto schemes = build_schemes(cfg, model);
    for (const auto& q : cfg.states) {
      for (std::size_t k = 0; k < schemes.size(); ++k) {
        const Cell cell = closed_form_cell(model, schemes[k], q);
        std::optional<double> norm;
        std::optional<double> integral;
        std::optional<double> deviation;
        std::optional<int> nodes;
        std::string status = cell.status == CellStatus::Missing ? "missing" : "scheme_invalid";
        if (cell.status == CellStatus::Ok) {
          const auto w = make_radial_wavefunction(energy(model, schemes[k], q), model);
          norm = w.norm;
          integral = radial_norm_integral(w);
          deviation = std::abs(*integral - 1.0);
          nodes = radial_node_count(w);
          const bool ok = *deviation <= cfg.normalize_tolerance && *nodes == q.n_r;
          status = ok ? "ok" : "failed";
          failed |= !ok;
        }
        csv << full(beta) << "," << state_csv(q) << "," << cfg.schemes[k].name << ","
            << opt_csv(norm) << "," << opt_csv(integral) << ","
            << (deviation ? sci(*deviation) : kMissing) << ","
            << (nodes ? std::to_string(*nodes) : kMissing) << "," << status << "\n";
        Json row{{"beta", beta}};
        row.update(state_json(q));
        row["scheme"] = cfg.schemes[k].name;
        row["norm_constant"] = opt(norm);
        row["norm_integral"] = opt(integral);
        row["deviation"] = opt(deviation);
        row["nodes"] = nodes ? Json(*nodes) : Json(nullptr);
        row["status"] = status;
        rows.push_back(row);
      }
    }
  }
  if (format == "csv") return {csv.str(), failed};
  return {dump(Json{{"command", "normalize-check"}, {"rows", rows}}), failed};
}

}  // namespace eckart::cli
