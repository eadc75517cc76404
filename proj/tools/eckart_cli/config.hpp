#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eckart/centrifugal.hpp"
#include "eckart/degeneracy.hpp"
#include "eckart/errors.hpp"
#include "eckart/model.hpp"
#include "eckart/oracle.hpp"

namespace eckart::cli {

using Json = nlohmann::ordered_json;

// Run configuration. Two surface syntaxes are accepted: JSON, and an INI-like
// text with [section] headers and key = value lines. The INI form is turned
// into the same JSON tree before interpretation, so both share one schema:
//
//   model       alpha | alpha_coefficient, beta (number or list), a, hbar, mu
//   schemes     ordered list of {name, kind, xi1, xi2, lambdas, r0}
//               (INI: one [scheme.<name>] section each)
//   states      list of [n_r, ell, dim] or {n_r, ell, dim}, or an object with
//               n_r / ell / dim lists (Cartesian product) and an extra list
//   solver      r_min, r_max, n_points, energy_tol, max_bisections
//   profile     ell, dim, grids: [{label, lo, hi, points, around_r0}]
//               (INI: one [grid.<label>] section each)
//   degeneracy  alpha_coefficient, beta, bracket, samples, branch, pairs,
//               zero_energy
//   compare     approx_mode
//   normalize   tolerance
//   output      format (csv | json)

struct SchemeSpec {
  std::string name;
  SchemeKind kind = SchemeKind::F1;
  double xi1 = 1.0;
  double xi2 = 1.0;
  std::array<double, 4> lambdas{1.0, 0.0, 0.0, 0.0};
  std::optional<double> r0;

  ApproximationScheme build(const EckartModel& model) const {
    switch (kind) {
      case SchemeKind::F1:
        return make_f1();
      case SchemeKind::F2:
        return make_f2(xi1, xi2);
      case SchemeKind::F3:
        return make_f3();
      case SchemeKind::F4:
        return r0 ? make_f4(model, *r0) : make_f4(model);
      case SchemeKind::F5:
        return r0 ? make_f5(lambdas, xi1, xi2, model, *r0) : make_f5(lambdas, xi1, xi2, model);
    }
    throw ConfigError("unknown scheme kind");
  }
};

struct ModelSpec {
  std::optional<double> alpha;
  double alpha_coefficient = 1.0;  // alpha = alpha_coefficient / a when alpha is absent
  std::vector<double> betas;
  double a = 1.0;
  PhysicalConstants constants{};

  EckartModel at(double beta) const {
    return EckartModel(alpha ? *alpha : alpha_coefficient / a, beta, a, constants);
  }
};

struct GridSpec {
  std::string label;
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  bool around_r0 = false;  // lo and hi are offsets from the potential minimum
};

struct ProfileSpec {
  int ell = 2;
  int dim = 3;
  std::vector<GridSpec> grids;
};

struct DegeneracySpec {
  double alpha_coefficient = 1.0;
  std::optional<double> beta;
  degeneracy::Bracket bracket{0.01, 2000.0};
  int samples = 400;
  degeneracy::Branch branch = degeneracy::Branch::Plus;
  std::vector<std::pair<QuantumNumbers, QuantumNumbers>> pairs;
  std::vector<QuantumNumbers> zero_energy;
};

struct RunConfig {
  ModelSpec model;
  std::vector<SchemeSpec> schemes;
  std::vector<QuantumNumbers> states;
  oracle::RadialSolverConfig solver;
  ProfileSpec profile;
  DegeneracySpec degeneracy;
  bool approx_mode = false;
  double normalize_tolerance = 1e-8;
  std::optional<std::string> format;  // csv | json
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

inline Json parse_scalar(const std::string& token) {
  if (token == "true") return true;
  if (token == "false") return false;
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    return token.substr(1, token.size() - 2);
  }
  try {
    std::size_t used = 0;
    if (token.find_first_of(".eE") == std::string::npos) {
      const long long v = std::stoll(token, &used);
      if (used == token.size()) return v;
    }
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  return token;
}

// ';' separates list items, '/' separates the members of a pair, and commas
// or blanks separate numbers inside an item.
inline Json parse_ini_value(const std::string& raw) {
  const std::string v = trim(raw);
  if (v.empty()) return Json::array();
  if (v.find(';') != std::string::npos) {
    Json out = Json::array();
    for (const auto& part : split(v, ';')) {
      if (!part.empty()) out.push_back(parse_ini_value(part));
    }
    return out;
  }
  if (v.find('/') != std::string::npos) {
    Json out = Json::array();
    for (const auto& part : split(v, '/')) out.push_back(parse_ini_value(part));
    return out;
  }
  std::string spaced = v;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() == 1 && v.find(',') == std::string::npos) return parse_scalar(tokens[0]);
  Json out = Json::array();
  for (const auto& t : tokens) out.push_back(parse_scalar(t));
  return out;
}

}  // namespace detail

/// INI-like text to the JSON tree. [scheme.<name>] and [grid.<label>]
/// sections become ordered list entries.
inline Json parse_ini(const std::string& text) {
  Json root = Json::object();
  Json* current = nullptr;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#");
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      const std::string name = detail::trim(line.substr(1, line.size() - 2));
      const auto dot = name.find('.');
      if (dot != std::string::npos) {
        const std::string group = name.substr(0, dot);
        const std::string label = name.substr(dot + 1);
        std::string list_key;
        std::string parent;
        std::string label_key;
        if (group == "scheme") {
          parent = "";
          list_key = "schemes";
          label_key = "name";
        } else if (group == "grid") {
          parent = "profile";
          list_key = "grids";
          label_key = "label";
        } else {
          throw ConfigError("line " + std::to_string(line_no) + ": unknown section group '" +
                            group + "'");
        }
        Json& owner = parent.empty() ? root : root[parent];
        if (!owner.contains(list_key)) owner[list_key] = Json::array();
        Json entry = Json::object();
        entry[label_key] = label;
        owner[list_key].push_back(entry);
        current = &owner[list_key].back();
      } else {
        if (!root.contains(name)) root[name] = Json::object();
        current = &root[name];
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || current == nullptr) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value in a section");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    (*current)[key] = detail::parse_ini_value(line.substr(eq + 1));
  }
  return root;
}

namespace detail {

inline void check_keys(const Json& obj, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

inline double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

inline int integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

inline std::vector<double> numbers(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(where + ": expected a number or a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<int> integers(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return {v.get<int>()};
  if (!v.is_array()) throw ConfigError(where + ": expected an integer or a list");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline QuantumNumbers state(const Json& v, const std::string& where) {
  QuantumNumbers q;
  if (v.is_object()) {
    check_keys(v, where, {"n_r", "ell", "dim"});
    if (!v.contains("n_r") || !v.contains("ell")) throw ConfigError(where + ": need n_r and ell");
    q = {integer(v["n_r"], where + ".n_r"), integer(v["ell"], where + ".ell"),
         v.contains("dim") ? integer(v["dim"], where + ".dim") : 3};
  } else if (v.is_array() && (v.size() == 2 || v.size() == 3)) {
    q = {integer(v[0], where), integer(v[1], where), v.size() == 3 ? integer(v[2], where) : 3};
  } else {
    throw ConfigError(where + ": a state is [n_r, ell, dim] or {n_r, ell, dim}");
  }
  try {
    q.check();
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return q;
}

inline bool is_single_state(const Json& v) {
  return v.is_object() || (v.is_array() && !v.empty() && v[0].is_number());
}

inline std::vector<QuantumNumbers> state_list(const Json& v, const std::string& where) {
  std::vector<QuantumNumbers> out;
  if (is_single_state(v)) return {state(v, where)};
  if (!v.is_array()) throw ConfigError(where + ": expected a list of states");
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(state(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<QuantumNumbers> states(const Json& v) {
  if (v.is_array()) return state_list(v, "states");
  check_keys(v, "states", {"n_r", "ell", "dim", "list"});
  std::vector<QuantumNumbers> out;
  if (v.contains("n_r") || v.contains("ell")) {
    if (!v.contains("n_r") || !v.contains("ell")) {
      throw ConfigError("states: n_r and ell must be given together");
    }
    const auto ns = integers(v["n_r"], "states.n_r");
    const auto ls = integers(v["ell"], "states.ell");
    const auto ds = v.contains("dim") ? integers(v["dim"], "states.dim") : std::vector<int>{3};
    for (int d : ds) {
      for (int n : ns) {
        for (int l : ls) out.push_back(state(Json::array({n, l, d}), "states"));
      }
    }
  }
  if (v.contains("list")) {
    for (const auto& q : state_list(v["list"], "states.list")) out.push_back(q);
  }
  return out;
}

inline SchemeKind scheme_kind(const std::string& s, const std::string& where) {
  for (SchemeKind k : {SchemeKind::F1, SchemeKind::F2, SchemeKind::F3, SchemeKind::F4,
                       SchemeKind::F5}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError(where + ": unknown scheme kind '" + s + "'");
}

inline SchemeSpec scheme(const Json& v, const std::string& where) {
  check_keys(v, where, {"name", "kind", "xi1", "xi2", "lambdas", "r0"});
  SchemeSpec s;
  if (!v.contains("name") || !v["name"].is_string()) throw ConfigError(where + ": missing name");
  s.name = v["name"].get<std::string>();
  if (s.name.empty() || s.name.find_first_of(",\"\n") != std::string::npos) {
    throw ConfigError(where + ": scheme names must be non-empty and free of commas and quotes");
  }
  const std::string kind = v.contains("kind") && v["kind"].is_string()
                               ? v["kind"].get<std::string>()
                               : s.name;
  s.kind = scheme_kind(kind, where + ".kind");
  const bool uses_xi =
      s.kind == SchemeKind::F2 || (s.kind == SchemeKind::F5 && v.contains("lambdas") &&
                                   v["lambdas"].is_array() && v["lambdas"].size() == 4 &&
                                   v["lambdas"][1].is_number() && v["lambdas"][1] != 0);
  if (uses_xi && (!v.contains("xi1") || !v.contains("xi2"))) {
    throw ConfigError(where + ": xi1 and xi2 are required");
  }
  if (v.contains("xi1")) s.xi1 = number(v["xi1"], where + ".xi1");
  if (v.contains("xi2")) s.xi2 = number(v["xi2"], where + ".xi2");
  if (s.kind == SchemeKind::F5) {
    if (!v.contains("lambdas")) throw ConfigError(where + ": f5 needs lambdas");
    const auto l = numbers(v["lambdas"], where + ".lambdas");
    if (l.size() != 4) throw ConfigError(where + ".lambdas: expected four weights");
    std::copy(l.begin(), l.end(), s.lambdas.begin());
    const double sum = l[0] + l[1] + l[2] + l[3];
    if (!(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
      throw ConfigError(where + ".lambdas: weights must sum to 1");
    }
  }
  if (v.contains("r0")) s.r0 = number(v["r0"], where + ".r0");
  return s;
}

inline PhysicalConstants constants(const Json& model) {
  PhysicalConstants c;
  if (model.contains("hbar")) c.hbar = number(model["hbar"], "model.hbar");
  if (model.contains("mu")) c.mu = number(model["mu"], "model.mu");
  if (!(c.hbar > 0.0) || !(c.mu > 0.0)) throw ConfigError("model: hbar and mu must be positive");
  return c;
}

inline degeneracy::Bracket bracket(const Json& v, const std::string& where) {
  const auto b = numbers(v, where);
  if (b.size() != 2 || !(b[0] > 0.0) || !(b[1] > b[0])) {
    throw ConfigError(where + ": expected [lo, hi] with 0 < lo < hi");
  }
  return {b[0], b[1]};
}

}  // namespace detail

/// Interprets a JSON tree (from either syntax) and validates it.
inline RunConfig interpret(const Json& root) {
  using namespace detail;
  check_keys(root, "config", {"model", "schemes", "states", "solver", "profile", "degeneracy",
                              "compare", "normalize", "output"});
  RunConfig cfg;
  if (root.contains("model")) {
    const Json& m = root["model"];
    check_keys(m, "model", {"alpha", "alpha_coefficient", "beta", "a", "hbar", "mu"});
    if (!m.contains("beta") || !m.contains("a")) throw ConfigError("model: beta and a are required");
    if (m.contains("alpha") && m.contains("alpha_coefficient")) {
      throw ConfigError("model: give alpha or alpha_coefficient, not both");
    }
    if (m.contains("alpha")) cfg.model.alpha = number(m["alpha"], "model.alpha");
    if (m.contains("alpha_coefficient")) {
      cfg.model.alpha_coefficient = number(m["alpha_coefficient"], "model.alpha_coefficient");
    }
    cfg.model.betas = numbers(m["beta"], "model.beta");
    cfg.model.a = number(m["a"], "model.a");
    cfg.model.constants = constants(m);
    if (cfg.model.betas.empty()) throw ConfigError("model.beta: empty list");
    for (double b : cfg.model.betas) {
      try {
        (void)cfg.model.at(b);
      } catch (const Error& e) {
        throw ConfigError(std::string("model: ") + e.what());
      }
    }
  }
  if (root.contains("schemes")) {
    const Json& s = root["schemes"];
    if (!s.is_array()) throw ConfigError("schemes: expected a list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto spec = scheme(s[i], "schemes[" + std::to_string(i) + "]");
      if (!names.insert(spec.name).second) {
        throw ConfigError("schemes: duplicate name '" + spec.name + "'");
      }
      cfg.schemes.push_back(std::move(spec));
    }
  }
  if (root.contains("states")) cfg.states = states(root["states"]);
  if (root.contains("solver")) {
    const Json& s = root["solver"];
    check_keys(s, "solver", {"r_min", "r_max", "n_points", "energy_tol", "max_bisections"});
    if (s.contains("r_min")) cfg.solver.r_min_in_a = number(s["r_min"], "solver.r_min");
    if (s.contains("r_max")) cfg.solver.r_max_in_a = number(s["r_max"], "solver.r_max");
    if (s.contains("n_points")) cfg.solver.n_points = integer(s["n_points"], "solver.n_points");
    if (s.contains("energy_tol")) cfg.solver.energy_tol = number(s["energy_tol"], "solver.energy_tol");
    if (s.contains("max_bisections")) {
      cfg.solver.max_bisections = integer(s["max_bisections"], "solver.max_bisections");
    }
    try {
      cfg.solver.check();
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (root.contains("profile")) {
    const Json& p = root["profile"];
    check_keys(p, "profile", {"ell", "dim", "grids"});
    if (p.contains("ell")) cfg.profile.ell = integer(p["ell"], "profile.ell");
    if (p.contains("dim")) cfg.profile.dim = integer(p["dim"], "profile.dim");
    if (cfg.profile.ell < 0 || cfg.profile.dim < 3) throw ConfigError("profile: need ell >= 0, dim >= 3");
    if (p.contains("grids")) {
      if (!p["grids"].is_array()) throw ConfigError("profile.grids: expected a list");
      for (std::size_t i = 0; i < p["grids"].size(); ++i) {
        const Json& g = p["grids"][i];
        const std::string where = "profile.grids[" + std::to_string(i) + "]";
        check_keys(g, where, {"label", "lo", "hi", "points", "around_r0"});
        GridSpec grid;
        if (!g.contains("label") || !g.contains("lo") || !g.contains("hi") || !g.contains("points")) {
          throw ConfigError(where + ": label, lo, hi and points are required");
        }
        grid.label = g["label"].is_string() ? g["label"].get<std::string>() : g["label"].dump();
        grid.lo = number(g["lo"], where + ".lo");
        grid.hi = number(g["hi"], where + ".hi");
        grid.points = integer(g["points"], where + ".points");
        if (g.contains("around_r0")) {
          if (!g["around_r0"].is_boolean()) throw ConfigError(where + ".around_r0: expected a boolean");
          grid.around_r0 = g["around_r0"].get<bool>();
        }
        if (grid.points < 2 || !(grid.hi > grid.lo)) {
          throw ConfigError(where + ": need hi > lo and at least two points");
        }
        cfg.profile.grids.push_back(grid);
      }
    }
  }
  if (root.contains("degeneracy")) {
    const Json& d = root["degeneracy"];
    check_keys(d, "degeneracy",
               {"alpha_coefficient", "beta", "bracket", "samples", "branch", "pairs", "zero_energy"});
    auto& out = cfg.degeneracy;
    if (d.contains("alpha_coefficient")) {
      out.alpha_coefficient = number(d["alpha_coefficient"], "degeneracy.alpha_coefficient");
      if (!(out.alpha_coefficient > 0.0)) throw ConfigError("degeneracy.alpha_coefficient: must be positive");
    }
    if (d.contains("beta")) {
      out.beta = number(d["beta"], "degeneracy.beta");
      if (!(*out.beta > 0.0)) throw ConfigError("degeneracy.beta: must be positive");
    }
    if (d.contains("bracket")) out.bracket = bracket(d["bracket"], "degeneracy.bracket");
    if (d.contains("samples")) out.samples = integer(d["samples"], "degeneracy.samples");
    if (out.samples < 2) throw ConfigError("degeneracy.samples: need at least 2");
    if (d.contains("branch")) {
      const std::string b = d["branch"].is_string() ? d["branch"].get<std::string>() : "";
      if (b == "plus") {
        out.branch = degeneracy::Branch::Plus;
      } else if (b == "minus") {
        out.branch = degeneracy::Branch::Minus;
      } else {
        throw ConfigError("degeneracy.branch: expected plus or minus");
      }
    }
    if (d.contains("pairs")) {
      Json pairs = d["pairs"];
      // a single pair written without the outer list
      if (pairs.is_array() && pairs.size() == 2 && is_single_state(pairs[0])) {
        pairs = Json::array({pairs});
      }
      if (!pairs.is_array()) throw ConfigError("degeneracy.pairs: expected a list");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string where = "degeneracy.pairs[" + std::to_string(i) + "]";
        if (!pairs[i].is_array() || pairs[i].size() != 2) throw ConfigError(where + ": expected two states");
        out.pairs.emplace_back(state(pairs[i][0], where), state(pairs[i][1], where));
      }
    }
    if (d.contains("zero_energy")) out.zero_energy = state_list(d["zero_energy"], "degeneracy.zero_energy");
  }
  if (root.contains("compare")) {
    const Json& c = root["compare"];
    check_keys(c, "compare", {"approx_mode"});
    if (c.contains("approx_mode")) {
      if (!c["approx_mode"].is_boolean()) throw ConfigError("compare.approx_mode: expected a boolean");
      cfg.approx_mode = c["approx_mode"].get<bool>();
    }
  }
  if (root.contains("normalize")) {
    const Json& n = root["normalize"];
    check_keys(n, "normalize", {"tolerance"});
    if (n.contains("tolerance")) cfg.normalize_tolerance = number(n["tolerance"], "normalize.tolerance");
  }
  if (root.contains("output")) {
    const Json& o = root["output"];
    check_keys(o, "output", {"format"});
    if (o.contains("format")) {
      cfg.format = o["format"].is_string() ? o["format"].get<std::string>() : "";
      if (*cfg.format != "csv" && *cfg.format != "json") {
        throw ConfigError("output.format: expected csv or json");
      }
    }
  }
  return cfg;
}

/// Parses config text. JSON is recognized by a leading '{'.
inline RunConfig parse_config(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json root;
    try {
      root = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return interpret(root);
  }
  return interpret(parse_ini(text));
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace eckart::cli
