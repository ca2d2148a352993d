#include "fluctamp/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fluctamp/errors.hpp"
#include "fluctamp/format.hpp"

namespace fluctamp::cli {

using nlohmann::json;

std::vector<double> RunConfig::sweep_alphas() const {
  std::vector<double> a;
  if (sweep_alpha_count == 1) return {sweep_alpha_min};
  const double h = (sweep_alpha_max - sweep_alpha_min) / static_cast<double>(sweep_alpha_count - 1);
  for (std::size_t i = 0; i < sweep_alpha_count; ++i) a.push_back(sweep_alpha_min + static_cast<double>(i) * h);
  return a;
}

std::vector<double> RunConfig::geff0_list() const {
  std::vector<double> g;
  // Index-based so rounding never drops the last point.
  const auto n = static_cast<std::size_t>(std::floor((geff0_max - geff0_min) / geff0_step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) g.push_back(geff0_min + static_cast<double>(k) * geff0_step);
  return g;
}

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

template <typename F>
auto as_config_error(F&& f) {
  try {
    return f();
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

void set_reflectivities(SchemeConfig& s, const std::vector<double>& r) {
  if (r.size() == 1) {
    s.r1 = s.r2 = s.r3 = r[0];
  } else if (r.size() == 3) {
    s.r1 = r[0];
    s.r2 = r[1];
    s.r3 = r[2];
  } else {
    throw ConfigError("r takes one shared value or three values");
  }
}

double number(const json& v, const char* key) {
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const char* key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(std::string("config key '") + key + "' must be a number or array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, key));
  return out;
}

std::size_t count(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string selector(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ConfigError("branch selectors must be strings or integers");
}

}  // namespace

complex parse_alpha(const std::string& text) {
  const auto parts = split(text);
  return as_config_error([&] {
    if (parts.size() == 1) return complex(parse_double(parts[0]), 0.0);
    if (parts.size() == 2) return complex(parse_double(parts[0]), parse_double(parts[1]));
    throw ConfigError("alpha takes 're' or 're,im'");
  });
}

std::vector<double> parse_list(const std::string& text) {
  return as_config_error([&] {
    std::vector<double> v;
    for (const auto& p : split(text)) v.push_back(parse_double(p));
    if (v.empty()) throw ConfigError("empty list");
    return v;
  });
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text);
  if (parts.size() != 6) throw ConfigError("grid takes 'xmin,xmax,pmin,pmax,nx,np'");
  return as_config_error([&] {
    return GridSpec{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]),
                    parse_double(parts[3]), parse_size(parts[4]),   parse_size(parts[5])};
  });
}

void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "alpha") {
      const auto a = numbers(v, "alpha");
      if (a.size() == 1) cfg.scheme.alpha = a[0];
      else if (a.size() == 2) cfg.scheme.alpha = complex(a[0], a[1]);
      else throw ConfigError("alpha takes a number or [re, im]");
    } else if (key == "r") {
      set_reflectivities(cfg.scheme, numbers(v, "r"));
    } else if (key == "dim") {
      cfg.scheme.dim = count(v, "dim");
    } else if (key == "eta_qnd") {
      cfg.scheme.eta_qnd = number(v, "eta_qnd");
    } else if (key == "eta_pd1") {
      cfg.scheme.eta_pd1 = number(v, "eta_pd1");
    } else if (key == "eta_pd2") {
      cfg.scheme.eta_pd2 = number(v, "eta_pd2");
    } else if (key == "sweep") {
      if (!v.is_object()) throw ConfigError("'sweep' must be an object");
      for (const auto& [sk, sv] : v.items()) {
        if (sk == "alpha_min") cfg.sweep_alpha_min = number(sv, "sweep.alpha_min");
        else if (sk == "alpha_max") cfg.sweep_alpha_max = number(sv, "sweep.alpha_max");
        else if (sk == "alpha_count") cfg.sweep_alpha_count = count(sv, "sweep.alpha_count");
        else if (sk == "r") cfg.sweep_r = numbers(sv, "sweep.r");
        else throw ConfigError("unknown config key 'sweep." + sk + "'");
      }
    } else if (key == "geff0_min") {
      cfg.geff0_min = number(v, "geff0_min");
    } else if (key == "geff0_max") {
      cfg.geff0_max = number(v, "geff0_max");
    } else if (key == "geff0_step") {
      cfg.geff0_step = number(v, "geff0_step");
    } else if (key == "refine_step") {
      cfg.refine_step = number(v, "refine_step");
    } else if (key == "grid") {
      if (v.is_string()) {
        cfg.grid = parse_grid(v.get<std::string>());
      } else if (v.is_object()) {
        for (const auto& [gk, gv] : v.items()) {
          if (gk == "x_min") cfg.grid.x_min = number(gv, "grid.x_min");
          else if (gk == "x_max") cfg.grid.x_max = number(gv, "grid.x_max");
          else if (gk == "p_min") cfg.grid.p_min = number(gv, "grid.p_min");
          else if (gk == "p_max") cfg.grid.p_max = number(gv, "grid.p_max");
          else if (gk == "nx") cfg.grid.nx = count(gv, "grid.nx");
          else if (gk == "np") cfg.grid.np = count(gv, "grid.np");
          else throw ConfigError("unknown config key 'grid." + gk + "'");
        }
      } else {
        throw ConfigError("'grid' must be a string or object");
      }
    } else if (key == "branch") {
      cfg.branches.clear();
      if (v.is_array()) {
        for (const auto& e : v) cfg.branches.push_back(selector(e));
      } else {
        cfg.branches.push_back(selector(v));
      }
    } else if (key == "out") {
      if (!v.is_string()) throw ConfigError("'out' must be a string");
      cfg.out_dir = v.get<std::string>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void apply_flags(RunConfig& cfg, const FlagOverrides& f) {
  if (f.alpha) cfg.scheme.alpha = parse_alpha(*f.alpha);
  if (f.r) {
    const auto r = parse_list(*f.r);
    cfg.sweep_r = r;
    if (r.size() == 1 || r.size() == 3) set_reflectivities(cfg.scheme, r);
  }
  if (f.dim) cfg.scheme.dim = *f.dim;
  if (f.eta_qnd) cfg.scheme.eta_qnd = *f.eta_qnd;
  if (f.eta_pd1) cfg.scheme.eta_pd1 = *f.eta_pd1;
  if (f.eta_pd2) cfg.scheme.eta_pd2 = *f.eta_pd2;
  if (f.geff0_min) cfg.geff0_min = *f.geff0_min;
  if (f.geff0_max) cfg.geff0_max = *f.geff0_max;
  if (f.geff0_step) cfg.geff0_step = *f.geff0_step;
  if (f.grid) cfg.grid = parse_grid(*f.grid);
  if (f.branch) cfg.branches = {*f.branch};
  if (f.out) cfg.out_dir = *f.out;
}

void validate(const RunConfig& cfg) {
  validate(cfg.scheme);
  validate(cfg.grid);
  if (!(cfg.sweep_alpha_min > 0.0) || cfg.sweep_alpha_max < cfg.sweep_alpha_min || cfg.sweep_alpha_count == 0) {
    throw ConfigError("sweep needs 0 < alpha_min <= alpha_max and alpha_count >= 1");
  }
  if (cfg.sweep_r.empty()) throw ConfigError("sweep.r must be non-empty");
  for (const double r : cfg.sweep_r) {
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("sweep reflectivities must lie in [0, 1)");
  }
  if (!(cfg.geff0_min > 1.0) || !(cfg.geff0_max < 2.0) || cfg.geff0_max < cfg.geff0_min) {
    throw ConfigError("g_eff0 range must satisfy 1 < geff0_min <= geff0_max < 2");
  }
  if (!(cfg.geff0_step > 0.0)) throw ConfigError("geff0_step must be positive");
  if (!(cfg.refine_step >= 0.0)) throw ConfigError("refine_step must be non-negative");
  if (cfg.branches.empty()) throw ConfigError("at least one branch selector is required");
  for (const auto& b : cfg.branches) {
    if (b == "input") continue;
    if (b.size() != 1 || b[0] < '1' || b[0] > '8') {
      throw ConfigError("branch selector must be 1..8 or 'input', got '" + b + "'");
    }
  }
}

RunConfig resolve(const std::optional<std::filesystem::path>& config_file, const FlagOverrides& flags) {
  RunConfig cfg;
  if (config_file) {
    std::ifstream in(*config_file);
    if (!in) throw ConfigError("cannot open config file " + config_file->string());
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    apply_json(cfg, doc);
  }
  apply_flags(cfg, flags);
  validate(cfg);
  return cfg;
}

}  // namespace fluctamp::cli
