// config.hpp — run configuration: JSON schema, validation, round-trip.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeno/errors.hpp"
#include "zeno/gap.hpp"
#include "zeno/lattice.hpp"
#include "zeno/model.hpp"

namespace zeno {

enum class OutFormat { csv, json };

inline const char* to_string(OutFormat f) { return f == OutFormat::csv ? "csv" : "json"; }

struct GammaGrid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log_spacing = true;

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(points);
    if (points == 1) {
      v.push_back(min);
      return v;
    }
    for (int i = 0; i < points; ++i) {
      const double f = double(i) / (points - 1);
      v.push_back(log_spacing ? min * std::pow(max / min, f) : min + f * (max - min));
    }
    v.back() = max;  // guard rounding at the endpoint
    return v;
  }
};

struct RunConfig {
  LatticeSpec lattice;
  ModelParams model;  // gamma field meaningful only when has_gamma
  bool has_gamma = false;
  std::optional<GammaGrid> grid;

  Family family = Family::default_family;
  std::vector<std::string> custom_specs;  // sector specs for the custom family
  bool record_modes = false;
  int oracle_cap = 6;

  std::string out_path = "-";
  OutFormat format = OutFormat::csv;
  int precision = 12;

  // command-line only, never serialized
  int workers = 1;
  std::string sector_spec = "uniform";

  // Every gamma this run evaluates: the single point or the expanded grid.
  std::vector<double> gamma_values() const {
    if (grid) return grid->values();
    return {model.gamma};
  }

  double single_gamma(const char* command) const {
    if (!has_gamma)
      throw config_error(std::string(command) + ": config must set model.gamma (not a grid)");
    return model.gamma;
  }

  ModelParams model_at(double gamma) const {
    ModelParams p = model;
    p.gamma = gamma;
    return p;
  }
};

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline void check_keys(const json& obj, const std::vector<std::string>& allowed,
                       const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok) throw config_error("config: unknown key '" + key + "' in " + where);
  }
}

inline double need_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw config_error("config: missing '" + key + "' in " + where);
  if (!obj[key].is_number()) throw config_error("config: '" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

inline double opt_number(const json& obj, const std::string& key, double fallback,
                         const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw config_error("config: '" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config: top level must be an object");
  detail::check_keys(root, {"lattice", "model", "scan", "oracle", "output"}, "top level");

  RunConfig cfg;

  if (!root.contains("lattice") || !root["lattice"].is_object())
    throw config_error("config: 'lattice' object is required");
  {
    const json& lat = root["lattice"];
    detail::check_keys(lat, {"dims", "boundary"}, "lattice");
    if (!lat.contains("dims") || !lat["dims"].is_array() || lat["dims"].empty())
      throw config_error("config: lattice.dims must be a non-empty array");
    for (const auto& v : lat["dims"]) {
      if (!v.is_number_integer() || v.get<int>() < 1)
        throw config_error("config: lattice.dims entries must be positive integers");
      cfg.lattice.dims.push_back(v.get<int>());
    }
    const std::string b = lat.value("boundary", "periodic");
    if (b == "periodic")
      cfg.lattice.boundary = Boundary::periodic;
    else if (b == "open")
      cfg.lattice.boundary = Boundary::open;
    else
      throw config_error("config: lattice.boundary must be 'periodic' or 'open'");
    try {
      validate(cfg.lattice);
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("config: ") + e.what());
    }
  }

  if (!root.contains("model") || !root["model"].is_object())
    throw config_error("config: 'model' object is required");
  {
    const json& mod = root["model"];
    detail::check_keys(mod, {"t", "delta", "gamma", "gamma_grid", "bond_couplings"}, "model");
    cfg.model.t = detail::opt_number(mod, "t", 1.0, "model");
    cfg.model.delta = detail::opt_number(mod, "delta", 1.0, "model");

    const bool has_point = mod.contains("gamma");
    const bool has_grid = mod.contains("gamma_grid");
    if (has_point == has_grid)
      throw config_error("config: model needs exactly one of 'gamma' or 'gamma_grid'");
    if (has_point) {
      cfg.model.gamma = detail::need_number(mod, "gamma", "model");
      if (cfg.model.gamma < 0) throw config_error("config: model.gamma must be >= 0");
      cfg.has_gamma = true;
    } else {
      const json& gg = mod["gamma_grid"];
      if (!gg.is_object()) throw config_error("config: model.gamma_grid must be an object");
      detail::check_keys(gg, {"min", "max", "points", "spacing"}, "model.gamma_grid");
      GammaGrid grid;
      grid.min = detail::need_number(gg, "min", "model.gamma_grid");
      grid.max = detail::need_number(gg, "max", "model.gamma_grid");
      if (!gg.contains("points") || !gg["points"].is_number_integer())
        throw config_error("config: model.gamma_grid.points must be an integer");
      grid.points = gg["points"].get<int>();
      const std::string sp = gg.value("spacing", "log");
      if (sp == "log")
        grid.log_spacing = true;
      else if (sp == "linear")
        grid.log_spacing = false;
      else
        throw config_error("config: model.gamma_grid.spacing must be 'log' or 'linear'");
      if (grid.points < 1) throw config_error("config: model.gamma_grid.points must be >= 1");
      if (!(grid.min > 0)) throw config_error("config: model.gamma_grid.min must be > 0");
      if (grid.max < grid.min) throw config_error("config: model.gamma_grid needs max >= min");
      if (grid.points == 1 && grid.min != grid.max)
        throw config_error("config: single-point gamma_grid needs min == max");
      cfg.grid = grid;
      cfg.model.gamma = grid.min;
    }

    if (mod.contains("bond_couplings")) {
      const json& bc = mod["bond_couplings"];
      if (!bc.is_array() || bc.size() != cfg.lattice.dims.size())
        throw config_error("config: model.bond_couplings needs one entry per direction");
      std::vector<BondCouplings> list;
      for (const auto& e : bc) {
        if (!e.is_object()) throw config_error("config: bond_couplings entries must be objects");
        detail::check_keys(e, {"t_pos", "delta_pos", "t_neg", "delta_neg"}, "bond_couplings");
        BondCouplings b;
        b.t_pos = detail::need_number(e, "t_pos", "bond_couplings");
        b.delta_pos = detail::need_number(e, "delta_pos", "bond_couplings");
        b.t_neg = detail::need_number(e, "t_neg", "bond_couplings");
        b.delta_neg = detail::need_number(e, "delta_neg", "bond_couplings");
        list.push_back(b);
      }
      cfg.model.bond_overrides = std::move(list);
    }
  }

  if (root.contains("scan")) {
    const detail::json& scan = root["scan"];
    if (!scan.is_object()) throw config_error("config: 'scan' must be an object");
    detail::check_keys(scan, {"family", "configs", "record_modes"}, "scan");
    cfg.family = family_from_string(scan.value("family", "default"));
    if (scan.contains("record_modes")) {
      if (!scan["record_modes"].is_boolean())
        throw config_error("config: scan.record_modes must be a boolean");
      cfg.record_modes = scan["record_modes"].get<bool>();
    }
    if (scan.contains("configs")) {
      if (!scan["configs"].is_array())
        throw config_error("config: scan.configs must be an array of sector specs");
      for (const auto& s : scan["configs"]) {
        if (!s.is_string()) throw config_error("config: scan.configs entries must be strings");
        cfg.custom_specs.push_back(s.get<std::string>());
      }
    }
    if (cfg.family == Family::custom && cfg.custom_specs.empty())
      throw config_error("config: custom scan family needs scan.configs");
  }

  if (root.contains("oracle")) {
    const detail::json& orc = root["oracle"];
    if (!orc.is_object()) throw config_error("config: 'oracle' must be an object");
    detail::check_keys(orc, {"cap"}, "oracle");
    if (orc.contains("cap")) {
      if (!orc["cap"].is_number_integer()) throw config_error("config: oracle.cap must be an integer");
      cfg.oracle_cap = orc["cap"].get<int>();
      if (cfg.oracle_cap < 1 || cfg.oracle_cap > 8)
        throw config_error("config: oracle.cap must be in 1..8");
    }
  }

  if (root.contains("output")) {
    const detail::json& out = root["output"];
    if (!out.is_object()) throw config_error("config: 'output' must be an object");
    detail::check_keys(out, {"path", "format", "precision"}, "output");
    cfg.out_path = out.value("path", "-");
    const std::string fmt = out.value("format", "csv");
    if (fmt == "csv")
      cfg.format = OutFormat::csv;
    else if (fmt == "json")
      cfg.format = OutFormat::json;
    else
      throw config_error("config: output.format must be 'csv' or 'json'");
    if (out.contains("precision")) {
      if (!out["precision"].is_number_integer())
        throw config_error("config: output.precision must be an integer");
      cfg.precision = out["precision"].get<int>();
      if (cfg.precision < 2 || cfg.precision > 17)
        throw config_error("config: output.precision must be in 2..17");
    }
  }

  return cfg;
}

// Canonical serialization; parse(emit(cfg)) reproduces cfg exactly.
inline std::string emit_config(const RunConfig& cfg, int indent = 2) {
  using detail::ordered_json;
  ordered_json root;
  root["lattice"]["dims"] = cfg.lattice.dims;
  root["lattice"]["boundary"] = to_string(cfg.lattice.boundary);
  root["model"]["t"] = cfg.model.t;
  root["model"]["delta"] = cfg.model.delta;
  if (cfg.grid) {
    root["model"]["gamma_grid"] = {{"min", cfg.grid->min},
                                   {"max", cfg.grid->max},
                                   {"points", cfg.grid->points},
                                   {"spacing", cfg.grid->log_spacing ? "log" : "linear"}};
  } else {
    root["model"]["gamma"] = cfg.model.gamma;
  }
  if (cfg.model.bond_overrides) {
    ordered_json list = ordered_json::array();
    for (const auto& b : *cfg.model.bond_overrides)
      list.push_back({{"t_pos", b.t_pos},
                      {"delta_pos", b.delta_pos},
                      {"t_neg", b.t_neg},
                      {"delta_neg", b.delta_neg}});
    root["model"]["bond_couplings"] = std::move(list);
  }
  root["scan"]["family"] = to_string(cfg.family);
  if (!cfg.custom_specs.empty()) root["scan"]["configs"] = cfg.custom_specs;
  root["scan"]["record_modes"] = cfg.record_modes;
  root["oracle"]["cap"] = cfg.oracle_cap;
  root["output"]["path"] = cfg.out_path;
  root["output"]["format"] = to_string(cfg.format);
  root["output"]["precision"] = cfg.precision;
  return indent >= 0 ? root.dump(indent) : root.dump();
}

// Sector spec grammar: "uniform" | "flips:3,5,6" | "segment:4" | "block:2x3".
inline SectorConfig parse_sector_spec(const std::string& spec, const LatticeGraph& g) {
  try {
    if (spec.empty() || spec == "uniform" || spec == "0-flipped") return uniform_config(g.n_sites);
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw config_error("sector spec: expected 'uniform', 'flips:..', 'segment:n' or 'block:..'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "flips") {
      std::vector<int> sites;
      std::size_t pos = 0;
      while (pos < rest.size()) {
        std::size_t used = 0;
        sites.push_back(std::stoi(rest.substr(pos), &used));
        pos += used;
        if (pos < rest.size()) {
          if (rest[pos] != ',') throw config_error("sector spec: expected ',' in flip list");
          ++pos;
        }
      }
      if (sites.empty()) throw config_error("sector spec: empty flip list");
      return flipped_config(g.n_sites, sites);
    }
    if (kind == "segment") return segment_config(g, std::stoi(rest));
    if (kind == "block") {
      std::vector<int> sides;
      std::size_t pos = 0;
      while (pos < rest.size()) {
        std::size_t used = 0;
        sides.push_back(std::stoi(rest.substr(pos), &used));
        pos += used;
        if (pos < rest.size()) {
          if (rest[pos] != 'x') throw config_error("sector spec: expected 'x' in block sides");
          ++pos;
        }
      }
      return block_config(g, sides);
    }
    throw config_error("sector spec: unknown kind '" + kind + "'");
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("sector spec '") + spec + "': " + e.what());
  }
}

}  // namespace zeno
