#include "orthotau/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "orthotau/error.hpp"

namespace orthotau {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw config_error("config: " + what); }

void require_keys(const json& j, const char* where, const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) bad(std::string(where) + ": unknown key \"" + item.key() + "\"");
}

int get_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string(key) + " must be an integer");
  return v.get<int>();
}

std::complex<double> get_complex(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  bad(std::string(key) + " must be a number or a [re, im] pair");
}

IsoParams parse_iso(const json& j) {
  require_keys(j, "iso",
               {"theta0", "theta_t", "theta1", "theta_inf", "sigma", "eta", "t", "radius",
                "quad_nodes", "mode_cutoff"});
  for (const char* key :
       {"theta0", "theta_t", "theta1", "theta_inf", "sigma", "eta", "t"})
    if (!j.contains(key)) bad(std::string("iso: missing key \"") + key + "\"");

  IsoParams p;
  p.theta0 = get_complex(j, "theta0");
  p.theta_t = get_complex(j, "theta_t");
  p.theta1 = get_complex(j, "theta1");
  p.theta_inf = get_complex(j, "theta_inf");
  p.sigma = get_complex(j, "sigma");
  p.eta = get_complex(j, "eta");
  p.t = get_complex(j, "t");
  if (j.contains("radius")) {
    if (!j.at("radius").is_number()) bad("iso: radius must be a number");
    p.radius = j.at("radius").get<double>();
  }
  if (j.contains("quad_nodes")) p.quad_nodes = get_int(j, "quad_nodes");
  if (j.contains("mode_cutoff")) p.mode_cutoff = get_int(j, "mode_cutoff");
  return p;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON document: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  require_keys(doc, "top level",
               {"algebra", "parameters", "times", "negate_times", "initial_condition",
                "max_weight", "output", "iso"});

  RunConfig cfg;

  if (doc.contains("algebra")) {
    const json& a = doc.at("algebra");
    if (!a.is_object()) bad("algebra must be an object");
    require_keys(a, "algebra", {"series", "rank"});
    if (!a.contains("series") || !a.contains("rank")) bad("algebra needs series and rank");
    if (!a.at("series").is_string()) bad("algebra.series must be a string");
    cfg.series = series_from_string(a.at("series").get<std::string>());
    cfg.rank = get_int(a, "rank");
    cfg.has_algebra = true;
  }

  if (doc.contains("parameters")) {
    const json& p = doc.at("parameters");
    if (!p.is_array()) bad("parameters must be an array of names");
    std::set<std::string> seen;
    for (const auto& v : p) {
      if (!v.is_string()) bad("parameters entries must be strings");
      const std::string name = v.get<std::string>();
      if (name.empty()) bad("parameter names must be nonempty");
      if (!seen.insert(name).second) bad("duplicate parameter \"" + name + "\"");
      cfg.parameters.push_back(name);
    }
  }

  if (doc.contains("times")) {
    const json& t = doc.at("times");
    if (!t.is_array() || t.empty()) bad("times must be a nonempty array of odd orders");
    cfg.times.clear();
    std::set<int> seen;
    for (const auto& v : t) {
      if (!v.is_number_integer()) bad("times entries must be integers");
      const int k = v.get<int>();
      if (k < 1 || k % 2 == 0) bad("times entries must be positive odd integers");
      if (!seen.insert(k).second) bad("duplicate time order " + std::to_string(k));
      cfg.times.push_back(k);
    }
  }
  for (const std::string& name : cfg.parameters)
    for (int k : cfg.times)
      if (name == "t" + std::to_string(k))
        bad("parameter \"" + name + "\" collides with a time variable");

  if (doc.contains("negate_times")) {
    if (!doc.at("negate_times").is_boolean()) bad("negate_times must be a boolean");
    cfg.negate_times = doc.at("negate_times").get<bool>();
  }

  if (doc.contains("initial_condition")) {
    const json& ic = doc.at("initial_condition");
    if (!ic.is_array()) bad("initial_condition must be an array of entries");
    for (const auto& e : ic) {
      if (!e.is_object()) bad("initial_condition entries must be objects");
      require_keys(e, "initial_condition entry", {"row", "col", "z_power", "coeff"});
      for (const char* key : {"row", "col", "coeff"})
        if (!e.contains(key)) bad(std::string("initial_condition entry misses \"") + key + "\"");
      IcEntry entry;
      entry.row = get_int(e, "row");
      entry.col = get_int(e, "col");
      entry.z_power = e.contains("z_power") ? get_int(e, "z_power") : -1;
      if (!e.at("coeff").is_string()) bad("initial_condition coeff must be a string");
      entry.coeff = e.at("coeff").get<std::string>();
      if (entry.row < 1 || entry.col < 1) bad("initial_condition entries are 1-based");
      if (entry.z_power >= 0) bad("initial_condition z_power must be negative");
      cfg.initial_condition.push_back(entry);
    }
  }

  if (doc.contains("max_weight")) {
    cfg.max_weight = get_int(doc, "max_weight");
    if (cfg.max_weight < 0) bad("max_weight must be nonnegative");
  }

  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) bad("output must be a string");
    cfg.output = doc.at("output").get<std::string>();
    if (cfg.output != "text" && cfg.output != "json") bad("output must be \"text\" or \"json\"");
  }

  if (doc.contains("iso")) {
    if (!doc.at("iso").is_object()) bad("iso must be an object");
    cfg.iso = parse_iso(doc.at("iso"));
    cfg.has_iso = true;
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot read file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace orthotau
