#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "profile_model.hpp"

namespace psu::scenario {

namespace {

Json parse(const std::string& text, const char* what) {
  if (text.empty()) return Json::object();
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw Error(ErrorCode::config, std::string(what) + " must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::config, std::string(what) + " is not valid JSON: " + e.what());
  }
}

[[noreturn]] void bad_type(const char* key, const char* expected) {
  throw Error(ErrorCode::config, std::string("config key '") + key + "' must be " + expected);
}

}  // namespace

Json merge_config(const std::string& config_text, const std::string& overrides_text) {
  // A bare string metric is shorthand for {"kind": ...}; expand it on both
  // sides so a flag like --mass does not replace the whole metric.
  auto expand = [](Json j) {
    if (j.contains("metric") && j["metric"].is_string()) j["metric"] = Json{{"kind", j["metric"]}};
    return j;
  };
  Json doc = expand(parse(config_text, "config"));
  Json over = expand(parse(overrides_text, "flag overrides"));
  // Switching kind discards the parameters of the old one.
  if (doc.contains("metric") && over.contains("metric") && over["metric"].is_object() &&
      over["metric"].contains("kind") && doc["metric"].is_object() &&
      doc["metric"].value("kind", Json()) != over["metric"]["kind"]) {
    doc.erase("metric");
  }
  doc.merge_patch(over);
  return doc;
}

const Json* ConfigReader::lookup(const char* key) const {
  seen_.insert(key);
  if (!doc_.contains(key) || doc_[key].is_null()) return nullptr;
  return &doc_[key];
}

double ConfigReader::number(const char* key, double fallback) {
  double v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_number()) bad_type(key, "a number");
    v = j->get<double>();
  }
  resolved_[key] = v;
  return v;
}

int ConfigReader::integer(const char* key, int fallback) {
  int v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_number_integer()) bad_type(key, "an integer");
    v = j->get<int>();
  }
  resolved_[key] = v;
  return v;
}

bool ConfigReader::boolean(const char* key, bool fallback) {
  bool v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_boolean()) bad_type(key, "true or false");
    v = j->get<bool>();
  }
  resolved_[key] = v;
  return v;
}

std::string ConfigReader::text(const char* key, const std::string& fallback) {
  std::string v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_string()) bad_type(key, "a string");
    v = j->get<std::string>();
  }
  resolved_[key] = v;
  return v;
}

std::vector<double> ConfigReader::numbers(const char* key, const std::vector<double>& fallback) {
  std::vector<double> v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_array()) bad_type(key, "an array of numbers");
    v.clear();
    for (const auto& e : *j) {
      if (!e.is_number()) bad_type(key, "an array of numbers");
      v.push_back(e.get<double>());
    }
  }
  resolved_[key] = v;
  return v;
}

void ConfigReader::reject_unknown(const std::vector<std::string>& extra_allowed) const {
  std::set<std::string> known(extra_allowed.begin(), extra_allowed.end());
  known.insert(seen_.begin(), seen_.end());
  for (const auto& [k, v] : resolved_.items()) known.insert(k);
  for (const auto& [k, v] : doc_.items()) {
    if (!known.count(k)) throw Error(ErrorCode::config, "unknown config key '" + k + "'");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.c_str());
}

RadialProfile profile_from_json(const Json& metric_in, const MetricDefaults& defaults, Json& resolved) {
  Json metric = metric_in.is_null() ? Json::object() : metric_in;
  if (!metric.is_object()) throw Error(ErrorCode::config, "metric must be a kind name or an object");
  if (metric.contains("file")) {
    if (!metric["file"].is_string()) bad_type("file", "a path");
    Json loaded = read_json_file(metric["file"].get<std::string>());
    loaded.merge_patch(metric);
    loaded.erase("file");
    metric = std::move(loaded);
  }
  // --mass doubles as the neck parameter.
  if (metric.value("kind", "") == "neck" && metric.contains("mass") && !metric.contains("mu")) {
    metric["mu"] = metric["mass"];
    metric.erase("mass");
  }
  ConfigReader rd(metric);
  const std::string kind = rd.text("kind", "schwarzschild");

  auto finish = [&](RadialProfile p) {
    rd.reject_unknown();
    resolved = rd.resolved();
    return p;
  };

  if (kind == "schwarzschild" || kind == "schwarzschild_exterior") {
    const double m = rd.number("mass", 1.0);
    const double scale = m > 0.0 ? m : 1.0;
    const double lo = rd.number("r_lo", m > 0.0 ? defaults.r_lo_factor * m : 1.0);
    const double hi = rd.number("r_hi", defaults.r_hi_factor * scale);
    if (!(hi > lo)) throw Error(ErrorCode::config, "empty domain: r_lo must be below r_hi", lo);
    return finish(m > 0.0 ? make_schwarzschild_exterior(m, lo, hi) : make_schwarzschild_family(m, lo, hi));
  }
  if (kind == "neck" || kind == "schwarzschild_neck") {
    return finish(make_schwarzschild_neck(rd.number("mu", 1.0)));
  }
  if (kind == "interior_fluid" || kind == "fluid") {
    const double m = rd.number("mass", 1.0);
    return finish(make_interior_fluid(m, rd.number("r_body", 2.5 * m)));
  }
  if (kind == "star") {
    const double m = rd.number("mass", 1.0);
    const double rb = rd.number("r_body", 2.5 * m);
    return finish(make_star(m, rb, rd.number("r_hi", defaults.r_hi_factor * m)));
  }
  if (kind == "tabulated") {
    const auto r = rd.numbers("r", {});
    const auto N = rd.numbers("N", {});
    const auto A = rd.numbers("A", {});
    const auto R = rd.numbers("Rareal", {});
    if (r.empty()) throw Error(ErrorCode::config, "tabulated metric needs arrays r, N, A, Rareal");
    RadialProfile p = make_tabulated(r, N, A, R);
    rd.reject_unknown();
    // Echo the node count, not the arrays.
    resolved = Json{{"kind", "tabulated"}, {"nodes", r.size()}, {"r_lo", r.front()}, {"r_hi", r.back()}};
    return p;
  }
  throw Error(ErrorCode::config, "unknown metric kind '" + kind + "'");
}

Json profile_to_json(const RadialProfile& profile) {
  const Interval d = profile.domain();
  const auto& impl = profile.model().impl;
  if (const auto* s = std::get_if<detail::SchwarzschildModel>(&impl)) {
    return Json{{"kind", "schwarzschild"}, {"mass", s->m}, {"r_lo", d.lo}, {"r_hi", d.hi}};
  }
  if (const auto* n = std::get_if<detail::NeckModel>(&impl)) {
    return Json{{"kind", "neck"}, {"mu", n->mu}};
  }
  if (const auto* f = std::get_if<detail::FluidModel>(&impl)) {
    return Json{{"kind", "interior_fluid"}, {"mass", f->m}, {"r_body", f->r_body}};
  }
  if (const auto* pw = std::get_if<detail::PiecewiseModel>(&impl)) {
    if (pw->pieces.size() == 2) {
      if (const auto* f = std::get_if<detail::FluidModel>(&pw->pieces[0].model().impl)) {
        return Json{{"kind", "star"}, {"mass", f->m}, {"r_body", f->r_body}, {"r_hi", d.hi}};
      }
    }
  }
  // Anything else is exported as samples at the nodes (or a uniform grid).
  std::vector<double> rs = profile.nodes();
  if (rs.empty()) {
    constexpr int n = 512;
    for (int k = 0; k < n; ++k) rs.push_back(k + 1 == n ? d.hi : d.lo + d.width() * k / (n - 1));
  }
  Json r = Json::array(), N = Json::array(), A = Json::array(), R = Json::array();
  for (double x : rs) {
    const MetricJet<double> j = profile.raw_jet(x);
    r.push_back(x);
    N.push_back(j.N.v);
    A.push_back(j.A.v);
    R.push_back(j.R.v);
  }
  return Json{{"kind", "tabulated"}, {"r", r}, {"N", N}, {"A", A}, {"Rareal", R}};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace psu::scenario
