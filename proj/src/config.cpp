#include "tubearc/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "tubearc/error.hpp"

namespace tubearc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::invalid_config, what); }

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) fail(where + "." + key + " must be a number");
    out = v.get<double>();
  } else if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) fail(where + "." + key + " must be an integer");
    out = v.get<int>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) fail(where + "." + key + " must be a string");
    out = v.get<std::string>();
  } else {
    static_assert(sizeof(T) == 0, "unsupported type");
  }
}

std::string kind_name(BasisKind kind) {
  return kind == BasisKind::complex_exponential ? "complex_exponential" : "real_trig";
}

}  // namespace

std::string case_label(double kappa0, double s0) {
  char buf[64];
  if (kappa0 == 0.0) {
    std::snprintf(buf, sizeof buf, "k%.2f", kappa0);
  } else {
    std::snprintf(buf, sizeof buf, "k%.2f_s%.2f", kappa0, s0);
  }
  return buf;
}

DeltaSiteLattice LatticeConfig::build(double length) const {
  if (arrangement == "armchair") {
    return armchair_lattice(sites_per_ring, rings, length, strength);
  }
  return custom_lattice(strength, sites, length);
}

std::vector<CaseSpec> RunConfig::resolved_cases() const {
  std::vector<CaseSpec> out = cases;
  if (out.empty()) out.push_back({"", geometry.kappa0, geometry.s0});
  for (CaseSpec& c : out) {
    if (c.label.empty()) c.label = case_label(c.kappa0, c.s0);
  }
  return out;
}

Problem RunConfig::problem_for(const CaseSpec& c, unsigned threads) const {
  Problem p;
  p.geometry = geometry;
  p.geometry.kappa0 = c.kappa0;
  p.geometry.s0 = c.s0;
  p.basis = basis;
  p.basis.length = geometry.length;
  p.quadrature = quadrature;
  if (lattice) p.lattice = lattice->build(geometry.length);
  p.threads = threads;
  return p;
}

std::vector<Problem> RunConfig::problems(unsigned threads) const {
  std::vector<Problem> out;
  for (const CaseSpec& c : resolved_cases()) out.push_back(problem_for(c, threads));
  return out;
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "config", {"name", "geometry", "cases", "basis", "quadrature", "lattice", "outputs"});
  RunConfig cfg;
  read(doc, "name", "config", cfg.name);

  if (doc.contains("geometry")) {
    const json& g = doc.at("geometry");
    reject_unknown(g, "geometry", {"radius", "length", "kappa0", "s0", "mass_ratio", "hbar2_over_2me"});
    read(g, "radius", "geometry", cfg.geometry.radius);
    read(g, "length", "geometry", cfg.geometry.length);
    read(g, "kappa0", "geometry", cfg.geometry.kappa0);
    read(g, "s0", "geometry", cfg.geometry.s0);
    read(g, "mass_ratio", "geometry", cfg.geometry.mass_ratio);
    read(g, "hbar2_over_2me", "geometry", cfg.geometry.hbar2_over_2me);
  }

  if (doc.contains("cases")) {
    const json& cs = doc.at("cases");
    if (!cs.is_array()) fail("cases must be an array");
    for (const json& c : cs) {
      reject_unknown(c, "cases[]", {"label", "kappa0", "s0"});
      CaseSpec spec;
      spec.s0 = cfg.geometry.s0;
      read(c, "label", "cases[]", spec.label);
      read(c, "kappa0", "cases[]", spec.kappa0);
      read(c, "s0", "cases[]", spec.s0);
      cfg.cases.push_back(spec);
    }
  }

  if (doc.contains("basis")) {
    const json& b = doc.at("basis");
    reject_unknown(b, "basis", {"max_m", "max_n", "kind"});
    read(b, "max_m", "basis", cfg.basis.max_m);
    read(b, "max_n", "basis", cfg.basis.max_n);
    std::string kind = kind_name(cfg.basis.kind);
    read(b, "kind", "basis", kind);
    if (kind == "complex_exponential") {
      cfg.basis.kind = BasisKind::complex_exponential;
    } else if (kind == "real_trig") {
      cfg.basis.kind = BasisKind::real_trig;
    } else {
      fail("basis.kind must be complex_exponential or real_trig");
    }
  }

  if (doc.contains("quadrature")) {
    const json& q = doc.at("quadrature");
    reject_unknown(q, "quadrature", {"n_theta", "panels", "points_per_panel"});
    read(q, "n_theta", "quadrature", cfg.quadrature.n_theta);
    read(q, "panels", "quadrature", cfg.quadrature.panels);
    read(q, "points_per_panel", "quadrature", cfg.quadrature.points_per_panel);
  }

  if (doc.contains("lattice") && !doc.at("lattice").is_null()) {
    const json& l = doc.at("lattice");
    reject_unknown(l, "lattice", {"strength", "arrangement", "sites_per_ring", "rings", "sites"});
    LatticeConfig lat;
    read(l, "strength", "lattice", lat.strength);
    read(l, "arrangement", "lattice", lat.arrangement);
    read(l, "sites_per_ring", "lattice", lat.sites_per_ring);
    read(l, "rings", "lattice", lat.rings);
    if (lat.arrangement == "armchair") {
      if (lat.sites_per_ring < 1 || lat.rings < 1) {
        fail("armchair lattice needs sites_per_ring >= 1 and rings >= 1");
      }
      if (l.contains("sites")) fail("lattice.sites is only allowed for the custom arrangement");
    } else if (lat.arrangement == "custom") {
      if (!l.contains("sites") || !l.at("sites").is_array()) fail("custom lattice needs a sites array");
      for (const json& s : l.at("sites")) {
        reject_unknown(s, "lattice.sites[]", {"site", "ring", "theta", "s"});
        DeltaSite site;
        read(s, "site", "lattice.sites[]", site.site);
        read(s, "ring", "lattice.sites[]", site.ring);
        if (!s.contains("theta") || !s.contains("s")) fail("lattice site needs theta and s");
        read(s, "theta", "lattice.sites[]", site.theta);
        read(s, "s", "lattice.sites[]", site.s);
        lat.sites.push_back(site);
      }
    } else {
      fail("lattice.arrangement must be armchair or custom");
    }
    cfg.lattice = lat;
  }

  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    reject_unknown(o, "outputs", {"directory", "states", "table_threshold", "density"});
    read(o, "directory", "outputs", cfg.outputs.directory);
    read(o, "states", "outputs", cfg.outputs.states);
    read(o, "table_threshold", "outputs", cfg.outputs.table_threshold);
    if (o.contains("density") && !o.at("density").is_null()) {
      const json& d = o.at("density");
      reject_unknown(d, "outputs.density", {"mode", "state", "theta", "s_samples", "theta_samples"});
      DensityConfig dc;
      read(d, "mode", "outputs.density", dc.mode);
      read(d, "state", "outputs.density", dc.state);
      read(d, "theta", "outputs.density", dc.theta);
      read(d, "s_samples", "outputs.density", dc.s_samples);
      read(d, "theta_samples", "outputs.density", dc.theta_samples);
      if (dc.mode != "profile" && dc.mode != "surface") {
        fail("outputs.density.mode must be profile or surface");
      }
      if (dc.s_samples < 2 || dc.theta_samples < 1) fail("outputs.density sample counts too small");
      cfg.outputs.density = dc;
    }
    if (cfg.outputs.states < 1) fail("outputs.states must be >= 1");
    if (cfg.outputs.table_threshold < 0.0) fail("outputs.table_threshold must be >= 0");
  }

  // Re-check every physical invariant now rather than mid-run.
  try {
    cfg.basis.length = cfg.geometry.length;
    cfg.basis.validate();
    for (const Problem& p : cfg.problems(1)) {
      p.geometry.validate();
      const QuadratureGrid grid = build_grid(p.quadrature, p.geometry.length);
      check_resolution(grid, p.basis);
    }
  } catch (const Error& e) {
    fail(e.what());
  }
  if (cfg.outputs.density && cfg.outputs.density->state >= cfg.basis.size()) {
    fail("outputs.density.state exceeds the basis size");
  }
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["geometry"] = {{"radius", cfg.geometry.radius},
                     {"length", cfg.geometry.length},
                     {"kappa0", cfg.geometry.kappa0},
                     {"s0", cfg.geometry.s0},
                     {"mass_ratio", cfg.geometry.mass_ratio},
                     {"hbar2_over_2me", cfg.geometry.hbar2_over_2me}};
  if (!cfg.cases.empty()) {
    json cases = json::array();
    for (const CaseSpec& c : cfg.cases) {
      cases.push_back({{"label", c.label}, {"kappa0", c.kappa0}, {"s0", c.s0}});
    }
    doc["cases"] = cases;
  }
  doc["basis"] = {{"max_m", cfg.basis.max_m},
                  {"max_n", cfg.basis.max_n},
                  {"kind", kind_name(cfg.basis.kind)}};
  doc["quadrature"] = {{"n_theta", cfg.quadrature.n_theta},
                       {"panels", cfg.quadrature.panels},
                       {"points_per_panel", cfg.quadrature.points_per_panel}};
  if (cfg.lattice) {
    json l = {{"strength", cfg.lattice->strength}, {"arrangement", cfg.lattice->arrangement}};
    if (cfg.lattice->arrangement == "armchair") {
      l["sites_per_ring"] = cfg.lattice->sites_per_ring;
      l["rings"] = cfg.lattice->rings;
    } else {
      json sites = json::array();
      for (const DeltaSite& s : cfg.lattice->sites) {
        sites.push_back({{"site", s.site}, {"ring", s.ring}, {"theta", s.theta}, {"s", s.s}});
      }
      l["sites"] = sites;
    }
    doc["lattice"] = l;
  }
  json o = {{"directory", cfg.outputs.directory},
            {"states", cfg.outputs.states},
            {"table_threshold", cfg.outputs.table_threshold}};
  if (cfg.outputs.density) {
    const DensityConfig& d = *cfg.outputs.density;
    o["density"] = {{"mode", d.mode},
                    {"state", d.state},
                    {"theta", d.theta},
                    {"s_samples", d.s_samples},
                    {"theta_samples", d.theta_samples}};
  }
  doc["outputs"] = o;
  return doc;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("tool")) {
    return parse_config(doc.at("config"));
  }
  return parse_config(doc);
}

}  // namespace tubearc
