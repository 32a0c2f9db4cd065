#include "tubearc/presets.hpp"

#include <numbers>

#include "tubearc/error.hpp"

namespace tubearc {

std::vector<CaseSpec> reference_cases() {
  const std::pair<double, double> rows[] = {{0.00, 50.00}, {0.75, 51.87}, {0.75, 55.60},
                                            {0.95, 52.37}, {0.95, 57.08}, {1.00, 52.50},
                                            {1.00, 57.45}, {1.15, 73.79}};
  std::vector<CaseSpec> out;
  for (const auto& [k, s] : rows) out.push_back({case_label(k, s), k, s});
  return out;
}

std::vector<std::string> preset_names() {
  return {"straight", "table1", "table2", "table3", "table4", "table5",
          "fig2",     "fig3",   "fig4",   "fig5",   "fig6",   "convergence"};
}

namespace {

RunConfig base(std::string name) {
  RunConfig cfg;
  cfg.name = std::move(name);
  cfg.geometry.radius = 0.85;
  cfg.geometry.length = 100.0;
  cfg.basis.max_m = 2;
  cfg.basis.max_n = 4;
  cfg.outputs.directory = "out/" + cfg.name;
  return cfg;
}

LatticeConfig armchair_sites() {
  LatticeConfig lat;
  lat.strength = 400.0;
  lat.arrangement = "armchair";
  lat.sites_per_ring = 6;
  lat.rings = 195;
  return lat;
}

}  // namespace

RunConfig preset(std::string_view name) {
  if (name == "straight") {
    RunConfig cfg = base("straight");
    cfg.basis.max_m = 2;
    cfg.outputs.states = 20;
    return cfg;
  }
  if (name == "table1" || name == "table2" || name == "table3" || name == "table4") {
    RunConfig cfg = base(std::string(name));
    cfg.cases = reference_cases();
    return cfg;
  }
  if (name == "table5") {
    RunConfig cfg = base("table5");
    cfg.basis.max_m = 6;
    cfg.cases = {{case_label(0.0, 50.0), 0.0, 50.0},
                 {case_label(0.95, 52.37), 0.95, 52.37},
                 {case_label(1.00, 52.50), 1.00, 52.50}};
    cfg.lattice = armchair_sites();
    return cfg;
  }
  if (name == "fig2" || name == "fig3" || name == "fig4" || name == "fig5") {
    RunConfig cfg = base(std::string(name));
    cfg.cases = reference_cases();
    DensityConfig d;
    d.mode = "profile";
    d.state = name.back() - '2';
    d.theta = std::numbers::pi;
    d.s_samples = 512;
    cfg.outputs.density = d;
    return cfg;
  }
  if (name == "fig6") {
    RunConfig cfg = base("fig6");
    cfg.basis.max_m = 6;
    cfg.geometry.kappa0 = 1.00;
    cfg.geometry.s0 = 57.45;
    cfg.lattice = armchair_sites();
    DensityConfig d;
    d.mode = "surface";
    d.state = 0;
    d.theta_samples = 256;
    d.s_samples = 512;
    cfg.outputs.density = d;
    return cfg;
  }
  if (name == "convergence") {
    RunConfig cfg = base("convergence");
    cfg.geometry.kappa0 = 1.00;
    cfg.geometry.s0 = 52.50;
    return cfg;
  }
  throw Error(ErrorCode::invalid_config, "unknown preset '" + std::string(name) + "'");
}

}  // namespace tubearc
