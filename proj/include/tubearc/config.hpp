#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tubearc/assembly.hpp"
#include "tubearc/solver.hpp"

namespace tubearc {

/// One geometry variant of a run (a table row).
struct CaseSpec {
  std::string label;
  double kappa0 = 0.0;
  double s0 = 50.0;
};

struct LatticeConfig {
  double strength = 0.0;  ///< meV nm
  std::string arrangement = "armchair";  ///< "armchair" | "custom"
  int sites_per_ring = 0;
  int rings = 0;
  std::vector<DeltaSite> sites;  ///< custom only

  DeltaSiteLattice build(double length) const;
};

struct DensityConfig {
  std::string mode = "profile";  ///< "profile" (fixed theta) | "surface"
  int state = 0;
  double theta = 3.14159265358979323846;
  int s_samples = 512;
  int theta_samples = 256;
};

struct OutputConfig {
  std::string directory = "out";
  int states = 4;             ///< lowest states listed in spectrum.json / tables.txt
  double table_threshold = 0.015;
  std::optional<DensityConfig> density;
};

struct RunConfig {
  std::string name = "custom";
  TubeGeometry geometry;
  std::vector<CaseSpec> cases;  ///< empty: a single case from `geometry`
  BasisSpec basis;
  QuadratureConfig quadrature;
  std::optional<LatticeConfig> lattice;
  OutputConfig outputs;

  /// Cases with labels filled in; never empty.
  std::vector<CaseSpec> resolved_cases() const;
  /// One Problem per case, every physical invariant re-checked.
  std::vector<Problem> problems(unsigned threads) const;
  Problem problem_for(const CaseSpec& c, unsigned threads) const;
};

/// Strict parse: unknown keys, wrong types and invalid physics throw
/// Error(invalid_config).
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);

/// Reads a config file, or the "config" member of a run manifest.
RunConfig load_config_file(const std::filesystem::path& path);

std::string case_label(double kappa0, double s0);

}  // namespace tubearc
