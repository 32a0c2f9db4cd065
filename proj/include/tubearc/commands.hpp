#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "tubearc/config.hpp"

namespace tubearc {

inline constexpr const char* kToolName = "tubearc";
inline constexpr const char* kToolVersion = "1.0.0";

struct CommandOptions {
  std::filesystem::path out_dir;  ///< empty: config.outputs.directory
  unsigned threads = 1;
};

/// Writes spectrum.json, states.csv, tables.txt and manifest.json.
/// Returns the spectrum document.
nlohmann::json cmd_solve(const RunConfig& config, const CommandOptions& options);

struct DensityRequest {
  std::optional<int> state;
  std::optional<double> theta;
  std::optional<bool> surface;
};

/// Profile CSV (s,density) at fixed theta, or surface CSV (theta,s,density)
/// with a blank line between theta blocks. Returns a summary document.
nlohmann::json cmd_density(const RunConfig& config, const CommandOptions& options,
                           const DensityRequest& request = {});

/// CSV j,k,theta,s,x,y,z of the configured lattice, embedded per case.
nlohmann::json cmd_sites(const RunConfig& config, const CommandOptions& options);

/// Lowest four eigenvalues across nested bases and doubled quadrature.
nlohmann::json cmd_convergence(const RunConfig& config, const CommandOptions& options);

/// Machine-readable error record.
nlohmann::json error_record(const std::string& code, const std::string& message);

}  // namespace tubearc
