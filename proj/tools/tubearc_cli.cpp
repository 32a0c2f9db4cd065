// tubearc: spectra and densities of a particle bound to a curved tube surface.

#include <CLI11.hpp>
#include <iostream>

#include "tubearc/commands.hpp"
#include "tubearc/error.hpp"
#include "tubearc/json_writer.hpp"
#include "tubearc/presets.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  unsigned threads = 1;
  bool seedless = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  auto* cfg = cmd->add_option("--config", flags.config_path, "Run configuration (JSON) or manifest");
  auto* pre = cmd->add_option("--preset", flags.preset_name, "Built-in configuration name");
  cfg->excludes(pre);
  cmd->add_option("--out", flags.out_dir, "Output directory (default: outputs.directory)");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--seedless", flags.seedless,
                "Accepted for scripts; the pipeline never draws random numbers");
}

tubearc::RunConfig load(const CommonFlags& flags) {
  if (!flags.config_path.empty()) return tubearc::load_config_file(flags.config_path);
  if (!flags.preset_name.empty()) return tubearc::preset(flags.preset_name);
  throw tubearc::Error(tubearc::ErrorCode::invalid_config, "one of --config or --preset is required");
}

int exit_code(tubearc::ErrorCode code) {
  switch (code) {
    case tubearc::ErrorCode::invalid_argument:
    case tubearc::ErrorCode::invalid_config:
    case tubearc::ErrorCode::index_out_of_range:
      return 2;
    case tubearc::ErrorCode::ill_conditioned_overlap:
    case tubearc::ErrorCode::hermiticity_failure:
      return 3;
    case tubearc::ErrorCode::io_failure:
      return 4;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of a particle constrained to a curved nanotube surface"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* solve = app.add_subcommand("solve", "Spectrum, parities and eigenvector tables");
  auto* density = app.add_subcommand("density", "Probability density profile or surface map");
  auto* sites = app.add_subcommand("sites", "Delta-site coordinates and 3D embedding");
  auto* convergence = app.add_subcommand("convergence", "Basis and quadrature convergence study");
  auto* presets = app.add_subcommand("presets", "List presets, or print one as a config file");
  for (auto* cmd : {solve, density, sites, convergence}) add_common(cmd, flags);

  std::optional<int> state;
  std::optional<double> theta;
  bool surface = false;
  density->add_option("--state", state, "State index (0 = ground state)");
  density->add_option("--theta", theta, "Angle of the profile (rad)");
  density->add_flag("--surface", surface, "Full (theta, s) grid instead of a profile");

  std::string dump_name;
  presets->add_option("name", dump_name, "Preset to print");

  CLI11_PARSE(app, argc, argv);

  tubearc::CommandOptions options;
  options.out_dir = flags.out_dir;
  options.threads = flags.threads;
  try {
    if (presets->parsed()) {
      if (dump_name.empty()) {
        for (const std::string& name : tubearc::preset_names()) std::cout << name << "\n";
      } else {
        std::cout << tubearc::dump_json(tubearc::to_json(tubearc::preset(dump_name)));
      }
      return 0;
    }
    const tubearc::RunConfig config = load(flags);
    if (solve->parsed()) {
      const auto doc = tubearc::cmd_solve(config, options);
      for (const auto& run : doc.at("runs")) {
        std::cout << run.at("label").get<std::string>() << ": E0 = "
                  << tubearc::format_double(run.at("eigenvalues").at(0).get<double>()) << " meV\n";
      }
    } else if (density->parsed()) {
      tubearc::DensityRequest req{state, theta, std::nullopt};
      if (surface) req.surface = true;
      std::cout << tubearc::dump_json(tubearc::cmd_density(config, options, req));
    } else if (sites->parsed()) {
      std::cout << tubearc::dump_json(tubearc::cmd_sites(config, options));
    } else if (convergence->parsed()) {
      tubearc::cmd_convergence(config, options);
    }
  } catch (const tubearc::Error& e) {
    std::cerr << tubearc::dump_json(
        tubearc::error_record(std::string(tubearc::to_string(e.code())), e.what()));
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << tubearc::dump_json(tubearc::error_record("internal", e.what()));
    return 1;
  }
  return 0;
}
