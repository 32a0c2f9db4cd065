#include "tubearc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tubearc/analysis.hpp"
#include "tubearc/error.hpp"
#include "tubearc/json_writer.hpp"
#include "tubearc/solver.hpp"

namespace tubearc {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path output_dir(const RunConfig& config, const CommandOptions& options) {
  return options.out_dir.empty() ? fs::path(config.outputs.directory) : options.out_dir;
}

// Single-case runs use the plain name; sweeps append the case label.
fs::path case_file(const fs::path& dir, const std::string& stem, const std::string& label,
                   bool single, const std::string& ext) {
  return dir / (single ? stem + ext : stem + "_" + label + ext);
}

void write_manifest(const fs::path& dir, const char* command, const RunConfig& config,
                    const std::vector<std::string>& files) {
  json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["command"] = command;
  manifest["config"] = to_json(config);
  manifest["outputs"] = files;
  write_file_atomic(dir / "manifest.json", dump_json(manifest));
}

json geometry_json(const TubeGeometry& g) {
  return {{"radius", g.radius},         {"length", g.length},
          {"kappa0", g.kappa0},         {"s0", g.s0},
          {"mass_ratio", g.mass_ratio}, {"hbar2_over_2me", g.hbar2_over_2me}};
}

json run_json(const Solution& sol, const CaseSpec& c, const OutputConfig& outputs) {
  const SpectralResult& spec = sol.spectrum;
  const BasisSpec& basis = sol.problem.basis;
  json run;
  run["label"] = c.label;
  run["geometry"] = geometry_json(sol.problem.geometry);
  run["basis_size"] = basis.size();
  if (sol.problem.lattice) run["lattice_sites"] = sol.problem.lattice->sites.size();

  json energies = json::array();
  json parity = json::array();
  json residuals = json::array();
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    energies.push_back(spec.eigenvalues(i));
    parity.push_back({{"label", std::string(to_string(sol.parity[i].parity))},
                      {"score", sol.parity[i].score}});
    residuals.push_back(spec.residuals[i]);
  }
  run["eigenvalues"] = energies;
  run["parity"] = parity;
  run["residuals"] = residuals;
  run["diagnostics"] = {
      {"overlap_residual", sol.system.basis.residual},
      {"overlap_condition", sol.system.overlap.condition_number},
      {"overlap_hermiticity_defect", sol.system.overlap.hermiticity_defect},
      {"hamiltonian_hermiticity_defect", sol.system.hamiltonian.asymmetry},
  };

  json states = json::array();
  const int reported = std::min<int>(outputs.states, static_cast<int>(spec.eigenvalues.size()));
  for (int i = 0; i < reported; ++i) {
    const StateRow row = format_state(i, spec.eigenvalues(i), spec.xi_coefficients.col(i), basis,
                                      sol.system.overlap.values, outputs.table_threshold);
    json terms = json::array();
    for (const TrigTerm& t : row.terms) {
      terms.push_back({{"m", t.m}, {"n", t.n}, {"angular", t.sine ? "sin" : "cos"}, {"value", t.value}});
    }
    states.push_back({{"index", i},
                      {"energy", row.energy},
                      {"parity", std::string(to_string(row.parity.parity))},
                      {"terms", terms}});
  }
  run["states"] = states;

  if (sol.problem.geometry.straight() && !sol.problem.lattice) {
    const std::vector<AnalyticLevel> levels = straight_tube_spectrum(sol.problem.geometry, basis);
    json analytic = json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      analytic.push_back({{"m", levels[i].m}, {"n", levels[i].n}, {"energy", levels[i].energy}});
      worst = std::max(worst, std::abs(levels[i].energy - spec.eigenvalues(static_cast<Eigen::Index>(i))));
    }
    run["analytic"] = {{"levels", analytic}, {"max_abs_error", worst}};
  }
  return run;
}

std::string states_csv(const std::vector<std::pair<CaseSpec, Solution>>& runs) {
  std::string out = "run,state,j,m,n,re,im\n";
  for (const auto& [c, sol] : runs) {
    const Matrix& xi = sol.spectrum.xi_coefficients;
    for (Eigen::Index state = 0; state < xi.cols(); ++state) {
      for (Eigen::Index j = 0; j < xi.rows(); ++j) {
        const BasisIndex idx = index_map(sol.problem.basis, static_cast<int>(j) + 1);
        out += c.label + "," + std::to_string(state) + "," + std::to_string(idx.j) + "," +
               std::to_string(idx.m) + "," + std::to_string(idx.n) + "," +
               format_double(xi(j, state).real()) + "," + format_double(xi(j, state).imag()) +
               "\n";
      }
    }
  }
  return out;
}

std::vector<std::pair<CaseSpec, Solution>> solve_all(const RunConfig& config, unsigned threads) {
  std::vector<std::pair<CaseSpec, Solution>> runs;
  for (const CaseSpec& c : config.resolved_cases()) {
    runs.emplace_back(c, solve(config.problem_for(c, threads)));
  }
  return runs;
}

}  // namespace

json error_record(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

json cmd_solve(const RunConfig& config, const CommandOptions& options) {
  const fs::path dir = output_dir(config, options);
  const auto runs = solve_all(config, options.threads);

  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["config_name"] = config.name;
  json list = json::array();
  std::string tables;
  for (const auto& [c, sol] : runs) {
    list.push_back(run_json(sol, c, config.outputs));
    tables += "# " + c.label + "\n";
    const int reported =
        std::min<int>(config.outputs.states, static_cast<int>(sol.spectrum.eigenvalues.size()));
    for (int i = 0; i < reported; ++i) {
      const StateRow row =
          format_state(i, sol.spectrum.eigenvalues(i), sol.spectrum.xi_coefficients.col(i),
                       sol.problem.basis, sol.system.overlap.values, config.outputs.table_threshold);
      tables += render_state_row(row, sol.problem.geometry.length) + "\n";
    }
  }
  doc["runs"] = list;

  write_file_atomic(dir / "spectrum.json", dump_json(doc));
  write_file_atomic(dir / "states.csv", states_csv(runs));
  write_file_atomic(dir / "tables.txt", tables);
  write_manifest(dir, "solve", config, {"spectrum.json", "states.csv", "tables.txt"});
  return doc;
}

json cmd_density(const RunConfig& config, const CommandOptions& options,
                 const DensityRequest& request) {
  DensityConfig d = config.outputs.density.value_or(DensityConfig{});
  if (request.state) d.state = *request.state;
  if (request.theta) d.theta = *request.theta;
  if (request.surface) d.mode = *request.surface ? "surface" : "profile";

  const fs::path dir = output_dir(config, options);
  const auto runs = solve_all(config, options.threads);
  const bool single = runs.size() == 1;
  json summary;
  summary["mode"] = d.mode;
  summary["state"] = d.state;
  json files = json::array();
  std::vector<std::string> names;
  for (const auto& [c, sol] : runs) {
    const Matrix& xi = sol.spectrum.xi_coefficients;
    if (d.state < 0 || d.state >= xi.cols()) {
      throw Error(ErrorCode::index_out_of_range,
                  "state index " + std::to_string(d.state) + " outside [0, " +
                      std::to_string(xi.cols()) + ")");
    }
    const Vector state = xi.col(d.state);
    const std::vector<double> s_samples = uniform_samples(sol.problem.geometry.length, d.s_samples);
    std::string csv;
    if (d.mode == "profile") {
      csv = "s,density\n";
      const std::vector<double> rho = density_profile_at(state, sol.problem.basis, d.theta, s_samples);
      for (std::size_t i = 0; i < rho.size(); ++i) {
        csv += format_double(s_samples[i]) + "," + format_double(rho[i]) + "\n";
      }
    } else {
      csv = "theta,s,density\n";
      for (int it = 0; it < d.theta_samples; ++it) {
        const double theta = 2.0 * std::numbers::pi * it / d.theta_samples;
        if (it > 0) csv += "\n";
        for (double s : s_samples) {
          csv += format_double(theta) + "," + format_double(s) + "," +
                 format_double(density(state, sol.problem.basis, {theta, s})) + "\n";
        }
      }
    }
    const fs::path file = case_file(dir, "density_state" + std::to_string(d.state), c.label,
                                    single, ".csv");
    write_file_atomic(file, csv);
    names.push_back(file.filename().string());
    files.push_back({{"label", c.label},
                     {"file", file.filename().string()},
                     {"energy", sol.spectrum.eigenvalues(d.state)}});
  }
  summary["files"] = files;
  write_manifest(dir, "density", config, names);
  return summary;
}

json cmd_sites(const RunConfig& config, const CommandOptions& options) {
  if (!config.lattice) throw Error(ErrorCode::invalid_config, "sites: no lattice configured");
  const fs::path dir = output_dir(config, options);
  const auto cases = config.resolved_cases();
  const bool single = cases.size() == 1;
  json summary = json::array();
  std::vector<std::string> names;
  for (const CaseSpec& c : cases) {
    const Problem p = config.problem_for(c, options.threads);
    std::string csv = "j,k,theta,s,x,y,z\n";
    for (const DeltaSite& site : p.lattice->sites) {
      const Vec3 x = embed(p.geometry, {site.theta, site.s});
      csv += std::to_string(site.site) + "," + std::to_string(site.ring) + "," +
             format_double(site.theta) + "," + format_double(site.s) + "," + format_double(x[0]) +
             "," + format_double(x[1]) + "," + format_double(x[2]) + "\n";
    }
    const fs::path file = case_file(dir, "sites", c.label, single, ".csv");
    write_file_atomic(file, csv);
    names.push_back(file.filename().string());
    summary.push_back({{"label", c.label},
                       {"file", file.filename().string()},
                       {"sites", p.lattice->sites.size()}});
  }
  write_manifest(dir, "sites", config, names);
  return summary;
}

namespace {

// Half a unit in the fifth significant digit of `reference`.
bool five_digit_stable(double value, double reference) {
  if (reference == 0.0) return value == 0.0;
  const double exponent = std::floor(std::log10(std::abs(reference)));
  return std::abs(value - reference) <= 0.5 * std::pow(10.0, exponent - 4.0);
}

}  // namespace

json cmd_convergence(const RunConfig& config, const CommandOptions& options) {
  const fs::path dir = output_dir(config, options);
  const std::pair<int, int> ladder[] = {{1, 2}, {2, 4}, {3, 6}, {4, 8}};
  constexpr int kLevels = 4;

  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  json runs = json::array();
  std::string csv = "run,kind,max_m,max_n,n_theta,panels,e0,e1,e2,e3,stable_5_digits\n";
  auto lowest = [](const Solution& sol) {
    std::vector<double> out;
    for (int i = 0; i < kLevels && i < sol.spectrum.eigenvalues.size(); ++i) {
      out.push_back(sol.spectrum.eigenvalues(i));
    }
    return out;
  };
  auto csv_row = [&](const std::string& label, const char* kind, const Problem& p,
                     const std::vector<double>& e, bool stable) {
    csv += label + "," + kind + "," + std::to_string(p.basis.max_m) + "," +
           std::to_string(p.basis.max_n) + "," + std::to_string(p.quadrature.n_theta) + "," +
           std::to_string(p.quadrature.panels);
    for (int i = 0; i < kLevels; ++i) csv += "," + (i < static_cast<int>(e.size()) ? format_double(e[i]) : "");
    csv += std::string(",") + (stable ? "true" : "false") + "\n";
  };

  for (const CaseSpec& c : config.resolved_cases()) {
    std::vector<std::pair<Problem, std::vector<double>>> basis_rows;
    for (const auto& [m, n] : ladder) {
      Problem p = config.problem_for(c, options.threads);
      p.basis.max_m = m;
      p.basis.max_n = n;
      p.quadrature.n_theta = std::max(p.quadrature.n_theta, 4 * m + 8);
      basis_rows.emplace_back(p, lowest(solve(p)));
    }
    const std::vector<double>& ref = basis_rows.back().second;

    json run;
    run["label"] = c.label;
    json rows = json::array();
    bool monotone = true;
    for (std::size_t r = 0; r < basis_rows.size(); ++r) {
      const auto& [p, e] = basis_rows[r];
      bool stable = true;
      for (std::size_t i = 0; i < e.size() && i < ref.size(); ++i) stable &= five_digit_stable(e[i], ref[i]);
      if (r > 0) {
        const auto& prev = basis_rows[r - 1].second;
        for (std::size_t i = 0; i < e.size() && i < prev.size(); ++i) monotone &= e[i] <= prev[i] + 1e-9;
      }
      rows.push_back({{"max_m", p.basis.max_m}, {"max_n", p.basis.max_n},
                      {"eigenvalues", e}, {"stable_5_digits", stable}});
      csv_row(c.label, "basis", p, e, stable);
    }
    run["basis"] = rows;
    run["monotone_nonincreasing"] = monotone;

    Problem base = config.problem_for(c, options.threads);
    Problem fine = base;
    fine.quadrature.n_theta *= 2;
    fine.quadrature.panels *= 2;
    const std::vector<double> e_base = lowest(solve(base));
    const std::vector<double> e_fine = lowest(solve(fine));
    double change = 0.0;
    for (std::size_t i = 0; i < e_base.size(); ++i) change = std::max(change, std::abs(e_base[i] - e_fine[i]));
    run["quadrature"] = {
        {"default", {{"n_theta", base.quadrature.n_theta}, {"panels", base.quadrature.panels},
                     {"points_per_panel", base.quadrature.points_per_panel}, {"eigenvalues", e_base}}},
        {"doubled", {{"n_theta", fine.quadrature.n_theta}, {"panels", fine.quadrature.panels},
                     {"points_per_panel", fine.quadrature.points_per_panel}, {"eigenvalues", e_fine}}},
        {"max_abs_change", change}};
    csv_row(c.label, "quadrature", base, e_base, true);
    csv_row(c.label, "quadrature", fine, e_fine, change < 1e-6);
    runs.push_back(run);
  }
  doc["runs"] = runs;
  write_file_atomic(dir / "convergence.json", dump_json(doc));
  write_file_atomic(dir / "convergence.csv", csv);
  write_manifest(dir, "convergence", config, {"convergence.json", "convergence.csv"});
  return doc;
}

}  // namespace tubearc
