#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tubearc_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "tubearc_cli_capture";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter));
  const fs::path err = dir / ("err" + std::to_string(counter++));
  const std::string cmd = std::string("\"") + TUBEARC_CLI + "\" " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("presets listing") {
  const Run r = run("presets");
  CHECK(r.status == 0);
  for (const char* name : {"straight", "table1", "table5", "fig2", "fig6", "convergence"})
    CHECK(r.out.find(name) != std::string::npos);
  const Run t = run("presets table1");
  CHECK(t.status == 0);
  CHECK(json::parse(t.out)["cases"].size() == 8);
}

TEST_CASE("solve writes spectra, tables and a manifest") {
  const fs::path dir = scratch("solve");
  const Run r = run("solve --preset straight --out " + dir.string());
  REQUIRE(r.status == 0);
  for (const char* f : {"spectrum.json", "states.csv", "tables.txt", "manifest.json"}) CHECK(fs::exists(dir / f));
  const json doc = json::parse(slurp(dir / "spectrum.json"));
  const json& run0 = doc["runs"][0];
  CHECK(run0["eigenvalues"].size() == 20);
  REQUIRE(run0.contains("analytic"));
  CHECK(std::abs(run0["eigenvalues"][0].get<double>() - (-13.1457188)) < 1e-6);
  const json manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["tool"] == "tubearc");
  CHECK(manifest["command"] == "solve");
  const std::string csv = slurp(dir / "states.csv");
  CHECK(csv.rfind("run,state,j,m,n,re,im\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);

  // Re-running from the manifest reproduces every output byte for byte.
  const fs::path again = scratch("solve_again");
  REQUIRE(run("solve --config " + (dir / "manifest.json").string() + " --out " + again.string()).status == 0);
  for (const char* f : {"spectrum.json", "states.csv", "tables.txt", "manifest.json"})
    CHECK(slurp(dir / f) == slurp(again / f));
}

TEST_CASE("outputs do not depend on the thread count") {
  const fs::path one = scratch("threads1");
  const fs::path four = scratch("threads4");
  REQUIRE(run("solve --preset table1 --threads 1 --out " + one.string()).status == 0);
  REQUIRE(run("solve --preset table1 --threads 4 --seedless --out " + four.string()).status == 0);
  for (const char* f : {"spectrum.json", "states.csv", "tables.txt"}) CHECK(slurp(one / f) == slurp(four / f));
}

TEST_CASE("density profiles and surfaces") {
  const fs::path dir = scratch("density");
  REQUIRE(run("density --preset fig2 --out " + dir.string()).status == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".csv") continue;
    ++files;
    const std::string text = slurp(e.path());
    CHECK(text.rfind("s,density\n", 0) == 0);
    CHECK(count_lines(text) == 513);
  }
  CHECK(files == 8);

  const fs::path st = scratch("density_straight");
  REQUIRE(run("density --preset straight --theta 1.0 --out " + st.string()).status == 0);
  std::istringstream lines(slurp(st / "density_state0.csv"));
  std::string line;
  std::getline(lines, line);
  int checked = 0;
  while (std::getline(lines, line)) {
    const double s = std::stod(line.substr(0, line.find(',')));
    const double rho = std::stod(line.substr(line.find(',') + 1));
    const double expected = std::pow(std::sin(M_PI * s / 100.0), 2) / (M_PI * 0.85 * 100.0);
    CHECK(std::abs(rho - expected) < 1e-12);
    ++checked;
  }
  CHECK(checked == 512);

  const fs::path surf = scratch("density_surface");
  REQUIRE(run("density --preset straight --surface --out " + surf.string()).status == 0);
  const std::string grid = slurp(surf / "density_state0.csv");
  CHECK(grid.rfind("theta,s,density\n", 0) == 0);
  CHECK(grid.find("\n\n") != std::string::npos);
}

TEST_CASE("site lists") {
  const fs::path dir = scratch("sites");
  REQUIRE(run("sites --preset fig6 --out " + dir.string()).status == 0);
  fs::path csv;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") csv = e.path();
  REQUIRE(!csv.empty());
  const std::string text = slurp(csv);
  CHECK(text.rfind("j,k,theta,s,x,y,z\n", 0) == 0);
  CHECK(count_lines(text) == 1171);

  const fs::path one = scratch("sites_one");
  const fs::path cfg = one / "one.json";
  std::ofstream(cfg) << R"({"lattice": {"arrangement": "armchair", "sites_per_ring": 1, "rings": 1, "strength": 1}})";
  REQUIRE(run("sites --config " + cfg.string() + " --out " + one.string()).status == 0);
  std::istringstream rows(slurp(one / "sites.csv"));
  std::string header, row;
  std::getline(rows, header);
  std::getline(rows, row);
  CHECK(row.rfind("1,1,0,50,", 0) == 0);
}

TEST_CASE("convergence report") {
  const fs::path dir = scratch("convergence");
  REQUIRE(run("convergence --preset convergence --out " + dir.string()).status == 0);
  const json doc = json::parse(slurp(dir / "convergence.json"));
  CHECK(doc["runs"][0]["monotone_nonincreasing"] == true);
  CHECK(doc["runs"][0]["basis"].size() == 4);
  CHECK(doc["runs"][0]["basis"][3]["stable_5_digits"] == true);
  CHECK(fs::exists(dir / "convergence.csv"));
}

TEST_CASE("errors are reported as JSON with distinct exit codes") {
  const Run bad_state = run("density --preset straight --state 99 --out " + scratch("err1").string());
  CHECK(bad_state.status == 2);
  CHECK(json::parse(bad_state.err)["error"]["code"] == "index_out_of_range");

  const Run no_lattice = run("sites --preset straight --out " + scratch("err2").string());
  CHECK(no_lattice.status == 2);
  CHECK(json::parse(no_lattice.err)["error"]["code"] == "invalid_config");

  const Run unknown = run("solve --preset nope");
  CHECK(unknown.status == 2);

  const fs::path dir = scratch("err3");
  std::ofstream(dir / "bad.json") << R"({"geometry": {"radius": 0.85, "radus": 1}})";
  const Run typo = run("solve --config " + (dir / "bad.json").string() + " --out " + dir.string());
  CHECK(typo.status == 2);
  CHECK(typo.err.find("radus") != std::string::npos);

  const Run missing = run("solve --config /nonexistent/cfg.json");
  CHECK(missing.status == 4);

  CHECK(run("solve --preset straight --config x.json").status != 0);
}
