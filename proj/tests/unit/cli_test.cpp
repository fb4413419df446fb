#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fracam/cli/run.hpp"

namespace {

using namespace fracam::cli;
using fracam::algebra::Param;
namespace fs = std::filesystem;

RunConfig spectrum_config() {
  RunConfig c;
  c.command = Command::spectrum;
  c.overrides = {{Param::rho, "0.5"}, {Param::mu, "1"}, {Param::K, "0"}};
  c.sectors = parse_sector_range("-2..4");
  c.levels = 5;
  c.format = Format::csv;
  return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

const Artifact& find(const RunResult& r, const std::string& name) {
  for (const auto& a : r.artifacts) {
    if (a.name == name) {
      return a;
    }
  }
  throw std::runtime_error("missing artifact " + name);
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fracam_cli_test_" + name);
  fs::remove_all(d);
  return d;
}

TEST(SectorRange, Parsing) {
  const SectorRange r = parse_sector_range("-2..4");
  EXPECT_EQ(r.values(), (std::vector<int>{-2, -1, 0, 1, 2, 3, 4}));
  EXPECT_EQ(parse_sector_range("3").values(), std::vector<int>{3});
  EXPECT_TRUE(parse_sector_range("3..1").empty());
  EXPECT_THROW(parse_sector_range("a..2"), fracam::model::ValidationError);
  EXPECT_THROW(parse_sector_range("1...2"), fracam::model::ValidationError);
}

TEST(KLadder, Parsing) {
  EXPECT_EQ(parse_k_ladder("1e-2, 1e-3,1e-4"), (std::vector<double>{1e-2, 1e-3, 1e-4}));
  EXPECT_THROW(parse_k_ladder("1e-2,,1e-3"), fracam::model::ValidationError);
  EXPECT_THROW(parse_k_ladder("-1"), fracam::model::ValidationError);
  EXPECT_THROW(parse_k_ladder("0"), fracam::model::ValidationError);
}

TEST(ResolveParams, FlagsOverrideFile) {
  const fs::path dir = scratch_dir("params");
  fs::create_directories(dir);
  std::ofstream(dir / "p.txt") << "lam = pi/2\nrho = 1\nK = 0.2\ninclude_divergence_term = false\n";
  RunConfig c;
  c.params_file = dir / "p.txt";
  c.overrides = {{Param::K, "0.5"}};
  const auto p = resolve_params(c);
  EXPECT_EQ(p.describe(), "mu=1 lam=pi/2 rho=1 K=1/2 hbar=1 m=1 c=1 eps0=1 include_divergence_term=false");
  c.include_divergence_term = true;
  EXPECT_TRUE(resolve_params(c).include_divergence_term());

  RunConfig b;
  b.command = Command::brackets;
  EXPECT_FALSE(resolve_params(b).fully_bound());
  b.overrides = {{Param::rho, "-1"}};
  EXPECT_THROW(resolve_params(b), fracam::model::ValidationError);
}

TEST(SpectrumCommand, LowestLandauBandIsQuarter) {
  const RunResult r = render(spectrum_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const Artifact& csv = find(r, "spectrum.csv");
  EXPECT_NE(csv.content.find("kinetic convention"), std::string::npos);
  EXPECT_NE(csv.content.find("# tol: 1e-08"), std::string::npos);
  EXPECT_NE(csv.content.find("# params: mu=1 lam=0 rho=1/2 K=0 hbar=1 m=1 c=1 eps0=1"), std::string::npos);
  const auto rows = csv_rows(csv.content);
  ASSERT_EQ(rows.size(), 1u + 7 * 5);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"sector", "nu", "n", "energy", "residual"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int sector = std::stoi(rows[i][0]);
    const int n = std::stoi(rows[i][2]);
    const double e = std::stod(rows[i][3]);
    // kinetic energy (n_r + (|nu| - nu)/2 + 1/2) hbar Omega
    const double landau = n + (std::abs(sector) - sector) / 2 + 0.5;
    EXPECT_NEAR(e, 0.5 * landau, 1e-6) << "sector " << sector << " n " << n;
    if (sector >= 0 && n == 0) {
      EXPECT_NEAR(e, 0.25, 1e-6);
    }
  }
  for (int n = 0; n < 5; ++n) {
    const Artifact& dat = find(r, "spectrum_level_" + std::to_string(n) + ".dat");
    EXPECT_EQ(dat.content.rfind("# tool: fracam", 0), 0u);
    EXPECT_EQ(csv_rows(dat.content).size(), 7u);
  }
}

TEST(SpectrumCommand, DeterministicAcrossRuns) {
  RunConfig c = spectrum_config();
  c.overrides[Param::lam] = "0.6";
  c.overrides[Param::K] = "0.2";
  const RunResult a = render(c);
  const RunResult b = render(c);
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    EXPECT_EQ(a.artifacts[i].name, b.artifacts[i].name);
    EXPECT_EQ(a.artifacts[i].content, b.artifacts[i].content);
  }
}

TEST(RunCommand, EmptySectorRangeWritesNothing) {
  RunConfig c = spectrum_config();
  c.sectors = parse_sector_range("2..1");
  c.out_dir = scratch_dir("empty");
  const RunResult r = run(c);
  EXPECT_EQ(r.exit_code, kExitValidation);
  EXPECT_TRUE(r.written.empty());
  EXPECT_FALSE(fs::exists(c.out_dir));
}

TEST(RunCommand, ExitCodes) {
  RunConfig c = spectrum_config();
  c.tol = 0.0;
  EXPECT_EQ(render(c).exit_code, kExitValidation);
  c.tol = 1e-15;
  c.sectors = parse_sector_range("0");
  c.levels = 1;
  const RunResult conv = render(c);
  EXPECT_EQ(conv.exit_code, kExitConvergence);
  EXPECT_TRUE(conv.artifacts.empty());

  RunConfig u;
  u.command = Command::spectrum;
  EXPECT_EQ(render(u).exit_code, kExitValidation);
  u.params_file = "/nonexistent/params.txt";
  EXPECT_EQ(render(u).exit_code, kExitValidation);
  RunConfig bad;
  bad.overrides = {{Param::lam, "1+pi"}};
  EXPECT_EQ(render(bad).exit_code, kExitValidation);
  EXPECT_THROW(command_from_name("plot"), fracam::model::ValidationError);
}

TEST(RunCommand, WritesArtifactsInOrder) {
  RunConfig c = spectrum_config();
  c.levels = 2;
  c.out_dir = scratch_dir("write");
  const RunResult r = run(c);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  ASSERT_EQ(r.written.size(), 3u);
  EXPECT_EQ(r.written[0].filename(), "spectrum.csv");
  std::ifstream f(r.written[0]);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), r.artifacts[0].content);
  fs::remove_all(c.out_dir);
}

TEST(BracketsCommand, SymbolicReport) {
  RunConfig c;
  c.command = Command::brackets;
  const RunResult r = render(c);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const auto j = nlohmann::ordered_json::parse(find(r, "brackets.json").content);
  EXPECT_EQ(j.begin().key(), "provenance");
  std::map<std::string, std::string> exact;
  for (const auto& e : j["entries"]) {
    exact[e["quantity"]] = e["exact"];
  }
  EXPECT_EQ(exact["{Pi1,Pi2}"], "mu*rho/(c^2*eps0)");
  EXPECT_EQ(exact["C12"], "mu*rho/(c^2*eps0)");
  EXPECT_EQ(exact["classification"], "second class");
  EXPECT_EQ(exact["{x1,x2}_D"], "-c^2*eps0/(mu*rho)");
  EXPECT_EQ(exact["{J,H}"], "0");
  EXPECT_EQ(exact["{J_r,H_r}_D"], "0");
  EXPECT_EQ(exact["J - J_K"], "mu*lam/(2*c^2*eps0*pi)");
  EXPECT_EQ(exact["spectrum(Pi^2/2m)"], "(n+1/2)*(mu*rho*hbar/(m*c^2*eps0))");
}

TEST(BracketsCommand, WithoutVolumeChargeSkipsDiracSection) {
  RunConfig c;
  c.command = Command::brackets;
  c.format = Format::csv;
  c.overrides = {{Param::rho, "0"}};
  const RunResult r = render(c);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const std::string& text = find(r, "brackets.csv").content;
  EXPECT_EQ(text.find("{x1,x2}_D"), std::string::npos);
  EXPECT_NE(text.find("constraint matrix is singular"), std::string::npos);
}

TEST(FractionalJCommand, QuarterOffsetAndLadderFiles) {
  RunConfig c;
  c.command = Command::fractional_j;
  c.overrides = {{Param::lam, "1.5707963"}, {Param::rho, "1"}};
  c.k_ladder = parse_k_ladder("1e-2,1e-3,1e-4");
  c.sectors = parse_sector_range("1..2");
  const RunResult r = render(c);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const auto j = nlohmann::ordered_json::parse(find(r, "fractional_j.json").content);
  EXPECT_EQ(j.begin().key(), "provenance");
  EXPECT_EQ(j["provenance"]["tol"], 1e-8);
  EXPECT_NEAR(j["reduced_j"]["offset_over_hbar"].get<double>(), 0.25, 1e-7);
  EXPECT_EQ(j["numeric_check"].size(), 6u);
  for (int s : {1, 2}) {
    const Artifact& dat = find(r, "ladder_sector_" + std::to_string(s) + ".dat");
    EXPECT_NE(dat.content.find("fitted log-log slope: "), std::string::npos);
    EXPECT_EQ(csv_rows(dat.content).size(), 3u);
    const Artifact& mom = find(r, "ladder_moment_sector_" + std::to_string(s) + ".dat");
    const auto pos = mom.content.find("fitted log-log slope: ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_NEAR(std::stod(mom.content.substr(pos + 22)), 2.0, 0.1);
  }
}

TEST(OtherCommands, EmitProvenanceFirst) {
  for (Command cmd : {Command::kinetic_j, Command::duality, Command::phases}) {
    for (Format f : {Format::csv, Format::json}) {
      RunConfig c;
      c.command = cmd;
      c.format = f;
      c.overrides = {{Param::lam, "pi/2"}, {Param::rho, "0.5"}, {Param::K, "0.2"}};
      c.levels = 2;
      c.sectors = parse_sector_range("0..1");
      const RunResult r = render(c);
      ASSERT_EQ(r.exit_code, kExitOk) << command_name(cmd) << ": " << r.message;
      for (const auto& a : r.artifacts) {
        if (f == Format::json) {
          EXPECT_EQ(nlohmann::ordered_json::parse(a.content).begin().key(), "provenance");
        } else {
          EXPECT_EQ(a.content.rfind("# tool: fracam", 0), 0u) << a.name;
        }
      }
    }
  }
}

TEST(DualityCommand, SpectraAgree) {
  RunConfig c;
  c.command = Command::duality;
  c.overrides = {{Param::lam, "pi/2"}, {Param::rho, "0.5"}, {Param::K, "0.2"}};
  c.levels = 3;
  c.sectors = parse_sector_range("-1..2");
  const RunResult r = render(c);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const auto j = nlohmann::ordered_json::parse(find(r, "duality.json").content);
  EXPECT_TRUE(j["all_equal"].get<bool>());
  EXPECT_EQ(j["spectra"].size(), 4u);
}

}  // namespace
