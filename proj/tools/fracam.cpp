#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "fracam/cli/run.hpp"

namespace {

using fracam::cli::Command;
using fracam::cli::RunConfig;

// "--sectors -2..4" would otherwise read -2..4 as a flag.
std::vector<std::string> join_negative_values(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if ((args[i] == "--sectors" || args[i] == "--k-ladder") && i + 1 < args.size() && args[i + 1].size() > 1 &&
        args[i + 1][0] == '-' && (std::isdigit(static_cast<unsigned char>(args[i + 1][1])) != 0)) {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

struct Options {
  std::string params_file;
  std::string sectors = "0..3";
  std::string k_ladder;
  std::string format = "json";
  std::string out_dir = ".";
  int levels = 4;
  double tol = 1e-8;
  std::optional<bool> divergence;
  std::map<fracam::algebra::Param, std::string> values;
};

void add_common(CLI::App* sub, Options& o) {
  using fracam::algebra::Param;
  sub->add_option("--params", o.params_file, "key=value parameter file")->check(CLI::ExistingFile);
  for (auto [p, flag, help] : {std::tuple{Param::mu, "--mu", "dipole moment"},
                               std::tuple{Param::lam, "--lam", "line charge density"},
                               std::tuple{Param::rho, "--rho", "volume charge density"},
                               std::tuple{Param::K, "--K", "harmonic trap stiffness"},
                               std::tuple{Param::hbar, "--hbar", "reduced Planck constant"},
                               std::tuple{Param::m, "--m", "mass"},
                               std::tuple{Param::c, "--c", "speed of light"},
                               std::tuple{Param::eps0, "--eps0", "vacuum permittivity"}}) {
    sub->add_option_function<std::string>(
           flag, [&o, p = p](const std::string& v) { o.values[p] = v; }, help)
        ->type_name("VALUE");
  }
  sub->add_option("--include-divergence-term", o.divergence, "keep the constant hbar Omega/2 term (true/false)");
  sub->add_option("--sectors", o.sectors, "angular sectors a..b")->capture_default_str();
  sub->add_option("--levels", o.levels, "radial levels per sector")->capture_default_str();
  sub->add_option("--tol", o.tol, "convergence tolerance")->capture_default_str();
  sub->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--k-ladder", o.k_ladder, "comma-separated K/(m Omega^2) values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional angular momentum of a dipole in charged backgrounds", "fracam"};
  app.set_version_flag("--version", fracam::cli::tool_version());
  app.require_subcommand(1);

  Options opts;
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (auto [name, cmd, help] :
       {std::tuple{"spectrum", Command::spectrum, "radial spectra per angular sector"},
        std::tuple{"brackets", Command::brackets, "exact bracket and constraint report"},
        std::tuple{"fractional-j", Command::fractional_j, "reduced angular momentum ladder and guiding-centre check"},
        std::tuple{"kinetic-j", Command::kinetic_j, "kinetic angular momentum ladder of the line-charge model"},
        std::tuple{"duality", Command::duality, "comparison with the charged twin"},
        std::tuple{"phases", Command::phases, "topological phases"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, opts);
    subs.emplace_back(sub, cmd);
  }

  std::vector<std::string> args = join_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fracam::cli::kExitValidation;
  }

  RunConfig cfg;
  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) {
        cfg.command = cmd;
      }
    }
    if (!opts.params_file.empty()) {
      cfg.params_file = opts.params_file;
    }
    cfg.overrides = opts.values;
    cfg.include_divergence_term = opts.divergence;
    cfg.sectors = fracam::cli::parse_sector_range(opts.sectors);
    cfg.levels = opts.levels;
    cfg.tol = opts.tol;
    cfg.out_dir = opts.out_dir;
    cfg.format = fracam::cli::format_from_name(opts.format);
    if (!opts.k_ladder.empty()) {
      cfg.k_ladder = fracam::cli::parse_k_ladder(opts.k_ladder);
    }
  } catch (const std::exception& e) {
    std::cerr << "fracam: " << e.what() << '\n';
    return fracam::cli::kExitValidation;
  }

  const auto result = fracam::cli::run(cfg);
  if (result.exit_code != fracam::cli::kExitOk) {
    std::cerr << "fracam: " << result.message << '\n';
    return result.exit_code;
  }
  for (const auto& path : result.written) {
    std::cout << path.string() << '\n';
  }
  return fracam::cli::kExitOk;
}
