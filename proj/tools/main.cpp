// biphoton: prepare, measure and reconstruct two-photon polarization qutrits.
//
// Subcommands (one JSON or CSV document on stdout, diagnostics on stderr):
//   prepare   state set by the preparation plate at a given angle
//   simulate  protocol coincidence rates for a state, exact or Poisson
//   invert    linear-inversion tomography from measured rates
//   sweep     full plate-angle sweep with reconstruction at every point
//   check     constraint diagnostics for a state
//
// Exit codes: 0 success, 1 failed check, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "biphoton/experiment.hpp"
#include "biphoton/io.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;

/// Reads a file, or stdin when the argument is "-".
std::string read_input(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(arg);
  if (!in) {
    throw std::invalid_argument("cannot open " + arg);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

biphoton::SweepConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return biphoton::sweep_config_from_json(read_input(path));
}

int run_prepare(const std::string& config_path, double alpha_deg) {
  const biphoton::SweepConfig cfg = load_config(config_path);
  std::cerr << "effective delta = " << cfg.delta_rad() << " rad\n";
  const biphoton::QutritState state = biphoton::prepare(alpha_deg, cfg);
  std::cout << biphoton::state_to_json(state) << "\n";
  return kOk;
}

int run_simulate(const std::string& state_arg, const std::string& noise_mode,
                 long long total, std::uint64_t seed) {
  const biphoton::QutritState state =
      biphoton::state_from_json(read_input(state_arg));
  std::optional<biphoton::PoissonNoise> noise;
  if (noise_mode == "poisson") {
    noise = biphoton::PoissonNoise{total, seed};
  }
  const auto settings = biphoton::table1_settings();
  const biphoton::MomentVector m = biphoton::simulate(state, settings, noise);
  std::cout << biphoton::moments_to_json(m) << "\n";
  return kOk;
}

int run_invert(const std::string& moments_arg, bool pure) {
  const biphoton::MomentVector m =
      biphoton::moments_from_json(read_input(moments_arg));
  biphoton::InvertOptions opts;
  opts.pure_hypothesis = pure;
  const biphoton::ReconstructionResult rec = biphoton::invert(m, opts);
  if (rec.e_undetermined) {
    std::cerr << "E is undetermined by seven rates with |D||F| ~ 0; "
                 "rerun with all nine\n";
  }
  std::cout << biphoton::reconstruction_to_json(rec) << "\n";
  return kOk;
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& format) {
  const biphoton::SweepConfig cfg =
      biphoton::sweep_config_from_json(read_input(config_path));
  cfg.validate();
  std::cerr << "effective delta = " << cfg.delta_rad() << " rad, "
            << cfg.alpha_grid_deg.size() << " grid points\n";
  const auto records = biphoton::run_sweep(cfg);

  fs::create_directories(out_dir);
  const fs::path out =
      fs::path(out_dir) / (format == "csv" ? "sweep.csv" : "sweep.json");
  if (format == "csv") {
    biphoton::write_sweep_csv(records, out);
  } else {
    biphoton::write_sweep_json(records, cfg, out);
  }
  std::cout << "{\"records\": " << records.size() << ", \"delta_rad\": "
            << cfg.delta_rad() << ", \"file\": \"" << out.string() << "\"}\n";
  return kOk;
}

int run_check(const std::string& state_arg, bool pure) {
  const biphoton::RawState raw =
      biphoton::raw_state_from_json(read_input(state_arg));
  const biphoton::CoherencyMatrix k =
      biphoton::k4_from_matrix(raw.as_matrix());
  const biphoton::ConstraintReport report =
      biphoton::check_constraints(k, pure);
  std::cout << biphoton::report_to_json(report) << "\n";
  return report.passes(1e-6, 1e-6) ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and tomography of two-photon polarization qutrits"};
  app.require_subcommand(1);

  std::string config_path;
  double alpha_deg = 0.0;
  auto* prepare = app.add_subcommand(
      "prepare", "State set by the preparation plate at --alpha degrees");
  prepare->add_option("--alpha", alpha_deg, "Plate angle in degrees")
      ->required();
  prepare->add_option("--config", config_path,
                      "Sweep config JSON supplying the plate parameters");

  std::string state_arg;
  std::string noise_mode = "exact";
  long long total = 0;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "Protocol coincidence rates for a state");
  simulate->add_option("--state", state_arg, "State JSON file, or - for stdin")
      ->required();
  simulate->add_option("--noise", noise_mode, "exact (default) or poisson")
      ->check(CLI::IsMember({"exact", "poisson"}));
  simulate->add_option("--total", total, "Counts per setting (poisson)");
  simulate->add_option("--seed", seed, "Noise seed (poisson)");

  std::string moments_arg;
  bool pure = false;
  auto* invert = app.add_subcommand(
      "invert", "Linear-inversion tomography from measured rates");
  invert->add_option("--moments", moments_arg,
                     "Moment JSON file, or - for stdin")
      ->required();
  invert->add_flag("--pure", pure,
                   "Pure-state reconstruction (seven rates suffice)");

  std::string out_dir;
  std::string format = "csv";
  auto* sweep = app.add_subcommand(
      "sweep", "Plate-angle sweep with reconstruction at every point");
  sweep->add_option("--config", config_path, "Sweep config JSON")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--format", format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* check = app.add_subcommand(
      "check", "Constraint diagnostics for a state (exit 1 on failure)");
  check->add_option("--state", state_arg, "State JSON file, or - for stdin")
      ->required();
  check->add_flag("--pure", pure, "Also require the purity identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*prepare) return run_prepare(config_path, alpha_deg);
    if (*simulate) {
      if (noise_mode == "poisson" && total < 1) {
        std::cerr << "--noise poisson requires --total >= 1\n";
        return kUsageError;
      }
      if (simulate->count("--total") && total < 1) {
        std::cerr << "--total must be positive\n";
        return kUsageError;
      }
      return run_simulate(state_arg, noise_mode, total, seed);
    }
    if (*invert) return run_invert(moments_arg, pure);
    if (*sweep) return run_sweep(config_path, out_dir, format);
    if (*check) return run_check(state_arg, pure);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
