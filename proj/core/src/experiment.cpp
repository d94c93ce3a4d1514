#include "biphoton/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "biphoton/io.hpp"
#include "biphoton/jones.hpp"
#include "biphoton/random.hpp"

namespace biphoton {

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 36; ++i) grid.push_back(2.5 * i);
  return grid;
}

double SweepConfig::delta_rad() const {
  const double thickness_nm = plate_thickness_um * 1e3;
  return std::numbers::pi * birefringence * thickness_nm / wavelength_nm;
}

void SweepConfig::validate() const {
  if (alpha_grid_deg.empty()) {
    throw std::invalid_argument("alpha grid is empty");
  }
  if (!(plate_thickness_um > 0.0) || !(wavelength_nm > 0.0)) {
    throw std::invalid_argument("plate thickness and wavelength must be positive");
  }
  if (noise && noise->total_per_setting < 1) {
    throw std::invalid_argument("total_per_setting must be positive");
  }
}

QutritState prepare(double alpha_deg, const SweepConfig& cfg) {
  cfg.validate();
  const Unitary3 g =
      lift_su2(waveplate({cfg.delta_rad(), deg_to_rad(alpha_deg)}));
  return apply_unitary(QutritState::pure({0.0, 0.0, 1.0}), g);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto settings = table1_settings();
  std::vector<SweepRecord> records;
  records.reserve(cfg.alpha_grid_deg.size());
  for (std::size_t i = 0; i < cfg.alpha_grid_deg.size(); ++i) {
    const double alpha = cfg.alpha_grid_deg[i];
    QutritState state = prepare(alpha, cfg);
    std::optional<PoissonNoise> point_noise;
    if (cfg.noise) {
      point_noise = PoissonNoise{cfg.noise->total_per_setting,
                                 split_seed(cfg.noise->seed, i)};
    }
    MomentVector rates = simulate(state, settings, point_noise);
    ReconstructionResult rec = invert(rates);
    records.push_back(SweepRecord{alpha, std::move(state), std::move(rates),
                                  std::move(rec)});
  }
  return records;
}

void write_sweep_csv(std::span<const SweepRecord> records,
                     const std::filesystem::path& path) {
  if (records.empty()) {
    throw std::invalid_argument("no sweep records to write");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << "alpha_deg,c1_sq_true,c2_sq_true,c3_sq_true,"
         "c1_sq_rec,c2_sq_rec,c3_sq_rec,"
         "phi12_true,phi32_true,phi12_rec,phi32_rec,"
         "ReD,ImD,ReF,ImF,ReE,ImE,residual_norm\n";
  char buf[32];
  auto field = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  for (const auto& rec : records) {
    const Eigen::Matrix3cd rho_true = rec.true_state.rho();
    const Eigen::Matrix3cd& rho_rec = rec.reconstruction.rho_physical;
    const CoherencyMatrix& k = rec.reconstruction.k4;
    const double residual = rec.reconstruction.residuals.purity.value_or(0.0);
    const double row[] = {
        rec.alpha_deg,
        rho_true(0, 0).real(), rho_true(1, 1).real(), rho_true(2, 2).real(),
        rho_rec(0, 0).real(), rho_rec(1, 1).real(), rho_rec(2, 2).real(),
        std::arg(rho_true(0, 1)), std::arg(rho_true(2, 1)),
        std::arg(rho_rec(0, 1)), std::arg(rho_rec(2, 1)),
        k.D.real(), k.D.imag(), k.F.real(), k.F.imag(),
        k.E.real(), k.E.imag(),
        residual,
    };
    for (std::size_t i = 0; i < std::size(row); ++i) {
      out << (i ? "," : "") << field(row[i]);
    }
    out << "\n";
  }
  if (!out.good()) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

void write_sweep_json(std::span<const SweepRecord> records,
                      const SweepConfig& cfg,
                      const std::filesystem::path& path) {
  if (records.empty()) {
    throw std::invalid_argument("no sweep records to write");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << sweep_to_json(records, cfg) << "\n";
  if (!out.good()) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace biphoton
