#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "biphoton/protocol.hpp"

namespace biphoton {

/// 0 to 90 degrees in 2.5-degree steps (37 points, one full population
/// period).
std::vector<double> default_alpha_grid();

/// Configuration of a preparation-plate sweep: the pair source emits |0,2>,
/// a birefringent plate of thickness h and birefringence dn sets the state,
/// and the protocol runs at each plate angle alpha.
///
/// The plate's optical thickness is delta = pi * dn * h / lambda; h and
/// lambda alone do not fix it, so dn must be supplied (the default is the
/// quartz value near 702 nm). The effective delta is logged with every run.
struct SweepConfig {
  double plate_thickness_um = 824.0;
  double wavelength_nm = 702.0;
  /// dn = n_o - n_e; negative for quartz.
  double birefringence = -0.0088;
  std::vector<double> alpha_grid_deg = default_alpha_grid();
  /// Empty = exact rates.
  std::optional<PoissonNoise> noise;

  double delta_rad() const;
  /// Throws std::invalid_argument on an empty grid or non-positive
  /// thickness/wavelength.
  void validate() const;
};

struct SweepRecord {
  double alpha_deg = 0.0;
  QutritState true_state;
  MomentVector rates;
  ReconstructionResult reconstruction;
};

/// State set by the preparation plate at `alpha_deg`: the two-photon lift of
/// waveplate(delta, alpha) applied to (0, 0, 1). Always pure.
QutritState prepare(double alpha_deg, const SweepConfig& cfg);

/// Runs the nine-row protocol at every grid point and reconstructs each
/// state. Under noise, each point draws from an independent stream split off
/// the master seed.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// Writes one CSV row per record with the exact header
///
///   alpha_deg,c1_sq_true,c2_sq_true,c3_sq_true,c1_sq_rec,c2_sq_rec,
///   c3_sq_rec,phi12_true,phi32_true,phi12_rec,phi32_rec,ReD,ImD,ReF,ImF,
///   ReE,ImE,residual_norm
///
/// Truth columns sit next to reconstructed ones so overlays can be replotted
/// from the file alone. phi12 = arg(rho12) and phi32 = arg(rho32); they are
/// meaningful only where the involved populations are nonzero.
/// residual_norm is the purity residual |rho_raw^2 - rho_raw|_F.
/// I/O failures surface as std::runtime_error carrying the path.
void write_sweep_csv(std::span<const SweepRecord> records,
                     const std::filesystem::path& path);

/// Writes the whole sweep as one JSON document: the configuration, the
/// effective delta, and every record including the full reconstructed
/// density matrices.
void write_sweep_json(std::span<const SweepRecord> records,
                      const SweepConfig& cfg,
                      const std::filesystem::path& path);

}  // namespace biphoton
