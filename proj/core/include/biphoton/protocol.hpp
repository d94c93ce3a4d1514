#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "biphoton/coherency.hpp"
#include "biphoton/state.hpp"

namespace biphoton {

/// One analyzer configuration of the coincidence scheme: quarter-wave-plate
/// axis and polarizer angle per arm, in degrees from vertical. Labels 1..9
/// mark protocol rows; 0 marks ad-hoc settings.
struct MeasurementSetting {
  double chi1_deg = 0.0;
  double beta1_deg = 0.0;
  double chi2_deg = 0.0;
  double beta2_deg = 0.0;
  int label = 0;
};

/// The nine-setting protocol. Rows 1-3 read the intensity moments A, C, B;
/// rows 4-7 isolate the real and imaginary parts of F and D; rows 8-9 put
/// elliptic analyzers in both arms to reach E.
std::array<MeasurementSetting, 9> table1_settings();

/// Closed-form coincidence rate of a protocol row on a given coherency
/// matrix:
///
///   1: A/4                      2: C/4                      3: B/4
///   4: (B + C + 2 Im F)/8       5: (B + C - 2 Re F)/8
///   6: (A + C - 2 Re D)/8       7: (A + C + 2 Im D)/8
///   8: (A + B + 4C - 2 Im E + 2 sqrt(2)(Re D - Im D + Re F - Im F))/16
///   9: (A + B - 2 Re E)/16
///
/// Every row is validated against the operator oracle (see the test suites).
/// Rows 8 and 9 drive both arms with analyzers that mix H and V, so row 8
/// necessarily picks up D and F contributions alongside Im E; simpler forms
/// of rows 8-9 without the B term and the row-8 cross terms do not reproduce
/// the oracle.
///
/// Throws std::invalid_argument for settings that are not protocol rows;
/// arbitrary settings go through simulate(), which uses the oracle.
double predicted_moment(const MeasurementSetting& setting,
                        const CoherencyMatrix& k);

struct PoissonNoise {
  long long total_per_setting = 0;
  std::uint64_t seed = 0;
};

/// Measured (or predicted) coincidence rates, one per setting. Under Poisson
/// noise, `rates` holds count frequencies and `counts` the raw draws.
struct MomentVector {
  std::vector<double> rates;
  std::optional<std::vector<long long>> counts;
  std::optional<long long> total_per_setting;
  std::optional<std::uint64_t> seed;
};

/// Coincidence rates of `state` for each setting, evaluated on the operator
/// oracle through each arm's analysis covector. Exact mode returns the rates
/// themselves; Poisson mode draws counts ~ Poisson(total_per_setting * rate)
/// from per-setting streams split off the seed (so the result is independent
/// of evaluation order) and returns normalized frequencies alongside counts.
/// total_per_setting < 1 is rejected.
MomentVector simulate(const QutritState& state,
                      std::span<const MeasurementSetting> settings,
                      const std::optional<PoissonNoise>& noise = std::nullopt);

struct InvertOptions {
  /// Reconstruct from the seven-row pure-state subset: E is derived from
  /// E* = A B C / (D F) instead of rows 8-9.
  bool pure_hypothesis = false;
  /// |D||F| at or below this makes the quotient for E unusable; with nine
  /// rates available the rows 8-9 path takes over, otherwise E is reported
  /// undetermined.
  double quotient_guard = 1e-8;
  /// Controls the attempted pure extraction on the physical matrix.
  ExtractOptions extraction;
};

struct ReconstructionResult {
  CoherencyMatrix k4;
  /// Raw linear inversion; Hermitian and unit-trace but possibly indefinite
  /// under noise.
  Eigen::Matrix3cd rho_raw = Eigen::Matrix3cd::Zero();
  /// Nearest physical matrix: Hermitian, positive semidefinite, unit trace.
  Eigen::Matrix3cd rho_physical = Eigen::Matrix3cd::Zero();
  /// Factor applied to the measured rates to enforce A + B + 2C = 2;
  /// absolute rates are only defined up to this scale.
  double scale_factor = 1.0;
  /// Diagnostics of the reconstructed moments. The purity residuals are
  /// always filled in; a mixed state simply shows a large one.
  ConstraintReport residuals;
  /// Present when rho_physical passes the purity threshold.
  std::optional<PureExtraction> pure_extraction;
  /// Pure-hypothesis reconstruction with |D||F| under the guard and no
  /// rows 8-9 to fall back on: E (hence rho13) is unmeasured and left zero.
  bool e_undetermined = false;
};

/// Linear-inversion tomography. Requires nine rates, or seven under the
/// pure hypothesis. Rates are first rescaled so A + B + 2C = 2, then
///
///   A = 4 R1   C = 4 R2   B = 4 R3
///   Im F = (8 R4 - B - C)/2     Re F = (B + C - 8 R5)/2
///   Re D = (A + C - 8 R6)/2     Im D = (8 R7 - A - C)/2
///   Re E = (A + B - 16 R9)/2
///   Im E = (A + B + 4C + 2 sqrt(2)(Re D - Im D + Re F - Im F) - 16 R8)/2
///
/// and rho follows from the moment map. Negative or non-finite rates are
/// rejected, as is an all-zero intensity triple.
ReconstructionResult invert(const MomentVector& m, const InvertOptions& opts = {});

/// Frobenius-nearest physical density matrix: Hermitian part taken first,
/// then the spectrum is projected onto the probability simplex (negative
/// eigenvalues clipped, the survivors shifted to renormalize the trace)
/// while keeping the eigenvectors. Idempotent.
Eigen::Matrix3cd project_physical(const Eigen::Matrix3cd& rho_raw);

}  // namespace biphoton
