#pragma once

#include <array>
#include <complex>
#include <variant>

#include <Eigen/Dense>

namespace biphoton {

/// Default absolute tolerance for state validation (normalization,
/// Hermiticity, positivity, unit trace).
inline constexpr double kStateTol = 1e-8;

/// Polarization state of a photon pair in a single spatio-spectral mode,
/// spanned by |2,0>, |1,1>, |0,2> (occupation of the H and V modes).
///
/// A state is held either as a pure amplitude vector (c1, c2, c3) with
/// sum |cj|^2 = 1, or as a 3x3 Hermitian positive-semidefinite density
/// matrix with unit trace. The vacuum component never enters: it does not
/// contribute to coincidence detection.
class QutritState {
 public:
  /// Pure state from amplitudes; rejects vectors whose norm deviates from 1
  /// by more than `tol`.
  static QutritState pure(const Eigen::Vector3cd& amplitudes,
                          double tol = kStateTol);

  /// Mixed (or pure) state from a density matrix; rejects matrices that are
  /// not Hermitian, not positive semidefinite, or not unit-trace within
  /// `tol`.
  static QutritState mixed(const Eigen::Matrix3cd& rho, double tol = kStateTol);

  /// True when the state is stored as an amplitude vector.
  bool is_pure() const { return std::holds_alternative<Eigen::Vector3cd>(repr_); }

  /// Amplitudes of a pure state; throws std::logic_error for density-matrix
  /// states (use rho() instead).
  const Eigen::Vector3cd& amplitudes() const;

  /// Density matrix form; c c^dag for pure states.
  Eigen::Matrix3cd rho() const;

 private:
  explicit QutritState(Eigen::Vector3cd c) : repr_(std::move(c)) {}
  explicit QutritState(Eigen::Matrix3cd rho) : repr_(std::move(rho)) {}

  std::variant<Eigen::Vector3cd, Eigen::Matrix3cd> repr_;
};

/// Applies a 3x3 unitary to the state: amplitudes map to u*c, density
/// matrices to u*rho*u^dag. Non-unitary input (within `tol`) is rejected.
QutritState apply_unitary(const QutritState& state, const Eigen::Matrix3cd& u,
                          double tol = kStateTol);

struct ExtractOptions {
  /// Maximum Frobenius norm of rho^2 - rho for the state to count as pure.
  double purity_tol = 1e-6;
  /// Populations below this cannot anchor the relative phases; the phase
  /// reference then moves to the most populated basis state.
  double population_tol = 1e-6;
};

/// Amplitude moduli and relative phases of a (near-)pure state.
///
/// phase[reference] == 0 and phase[j] = arg(rho_{j,reference}) otherwise,
/// with the branch (-pi, pi]. The reference is |1,1> (index 1) unless its
/// population falls below ExtractOptions::population_tol, in which case the
/// most populated basis state anchors the phases and `reference` flags the
/// switch.
struct PureExtraction {
  std::array<double, 3> magnitude{};
  std::array<double, 3> phase{};
  int reference = 1;
  double purity_residual = 0.0;
};

/// Reads magnitudes and relative phases off a density matrix. Throws
/// std::domain_error (message carries the residual) when the purity residual
/// exceeds ExtractOptions::purity_tol.
PureExtraction extract_pure(const QutritState& state,
                            const ExtractOptions& opts = {});

}  // namespace biphoton
