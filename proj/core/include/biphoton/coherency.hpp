#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "biphoton/fock.hpp"
#include "biphoton/state.hpp"

namespace biphoton {

/// The six normally ordered fourth-order field moments
///
///   A = <a+ a+ a a>   B = <b+ b+ b b>   C = <a+ b+ a b>
///   D = <a+ a+ a b>   E = <a+ a+ b b>   F = <a+ b+ b b>
///
/// arranged as the Hermitian matrix [[A, D, E], [D*, C, F], [E*, F*, B]].
/// Only the upper triangle is stored; the lower triangle is derived by
/// conjugation so the two can never disagree.
struct CoherencyMatrix {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  std::complex<double> D;
  std::complex<double> E;
  std::complex<double> F;

  Eigen::Matrix3cd matrix() const;
};

enum class Moment { A, B, C, D, E, F };

/// Defining operator word of a moment, e.g. Moment::D -> a+ a+ a b.
std::vector<Ladder> defining_word(Moment m);

/// Moments of a state:
///   A = 2 rho11,  C = rho22,  B = 2 rho33,
///   D = sqrt(2) conj(rho12),  E = 2 conj(rho13),  F = sqrt(2) conj(rho23).
/// The map is linear in rho, so it holds for mixed states as well.
CoherencyMatrix k4_from_rho(const QutritState& state);

/// Same linear map on a raw matrix, without state validation (used by
/// diagnostics on possibly unphysical input).
CoherencyMatrix k4_from_matrix(const Eigen::Matrix3cd& rho);

/// Raw linear inversion of k4_from_rho. Does not enforce positivity.
/// Throws std::invalid_argument (message carries the residual) when
/// |A + B + 2C - 2| exceeds `trace_tol`.
Eigen::Matrix3cd rho_from_k4(const CoherencyMatrix& k, double trace_tol = 1e-8);

/// Residuals of the algebraic constraints on a coherency matrix. These are
/// diagnostics: computing them never fails.
struct ConstraintReport {
  /// |A + B + 2C - 2|; zero for any unit-trace state.
  double normalization = 0.0;
  bool pure_hypothesis = false;
  /// Frobenius norm of rho^2 - rho; zero only for pure states.
  std::optional<double> purity;
  /// | |F|^2 - B C |.
  std::optional<double> f_identity;
  /// | |D|^2 - C (2 - B - 2C) |.
  std::optional<double> d_identity;
  /// | E* - A B C / (D F) |, evaluated only when |D||F| exceeds the guard
  /// (the quotient is singular when any amplitude vanishes).
  std::optional<double> e_quotient;

  bool passes(double normalization_tol, double purity_tol) const;
};

/// Evaluates the constraint residuals. With `pure_hypothesis` the purity
/// and moment-identity residuals are filled in; the quotient identity is
/// skipped unless |D||F| > `quotient_guard`.
ConstraintReport check_constraints(const CoherencyMatrix& k,
                                   bool pure_hypothesis,
                                   double quotient_guard = 1e-8);

}  // namespace biphoton
