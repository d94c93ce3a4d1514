#include "biphoton/coherency.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace biphoton {

namespace {

/// Inverse of the moment map, shared by rho_from_k4 and the diagnostics
/// (which must not throw on unphysical input).
Eigen::Matrix3cd rho_of(const CoherencyMatrix& k) {
  const double s2 = std::numbers::sqrt2;
  Eigen::Matrix3cd rho;
  rho(0, 0) = k.A / 2.0;
  rho(1, 1) = k.C;
  rho(2, 2) = k.B / 2.0;
  rho(0, 1) = std::conj(k.D) / s2;
  rho(0, 2) = std::conj(k.E) / 2.0;
  rho(1, 2) = std::conj(k.F) / s2;
  rho(1, 0) = std::conj(rho(0, 1));
  rho(2, 0) = std::conj(rho(0, 2));
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

}  // namespace

Eigen::Matrix3cd CoherencyMatrix::matrix() const {
  Eigen::Matrix3cd m;
  m(0, 0) = A;
  m(1, 1) = C;
  m(2, 2) = B;
  m(0, 1) = D;
  m(0, 2) = E;
  m(1, 2) = F;
  m(1, 0) = std::conj(D);
  m(2, 0) = std::conj(E);
  m(2, 1) = std::conj(F);
  return m;
}

std::vector<Ladder> defining_word(Moment m) {
  using L = Ladder;
  switch (m) {
    case Moment::A:
      return {L::CreateH, L::CreateH, L::AnnihilateH, L::AnnihilateH};
    case Moment::B:
      return {L::CreateV, L::CreateV, L::AnnihilateV, L::AnnihilateV};
    case Moment::C:
      return {L::CreateH, L::CreateV, L::AnnihilateH, L::AnnihilateV};
    case Moment::D:
      return {L::CreateH, L::CreateH, L::AnnihilateH, L::AnnihilateV};
    case Moment::E:
      return {L::CreateH, L::CreateH, L::AnnihilateV, L::AnnihilateV};
    case Moment::F:
      return {L::CreateH, L::CreateV, L::AnnihilateV, L::AnnihilateV};
  }
  throw std::invalid_argument("unknown moment");
}

CoherencyMatrix k4_from_matrix(const Eigen::Matrix3cd& rho) {
  const double s2 = std::numbers::sqrt2;
  CoherencyMatrix k;
  k.A = 2.0 * rho(0, 0).real();
  k.C = rho(1, 1).real();
  k.B = 2.0 * rho(2, 2).real();
  k.D = s2 * std::conj(rho(0, 1));
  k.E = 2.0 * std::conj(rho(0, 2));
  k.F = s2 * std::conj(rho(1, 2));
  return k;
}

CoherencyMatrix k4_from_rho(const QutritState& state) {
  return k4_from_matrix(state.rho());
}

Eigen::Matrix3cd rho_from_k4(const CoherencyMatrix& k, double trace_tol) {
  const double residual = std::abs(k.A + k.B + 2.0 * k.C - 2.0);
  if (residual > trace_tol) {
    std::ostringstream msg;
    msg << "coherency matrix violates A + B + 2C = 2 by " << residual;
    throw std::invalid_argument(msg.str());
  }
  return rho_of(k);
}

bool ConstraintReport::passes(double normalization_tol, double purity_tol) const {
  if (normalization > normalization_tol) return false;
  if (!pure_hypothesis) return true;
  for (const auto& r : {purity, f_identity, d_identity, e_quotient}) {
    if (r && *r > purity_tol) return false;
  }
  return true;
}

ConstraintReport check_constraints(const CoherencyMatrix& k,
                                   bool pure_hypothesis,
                                   double quotient_guard) {
  ConstraintReport report;
  report.normalization = std::abs(k.A + k.B + 2.0 * k.C - 2.0);
  report.pure_hypothesis = pure_hypothesis;
  if (!pure_hypothesis) return report;

  const Eigen::Matrix3cd rho = rho_of(k);
  report.purity = (rho * rho - rho).norm();
  report.f_identity = std::abs(std::norm(k.F) - k.B * k.C);
  report.d_identity = std::abs(std::norm(k.D) - k.C * (2.0 - k.B - 2.0 * k.C));
  if (std::abs(k.D) * std::abs(k.F) > quotient_guard) {
    report.e_quotient =
        std::abs(std::conj(k.E) - k.A * k.B * k.C / (k.D * k.F));
  }
  return report;
}

}  // namespace biphoton
