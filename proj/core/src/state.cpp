#include "biphoton/state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace biphoton {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

QutritState QutritState::pure(const Eigen::Vector3cd& amplitudes, double tol) {
  const double norm_sq = amplitudes.squaredNorm();
  if (std::abs(norm_sq - 1.0) > tol) {
    std::ostringstream msg;
    msg << "amplitudes are not normalized: sum |c|^2 = " << norm_sq;
    throw std::invalid_argument(msg.str());
  }
  return QutritState(amplitudes);
}

QutritState QutritState::mixed(const Eigen::Matrix3cd& rho, double tol) {
  require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= tol,
          "density matrix is not Hermitian");
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << trace << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(0.5 * (rho + rho.adjoint()));
  require(es.eigenvalues().minCoeff() >= -tol,
          "density matrix is not positive semidefinite");
  return QutritState(rho);
}

const Eigen::Vector3cd& QutritState::amplitudes() const {
  if (!is_pure()) {
    throw std::logic_error("state is held as a density matrix; use rho()");
  }
  return std::get<Eigen::Vector3cd>(repr_);
}

Eigen::Matrix3cd QutritState::rho() const {
  if (is_pure()) {
    const auto& c = std::get<Eigen::Vector3cd>(repr_);
    return c * c.adjoint();
  }
  return std::get<Eigen::Matrix3cd>(repr_);
}

QutritState apply_unitary(const QutritState& state, const Eigen::Matrix3cd& u,
                          double tol) {
  const double unitarity =
      (u.adjoint() * u - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
  if (unitarity > tol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: |u^dag u - I|_max = " << unitarity;
    throw std::invalid_argument(msg.str());
  }
  if (state.is_pure()) {
    // u*c stays normalized up to roundoff.
    Eigen::Vector3cd c = u * state.amplitudes();
    return QutritState::pure(c, 1e-6);
  }
  return QutritState::mixed(u * state.rho() * u.adjoint(), 1e-6);
}

PureExtraction extract_pure(const QutritState& state,
                            const ExtractOptions& opts) {
  const Eigen::Matrix3cd rho = state.rho();
  const double residual = (rho * rho - rho).norm();
  if (residual > opts.purity_tol) {
    std::ostringstream msg;
    msg << "state is not pure: |rho^2 - rho|_F = " << residual
        << " exceeds threshold " << opts.purity_tol;
    throw std::domain_error(msg.str());
  }

  PureExtraction out;
  out.purity_residual = residual;
  for (int j = 0; j < 3; ++j) {
    out.magnitude[static_cast<std::size_t>(j)] =
        std::sqrt(std::max(0.0, rho(j, j).real()));
  }

  int ref = 1;
  if (rho(1, 1).real() < opts.population_tol) {
    // |1,1> carries no weight: anchor the phases on the most populated state.
    ref = 0;
    for (int j = 1; j < 3; ++j) {
      if (rho(j, j).real() > rho(ref, ref).real()) ref = j;
    }
  }
  out.reference = ref;
  for (int j = 0; j < 3; ++j) {
    double phi = j == ref ? 0.0 : std::arg(rho(j, ref));
    // std::arg can land on -pi through a negative-zero imaginary part; keep
    // the branch (-pi, pi].
    if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
    out.phase[static_cast<std::size_t>(j)] = phi;
  }
  return out;
}

}  // namespace biphoton
