#include "biphoton/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace biphoton {

bool is_normally_ordered(std::span<const Ladder> word) {
  bool seen_annihilator = false;
  for (Ladder l : word) {
    const bool creates = l == Ladder::CreateH || l == Ladder::CreateV;
    if (creates && seen_annihilator) return false;
    if (!creates) seen_annihilator = true;
  }
  return true;
}

FockSpace::FockSpace(int max_total_photons) : cutoff_(max_total_photons) {
  if (max_total_photons < 2) {
    throw std::invalid_argument(
        "Fock cutoff must be at least 2 to hold a photon pair");
  }
  for (int n = 0; n <= cutoff_; ++n) {
    for (int n_h = 0; n_h <= n; ++n_h) {
      basis_.emplace_back(n_h, n - n_h);
    }
  }

  const int dim = dimension();
  a_ = Eigen::MatrixXcd::Zero(dim, dim);
  b_ = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto [n_h, n_v] = basis_[static_cast<std::size_t>(col)];
    if (n_h > 0) a_(index_of(n_h - 1, n_v), col) = std::sqrt(double(n_h));
    if (n_v > 0) b_(index_of(n_h, n_v - 1), col) = std::sqrt(double(n_v));
  }
}

int FockSpace::index_of(int n_h, int n_v) const {
  const int n = n_h + n_v;
  if (n_h < 0 || n_v < 0 || n > cutoff_) {
    std::ostringstream msg;
    msg << "|" << n_h << "," << n_v << "> is outside the cutoff " << cutoff_;
    throw std::out_of_range(msg.str());
  }
  // Sector n starts after the n(n+1)/2 lower states; nH indexes within it.
  return n * (n + 1) / 2 + n_h;
}

Eigen::MatrixXcd FockSpace::op(Ladder l) const {
  switch (l) {
    case Ladder::CreateH:
      return a_.adjoint();
    case Ladder::CreateV:
      return b_.adjoint();
    case Ladder::AnnihilateH:
      return a_;
    case Ladder::AnnihilateV:
      return b_;
  }
  throw std::invalid_argument("unknown ladder operator");
}

FockSpace build_space(int max_total_photons) {
  return FockSpace(max_total_photons);
}

bool FockState::is_valid(double tol) const {
  if (rho.rows() != space.dimension() || rho.cols() != space.dimension()) {
    return false;
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
  return es.eigenvalues().minCoeff() >= -tol;
}

FockState embed_qutrit(const QutritState& state, const FockSpace& space) {
  const int dim = space.dimension();
  const std::array<int, 3> sector = {space.index_of(2, 0), space.index_of(1, 1),
                                     space.index_of(0, 2)};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::Matrix3cd rho3 = state.rho();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      rho(sector[static_cast<std::size_t>(i)], sector[static_cast<std::size_t>(j)]) =
          rho3(i, j);
    }
  }
  return {space, std::move(rho)};
}

std::complex<double> expect_moment(const FockState& state,
                                   std::span<const Ladder> word) {
  if (!is_normally_ordered(word)) {
    throw std::invalid_argument(
        "operator word is not normally ordered (creations must precede "
        "annihilations)");
  }
  const int dim = state.space.dimension();
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
  for (Ladder l : word) op *= state.space.op(l);
  return (state.rho * op).trace();
}

double coincidence_rate(const FockState& state, const ArmCovector& arm1,
                        const ArmCovector& arm2) {
  const Eigen::MatrixXcd& a = state.space.annihilate_h();
  const Eigen::MatrixXcd& b = state.space.annihilate_v();
  const Eigen::MatrixXcd b1 = arm1(0) * a + arm1(1) * b;
  const Eigen::MatrixXcd b2 = arm2(0) * a + arm2(1) * b;
  const Eigen::MatrixXcd op = b1.adjoint() * b2.adjoint() * b1 * b2;
  return (state.rho * op).trace().real();
}

}  // namespace biphoton
