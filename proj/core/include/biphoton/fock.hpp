#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "biphoton/jones.hpp"
#include "biphoton/state.hpp"

namespace biphoton {

/// One creation or annihilation operator on the H or V mode. `a` acts on H,
/// `b` on V.
enum class Ladder { CreateH, CreateV, AnnihilateH, AnnihilateV };

/// True when every creation operator precedes every annihilation operator.
bool is_normally_ordered(std::span<const Ladder> word);

/// Two-mode bosonic Fock space truncated at a total photon number.
///
/// Basis kets |nH, nV> are ordered by total photon number n, then by nH
/// ascending, so the layout is identical for every cutoff and the two-photon
/// sector always occupies indices 3..5:
///
///   (0,0) | (0,1) (1,0) | (0,2) (1,1) (2,0) | (0,3) ...
///
/// Dimension is (N+1)(N+2)/2 for cutoff N. The cutoff must be at least 2 so
/// the space can hold a photon pair. Immutable after construction; safe to
/// share across threads.
class FockSpace {
 public:
  explicit FockSpace(int max_total_photons);

  int cutoff() const { return cutoff_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

  /// Occupation pairs (nH, nV) in basis order.
  const std::vector<std::pair<int, int>>& basis() const { return basis_; }

  /// Index of |nH, nV>; throws std::out_of_range beyond the cutoff.
  int index_of(int n_h, int n_v) const;

  /// Matrix of a: a|nH,nV> = sqrt(nH)|nH-1,nV>. Creation operators are the
  /// adjoints of these.
  const Eigen::MatrixXcd& annihilate_h() const { return a_; }
  /// Matrix of b: b|nH,nV> = sqrt(nV)|nH,nV-1>.
  const Eigen::MatrixXcd& annihilate_v() const { return b_; }

  /// Matrix of one ladder operator.
  Eigen::MatrixXcd op(Ladder l) const;

 private:
  int cutoff_ = 0;
  std::vector<std::pair<int, int>> basis_;
  Eigen::MatrixXcd a_, b_;
};

/// Convenience factory mirroring FockSpace's constructor.
FockSpace build_space(int max_total_photons);

/// Density operator over a FockSpace basis. Supported on the two-photon
/// sector for embedded qutrits.
struct FockState {
  FockSpace space;
  Eigen::MatrixXcd rho;

  /// Hermiticity / positivity / unit-trace diagnostic, absolute tolerance.
  bool is_valid(double tol = 1e-9) const;
};

/// Places a qutrit on the two-photon sector of `space`: pure amplitudes c
/// give the rank-1 operator |psi><psi| with
/// psi = c1|2,0> + c2|1,1> + c3|0,2>.
FockState embed_qutrit(const QutritState& state, const FockSpace& space);

/// Tr(rho * Op(word)) for a normally ordered operator word, evaluated by
/// explicit matrix products. Rejects words that are not normally ordered.
/// Truncation is exact for photon-number-conserving words whenever the
/// cutoff is at least the photon number of the state.
std::complex<double> expect_moment(const FockState& state,
                                   std::span<const Ladder> word);

/// Coincidence rate <B1^dag B2^dag B1 B2> with Bi = ui*a + vi*b, the
/// two detection arms' mode operators. The observable is Hermitian, so the
/// result is real (the imaginary part, pure roundoff, is dropped).
double coincidence_rate(const FockState& state, const ArmCovector& arm1,
                        const ArmCovector& arm2);

}  // namespace biphoton
