#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace biphoton {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// 2x2 transformer of the (H, V) polarization modes. Wave plates are
/// unitary; the polarizer (a projector) and the balanced beam splitter
/// (an attenuation) are flagged non-unitary.
struct Jones2 {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  bool unitary = false;
};

/// Retarder parameters, both in radians: optical thickness `delta`
/// (pi/4 for a quarter-wave plate, pi/2 for a half-wave plate) and axis
/// angle `alpha` measured from the vertical axis.
///
/// Angle convention used across the library: all optic angles are measured
/// from V, with positive angles rotating V toward H, i.e. the direction at
/// angle g is (sin g, cos g) in (H, V) coordinates.
struct PlateSpec {
  double delta = 0.0;
  double alpha = 0.0;
};

/// 3x3 unitary action of a mode transformer on the amplitude vector
/// (c1, c2, c3); see lift_su2().
using Unitary3 = Eigen::Matrix3cd;

/// Analysis covector (u, v) of one detection arm: the detected mode operator
/// is B = u*a + v*b.
using ArmCovector = Eigen::RowVector2cd;

/// Wave plate [[t, r], [-conj(r), conj(t)]] with
///   t = cos(delta) + i sin(delta) cos(2 alpha),
///   r = i sin(delta) sin(2 alpha).
Jones2 waveplate(const PlateSpec& spec);

/// Quarter-wave plate at axis angle `chi` (radians): delta = pi/4.
Jones2 qwp(double chi);

/// Half-wave plate at axis angle `theta` (radians): delta = pi/2.
Jones2 hwp(double theta);

/// Projector [[0,0],[0,1]] transmitting the vertical component.
Jones2 polarizer_vertical();

/// Projector onto the linear polarization at angle `beta` (radians) from
/// vertical. A half-wave plate at theta followed by the vertical polarizer
/// measures the same fourth moments as polarizer(-2*theta) alone.
Jones2 polarizer(double beta);

/// Balanced non-polarizing beam splitter: one output port keeps 1/sqrt(2)
/// of each mode amplitude.
Jones2 beamsplitter();

/// Analysis covector of an arm built from a quarter-wave plate at `chi` and
/// a polarizer at `beta` behind the beam splitter (radians). This is the row
/// of the chain polarizer * qwp * beamsplitter along the polarizer's
/// transmission direction; the 1/sqrt(2) splitter factor is folded in.
ArmCovector arm_covector(double chi, double beta);

/// Same arm realized with the full element chain: vertical polarizer after
/// a half-wave plate at `theta` after a quarter-wave plate at `chi`
/// (radians). Equals arm_covector(chi, -2*theta) up to a global phase.
ArmCovector arm_covector_hwp(double chi, double theta);

/// Lifts a wave-plate-form unitary [[t, r], [-conj(r), conj(t)]] to its
/// action on the two-photon amplitudes:
///
///   [ t^2           sqrt(2) t r       r^2         ]
///   [ -sqrt(2) t r*  |t|^2 - |r|^2    sqrt(2) t* r ]
///   [ r*^2          -sqrt(2) t* r*    t*^2        ]
///
/// This is the symmetric two-fold tensor power of j in the basis
/// (|2,0>, |1,1>, |0,2>); lift_su2(j1*j2) == lift_su2(j1)*lift_su2(j2).
/// Inputs that are not unitary or not of the canonical form (within `tol`)
/// are rejected.
Unitary3 lift_su2(const Jones2& j, double tol = 1e-9);

}  // namespace biphoton
