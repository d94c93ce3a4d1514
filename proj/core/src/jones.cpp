#include "biphoton/jones.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace biphoton {

namespace {

using std::complex_literals::operator""i;

/// Transmission direction of a polarizer at angle `beta` from vertical,
/// in (H, V) coordinates. Positive beta rotates V toward H; this is the one
/// orientation convention that reproduces every protocol row.
Eigen::Vector2d transmission_axis(double beta) {
  return {std::sin(beta), std::cos(beta)};
}

}  // namespace

Jones2 waveplate(const PlateSpec& spec) {
  const std::complex<double> t =
      std::cos(spec.delta) + 1.0i * std::sin(spec.delta) * std::cos(2.0 * spec.alpha);
  const std::complex<double> r = 1.0i * std::sin(spec.delta) * std::sin(2.0 * spec.alpha);
  Jones2 j;
  j.m << t, r, -std::conj(r), std::conj(t);
  j.unitary = true;
  return j;
}

Jones2 qwp(double chi) { return waveplate({std::numbers::pi / 4.0, chi}); }

Jones2 hwp(double theta) { return waveplate({std::numbers::pi / 2.0, theta}); }

Jones2 polarizer_vertical() {
  Jones2 j;
  j.m << 0, 0, 0, 1;
  j.unitary = false;
  return j;
}

Jones2 polarizer(double beta) {
  const Eigen::Vector2d e = transmission_axis(beta);
  Jones2 j;
  j.m = (e * e.transpose()).cast<std::complex<double>>();
  j.unitary = false;
  return j;
}

Jones2 beamsplitter() {
  Jones2 j;
  j.m = Eigen::Matrix2cd::Identity() / std::numbers::sqrt2;
  j.unitary = false;
  return j;
}

ArmCovector arm_covector(double chi, double beta) {
  // The polarizer projects onto its transmission axis, so the detected mode
  // is the axis row of the chain. (The literal bottom row of the projector
  // product is cos(beta) times this and degenerates at beta = +-90 deg.)
  const Eigen::RowVector2cd e =
      transmission_axis(beta).transpose().cast<std::complex<double>>();
  return e * qwp(chi).m * beamsplitter().m;
}

ArmCovector arm_covector_hwp(double chi, double theta) {
  // Chain ends in the vertical polarizer, whose transmitted mode is the
  // bottom row.
  return (hwp(theta).m * qwp(chi).m * beamsplitter().m).row(1);
}

Unitary3 lift_su2(const Jones2& j, double tol) {
  const std::complex<double> t = j.m(0, 0);
  const std::complex<double> r = j.m(0, 1);
  const double form_error =
      std::max(std::abs(j.m(1, 0) + std::conj(r)), std::abs(j.m(1, 1) - std::conj(t)));
  const double unitarity = std::abs(std::norm(t) + std::norm(r) - 1.0);
  if (!j.unitary || form_error > tol || unitarity > tol) {
    std::ostringstream msg;
    msg << "lift_su2 requires a unitary of the form [[t, r], [-r*, t*]]; "
        << "form error " << form_error << ", |t|^2+|r|^2 off by " << unitarity;
    throw std::invalid_argument(msg.str());
  }

  const std::complex<double> tc = std::conj(t);
  const std::complex<double> rc = std::conj(r);
  const double s2 = std::numbers::sqrt2;
  Unitary3 g;
  g << t * t, s2 * t * r, r * r,
      -s2 * t * rc, std::norm(t) - std::norm(r), s2 * tc * r,
      rc * rc, -s2 * tc * rc, tc * tc;
  return g;
}

}  // namespace biphoton
