#include "biphoton/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "biphoton/fock.hpp"
#include "biphoton/jones.hpp"
#include "biphoton/random.hpp"

namespace biphoton {

std::array<MeasurementSetting, 9> table1_settings() {
  return {{
      {0, 90, 0, 90, 1},
      {0, 90, 0, 0, 2},
      {0, 0, 0, 0, 3},
      {45, 0, 0, 0, 4},
      {45, -45, 0, 0, 5},
      {45, -45, 0, 90, 6},
      {45, 0, 0, 90, 7},
      {-45, 22.5, -45, 22.5, 8},
      {45, 45, 45, -45, 9},
  }};
}

namespace {

bool same_angles(const MeasurementSetting& s, const MeasurementSetting& row) {
  const double tol = 1e-9;
  return std::abs(s.chi1_deg - row.chi1_deg) <= tol &&
         std::abs(s.beta1_deg - row.beta1_deg) <= tol &&
         std::abs(s.chi2_deg - row.chi2_deg) <= tol &&
         std::abs(s.beta2_deg - row.beta2_deg) <= tol;
}

}  // namespace

double predicted_moment(const MeasurementSetting& setting,
                        const CoherencyMatrix& k) {
  const auto rows = table1_settings();
  if (setting.label < 1 || setting.label > 9 ||
      !same_angles(setting, rows[static_cast<std::size_t>(setting.label - 1)])) {
    throw std::invalid_argument(
        "setting is not a protocol row; evaluate arbitrary settings with "
        "simulate(), which uses the operator oracle");
  }
  switch (setting.label) {
    case 1:
      return k.A / 4.0;
    case 2:
      return k.C / 4.0;
    case 3:
      return k.B / 4.0;
    case 4:
      return (k.B + k.C + 2.0 * k.F.imag()) / 8.0;
    case 5:
      return (k.B + k.C - 2.0 * k.F.real()) / 8.0;
    case 6:
      return (k.A + k.C - 2.0 * k.D.real()) / 8.0;
    case 7:
      return (k.A + k.C + 2.0 * k.D.imag()) / 8.0;
    case 8: {
      // Both arms carry the same elliptic analyzer (a + b up to an eighth-turn
      // phase), so D and F enter alongside Im E.
      const double cross =
          k.D.real() - k.D.imag() + k.F.real() - k.F.imag();
      return (k.A + k.B + 4.0 * k.C - 2.0 * k.E.imag() +
              2.0 * std::numbers::sqrt2 * cross) /
             16.0;
    }
    case 9:
      return (k.A + k.B - 2.0 * k.E.real()) / 16.0;
    default:
      throw std::logic_error("unreachable");
  }
}

MomentVector simulate(const QutritState& state,
                      std::span<const MeasurementSetting> settings,
                      const std::optional<PoissonNoise>& noise) {
  if (noise && noise->total_per_setting < 1) {
    throw std::invalid_argument("total_per_setting must be positive");
  }

  const FockSpace space = build_space(2);
  const FockState fock = embed_qutrit(state, space);

  MomentVector out;
  out.rates.reserve(settings.size());
  for (const auto& s : settings) {
    const ArmCovector arm1 =
        arm_covector(deg_to_rad(s.chi1_deg), deg_to_rad(s.beta1_deg));
    const ArmCovector arm2 =
        arm_covector(deg_to_rad(s.chi2_deg), deg_to_rad(s.beta2_deg));
    out.rates.push_back(coincidence_rate(fock, arm1, arm2));
  }

  if (noise) {
    const double total = static_cast<double>(noise->total_per_setting);
    std::vector<long long> counts(out.rates.size());
    for (std::size_t i = 0; i < out.rates.size(); ++i) {
      Rng rng(split_seed(noise->seed, i));
      counts[i] = sample_poisson(rng, total * std::max(0.0, out.rates[i]));
      out.rates[i] = static_cast<double>(counts[i]) / total;
    }
    out.counts = std::move(counts);
    out.total_per_setting = noise->total_per_setting;
    out.seed = noise->seed;
  }
  return out;
}

ReconstructionResult invert(const MomentVector& m, const InvertOptions& opts) {
  const auto& r = m.rates;
  if (r.size() != 9 && !(r.size() == 7 && opts.pure_hypothesis)) {
    throw std::invalid_argument(
        "expected 9 rates (or 7 with the pure hypothesis), got " +
        std::to_string(r.size()));
  }
  // Exact oracle rates can undershoot zero by roundoff on dark settings.
  for (double x : r) {
    if (!std::isfinite(x) || x < -1e-12) {
      throw std::invalid_argument("rates must be finite and non-negative");
    }
  }

  // Absolute rates carry an unknown detection constant; fix the scale by
  // enforcing A + B + 2C = 2 on the intensity rows.
  const double raw_sum = 4.0 * r[0] + 4.0 * r[2] + 8.0 * r[1];
  if (raw_sum <= 0.0) {
    throw std::invalid_argument(
        "all intensity moments vanish; the scale cannot be fixed");
  }
  const double scale = 2.0 / raw_sum;
  auto rate = [&](int row) {
    return scale * std::max(0.0, r[static_cast<std::size_t>(row - 1)]);
  };

  ReconstructionResult out;
  out.scale_factor = scale;
  CoherencyMatrix& k = out.k4;
  k.A = 4.0 * rate(1);
  k.C = 4.0 * rate(2);
  k.B = 4.0 * rate(3);
  const double im_f = (8.0 * rate(4) - k.B - k.C) / 2.0;
  const double re_f = (k.B + k.C - 8.0 * rate(5)) / 2.0;
  const double re_d = (k.A + k.C - 8.0 * rate(6)) / 2.0;
  const double im_d = (8.0 * rate(7) - k.A - k.C) / 2.0;
  k.D = {re_d, im_d};
  k.F = {re_f, im_f};

  auto e_from_rows89 = [&]() {
    const double re_e = (k.A + k.B - 16.0 * rate(9)) / 2.0;
    const double cross = re_d - im_d + re_f - im_f;
    const double im_e = (k.A + k.B + 4.0 * k.C +
                         2.0 * std::numbers::sqrt2 * cross - 16.0 * rate(8)) /
                        2.0;
    k.E = {re_e, im_e};
  };

  if (opts.pure_hypothesis) {
    if (std::abs(k.D) * std::abs(k.F) > opts.quotient_guard) {
      // Purity fixes E through E* = ABC / (DF).
      k.E = std::conj(k.A * k.B * k.C / (k.D * k.F));
    } else if (r.size() == 9) {
      e_from_rows89();
    } else {
      // Seven rates and a singular quotient: E is not measured by this data.
      out.e_undetermined = true;
      k.E = 0.0;
    }
  } else {
    e_from_rows89();
  }

  out.rho_raw = rho_from_k4(k, 1e-6);
  out.rho_physical = project_physical(out.rho_raw);
  out.residuals = check_constraints(k, /*pure_hypothesis=*/true);
  try {
    out.pure_extraction =
        extract_pure(QutritState::mixed(out.rho_physical, 1e-6), opts.extraction);
  } catch (const std::domain_error&) {
    out.pure_extraction = std::nullopt;
  }
  return out;
}

Eigen::Matrix3cd project_physical(const Eigen::Matrix3cd& rho_raw) {
  const Eigen::Matrix3cd hermitian = 0.5 * (rho_raw + rho_raw.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(hermitian);
  const Eigen::Vector3d lambda = es.eigenvalues();

  // Frobenius-nearest PSD unit-trace matrix: keep the eigenvectors and
  // project the spectrum onto the probability simplex (clip the negative
  // weight, shift the surviving eigenvalues to restore the trace).
  Eigen::Vector3d sorted = lambda;
  std::sort(sorted.data(), sorted.data() + 3, std::greater<double>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (int i = 0; i < 3; ++i) {
    cumulative += sorted(i);
    const double candidate = (cumulative - 1.0) / (i + 1);
    if (sorted(i) - candidate > 0.0) shift = candidate;
  }
  const Eigen::Vector3d clipped = (lambda.array() - shift).cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace biphoton
