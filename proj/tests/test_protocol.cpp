#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "biphoton/coherency.hpp"
#include "biphoton/fock.hpp"
#include "biphoton/jones.hpp"
#include "biphoton/protocol.hpp"
#include "biphoton/random.hpp"
#include "test_helpers.hpp"

using namespace biphoton;
using biphoton::testing::max_abs_diff;
using std::complex_literals::operator""i;

namespace {

constexpr double kInvS2 = 1.0 / std::numbers::sqrt2;

double oracle_rate(const QutritState& state, const MeasurementSetting& s) {
  const FockState f = embed_qutrit(state, build_space(2));
  return coincidence_rate(
      f, arm_covector(deg_to_rad(s.chi1_deg), deg_to_rad(s.beta1_deg)),
      arm_covector(deg_to_rad(s.chi2_deg), deg_to_rad(s.beta2_deg)));
}

}  // namespace

TEST_CASE("settings registry holds the nine protocol rows") {
  const auto rows = table1_settings();
  REQUIRE(rows.size() == 9);
  auto expect_row = [&](int label, double chi1, double beta1, double chi2,
                        double beta2) {
    const auto& s = rows[static_cast<std::size_t>(label - 1)];
    CHECK(s.label == label);
    CHECK(s.chi1_deg == chi1);
    CHECK(s.beta1_deg == beta1);
    CHECK(s.chi2_deg == chi2);
    CHECK(s.beta2_deg == beta2);
  };
  expect_row(1, 0, 90, 0, 90);
  expect_row(2, 0, 90, 0, 0);
  expect_row(3, 0, 0, 0, 0);
  expect_row(4, 45, 0, 0, 0);
  expect_row(5, 45, -45, 0, 0);
  expect_row(6, 45, -45, 0, 90);
  expect_row(7, 45, 0, 0, 90);
  expect_row(8, -45, 22.5, -45, 22.5);
  expect_row(9, 45, 45, 45, -45);
}

TEST_CASE("closed forms reproduce the oracle on every row") {
  // This is the ground-truth gate for the row formulas: each closed form in
  // predicted_moment must equal the operator-oracle coincidence rate for
  // arbitrary states.
  Rng rng(211);
  const auto rows = table1_settings();
  for (int trial = 0; trial < 100; ++trial) {
    const QutritState state =
        trial % 3 == 2 ? random_mixed_state(rng) : random_pure_state(rng);
    const CoherencyMatrix k = k4_from_rho(state);
    for (const auto& row : rows) {
      CHECK(std::abs(predicted_moment(row, k) - oracle_rate(state, row)) <
            1e-12);
    }
  }
}

TEST_CASE("row values on reference states") {
  const auto rows = table1_settings();

  SUBCASE("row 1 on |2,0| reads A/4 = 1/2") {
    const CoherencyMatrix k = k4_from_rho(QutritState::pure({1.0, 0.0, 0.0}));
    CHECK(predicted_moment(rows[0], k) == doctest::Approx(0.5));
  }
  SUBCASE("row 3 on |0,2> reads B/4 = 1/2") {
    const CoherencyMatrix k = k4_from_rho(QutritState::pure({0.0, 0.0, 1.0}));
    CHECK(predicted_moment(rows[2], k) == doctest::Approx(0.5));
  }
  SUBCASE("row 6 on an even |2,0>,|1,1> superposition") {
    const QutritState state = QutritState::pure({kInvS2, kInvS2, 0.0});
    const CoherencyMatrix k = k4_from_rho(state);
    CHECK(k.A == doctest::Approx(1.0));
    CHECK(k.C == doctest::Approx(0.5));
    CHECK(k.D.real() == doctest::Approx(kInvS2));
    const double expected = (1.5 - std::numbers::sqrt2) / 8.0;
    CHECK(predicted_moment(rows[5], k) == doctest::Approx(expected));
    CHECK(oracle_rate(state, rows[5]) == doctest::Approx(expected));
  }
  SUBCASE("non-protocol settings are turned away") {
    MeasurementSetting odd{10, 20, 30, 40, 0};
    const CoherencyMatrix k = k4_from_rho(QutritState::pure({1.0, 0.0, 0.0}));
    CHECK_THROWS_AS(predicted_moment(odd, k), std::invalid_argument);
    MeasurementSetting tampered = rows[3];
    tampered.beta2_deg += 5.0;
    CHECK_THROWS_AS(predicted_moment(tampered, k), std::invalid_argument);
  }
}

TEST_CASE("the worked analyzer pair gives (A + C - 2 Re D)/8") {
  // One arm selects H (chi=0, polarizer at 90deg; equivalently a half-wave
  // plate at 45deg before the vertical polarizer), the other holds an
  // elliptic analyzer (chi=45deg, polarizer at -45deg, i.e. theta=22.5deg).
  Rng rng(223);
  for (int trial = 0; trial < 50; ++trial) {
    const QutritState state = random_pure_state(rng);
    const CoherencyMatrix k = k4_from_rho(state);
    const double expected = (k.A + k.C - 2.0 * k.D.real()) / 8.0;

    const MeasurementSetting as_measured{0, -90, 45, -45, 0};
    CHECK(std::abs(oracle_rate(state, as_measured) - expected) < 1e-12);

    // The same arms through the full half-wave-plate chains.
    const FockState f = embed_qutrit(state, build_space(2));
    const double via_hwp = coincidence_rate(
        f, arm_covector_hwp(0.0, deg_to_rad(45.0)),
        arm_covector_hwp(deg_to_rad(45.0), deg_to_rad(22.5)));
    CHECK(std::abs(via_hwp - expected) < 1e-12);
  }
}

TEST_CASE("rows are arm-swap invariant") {
  Rng rng(227);
  for (int trial = 0; trial < 20; ++trial) {
    const QutritState state = random_pure_state(rng);
    for (const auto& row : table1_settings()) {
      MeasurementSetting swapped{row.chi2_deg, row.beta2_deg, row.chi1_deg,
                                 row.beta1_deg, 0};
      CHECK(std::abs(oracle_rate(state, row) - oracle_rate(state, swapped)) <
            1e-12);
    }
  }
}

TEST_CASE("rows 8-9 genuinely need the asymmetric forms") {
  // On (|2,0> + |0,2>)/sqrt(2) the oracle puts both E rows at 1/8 and 0;
  // the A+C-style guesses would give 1/16 and -1/16 (the latter is not even
  // a rate).
  const QutritState state = QutritState::pure({kInvS2, 0.0, kInvS2});
  const auto rows = table1_settings();
  const CoherencyMatrix k = k4_from_rho(state);
  CHECK(oracle_rate(state, rows[7]) == doctest::Approx(0.125));
  CHECK(oracle_rate(state, rows[8]) == doctest::Approx(0.0));
  CHECK((k.A + k.C - 2.0 * k.E.imag()) / 16.0 == doctest::Approx(0.0625));
  CHECK((k.A + k.C - 2.0 * k.E.real()) / 16.0 == doctest::Approx(-0.0625));
}

TEST_CASE("exact simulation of |0,2> over the protocol") {
  const auto rates =
      simulate(QutritState::pure({0.0, 0.0, 1.0}), table1_settings());
  REQUIRE(rates.rates.size() == 9);
  const double expected[] = {0.0, 0.0, 0.5, 0.25, 0.25, 0.0, 0.0, 0.125, 0.125};
  for (int i = 0; i < 9; ++i) {
    CHECK(rates.rates[static_cast<std::size_t>(i)] ==
          doctest::Approx(expected[i]).epsilon(1e-12));
  }
  CHECK_FALSE(rates.counts.has_value());
}

TEST_CASE("poisson sampling") {
  const QutritState state = QutritState::pure({0.5, 0.5i, kInvS2});
  const auto settings = table1_settings();

  SUBCASE("identical seeds give identical counts") {
    const auto m1 = simulate(state, settings, PoissonNoise{100000, 42});
    const auto m2 = simulate(state, settings, PoissonNoise{100000, 42});
    CHECK(*m1.counts == *m2.counts);
    CHECK(m1.rates == m2.rates);
  }
  SUBCASE("different seeds give different counts") {
    const auto m1 = simulate(state, settings, PoissonNoise{100000, 42});
    const auto m2 = simulate(state, settings, PoissonNoise{100000, 43});
    CHECK(*m1.counts != *m2.counts);
  }
  SUBCASE("frequencies sit within five sigma at a million counts") {
    const long long total = 1000000;
    const auto exact = simulate(state, settings);
    const auto noisy = simulate(state, settings, PoissonNoise{total, 7});
    for (std::size_t i = 0; i < 9; ++i) {
      const double rate = exact.rates[i];
      const double sigma = std::sqrt(rate / static_cast<double>(total));
      CHECK(std::abs(noisy.rates[i] - rate) <= 5.0 * sigma + 1e-12);
    }
  }
  SUBCASE("non-positive totals are rejected") {
    CHECK_THROWS_AS(simulate(state, settings, PoissonNoise{0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate(state, settings, PoissonNoise{-5, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("poisson sampler statistics") {
  // Mean and variance at both ends of the small/large-mean switch.
  for (double mean : {3.0, 25.0, 80.0, 2000.0}) {
    Rng rng(301);
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(sample_poisson(rng, mean));
      sum += x;
      sum_sq += x * x;
    }
    const double avg = sum / n;
    const double var = sum_sq / n - avg * avg;
    CHECK(std::abs(avg - mean) < 5.0 * std::sqrt(mean / n));
    CHECK(std::abs(var - mean) < 0.1 * mean);
  }
  Rng rng(5);
  CHECK(sample_poisson(rng, 0.0) == 0);
}

TEST_CASE("noiseless tomography round trip") {
  Rng rng(233);
  const auto settings = table1_settings();
  for (int trial = 0; trial < 100; ++trial) {
    const QutritState state =
        trial % 2 ? random_pure_state(rng) : random_mixed_state(rng);
    const ReconstructionResult rec = invert(simulate(state, settings));
    CHECK((rec.rho_raw - state.rho()).norm() < 1e-10);
    CHECK((rec.rho_physical - state.rho()).norm() < 1e-10);
  }
}

TEST_CASE("reconstruction from hand-built rates") {
  // Rates of (|2,0> + |0,2>)/sqrt(2): intensity rows 1/4, 0, 1/4; F = D = 0
  // rows; E = 1 leaves row 9 dark and row 8 at 1/8.
  MomentVector m;
  m.rates = {0.25, 0.0, 0.25, 0.125, 0.125, 0.125, 0.125, 0.125, 0.0};
  const ReconstructionResult rec = invert(m);
  CHECK(rec.k4.A == doctest::Approx(1.0));
  CHECK(rec.k4.B == doctest::Approx(1.0));
  CHECK(rec.k4.C == doctest::Approx(0.0));
  CHECK(std::abs(rec.k4.E - 1.0) < 1e-12);
  const Eigen::Vector3cd c{kInvS2, 0.0, kInvS2};
  CHECK(max_abs_diff(rec.rho_raw, c * c.adjoint()) < 1e-12);
}

TEST_CASE("pure-hypothesis reconstruction") {
  const auto settings = table1_settings();
  Rng rng(239);

  SUBCASE("seven rates suffice when D and F are alive") {
    for (int trial = 0; trial < 50; ++trial) {
      const QutritState state = random_pure_state(rng);
      MomentVector nine = simulate(state, settings);
      MomentVector seven;
      seven.rates.assign(nine.rates.begin(), nine.rates.begin() + 7);
      const ReconstructionResult rec =
          invert(seven, {.pure_hypothesis = true});
      if (rec.e_undetermined) continue;  // razor-thin D or F can occur
      CHECK((rec.rho_raw - state.rho()).norm() < 1e-8);
    }
  }
  SUBCASE("nine rates under the pure hypothesis match the plain inversion") {
    const QutritState state = random_pure_state(rng);
    const MomentVector nine = simulate(state, settings);
    const ReconstructionResult pure_rec =
        invert(nine, {.pure_hypothesis = true});
    CHECK((pure_rec.rho_raw - state.rho()).norm() < 1e-9);
  }
  SUBCASE("vanishing D and F push E onto rows 8-9, or flag it with 7 rates") {
    const QutritState state = QutritState::pure({kInvS2, 0.0, kInvS2});
    const MomentVector nine = simulate(state, settings);
    const ReconstructionResult with_fallback =
        invert(nine, {.pure_hypothesis = true});
    CHECK_FALSE(with_fallback.e_undetermined);
    CHECK(std::abs(with_fallback.k4.E - 1.0) < 1e-10);

    MomentVector seven;
    seven.rates.assign(nine.rates.begin(), nine.rates.begin() + 7);
    const ReconstructionResult undetermined =
        invert(seven, {.pure_hypothesis = true});
    CHECK(undetermined.e_undetermined);
    CHECK(std::abs(undetermined.k4.E) == 0.0);
  }
  SUBCASE("seven rates without the hypothesis are rejected") {
    MomentVector seven;
    seven.rates.assign(7, 0.1);
    CHECK_THROWS_AS(invert(seven), std::invalid_argument);
  }
}

TEST_CASE("inversion rejects bad input") {
  MomentVector m;
  m.rates = {0.25, 0.0, 0.25, 0.125, 0.125, 0.125, 0.125, 0.125, -0.01};
  CHECK_THROWS_AS(invert(m), std::invalid_argument);
  m.rates.assign(9, 0.0);
  CHECK_THROWS_AS(invert(m), std::invalid_argument);

  // Roundoff-negative dark settings from the exact oracle pass through.
  m.rates = {0.25, -1e-15, 0.25, 0.125, 0.125, 0.125, 0.125, 0.125, 0.0};
  CHECK(invert(m).k4.C == doctest::Approx(0.0));
}

TEST_CASE("inversion is a two-sided inverse of the closed forms") {
  // Whatever physical rates go in (at any overall scale), the reconstructed
  // moments must reproduce them through the row forms after rescaling.
  Rng rng(269);
  std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
  const auto rows = table1_settings();
  for (int trial = 0; trial < 30; ++trial) {
    const QutritState state =
        trial % 2 ? random_pure_state(rng) : random_mixed_state(rng);
    MomentVector m = simulate(state, rows);
    const double gain = scale_dist(rng);
    for (double& r : m.rates) r *= gain;
    const ReconstructionResult rec = invert(m);
    for (const auto& row : rows) {
      const double measured = m.rates[static_cast<std::size_t>(row.label - 1)];
      CHECK(predicted_moment(row, rec.k4) ==
            doctest::Approx(rec.scale_factor * measured).epsilon(1e-10));
    }
  }
}

TEST_CASE("common rate factors only move the scale factor") {
  Rng rng(241);
  const QutritState state = random_pure_state(rng);
  const MomentVector base = simulate(state, table1_settings());
  MomentVector boosted = base;
  for (double& r : boosted.rates) r *= 3.7;
  const ReconstructionResult a = invert(base);
  const ReconstructionResult b = invert(boosted);
  CHECK(max_abs_diff(a.rho_physical, b.rho_physical) < 1e-12);
  CHECK(b.scale_factor == doctest::Approx(a.scale_factor / 3.7));
}

TEST_CASE("physical projection") {
  SUBCASE("physical matrices pass through") {
    Rng rng(251);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Matrix3cd rho = random_mixed_state(rng).rho();
      CHECK(max_abs_diff(project_physical(rho), rho) < 1e-13);
    }
  }
  SUBCASE("negative weight is clipped and the rest renormalized") {
    Eigen::Matrix3cd raw = Eigen::Matrix3cd::Zero();
    raw(0, 0) = 1.1;
    raw(2, 2) = -0.1;
    Eigen::Matrix3cd expected = Eigen::Matrix3cd::Zero();
    expected(0, 0) = 1.0;
    CHECK(max_abs_diff(project_physical(raw), expected) < 1e-14);
  }
  SUBCASE("projection is idempotent") {
    Eigen::Matrix3cd raw;
    raw << 0.9, 0.2 + 0.1i, 0.0, 0.2 - 0.1i, 0.3, -0.2, 0.0, -0.2, -0.2;
    const Eigen::Matrix3cd once = project_physical(raw);
    CHECK(max_abs_diff(project_physical(once), once) < 1e-13);
  }
  SUBCASE("noisy reconstructions come out physical") {
    Rng rng(257);
    for (int trial = 0; trial < 20; ++trial) {
      const QutritState state = random_pure_state(rng);
      const auto m = simulate(state, table1_settings(),
                              PoissonNoise{200, split_seed(99, trial)});
      const ReconstructionResult rec = invert(m);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rec.rho_physical);
      CHECK(es.eigenvalues().minCoeff() >= -1e-12);
      CHECK(std::abs(rec.rho_physical.trace().real() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("noisy tomography concentrates around the true state") {
  // Mean overlap <psi|rho|psi> rises with the count budget. The full
  // statistical gate lives in the acceptance suite.
  Rng rng(263);
  auto mean_fidelity = [&](long long total, std::uint64_t seed) {
    double sum = 0.0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
      const QutritState state = random_pure_state(rng);
      const auto m = simulate(state, table1_settings(),
                              PoissonNoise{total, split_seed(seed, trial)});
      const ReconstructionResult rec = invert(m);
      const Eigen::Vector3cd c = state.amplitudes();
      sum += (c.adjoint() * rec.rho_physical * c)(0).real();
    }
    return sum / trials;
  };
  const double at_1e4 = mean_fidelity(10000, 1234);
  const double at_1e6 = mean_fidelity(1000000, 1235);
  CHECK(at_1e4 > 0.97);
  CHECK(at_1e6 > 0.995);
  CHECK(at_1e6 > at_1e4);
}
