// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "risrcs/reflection.hpp"

using namespace risrcs;

namespace {

ReflectionParams sample_params() {
  ReflectionParams p;
  p.area = 0.0143 * 0.01027;
  p.wavelength = kSpeedOfLight / 5.8e9;
  p.c = 1.42e-5;
  p.a = deg_to_rad(90.0);
  p.b = deg_to_rad(180.0);
  p.state_phase_delta = kPi;
  return p;
}

// Independent evaluation of the flat-plate RCS expression, written out in full.
double rcs_oracle(double theta, double area, double lambda, double c) {
  const double k = 2.0 * M_PI / lambda;
  const double x = k * std::sqrt(area) * std::sin(theta);
  const double ratio = x == 0.0 ? 1.0 : std::sin(x) / x;
  return 4.0 * M_PI * area * area / (lambda * lambda) * ratio * ratio + c;
}

TEST(Rcs, AnchorValues) {
  const auto p = sample_params();
  // Frozen from rcs_oracle: 1.1564657927051023e-4 and 9.857763762110503e-5.
  EXPECT_NEAR(rcs_oracle(0.0, p.area, p.wavelength, p.c), 1.1564657927051023e-4, 1e-18);
  EXPECT_NEAR(rcs_oracle(deg_to_rad(30.0), p.area, p.wavelength, p.c), 9.857763762110503e-5, 1e-18);
  EXPECT_NEAR(rcs(0.0, p), 1.1565e-4, 1e-8);
  EXPECT_NEAR(rcs(deg_to_rad(30.0), p), 9.85e-5, 1e-7);
  EXPECT_NEAR(rcs(0.0, p), 1.1564657927051023e-4, 1e-18);
  EXPECT_NEAR(rcs(deg_to_rad(30.0), p), 9.857763762110503e-5, 1e-18);
}

TEST(Rcs, MatchesOracleAcrossAngles) {
  const auto p = sample_params();
  for (int i = 1; i < 900; ++i) {
    const double t = deg_to_rad(i * 0.1);
    ASSERT_NEAR(rcs(t, p), rcs_oracle(t, p.area, p.wavelength, p.c), 1e-17);
  }
}

TEST(Rcs, FloorOnlyLimit) {
  auto p = sample_params();
  p.area = 1e-14;
  EXPECT_NEAR(rcs(0.3, p), p.c, 1e-20);
}

TEST(Rcs, ContinuousAtNormal) {
  const auto p = sample_params();
  EXPECT_LE(std::abs(rcs(1e-9, p) - rcs(0.0, p)), 1e-12 * rcs(0.0, p));
}

TEST(Rcs, EvenAndBoundedBelowByFloor) {
  const auto p = sample_params();
  for (int i = 0; i < 900; ++i) {
    const double t = deg_to_rad(i * 0.1);
    ASSERT_GE(rcs(t, p), p.c);
    ASSERT_EQ(rcs(-t, p), rcs(t, p));
  }
  EXPECT_THROW(rcs(deg_to_rad(91.0), p), InputError);
}

TEST(PhaseShift, Examples) {
  const auto p = sample_params();
  EXPECT_NEAR(rad_to_deg(phase_shift(0.0, 0, p)), 270.0, 1e-12);
  EXPECT_NEAR(rad_to_deg(phase_shift(kPi / 2.0, 0, p)), 180.0, 1e-12);
  EXPECT_NEAR(rad_to_deg(phase_shift(0.0, 1, p)), 90.0, 1e-12);
  EXPECT_THROW(phase_shift(0.0, 2, p), InputError);
}

TEST(PhaseShift, StateDifferenceIsDelta) {
  auto p = sample_params();
  for (double delta : {kPi, deg_to_rad(170.0), deg_to_rad(200.0)}) {
    p.state_phase_delta = delta;
    for (int i = 0; i <= 90; ++i) {
      const double t = deg_to_rad(i);
      const double diff = phase_shift(t, 1, p) - phase_shift(t, 0, p);
      ASSERT_NEAR(angular_distance(diff, delta), 0.0, 1e-12);
    }
  }
}

TEST(ReflectionCoefficient, InvertsRcs) {
  const auto p = sample_params();
  const double t = deg_to_rad(25.0);
  const auto rc = reflection_coefficient(t, 0, p, 3e-4, 2e-4);
  EXPECT_NEAR(rc.mu * std::sqrt(3e-4 * 2e-4), rcs(t, p), 1e-18);
  EXPECT_FALSE(rc.clamped);
  const auto flipped = reflection_coefficient(t, 1, p, 3e-4, 2e-4);
  EXPECT_EQ(flipped.mu, rc.mu);
  EXPECT_NEAR(angular_distance(flipped.phase - rc.phase, kPi), 0.0, 1e-12);
}

TEST(ReflectionCoefficient, UnitAmplitudeWhenAreasMatchRcs) {
  const auto p = sample_params();
  const double s0 = rcs(0.0, p);
  const auto rc = reflection_coefficient(0.0, 0, p, s0, s0);
  EXPECT_NEAR(rc.mu, 1.0, 1e-15);
  EXPECT_NEAR(rc.phase, wrap_two_pi(p.a + p.b), 1e-15);
}

TEST(ReflectionCoefficient, ClampsPassiveBound) {
  const auto p = sample_params();
  const auto rc = reflection_coefficient(0.0, 0, p, 1e-5, 1e-5);
  EXPECT_TRUE(rc.clamped);
  EXPECT_EQ(rc.mu, 1.0);
  EXPECT_GT(rc.mu_unclamped, 1.0);
  EXPECT_NEAR(std::abs(rc.gamma), 1.0, 1e-15);
  EXPECT_THROW(reflection_coefficient(0.0, 0, p, 0.0, 1.0), InputError);
}

std::vector<ReflectionSample> synth(const ReflectionParams& p, int count, double max_deg) {
  std::vector<ReflectionSample> out;
  for (int i = 0; i < count; ++i) {
    const double t = deg_to_rad(max_deg * i / (count - 1));
    out.push_back({t, rcs_oracle(t, p.area, p.wavelength, p.c), p.a * std::cos(t) + p.b});
  }
  return out;
}

TEST(FitRcsFloor, NoiselessRecovery) {
  const auto p = sample_params();
  const auto samples = synth(p, 17, 80.0);
  const auto fit = fit_rcs_floor(samples, p.area, p.wavelength);
  EXPECT_LE(std::abs(fit.c - p.c), 1e-12 * p.c);
  EXPECT_LT(fit.residuals.rms, 1e-18);
  EXPECT_EQ(fit.residuals.count, 17u);
}

TEST(FitRcsFloor, SingleSample) {
  const auto p = sample_params();
  const double sigma = 2e-4;
  const std::vector<ReflectionSample> one{{0.0, sigma, std::nullopt}};
  const double lobe = 4.0 * kPi * p.area * p.area / (p.wavelength * p.wavelength);
  EXPECT_NEAR(fit_rcs_floor(one, p.area, p.wavelength).c, sigma - lobe, 1e-18);
}

TEST(FitRcsFloor, EmptyRejected) {
  const std::vector<ReflectionSample> phase_only{{0.0, std::nullopt, 1.0}};
  EXPECT_THROW(fit_rcs_floor(phase_only, 1e-4, 0.05), InputError);
  EXPECT_THROW(fit_rcs_floor({}, 1e-4, 0.05), InputError);
}

TEST(FitRcsFloor, NoisyMatchesBruteForceScan) {
  const auto p = sample_params();
  std::mt19937_64 rng(21);
  const double eps = 2e-6;
  std::uniform_real_distribution<double> noise(-eps, eps);
  for (int trial = 0; trial < 50; ++trial) {
    auto samples = synth(p, 12, 80.0);
    for (auto& s : samples) *s.sigma += noise(rng);
    const auto fit = fit_rcs_floor(samples, p.area, p.wavelength);
    EXPECT_LE(std::abs(fit.c - p.c), eps);

    // Brute-force scan of the squared-residual objective.
    const double step = 1e-9;
    double best_c = 0.0, best_obj = 1e300;
    for (double c = p.c - 2.0 * eps; c <= p.c + 2.0 * eps; c += step) {
      double obj = 0.0;
      for (const auto& s : samples) {
        const double r = *s.sigma - (rcs_oracle(s.theta_r, p.area, p.wavelength, 0.0) + c);
        obj += r * r;
      }
      if (obj < best_obj) {
        best_obj = obj;
        best_c = c;
      }
    }
    EXPECT_LE(std::abs(fit.c - best_c), step);
  }
}

TEST(FitPhase, NoiselessRecovery) {
  const auto p = sample_params();
  const auto fit = fit_phase(synth(p, 17, 80.0));
  EXPECT_NEAR(rad_to_deg(fit.a), 90.0, 1e-10);
  EXPECT_NEAR(rad_to_deg(fit.b), 180.0, 1e-10);
}

TEST(FitPhase, TwoSamples) {
  const std::vector<ReflectionSample> two{{0.0, std::nullopt, deg_to_rad(270.0)},
                                          {kPi / 2.0, std::nullopt, deg_to_rad(180.0)}};
  const auto fit = fit_phase(two);
  EXPECT_NEAR(rad_to_deg(fit.a), 90.0, 1e-10);
  EXPECT_NEAR(rad_to_deg(fit.b), 180.0, 1e-10);
}

TEST(FitPhase, RankDeficient) {
  const std::vector<ReflectionSample> same{{0.3, std::nullopt, 1.0}, {0.3, std::nullopt, 1.2}, {-0.3, std::nullopt, 1.1}};
  EXPECT_THROW(fit_phase(same), RankDeficiencyError);
  const std::vector<ReflectionSample> one{{0.3, std::nullopt, 1.0}};
  EXPECT_THROW(fit_phase(one), InputError);
}

TEST(FitPhase, BranchCrossingRejected) {
  const std::vector<ReflectionSample> wrapped{{0.0, std::nullopt, deg_to_rad(350.0)},
                                              {0.5, std::nullopt, deg_to_rad(5.0)},
                                              {1.0, std::nullopt, deg_to_rad(20.0)}};
  EXPECT_THROW(fit_phase(wrapped), InputError);
}

TEST(FitPhase, NoisyMatchesBruteForceGrid) {
  const auto p = sample_params();
  std::mt19937_64 rng(5);
  const double eps = deg_to_rad(3.0);
  std::uniform_real_distribution<double> noise(-eps, eps);
  for (int trial = 0; trial < 10; ++trial) {
    auto samples = synth(p, 15, 80.0);
    for (auto& s : samples) *s.phase += noise(rng);
    const auto fit = fit_phase(samples);

    const double step = deg_to_rad(0.02);
    double best_a = 0.0, best_b = 0.0, best_obj = 1e300;
    for (double a = p.a - deg_to_rad(8.0); a <= p.a + deg_to_rad(8.0); a += step) {
      for (double b = p.b - deg_to_rad(8.0); b <= p.b + deg_to_rad(8.0); b += step) {
        double obj = 0.0;
        for (const auto& s : samples) {
          const double r = *s.phase - (a * std::cos(s.theta_r) + b);
          obj += r * r;
        }
        if (obj < best_obj) {
          best_obj = obj;
          best_a = a;
          best_b = b;
        }
      }
    }
    // The closed form can only beat the grid, and the grid argmin sits within
    // a couple of cells of it (a and b are correlated, so allow two cells).
    double fit_obj = 0.0;
    for (const auto& s : samples) {
      const double r = *s.phase - (fit.a * std::cos(s.theta_r) + fit.b);
      fit_obj += r * r;
    }
    EXPECT_LE(fit_obj, best_obj);
    EXPECT_LE(std::abs(fit.a - best_a), 2.0 * step);
    EXPECT_LE(std::abs(fit.b - best_b), 2.0 * step);
  }
}

TEST(ReflectionCsv, ParsesOptionalFields) {
  std::istringstream in("theta_deg,sigma_m2,phase_deg\n0,1e-4,270\n10,,265\n20,9e-5,\n");
  const auto s = read_reflection_csv(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(*s[0].sigma, 1e-4);
  EXPECT_NEAR(*s[0].phase, deg_to_rad(270.0), 1e-15);
  EXPECT_FALSE(s[1].sigma.has_value());
  EXPECT_FALSE(s[2].phase.has_value());
  EXPECT_NEAR(s[1].theta_r, deg_to_rad(10.0), 1e-15);
}

TEST(ReflectionCsv, Errors) {
  std::istringstream bad_header("theta,sigma,phase\n0,1,2\n");
  EXPECT_THROW(read_reflection_csv(bad_header), InputError);
  std::istringstream empty_row("theta_deg,sigma_m2,phase_deg\n0,,\n");
  EXPECT_THROW(read_reflection_csv(empty_row), InputError);
  std::istringstream bad_angle("theta_deg,sigma_m2,phase_deg\n95,1e-4,\n");
  EXPECT_THROW(read_reflection_csv(bad_angle), InputError);
  std::istringstream bad_num("theta_deg,sigma_m2,phase_deg\n5,abc,\n");
  EXPECT_THROW(read_reflection_csv(bad_num), InputError);
}

}  // namespace
