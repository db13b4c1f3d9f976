//
// Copyright 2026 The l2mech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "l2mech/lossbounds.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "l2mech/sampler.h"
#include "l2mech/specfun.h"

namespace l2mech {
namespace {

PrivacyParams Params(double epsilon, double delta) {
  return PrivacyParams::Create(epsilon, delta).value();
}

GridSpec Grid(int d, double sigma, double delta, int n) {
  GridSpec grid;
  grid.n_r = n;
  grid.n_R = n;
  grid.r_star = TailRadius(d, sigma, 0.01 * delta).value();
  return grid;
}

// Fraction of draws around center (0 or e1) that land in V, counted
// directly from the privacy-loss predicate.
struct Estimate {
  double fraction;
  double std_error;
};

Estimate SampledMassInV(int d, double sigma, double epsilon, bool neighbor,
                        int n, uint64_t seed) {
  RngStream rng(seed, neighbor ? 1 : 0);
  std::vector<double> center(d, 0.0);
  if (neighbor) center[0] = 1;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> y = SampleL2(center, sigma, rng);
    double norm2 = 0, shifted2 = 0;
    for (int j = 0; j < d; ++j) {
      norm2 += y[j] * y[j];
      const double s = y[j] - (j == 0 ? 1.0 : 0.0);
      shifted2 += s * s;
    }
    if ((std::sqrt(shifted2) - std::sqrt(norm2)) / sigma >= epsilon) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  const double floor_p = std::max(std::min(p, 1 - 0.5 / n), 0.5 / n);
  return {p, std::sqrt(floor_p * (1 - floor_p) / n)};
}

TEST(ClassifyBranchTest, Branches) {
  EXPECT_EQ(ClassifyBranch(5, 2, 1), BoundBranch::kLargeSigma);
  EXPECT_EQ(ClassifyBranch(5, 1, 1), BoundBranch::kLargeSigma);
  EXPECT_EQ(ClassifyBranch(1, 0.5, 1), BoundBranch::kOneDim);
  EXPECT_EQ(ClassifyBranch(1, 2, 1), BoundBranch::kLargeSigma);
  EXPECT_EQ(ClassifyBranch(3, 0.5, 1), BoundBranch::kGeneral);
  EXPECT_EQ(BoundBranchName(BoundBranch::kGeneral), "general");
}

TEST(Term1UpperBoundTest, Examples) {
  EXPECT_EQ(Term1UpperBound(5, 2, 1, Grid(5, 2, 1e-5, 1000)).value(), 0);
  EXPECT_NEAR(Term1UpperBound(1, 0.5, 1, GridSpec()).value(),
              1 - 0.5 * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(Term1UpperBound(1, 0.5, 1, GridSpec()).value(), 0.696735, 1e-6);
}

TEST(Term2LowerBoundTest, Examples) {
  EXPECT_EQ(Term2LowerBound(5, 1, 1, Grid(5, 1, 1e-5, 1000)).value(), 0);
  EXPECT_NEAR(Term2LowerBound(1, 0.5, 1, GridSpec()).value(),
              0.5 * std::exp(-1.5), 1e-15);
  EXPECT_NEAR(Term2LowerBound(1, 0.5, 1, GridSpec()).value(), 0.111565, 1e-6);
}

TEST(BoundsTest, SandwichSampledMassInThreeDimensions) {
  const int d = 3;
  const double sigma = 0.2, epsilon = 1;
  const GridSpec grid = Grid(d, sigma, 1e-5, 1000);
  const double t1 = Term1UpperBound(d, sigma, epsilon, grid).value();
  const double t2 = Term2LowerBound(d, sigma, epsilon, grid).value();
  const Estimate mc1 = SampledMassInV(d, sigma, epsilon, false, 1000000, 3);
  const Estimate mc2 = SampledMassInV(d, sigma, epsilon, true, 1000000, 3);
  EXPECT_GE(t1, mc1.fraction - 3 * mc1.std_error);
  EXPECT_LE(t1, mc1.fraction + 0.01);
  EXPECT_LE(t2, mc2.fraction + 3 * mc2.std_error);
  EXPECT_GE(t2, mc2.fraction - 0.01);
}

TEST(BoundsTest, SoundAgainstSampledMass) {
  for (int d : {2, 10}) {
    for (double tau : {0.1, 0.3, 0.7}) {
      for (double epsilon : {0.5, 2.0}) {
        const double sigma = tau / epsilon;
        const GridSpec grid = Grid(d, sigma, 1e-5, 1000);
        const double t1 = Term1UpperBound(d, sigma, epsilon, grid).value();
        const double t2 = Term2LowerBound(d, sigma, epsilon, grid).value();
        const Estimate mc1 = SampledMassInV(d, sigma, epsilon, false, 100000, 9);
        const Estimate mc2 = SampledMassInV(d, sigma, epsilon, true, 100000, 9);
        EXPECT_GE(t1, mc1.fraction - 3 * mc1.std_error)
            << "d=" << d << " tau=" << tau << " eps=" << epsilon;
        EXPECT_LE(t2, mc2.fraction + 3 * mc2.std_error)
            << "d=" << d << " tau=" << tau << " eps=" << epsilon;
      }
    }
  }
}

TEST(BoundsTest, RefiningTheGridTightensBothBounds) {
  for (int d : {2, 5, 50}) {
    for (double tau : {0.1, 0.5, 0.9}) {
      const double sigma = tau;  // epsilon = 1
      double t1_prev = 2, t2_prev = -1;
      for (int n : {100, 1000, 10000}) {
        const GridSpec grid = Grid(d, sigma, 1e-5, n);
        const double t1 = Term1UpperBound(d, sigma, 1, grid).value();
        const double t2 = Term2LowerBound(d, sigma, 1, grid).value();
        EXPECT_LE(t1, t1_prev + 1e-12) << "d=" << d << " tau=" << tau
                                       << " n=" << n;
        EXPECT_GE(t2, t2_prev - 1e-12) << "d=" << d << " tau=" << tau
                                       << " n=" << n;
        t1_prev = t1;
        t2_prev = t2;
      }
    }
  }
}

TEST(CheckApproximateDpTest, OneDimensionalExamples) {
  BoundReport pass = CheckApproximateDp(1, 0.5, Params(1, 0.40)).value();
  EXPECT_TRUE(pass.satisfies_dp);
  EXPECT_NEAR(pass.lhs_upper, 0.393469, 1e-6);
  EXPECT_EQ(pass.branch, BoundBranch::kOneDim);
  EXPECT_FALSE(CheckApproximateDp(1, 0.5, Params(1, 0.30))->satisfies_dp);
}

TEST(CheckApproximateDpTest, AboveThePureDpScale) {
  for (int d : {1, 2, 30}) {
    for (double delta : {1e-9, 0.3}) {
      BoundReport report = CheckApproximateDp(d, 1.001, Params(1, delta)).value();
      EXPECT_TRUE(report.satisfies_dp);
      EXPECT_EQ(report.lhs_upper, 0);
      EXPECT_EQ(report.branch, BoundBranch::kLargeSigma);
    }
  }
}

TEST(CheckApproximateDpTest, AtThePureDpScale) {
  EXPECT_EQ(CheckApproximateDp(4, 1.0, Params(1, 1e-5))->lhs_upper, 0);
  BoundReport one_dim = CheckApproximateDp(1, 1.0, Params(1, 1e-5)).value();
  EXPECT_NEAR(one_dim.lhs_upper, 0, 1e-15);
  EXPECT_TRUE(one_dim.satisfies_dp);
}

TEST(CheckApproximateDpTest, OneDimensionalClosedForm) {
  for (double epsilon : {0.1, 1.0, 3.0}) {
    for (double t : {0.05, 0.3, 0.7, 0.99}) {
      const double sigma = t / epsilon;
      BoundReport report =
          CheckApproximateDp(1, sigma, Params(epsilon, 1e-5)).value();
      EXPECT_NEAR(report.lhs_upper,
                  1 - std::exp((epsilon - 1 / sigma) / 2), 1e-12);
    }
  }
}

TEST(CheckApproximateDpTest, ReportIsConsistent) {
  const PrivacyParams params = Params(1, 1e-5);
  for (int d : {2, 7, 100}) {
    BoundReport report = CheckApproximateDp(d, 0.6, params).value();
    EXPECT_NEAR(report.lhs_upper,
                report.term1_upper - std::exp(1.0) * report.term2_lower, 1e-15);
    EXPECT_EQ(report.satisfies_dp, report.lhs_upper <= params.delta());
    EXPECT_EQ(report.grid.n_r, 1000);
    EXPECT_EQ(report.grid.n_R, 1000);
    const double tail =
        RegularizedUpperGamma(d, report.grid.r_star / 0.6).value();
    EXPECT_NEAR(tail, 0.01 * params.delta(), 1e-9 * params.delta());
  }
}

TEST(CheckApproximateDpTest, BoundNonincreasingInSigma) {
  for (int d : {2, 5, 20, 100}) {
    for (double delta : {1e-2, 1e-5}) {
      const PrivacyParams params = Params(1, delta);
      double previous = 2;
      for (int i = 1; i <= 200; ++i) {
        const double sigma = 0.005 * i;
        absl::StatusOr<BoundReport> report =
            CheckApproximateDp(d, sigma, params);
        if (absl::IsOutOfRange(report.status())) continue;
        ASSERT_TRUE(report.ok()) << report.status();
        EXPECT_LE(report->lhs_upper, previous)
            << "d=" << d << " delta=" << delta << " sigma=" << sigma;
        previous = report->lhs_upper;
      }
    }
  }
}

TEST(CheckApproximateDpTest, TailRadiusInsideInnerBallIsOutOfRange) {
  // A huge tail allowance puts r* well inside (1 - tau) / 2.
  CheckOptions options;
  options.tail_fraction = 0.99;
  absl::StatusOr<BoundReport> report =
      CheckApproximateDp(2, 0.01, Params(1, 0.9), options);
  EXPECT_EQ(report.status().code(), absl::StatusCode::kOutOfRange);
}

TEST(BoundsTest, GridErrors) {
  GridSpec grid = Grid(3, 0.5, 1e-5, 1000);
  grid.n_r = 1;
  EXPECT_EQ(Term1UpperBound(3, 0.5, 1, grid).status().code(),
            absl::StatusCode::kInvalidArgument);
  grid = Grid(3, 0.5, 1e-5, 1000);
  grid.n_R = 0;
  EXPECT_EQ(Term2LowerBound(3, 0.5, 1, grid).status().code(),
            absl::StatusCode::kInvalidArgument);
  grid.n_R = 1000;
  grid.r_star = 0.2;  // below (1 - tau) / 2 = 0.25
  EXPECT_EQ(Term1UpperBound(3, 0.5, 1, grid).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(Term1UpperBound(0, 0.5, 1, grid).ok());
  EXPECT_FALSE(Term1UpperBound(3, -0.5, 1, grid).ok());
}

}  // namespace
}  // namespace l2mech
