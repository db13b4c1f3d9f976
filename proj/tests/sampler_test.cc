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

#include "l2mech/sampler.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "l2mech/capgeom.h"
#include "test_util.h"

namespace l2mech {
namespace {

using ::l2mech::testing::KsCritical1Percent;
using ::l2mech::testing::KsStatistic;
using ::l2mech::testing::KsTwoSampleCritical1Percent;
using ::l2mech::testing::KsTwoSampleStatistic;

double Norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double LaplaceCdf(double x, double scale) {
  return x < 0 ? 0.5 * std::exp(x / scale) : 1 - 0.5 * std::exp(-x / scale);
}

TEST(RngStreamTest, SameSeedAndStreamReproduce) {
  RngStream a(42, 3), b(42, 3), c(42, 4), e(43, 3);
  bool differs_by_stream = false, differs_by_seed = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.UniformOpenClosed();
    EXPECT_EQ(x, b.UniformOpenClosed());
    differs_by_stream |= x != c.UniformOpenClosed();
    differs_by_seed |= x != e.UniformOpenClosed();
    EXPECT_GT(x, 0);
    EXPECT_LE(x, 1);
    EXPECT_EQ(a.StandardNormal(), b.StandardNormal());
  }
  EXPECT_TRUE(differs_by_stream);
  EXPECT_TRUE(differs_by_seed);
}

TEST(RngStreamTest, StandardNormalMoments) {
  RngStream rng(1, 0);
  const int n = 1000000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.StandardNormal();
    sum += z;
    sum2 += z * z;
  }
  EXPECT_NEAR(sum / n, 0, 4 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1, 4 * std::sqrt(2.0 / n));
}

TEST(SampleGammaTest, ExponentialMean) {
  RngStream rng(5, 0);
  double sum = 0;
  for (int i = 0; i < 1000000; ++i) sum += SampleGamma(1, 1, rng);
  EXPECT_NEAR(sum / 1e6, 1, 0.004);
}

TEST(SampleGammaTest, Moments) {
  for (int d : {1, 4, 30}) {
    const double sigma = 0.7;
    RngStream rng(6, d);
    const int n = 1000000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      const double g = SampleGamma(d + 1, sigma, rng);
      ASSERT_GT(g, 0);
      sum += g;
    }
    EXPECT_NEAR(sum / n, (d + 1) * sigma,
                4 * sigma * std::sqrt(d + 1.0) / 1e3);
  }
}

TEST(SampleGammaTest, Deterministic) {
  RngStream a(77, 0), b(77, 0);
  EXPECT_EQ(SampleGamma(6, 1.5, a), SampleGamma(6, 1.5, b));
}

TEST(SampleUnitBallTest, SecondMomentAndSymmetry) {
  RngStream rng(8, 0);
  const int n = 1000000;
  double norm2 = 0;
  std::vector<double> mean(3, 0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> z = SampleUnitBall(3, rng);
    const double r = Norm(z);
    ASSERT_LE(r, 1);
    norm2 += r * r;
    for (int j = 0; j < 3; ++j) mean[j] += z[j];
  }
  EXPECT_NEAR(norm2 / n, 0.6, 0.003);
  for (double m : mean) EXPECT_NEAR(m / n, 0, 4 / std::sqrt(n));
}

TEST(SampleUnitBallTest, NormLawIsRToTheD) {
  for (int d : {1, 2, 5, 50}) {
    RngStream rng(9, d);
    const int n = 100000;
    std::vector<double> norms;
    for (int i = 0; i < n; ++i) norms.push_back(Norm(SampleUnitBall(d, rng)));
    const double ks = KsStatistic(
        norms, [d](double r) { return std::pow(std::clamp(r, 0.0, 1.0), d); });
    EXPECT_LT(ks, KsCritical1Percent(n)) << "d=" << d;
  }
}

TEST(SampleL2Test, RadialLawMatchesRadialCdf) {
  for (int d : {1, 2, 5, 50}) {
    const double sigma = 0.8;
    RngStream rng(10, d);
    const int n = 100000;
    const std::vector<double> center(d, 0.5);
    std::vector<double> radii;
    for (int i = 0; i < n; ++i) {
      std::vector<double> y = SampleL2(center, sigma, rng);
      for (int j = 0; j < d; ++j) y[j] -= center[j];
      radii.push_back(Norm(y));
    }
    const double ks = KsStatistic(radii, [d, sigma](double r) {
      return RadialCdf(d, sigma, r).value();
    });
    EXPECT_LT(ks, KsCritical1Percent(n)) << "d=" << d;
  }
}

TEST(SampleL2Test, OneDimensionIsLaplace) {
  RngStream rng(12, 0);
  const int n = 100000;
  const double sigma = 1.3;
  const double center[] = {2.0};
  std::vector<double> noise;
  for (int i = 0; i < n; ++i) noise.push_back(SampleL2(center, sigma, rng)[0] - 2);
  EXPECT_LT(KsStatistic(noise, [=](double x) { return LaplaceCdf(x, sigma); }),
            KsCritical1Percent(n));
}

TEST(SampleL2Test, MeanSquaredDistance) {
  for (int d : {1, 3, 10}) {
    const double sigma = 0.5;
    RngStream rng(13, d);
    const std::vector<double> center(d, -1.0);
    const int n = 1000000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> y = SampleL2(center, sigma, rng);
      for (int j = 0; j < d; ++j) sum += (y[j] + 1) * (y[j] + 1);
    }
    const double want = d * (d + 1) * sigma * sigma;
    EXPECT_NEAR(sum / n, want, 0.01 * want) << "d=" << d;
  }
}

TEST(SampleL2Test, DirectionIsUniformOnTheSphere) {
  // Archimedes: the first coordinate of a uniform direction in R^3 is
  // uniform on [-1, 1].
  RngStream rng(14, 0);
  const int n = 100000;
  const std::vector<double> center(3, 0.0);
  std::vector<double> first;
  for (int i = 0; i < n; ++i) {
    std::vector<double> y = SampleL2(center, 2.0, rng);
    first.push_back(y[0] / Norm(y));
  }
  EXPECT_LT(KsStatistic(first, [](double t) { return (t + 1) / 2; }),
            KsCritical1Percent(n));
}

TEST(SampleL2Test, FixedSeedBatchIsBitIdentical) {
  SampleBatch a = DrawBatch(Mechanism::kL2, 5, 0.9, 100, 31).value();
  SampleBatch b = DrawBatch(Mechanism::kL2, 5, 0.9, 100, 31).value();
  EXPECT_EQ(a.values, b.values);
  ASSERT_EQ(a.values.size(), 500u);
  for (double v : a.values) EXPECT_TRUE(std::isfinite(v));
  EXPECT_NE(a.values, DrawBatch(Mechanism::kL2, 5, 0.9, 100, 32)->values);
}

std::vector<RngStream> Workers(int d, uint64_t seed) {
  std::vector<RngStream> workers;
  for (int i = 0; i < d; ++i) workers.emplace_back(seed, 100 + i);
  return workers;
}

TEST(SampleL2ParallelTest, TraceIdentities) {
  for (int d : {1, 4, 20}) {
    std::vector<RngStream> workers = Workers(d, 15);
    RngStream manager(15, 0);
    const std::vector<double> center(d, 0.25);
    const double sigma = 1.7;
    for (int k = 0; k < 100; ++k) {
      ParallelSample s = SampleL2Parallel(center, sigma, workers, manager).value();
      const ParallelTrace& t = s.trace;
      ASSERT_EQ(t.worker_log_uniforms.size(), static_cast<size_t>(d));
      double logs = t.manager_log_uniform, squares = 0;
      EXPECT_GE(t.manager_log_uniform, 0);
      for (int i = 0; i < d; ++i) {
        EXPECT_GE(t.worker_log_uniforms[i], 0);
        logs += t.worker_log_uniforms[i];
        squares += t.worker_gauss[i] * t.worker_gauss[i];
      }
      EXPECT_NEAR(t.radius, sigma * logs, 1e-12 * t.radius);
      EXPECT_NEAR(t.sum_squares, squares, 1e-12 * squares);
      // Assemble the coordinates from the trace by hand.
      const double scale =
          t.radius * std::pow(t.manager_uniform_y, 1.0 / d) / std::sqrt(squares);
      for (int i = 0; i < d; ++i) {
        EXPECT_NEAR(s.value[i], center[i] + scale * t.worker_gauss[i], 1e-12);
      }
    }
  }
}

TEST(SampleL2ParallelTest, SameLawAsSequential) {
  for (int d : {1, 3, 10}) {
    const double sigma = 0.6;
    const int n = 100000;
    const std::vector<double> center(d, 0.0);
    std::vector<RngStream> workers = Workers(d, 1000 + d);
    RngStream manager(1000 + d, 0);
    RngStream sequential(2000 + d, 0);
    std::vector<double> r_par, r_seq, x_par, x_seq;
    for (int i = 0; i < n; ++i) {
      std::vector<double> p =
          SampleL2Parallel(center, sigma, workers, manager)->value;
      std::vector<double> q = SampleL2(center, sigma, sequential);
      r_par.push_back(Norm(p));
      r_seq.push_back(Norm(q));
      x_par.push_back(p[0]);
      x_seq.push_back(q[0]);
    }
    const double critical = KsTwoSampleCritical1Percent(n, n);
    EXPECT_LT(KsTwoSampleStatistic(r_par, r_seq), critical) << "d=" << d;
    EXPECT_LT(KsTwoSampleStatistic(x_par, x_seq), critical) << "d=" << d;
  }
}

TEST(SampleL2ParallelTest, WrongWorkerCountIsAnError) {
  std::vector<RngStream> workers = Workers(2, 1);
  RngStream manager(1, 0);
  const std::vector<double> center(3, 0.0);
  EXPECT_FALSE(SampleL2Parallel(center, 1, workers, manager).ok());
}

TEST(CombineContributionsTest, ZeroSumOfSquaresAsksForRedraw) {
  RngStream manager(2, 0);
  const WorkerContribution zero[] = {{0.5, 0.0}, {0.25, 0.0}};
  EXPECT_EQ(CombineContributions(zero, 1, manager).status().code(),
            absl::StatusCode::kUnavailable);
}

TEST(SampleLaplaceTest, MeanSquaredErrorAndDeterminism) {
  RngStream rng(18, 0);
  const std::vector<double> center(2, 3.0);
  const int n = 1000000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> y = SampleLaplace(center, 1.0, rng);
    sum += (y[0] - 3) * (y[0] - 3) + (y[1] - 3) * (y[1] - 3);
  }
  EXPECT_NEAR(sum / n, 4, 0.04);
  EXPECT_EQ(DrawBatch(Mechanism::kLaplace, 3, 1, 10, 4)->values,
            DrawBatch(Mechanism::kLaplace, 3, 1, 10, 4)->values);
}

TEST(SampleLaplaceTest, OneDimensionMatchesL2) {
  const int n = 100000;
  SampleBatch laplace = DrawBatch(Mechanism::kLaplace, 1, 0.9, n, 19).value();
  SampleBatch l2 = DrawBatch(Mechanism::kL2, 1, 0.9, n, 20).value();
  EXPECT_LT(KsTwoSampleStatistic(laplace.values, l2.values),
            KsTwoSampleCritical1Percent(n, n));
  EXPECT_LT(KsStatistic(laplace.values,
                        [](double x) { return LaplaceCdf(x, 0.9); }),
            KsCritical1Percent(n));
}

TEST(SampleGaussianTest, MeanSquaredErrorAndVariance) {
  RngStream rng(21, 0);
  const std::vector<double> center(10, 0.0);
  const int n = 1000000;
  double sum = 0, first2 = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> y = SampleGaussian(center, 2.0, rng);
    for (double v : y) sum += v * v;
    first2 += y[0] * y[0];
  }
  EXPECT_NEAR(sum / n, 40, 0.4);
  EXPECT_NEAR(first2 / n, 4, 0.04);
  EXPECT_EQ(DrawBatch(Mechanism::kGaussian, 3, 1, 10, 4)->values,
            DrawBatch(Mechanism::kGaussian, 3, 1, 10, 4)->values);
}

TEST(DrawBatchTest, ShapeAndErrors) {
  SampleBatch batch = DrawBatch(Mechanism::kGaussian, 4, 2, 7, 1).value();
  EXPECT_EQ(batch.dim, 4);
  EXPECT_EQ(batch.count, 7);
  EXPECT_EQ(batch.values.size(), 28u);
  EXPECT_EQ(batch.row(6).size(), 4u);
  EXPECT_FALSE(DrawBatch(Mechanism::kL2, 0, 1, 1, 1).ok());
  EXPECT_FALSE(DrawBatch(Mechanism::kL2, 2, 0, 1, 1).ok());
  EXPECT_FALSE(DrawBatch(Mechanism::kL2, 2, 1, -1, 1).ok());
}

}  // namespace
}  // namespace l2mech
