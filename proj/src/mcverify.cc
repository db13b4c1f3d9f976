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

#include "l2mech/mcverify.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "l2mech/sampler.h"

namespace l2mech {
namespace {

constexpr int kMaxIterations = 200;

absl::Status CheckArgs(int d, int64_t n) {
  if (d < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (n < 1) return absl::InvalidArgumentError("sample count must be >= 1");
  return absl::OkStatus();
}

}  // namespace

double FractionStdError(double fraction, int64_t n) {
  const double nd = static_cast<double>(n);
  double p = fraction;
  if (p <= 0) p = 0.5 / nd;
  if (p >= 1) p = 1 - 0.5 / nd;
  return std::sqrt(p * (1 - p) / nd);
}

UnitNoisePool::UnitNoisePool(int d, int64_t n, uint64_t seed,
                             uint64_t stream_id) {
  first_.reserve(n);
  rest_squared_.reserve(n);
  RngStream rng(seed, stream_id);
  const std::vector<double> origin(d, 0.0);
  for (int64_t i = 0; i < n; ++i) {
    const std::vector<double> w = SampleL2(origin, 1.0, rng);
    double rest = 0;
    for (int j = 1; j < d; ++j) rest += w[j] * w[j];
    first_.push_back(w[0]);
    rest_squared_.push_back(rest);
  }
}

double UnitNoisePool::FractionFromOrigin(double sigma, double epsilon) const {
  const double tau = epsilon * sigma;
  int64_t hits = 0;
  for (size_t i = 0; i < first_.size(); ++i) {
    // y = sigma w.
    const double y1 = sigma * first_[i];
    const double norm_y =
        std::sqrt(y1 * y1 + sigma * sigma * rest_squared_[i]);
    hits += InHighLossRegion(y1, norm_y, tau);
  }
  return static_cast<double>(hits) / static_cast<double>(first_.size());
}

double UnitNoisePool::FractionFromNeighbor(double sigma,
                                           double epsilon) const {
  const double tau = epsilon * sigma;
  int64_t hits = 0;
  for (size_t i = 0; i < first_.size(); ++i) {
    // y = e1 + sigma w.
    const double y1 = 1 + sigma * first_[i];
    const double norm_y =
        std::sqrt(y1 * y1 + sigma * sigma * rest_squared_[i]);
    hits += InHighLossRegion(y1, norm_y, tau);
  }
  return static_cast<double>(hits) / static_cast<double>(first_.size());
}

absl::StatusOr<EmpiricalPrivacyEstimate> EmpiricalLhs(int d, double sigma,
                                                      double epsilon, int64_t n,
                                                      uint64_t seed) {
  if (absl::Status s = CheckArgs(d, n); !s.ok()) return s;
  if (!(sigma > 0) || !(epsilon > 0)) {
    return absl::InvalidArgumentError("sigma and epsilon must be positive");
  }
  const UnitNoisePool from_origin(d, n, seed, 0);
  const UnitNoisePool from_neighbor(d, n, seed, 1);

  EmpiricalPrivacyEstimate est;
  est.d = d;
  est.sigma = sigma;
  est.epsilon = epsilon;
  est.n = n;
  est.seed = seed;
  est.c1 = from_origin.FractionFromOrigin(sigma, epsilon);
  est.c2 = from_neighbor.FractionFromNeighbor(sigma, epsilon);
  est.lhs_estimate = est.c1 - std::exp(epsilon) * est.c2;
  est.std_error = FractionStdError(est.c1, n) +
                  std::exp(epsilon) * FractionStdError(est.c2, n);
  return est;
}

absl::StatusOr<EmpiricalMinSigma> EmpiricalMinSigmaSearch(
    int d, const PrivacyParams& params, int64_t n, double tol, uint64_t seed) {
  if (absl::Status s = CheckArgs(d, n); !s.ok()) return s;
  if (!(tol > 0)) return absl::InvalidArgumentError("tolerance must be positive");
  const double epsilon = params.epsilon();
  const UnitNoisePool from_origin(d, n, seed, 0);
  const UnitNoisePool from_neighbor(d, n, seed, 1);
  auto passes = [&](double sigma) {
    const double lhs = from_origin.FractionFromOrigin(sigma, epsilon) -
                       std::exp(epsilon) *
                           from_neighbor.FractionFromNeighbor(sigma, epsilon);
    return lhs <= params.delta();
  };

  EmpiricalMinSigma result;
  result.undersampled = static_cast<double>(n) * params.delta() < 100;
  // V has no mass under either center at sigma = 1/epsilon (d >= 2), and
  // for d = 1 the exact condition is 0 <= delta; not re-estimated.
  double hi = 1 / epsilon;
  double lo = std::min(tol, 0.5 * hi);
  int iterations = 0;
  while (passes(lo)) {
    if (++iterations > kMaxIterations || lo < 1e-12) {
      return absl::InternalError(
          "empirical condition holds at every sigma tried; cannot bracket");
    }
    lo /= 2;
  }
  while (hi - lo > tol) {
    if (++iterations > kMaxIterations) {
      return absl::InternalError("empirical sigma search did not converge");
    }
    const double mid = 0.5 * (lo + hi);
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.sigma = hi;
  result.search_iterations = iterations;
  return result;
}

}  // namespace l2mech
