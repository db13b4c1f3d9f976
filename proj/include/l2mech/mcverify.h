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

// Monte-Carlo estimate of the exact privacy condition of the l2 mechanism:
// draw n points from M(0) and n from M(1), count the fractions c1 and c2 that
// land in the high privacy loss region, and report c1 - e^epsilon c2.

#ifndef L2MECH_MCVERIFY_H_
#define L2MECH_MCVERIFY_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "l2mech/privacy_params.h"

namespace l2mech {

struct EmpiricalPrivacyEstimate {
  int d = 0;
  double sigma = 0;
  double epsilon = 0;
  int64_t n = 0;
  double c1 = 0;
  double c2 = 0;
  // c1 - e^epsilon * c2.
  double lhs_estimate = 0;
  // sqrt(v1 / n) + e^epsilon sqrt(v2 / n) with v the binomial variance.
  double std_error = 0;
  uint64_t seed = 0;
};

// Binomial standard error of a fraction. A zero or full count uses
// p = 1/(2n) (or 1 - 1/(2n)) so the error never collapses to zero.
double FractionStdError(double fraction, int64_t n);

// (|y - e1| - |y|) / sigma >= epsilon, rewritten as
// y_1 + tau |y| <= (1 - tau^2) / 2 with tau = epsilon * sigma. Squaring
// removes the difference of square roots, so points on the boundary (a set
// of positive mass when d = 1 and tau = 1) are classified exactly.
inline bool InHighLossRegion(double y1, double norm_y, double tau) {
  return y1 + tau * norm_y <= (1 - tau * tau) / 2;
}

// n unit-scale l2 draws around the origin, kept as w_1 and the squared norm
// of the remaining coordinates. Scaling by sigma and shifting by e1 give
// M(0) and M(1) draws at any sigma, which lets a sigma search reuse one set
// of draws.
class UnitNoisePool {
 public:
  UnitNoisePool(int d, int64_t n, uint64_t seed, uint64_t stream_id);

  // Fraction of sigma * w (center 0) inside V.
  double FractionFromOrigin(double sigma, double epsilon) const;
  // Fraction of e1 + sigma * w (center e1) inside V.
  double FractionFromNeighbor(double sigma, double epsilon) const;

  int64_t size() const { return static_cast<int64_t>(first_.size()); }

 private:
  std::vector<double> first_;
  std::vector<double> rest_squared_;
};

// Streams (seed, 0) and (seed, 1) drive the M(0) and M(1) draws.
absl::StatusOr<EmpiricalPrivacyEstimate> EmpiricalLhs(int d, double sigma,
                                                      double epsilon, int64_t n,
                                                      uint64_t seed);

struct EmpiricalMinSigma {
  double sigma = 0;
  int search_iterations = 0;
  // n * delta < 100: too few samples to resolve delta reliably.
  bool undersampled = false;
};

// Smallest sigma (within tol, rounded up) whose estimated condition
// c1 - e^epsilon c2 is at most delta. Every candidate sigma is evaluated on
// the same draws. Stochastic across seeds.
absl::StatusOr<EmpiricalMinSigma> EmpiricalMinSigmaSearch(
    int d, const PrivacyParams& params, int64_t n, double tol, uint64_t seed);

}  // namespace l2mech

#endif  // L2MECH_MCVERIFY_H_
