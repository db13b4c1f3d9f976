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

// Certified bounds on the two privacy-loss tail probabilities of the l2
// mechanism, and the resulting (epsilon, delta) check.
//
// With neighbors centered at 0 and e1, the mechanism is (epsilon, delta)-DP
// iff  P_{M(0)}[y in V] - e^epsilon P_{M(1)}[y in V] <= delta. The first
// term is bounded from above and the second from below by left Riemann sums
// over the radial law P(d, r / sigma), weighted by the cap fractions of V on
// spheres around 0 and around e1 respectively. Both fractions are monotone
// in the radius, which is what makes the left sums one-sided.

#ifndef L2MECH_LOSSBOUNDS_H_
#define L2MECH_LOSSBOUNDS_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "l2mech/privacy_params.h"

namespace l2mech {

inline constexpr int kDefaultNumRadii = 1000;

// Riemann grid controls. Radii are uniformly spaced from the first grid
// point ((1 - tau)/2 for the first term, (1 + tau)/2 for the second) up to
// r_star inclusive.
struct GridSpec {
  int n_r = kDefaultNumRadii;
  int n_R = kDefaultNumRadii;
  double r_star = 0;
};

enum class BoundBranch { kLargeSigma, kOneDim, kGeneral };

std::string_view BoundBranchName(BoundBranch branch);

// Which closed form (if any) applies. sigma >= 1/epsilon makes V empty (or
// null) for d >= 2; in one dimension the Laplace closed forms hold for all
// sigma <= 1/epsilon, including equality.
BoundBranch ClassifyBranch(int d, double sigma, double epsilon);

struct BoundReport {
  double term1_upper = 0;
  double term2_lower = 0;
  // term1_upper - e^epsilon * term2_lower.
  double lhs_upper = 0;
  bool satisfies_dp = false;
  GridSpec grid;
  BoundBranch branch = BoundBranch::kGeneral;
};

// Upper bound on P_{y ~ M(0)}[(|y - e1| - |y|) / sigma >= epsilon].
absl::StatusOr<double> Term1UpperBound(int d, double sigma, double epsilon,
                                       const GridSpec& grid);

// Lower bound on P_{y ~ M(1)}[(|y - e1| - |y|) / sigma >= epsilon].
absl::StatusOr<double> Term2LowerBound(int d, double sigma, double epsilon,
                                       const GridSpec& grid);

// Radius r with P_{M(0)}[|y| > r] = tail_mass.
absl::StatusOr<double> TailRadius(int d, double sigma, double tail_mass);

struct CheckOptions {
  int n_r = kDefaultNumRadii;
  int n_R = kDefaultNumRadii;
  // The largest grid radius leaves tail_fraction * delta of M(0)'s mass
  // outside it.
  double tail_fraction = 0.01;
};

// Evaluates both bounds on a shared grid whose last radius is the tail
// radius for tail_fraction * delta. satisfies_dp == true certifies
// (epsilon, delta)-DP; false only means the bound could not certify it.
// Fails with OutOfRange when the tail radius does not exceed
// (1 - tau) / 2; if it lies in ((1 - tau)/2, (1 + tau)/2] the second term
// is bounded below by 0.
absl::StatusOr<BoundReport> CheckApproximateDp(
    int d, double sigma, const PrivacyParams& params,
    const CheckOptions& options = CheckOptions());

}  // namespace l2mech

#endif  // L2MECH_LOSSBOUNDS_H_
