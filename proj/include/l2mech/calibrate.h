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

#ifndef L2MECH_CALIBRATE_H_
#define L2MECH_CALIBRATE_H_

#include <optional>

#include "absl/status/statusor.h"
#include "l2mech/lossbounds.h"
#include "l2mech/privacy_params.h"

namespace l2mech {

inline constexpr double kDefaultTolerance = 0.001;
inline constexpr int kMaxSearchIterations = 200;

struct CalibrationResult {
  Mechanism mechanism = Mechanism::kL2;
  double sigma = 0;
  // l2: 1/sigma. Laplace: sqrt(d)/sigma. Absent for the Gaussian mechanism,
  // which has no pure guarantee.
  std::optional<double> pure_epsilon;
  int search_iterations = 0;
  double tolerance = 0;
  // Set when the predicate still held at the smallest sigma tried, so sigma
  // is the search floor rather than a bracketed minimum.
  bool hit_bracket_floor = false;
};

// Smallest sigma (within tol, rounded up) for which CheckApproximateDp
// certifies params. The search bracket is [lo, 1/epsilon]; the predicate
// always holds at 1/epsilon. lo starts at tol and is halved while the
// predicate still holds. For d = 1 the check inverts in closed form and the
// exact threshold 1 / (epsilon - 2 log(1 - delta)) is returned, rounded up
// to the first double the check certifies.
absl::StatusOr<CalibrationResult> CalibrateL2(
    int d, const PrivacyParams& params,
    const CheckOptions& options = CheckOptions(),
    double tol = kDefaultTolerance);

// CalibrateL2 for a statistic with l2 sensitivity other than 1: calibrates
// T / sensitivity and rescales sigma.
absl::StatusOr<CalibrationResult> CalibrateL2WithSensitivity(
    int d, const PrivacyParams& params, double l2_sensitivity,
    const CheckOptions& options = CheckOptions(),
    double tol = kDefaultTolerance);

// delta(sigma) = Phi(1/(2 sigma) - eps sigma) - e^eps Phi(-1/(2 sigma) - eps
// sigma): the exact delta of the Gaussian mechanism with unit sensitivity.
absl::StatusOr<double> GaussianDelta(double sigma, double epsilon);

// Smallest sigma (within tol, rounded up) with GaussianDelta <= delta.
absl::StatusOr<CalibrationResult> CalibrateGaussian(
    const PrivacyParams& params, double tol = kDefaultTolerance);

// Laplace scale sqrt(d) / (epsilon + delta) for l1 sensitivity sqrt(d).
CalibrationResult LaplaceScale(int d, const PrivacyParams& params);

// 1 / (epsilon - 2 log(1 - delta)): the exact (epsilon, delta) threshold of
// the one-dimensional Laplace (equivalently l2) mechanism.
double LaplaceApproxDpThreshold(const PrivacyParams& params);

}  // namespace l2mech

#endif  // L2MECH_CALIBRATE_H_
