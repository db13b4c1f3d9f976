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

// Closed-form mean squared l2 error of the mechanisms, and the per-dimension
// comparison at calibrated noise scales.

#ifndef L2MECH_ERRORMODEL_H_
#define L2MECH_ERRORMODEL_H_

#include <vector>

#include "absl/status/statusor.h"
#include "l2mech/lossbounds.h"
#include "l2mech/privacy_params.h"

namespace l2mech {

// E|y - T|_2^2 for the d-dimensional l_p K-norm mechanism with scale sigma:
//   (d sigma)^2 (d + 1) Gamma(d/p) Gamma(3/p) / (Gamma(1/p) Gamma((d+2)/p)),
// evaluated through log-gamma differences.
absl::StatusOr<double> LpMechanismMse(int d, double p, double sigma);

// d sigma^2.
absl::StatusOr<double> GaussianMse(int d, double sigma);

// MSE of a calibrated mechanism: l2 -> p = 2 with scale sigma, Laplace ->
// p = 1 with per-coordinate scale sigma, Gaussian -> d sigma^2.
absl::StatusOr<double> MechanismMse(Mechanism mechanism, int d, double sigma);

struct ErrorRow {
  int dim = 0;
  Mechanism mechanism = Mechanism::kL2;
  double sigma = 0;
  double mse = 0;
  // mse divided by the Gaussian mse at the same (epsilon, delta, d).
  double normalized_mse = 0;
};

// For every d in 1..d_max, calibrates l2, Laplace and Gaussian noise and
// emits one row per mechanism in that order, ascending in d.
absl::StatusOr<std::vector<ErrorRow>> ComparisonTable(
    const PrivacyParams& params, int d_max,
    const CheckOptions& options = CheckOptions(), double tol = 0.001);

}  // namespace l2mech

#endif  // L2MECH_ERRORMODEL_H_
