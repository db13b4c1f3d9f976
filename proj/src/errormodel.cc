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

#include "l2mech/errormodel.h"

#include <cmath>

#include "absl/status/status.h"
#include "l2mech/calibrate.h"
#include "l2mech/specfun.h"

namespace l2mech {

absl::StatusOr<double> LpMechanismMse(int d, double p, double sigma) {
  if (d < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!(p > 0) || !std::isfinite(p)) {
    return absl::InvalidArgumentError("p must be positive");
  }
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError("sigma must be positive");
  }
  const double dd = d;
  const double log_ratio = LogGamma(dd / p) + LogGamma(3 / p) -
                           LogGamma(1 / p) - LogGamma((dd + 2) / p);
  return dd * dd * sigma * sigma * (dd + 1) * std::exp(log_ratio);
}

absl::StatusOr<double> GaussianMse(int d, double sigma) {
  if (d < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!(sigma > 0)) return absl::InvalidArgumentError("sigma must be positive");
  return d * sigma * sigma;
}

absl::StatusOr<double> MechanismMse(Mechanism mechanism, int d, double sigma) {
  switch (mechanism) {
    case Mechanism::kL2:
      return LpMechanismMse(d, 2, sigma);
    case Mechanism::kLaplace:
      return LpMechanismMse(d, 1, sigma);
    case Mechanism::kGaussian:
      return GaussianMse(d, sigma);
  }
  return absl::InvalidArgumentError("unknown mechanism");
}

absl::StatusOr<std::vector<ErrorRow>> ComparisonTable(
    const PrivacyParams& params, int d_max, const CheckOptions& options,
    double tol) {
  if (d_max < 1) return absl::InvalidArgumentError("d_max must be >= 1");
  absl::StatusOr<CalibrationResult> gaussian = CalibrateGaussian(params, tol);
  if (!gaussian.ok()) return gaussian.status();

  std::vector<ErrorRow> rows;
  rows.reserve(3 * static_cast<size_t>(d_max));
  for (int d = 1; d <= d_max; ++d) {
    absl::StatusOr<CalibrationResult> l2 = CalibrateL2(d, params, options, tol);
    if (!l2.ok()) return l2.status();
    const double sigmas[] = {l2->sigma, LaplaceScale(d, params).sigma,
                             gaussian->sigma};
    const Mechanism order[] = {Mechanism::kL2, Mechanism::kLaplace,
                               Mechanism::kGaussian};
    absl::StatusOr<double> anchor = GaussianMse(d, gaussian->sigma);
    if (!anchor.ok()) return anchor.status();
    for (int k = 0; k < 3; ++k) {
      absl::StatusOr<double> mse = MechanismMse(order[k], d, sigmas[k]);
      if (!mse.ok()) return mse.status();
      rows.push_back(ErrorRow{d, order[k], sigmas[k], *mse, *mse / *anchor});
    }
  }
  return rows;
}

}  // namespace l2mech
