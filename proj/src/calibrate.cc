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

#include "l2mech/calibrate.h"

#include <cmath>
#include <functional>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "l2mech/specfun.h"

namespace l2mech {
namespace {

constexpr double kSigmaFloor = 1e-12;

absl::Status CheckTolerance(double tol) {
  if (!std::isfinite(tol) || tol <= 0) {
    return absl::InvalidArgumentError("tolerance must be positive");
  }
  return absl::OkStatus();
}

using Predicate = std::function<absl::StatusOr<bool>(double)>;

// Bisects [lo, hi] with passes(hi) true and passes(lo) false until the
// width is at most tol; returns hi.
absl::StatusOr<double> Bisect(const Predicate& passes, double lo, double hi,
                              double tol, int& iterations) {
  while (hi - lo > tol) {
    if (++iterations > kMaxSearchIterations) {
      return absl::InternalError(absl::StrFormat(
          "sigma search did not converge in %d iterations",
          kMaxSearchIterations));
    }
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<bool> ok = passes(mid);
    if (!ok.ok()) return ok.status();
    if (*ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

absl::StatusOr<CalibrationResult> CalibrateL2(int d,
                                              const PrivacyParams& params,
                                              const CheckOptions& options,
                                              double tol) {
  if (absl::Status s = CheckTolerance(tol); !s.ok()) return s;
  if (d < 1) return absl::InvalidArgumentError("dimension must be >= 1");

  const Predicate certified = [&](double sigma) -> absl::StatusOr<bool> {
    absl::StatusOr<BoundReport> report =
        CheckApproximateDp(d, sigma, params, options);
    // A tail radius inside the all-high-loss ball cannot be certified.
    if (absl::IsOutOfRange(report.status())) return false;
    if (!report.ok()) return report.status();
    return report->satisfies_dp;
  };

  CalibrationResult result;
  result.mechanism = Mechanism::kL2;
  result.tolerance = tol;

  if (d == 1) {
    // The check is 1 - exp((eps - 1/sigma)/2) <= delta, which inverts in
    // closed form. Step up past any rounding in the inversion.
    double sigma = LaplaceApproxDpThreshold(params);
    for (;;) {
      absl::StatusOr<bool> ok = certified(sigma);
      if (!ok.ok()) return ok.status();
      if (*ok) break;
      if (++result.search_iterations > kMaxSearchIterations) {
        return absl::InternalError("one-dimensional threshold not certified");
      }
      sigma = std::nextafter(sigma, HUGE_VAL);
    }
    result.sigma = sigma;
    result.pure_epsilon = 1 / sigma;
    return result;
  }

  const double hi = 1 / params.epsilon();
  double lo = std::min(tol, 0.5 * hi);
  int iterations = 0;
  for (;;) {
    absl::StatusOr<bool> ok = certified(lo);
    if (!ok.ok()) return ok.status();
    if (!*ok) break;
    if (++iterations > kMaxSearchIterations || lo / 2 < kSigmaFloor) {
      result.sigma = lo;
      result.pure_epsilon = 1 / lo;
      result.search_iterations = iterations;
      result.hit_bracket_floor = true;
      return result;
    }
    lo /= 2;
  }
  absl::StatusOr<double> sigma = Bisect(certified, lo, hi, tol, iterations);
  if (!sigma.ok()) return sigma.status();
  result.sigma = *sigma;
  result.pure_epsilon = 1 / *sigma;
  result.search_iterations = iterations;
  return result;
}

absl::StatusOr<CalibrationResult> CalibrateL2WithSensitivity(
    int d, const PrivacyParams& params, double l2_sensitivity,
    const CheckOptions& options, double tol) {
  if (!std::isfinite(l2_sensitivity) || l2_sensitivity <= 0) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  absl::StatusOr<CalibrationResult> unit =
      CalibrateL2(d, params, options, tol / l2_sensitivity);
  if (!unit.ok()) return unit.status();
  unit->sigma *= l2_sensitivity;
  unit->tolerance = tol;
  // The pure guarantee is sensitivity / sigma, unchanged by the rescaling.
  return unit;
}

absl::StatusOr<double> GaussianDelta(double sigma, double epsilon) {
  if (!(sigma > 0) || !(epsilon > 0)) {
    return absl::InvalidArgumentError("sigma and epsilon must be positive");
  }
  absl::StatusOr<double> first =
      StandardNormalCdf(0.5 / sigma - epsilon * sigma);
  absl::StatusOr<double> second =
      StandardNormalCdf(-0.5 / sigma - epsilon * sigma);
  if (!first.ok()) return first.status();
  if (!second.ok()) return second.status();
  return *first - std::exp(epsilon) * *second;
}

absl::StatusOr<CalibrationResult> CalibrateGaussian(
    const PrivacyParams& params, double tol) {
  if (absl::Status s = CheckTolerance(tol); !s.ok()) return s;
  const Predicate passes = [&](double sigma) -> absl::StatusOr<bool> {
    absl::StatusOr<double> delta = GaussianDelta(sigma, params.epsilon());
    if (!delta.ok()) return delta.status();
    return *delta <= params.delta();
  };

  int iterations = 0;
  double hi = 1;
  for (;;) {
    absl::StatusOr<bool> ok = passes(hi);
    if (!ok.ok()) return ok.status();
    if (*ok) break;
    if (++iterations > kMaxSearchIterations) {
      return absl::InternalError("gaussian sigma search failed to bracket");
    }
    hi *= 2;
  }
  double lo = std::min(tol, 0.5 * hi);
  for (;;) {
    absl::StatusOr<bool> ok = passes(lo);
    if (!ok.ok()) return ok.status();
    if (!*ok) break;
    if (++iterations > kMaxSearchIterations || lo / 2 < kSigmaFloor) {
      return absl::InternalError("gaussian sigma search failed to bracket");
    }
    lo /= 2;
  }
  absl::StatusOr<double> sigma = Bisect(passes, lo, hi, tol, iterations);
  if (!sigma.ok()) return sigma.status();

  CalibrationResult result;
  result.mechanism = Mechanism::kGaussian;
  result.sigma = *sigma;
  result.search_iterations = iterations;
  result.tolerance = tol;
  return result;
}

CalibrationResult LaplaceScale(int d, const PrivacyParams& params) {
  CalibrationResult result;
  result.mechanism = Mechanism::kLaplace;
  result.sigma = std::sqrt(static_cast<double>(d)) /
                 (params.epsilon() + params.delta());
  result.pure_epsilon = std::sqrt(static_cast<double>(d)) / result.sigma;
  return result;
}

double LaplaceApproxDpThreshold(const PrivacyParams& params) {
  return 1 / (params.epsilon() - 2 * std::log1p(-params.delta()));
}

}  // namespace l2mech
