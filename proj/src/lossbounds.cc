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

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "l2mech/capgeom.h"
#include "l2mech/specfun.h"

namespace l2mech {
namespace {

absl::Status CheckScalars(int d, double sigma, double epsilon) {
  if (d < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!std::isfinite(sigma) || sigma <= 0) {
    return absl::InvalidArgumentError("sigma must be positive and finite");
  }
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  return absl::OkStatus();
}

absl::Status CheckGrid(int count, double first, double r_star) {
  if (count < 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("grid needs at least 2 radii, got %d", count));
  }
  if (!std::isfinite(r_star) || !(r_star > first)) {
    return absl::OutOfRangeError(absl::StrFormat(
        "largest radius %.17g must exceed the first grid radius %.17g", r_star,
        first));
  }
  return absl::OkStatus();
}

// Radial mass of [r_j, r_{j+1}] from the two tails at each end, using the
// side that is below 1/2 so the difference keeps its relative accuracy.
double IntervalMass(const GammaTails& left, const GammaTails& right) {
  if (right.lower <= 0.5) return std::max(right.lower - left.lower, 0.0);
  return std::max(left.upper - right.upper, 0.0);
}

// Sum over a uniform grid of  mass(r_j, r_{j+1}) * weight(r_j)  plus the
// tail beyond r_n weighted by weight(r_n). The reduction order is fixed.
template <typename Weight>
absl::StatusOr<double> LeftRiemannSum(int d, double sigma, double first,
                                      double last, int count,
                                      const Weight& weight) {
  const double step = (last - first) / (count - 1);
  absl::StatusOr<GammaTails> left = RegularizedGammaTails(d, first / sigma);
  if (!left.ok()) return left.status();
  absl::StatusOr<double> left_weight = weight(first);
  if (!left_weight.ok()) return left_weight.status();
  double sum = 0;
  for (int j = 1; j < count; ++j) {
    const double radius = j == count - 1 ? last : first + j * step;
    absl::StatusOr<GammaTails> right = RegularizedGammaTails(d, radius / sigma);
    if (!right.ok()) return right.status();
    sum += IntervalMass(*left, *right) * *left_weight;
    left = right;
    left_weight = weight(radius);
    if (!left_weight.ok()) return left_weight.status();
  }
  sum += left->upper * *left_weight;
  return sum;
}

}  // namespace

std::string_view BoundBranchName(BoundBranch branch) {
  switch (branch) {
    case BoundBranch::kLargeSigma:
      return "large_sigma";
    case BoundBranch::kOneDim:
      return "one_dim";
    case BoundBranch::kGeneral:
      return "general";
  }
  return "unknown";
}

BoundBranch ClassifyBranch(int d, double sigma, double epsilon) {
  const double tau = epsilon * sigma;
  if (tau > 1) return BoundBranch::kLargeSigma;
  if (d == 1) return BoundBranch::kOneDim;
  if (tau == 1) return BoundBranch::kLargeSigma;
  return BoundBranch::kGeneral;
}

absl::StatusOr<double> Term1UpperBound(int d, double sigma, double epsilon,
                                       const GridSpec& grid) {
  if (absl::Status s = CheckScalars(d, sigma, epsilon); !s.ok()) return s;
  switch (ClassifyBranch(d, sigma, epsilon)) {
    case BoundBranch::kLargeSigma:
      return 0.0;
    case BoundBranch::kOneDim:
      return 1 - 0.5 * std::exp(0.5 * (epsilon - 1 / sigma));
    case BoundBranch::kGeneral:
      break;
  }
  absl::StatusOr<LossGeometry> geom = LossGeometry::Create(d, sigma, epsilon);
  if (!geom.ok()) return geom.status();
  const double first = geom->InnerRadius();
  if (absl::Status s = CheckGrid(grid.n_r, first, grid.r_star); !s.ok()) {
    return s;
  }
  // The ball of radius (1 - tau)/2 lies entirely in V.
  absl::StatusOr<double> inner = RegularizedLowerGamma(d, first / sigma);
  if (!inner.ok()) return inner.status();
  absl::StatusOr<double> shell = LeftRiemannSum(
      d, sigma, first, grid.r_star, grid.n_r,
      [&](double r) { return OriginCapFraction(*geom, r); });
  if (!shell.ok()) return shell.status();
  return std::clamp(*inner + *shell, 0.0, 1.0);
}

absl::StatusOr<double> Term2LowerBound(int d, double sigma, double epsilon,
                                       const GridSpec& grid) {
  if (absl::Status s = CheckScalars(d, sigma, epsilon); !s.ok()) return s;
  switch (ClassifyBranch(d, sigma, epsilon)) {
    case BoundBranch::kLargeSigma:
      return 0.0;
    case BoundBranch::kOneDim:
      return 0.5 * std::exp(0.5 * (-epsilon - 1 / sigma));
    case BoundBranch::kGeneral:
      break;
  }
  absl::StatusOr<LossGeometry> geom = LossGeometry::Create(d, sigma, epsilon);
  if (!geom.ok()) return geom.status();
  const double first = geom->NeighborThreshold();
  if (absl::Status s = CheckGrid(grid.n_R, first, grid.r_star); !s.ok()) {
    return s;
  }
  absl::StatusOr<double> sum = LeftRiemannSum(
      d, sigma, first, grid.r_star, grid.n_R,
      [&](double R) { return NeighborCapFraction(*geom, R); });
  if (!sum.ok()) return sum.status();
  return std::clamp(*sum, 0.0, 1.0);
}

absl::StatusOr<double> TailRadius(int d, double sigma, double tail_mass) {
  if (d < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!(sigma > 0)) return absl::InvalidArgumentError("sigma must be positive");
  if (!(tail_mass > 0 && tail_mass < 1)) {
    return absl::InvalidArgumentError("tail mass must be in (0,1)");
  }
  absl::StatusOr<double> x = InverseRegularizedUpperGamma(d, tail_mass);
  if (!x.ok()) return x.status();
  return sigma * *x;
}

absl::StatusOr<BoundReport> CheckApproximateDp(int d, double sigma,
                                               const PrivacyParams& params,
                                               const CheckOptions& options) {
  const double epsilon = params.epsilon();
  if (absl::Status s = CheckScalars(d, sigma, epsilon); !s.ok()) return s;
  if (!(options.tail_fraction > 0 && options.tail_fraction <= 1)) {
    return absl::InvalidArgumentError("tail fraction must be in (0,1]");
  }
  absl::StatusOr<double> r_star =
      TailRadius(d, sigma, options.tail_fraction * params.delta());
  if (!r_star.ok()) return r_star.status();

  BoundReport report;
  report.grid = GridSpec{options.n_r, options.n_R, *r_star};
  report.branch = ClassifyBranch(d, sigma, epsilon);

  absl::StatusOr<double> term1 =
      Term1UpperBound(d, sigma, epsilon, report.grid);
  if (!term1.ok()) return term1.status();
  report.term1_upper = *term1;

  const double tau = epsilon * sigma;
  if (report.branch == BoundBranch::kGeneral && *r_star <= (1 + tau) / 2) {
    // Every point of V is farther than (1 + tau)/2 from e1, so 0 is a valid
    // lower bound when the grid cannot reach that far.
    report.term2_lower = 0;
  } else {
    absl::StatusOr<double> term2 =
        Term2LowerBound(d, sigma, epsilon, report.grid);
    if (!term2.ok()) return term2.status();
    report.term2_lower = *term2;
  }
  report.lhs_upper =
      report.term1_upper - std::exp(epsilon) * report.term2_lower;
  report.satisfies_dp = report.lhs_upper <= params.delta();
  return report;
}

}  // namespace l2mech
