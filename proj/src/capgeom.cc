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

#include "l2mech/capgeom.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "l2mech/specfun.h"

namespace l2mech {
namespace {

absl::Status RequireCapGeometry(const LossGeometry& geom) {
  if (!geom.HasCapGeometry()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "cap geometry needs dim >= 2 and epsilon*sigma < 1 (dim=%d, tau=%g)",
        geom.dim(), geom.tau()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<LossGeometry> LossGeometry::Create(int dim, double sigma,
                                                  double epsilon) {
  if (dim < 1) {
    return absl::InvalidArgumentError("dimension must be at least 1");
  }
  if (!std::isfinite(sigma) || sigma <= 0) {
    return absl::InvalidArgumentError("sigma must be positive and finite");
  }
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError("epsilon must be positive and finite");
  }
  return LossGeometry(dim, sigma, epsilon);
}

absl::StatusOr<double> OriginCapHeight(const LossGeometry& geom, double r) {
  if (absl::Status s = RequireCapGeometry(geom); !s.ok()) return s;
  if (!(r > 0) || !std::isfinite(r)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("cap radius must be positive, got %g", r));
  }
  const double tau = geom.tau();
  if (r <= geom.InnerRadius()) return 2 * r;
  return std::min(r * (1 - tau) + (1 - tau * tau) / 2, 2 * r);
}

absl::StatusOr<double> NeighborCapHeight(const LossGeometry& geom, double R) {
  if (absl::Status s = RequireCapGeometry(geom); !s.ok()) return s;
  if (!std::isfinite(R) || R < geom.NeighborThreshold()) {
    return absl::OutOfRangeError(absl::StrFormat(
        "radius %g is below (1+tau)/2 = %g; the cap fraction there is 0", R,
        geom.NeighborThreshold()));
  }
  const double tau = geom.tau();
  return std::max(R * (1 - tau) - (1 - tau * tau) / 2, 0.0);
}

absl::StatusOr<double> CapFraction(int dim, double r, double h) {
  if (dim < 2) {
    return absl::InvalidArgumentError("cap fraction needs dimension >= 2");
  }
  if (!(r > 0) || !std::isfinite(r)) {
    return absl::InvalidArgumentError("cap radius must be positive");
  }
  if (!(h >= 0 && h <= 2 * r)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("cap height %g outside [0, %g]", h, 2 * r));
  }
  const double a = 0.5 * (dim - 1);
  const bool upper_half = h > r;
  const double small_h = upper_half ? 2 * r - h : h;
  // (2 r h - h^2) / r^2, written to avoid cancellation for small h.
  const double x = std::min(small_h * (2 * r - small_h) / (r * r), 1.0);
  absl::StatusOr<double> ib = RegularizedIncompleteBeta(x, a, 0.5);
  if (!ib.ok()) return ib.status();
  const double half = 0.5 * *ib;
  return upper_half ? 1 - half : half;
}

absl::StatusOr<double> OriginCapFraction(const LossGeometry& geom, double r) {
  absl::StatusOr<double> h = OriginCapHeight(geom, r);
  if (!h.ok()) return h.status();
  if (*h >= 2 * r) return 1.0;
  return CapFraction(geom.dim(), r, *h);
}

absl::StatusOr<double> NeighborCapFraction(const LossGeometry& geom,
                                           double R) {
  if (absl::Status s = RequireCapGeometry(geom); !s.ok()) return s;
  if (R < geom.NeighborThreshold()) return 0.0;
  absl::StatusOr<double> h = NeighborCapHeight(geom, R);
  if (!h.ok()) return h.status();
  return CapFraction(geom.dim(), R, *h);
}

absl::StatusOr<double> RadialCdf(int dim, double sigma, double r) {
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!(sigma > 0)) return absl::InvalidArgumentError("sigma must be positive");
  return RegularizedLowerGamma(dim, r / sigma);
}

}  // namespace l2mech
