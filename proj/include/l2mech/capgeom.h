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

// Geometry of the high privacy loss region
//
//   V = { y : (|y - e1| - |y|) / sigma >= epsilon }
//
// for the l2 mechanism with unit sensitivity. On every sphere of radius r
// around 0, and on every sphere of radius R >= (1 + tau) / 2 around e1, the
// part of the sphere inside V is a spherical cap facing -e1. This module
// computes the heights of those caps and their surface fractions, plus the
// radial CDF of the mechanism.

#ifndef L2MECH_CAPGEOM_H_
#define L2MECH_CAPGEOM_H_

#include "absl/status/statusor.h"

namespace l2mech {

// Dimension, noise scale and target epsilon. tau() = epsilon * sigma is
// recomputed on every call rather than stored.
class LossGeometry {
 public:
  static absl::StatusOr<LossGeometry> Create(int dim, double sigma,
                                             double epsilon);

  int dim() const { return dim_; }
  double sigma() const { return sigma_; }
  double epsilon() const { return epsilon_; }
  double tau() const { return epsilon_ * sigma_; }

  // Cap heights are only defined when V is a nondegenerate region in at
  // least two dimensions.
  bool HasCapGeometry() const { return dim_ >= 2 && tau() < 1; }

  // Radius below which the whole sphere around 0 lies in V.
  double InnerRadius() const { return (1 - tau()) / 2; }
  // Radius below which no point of the sphere around e1 lies in V.
  double NeighborThreshold() const { return (1 + tau()) / 2; }

 private:
  LossGeometry(int dim, double sigma, double epsilon)
      : dim_(dim), sigma_(sigma), epsilon_(epsilon) {}

  int dim_;
  double sigma_;
  double epsilon_;
};

// h(r) = min(r (1 - tau) + (1 - tau^2) / 2, 2r): height of V's cap on the
// sphere of radius r around 0. Equals 2r (the whole sphere) for
// r <= (1 - tau) / 2.
absl::StatusOr<double> OriginCapHeight(const LossGeometry& geom, double r);

// H(R) = R (1 - tau) - (1 - tau^2) / 2: height of V's cap on the sphere of
// radius R around e1. Defined only for R >= (1 + tau) / 2; below that the
// sphere misses V entirely and callers must use a zero fraction themselves.
absl::StatusOr<double> NeighborCapHeight(const LossGeometry& geom, double R);

// Fraction of the surface of a radius-r sphere in R^dim covered by a cap of
// height h, 0 <= h <= 2r.
absl::StatusOr<double> CapFraction(int dim, double r, double h);

// F_{r,h(r)}: fraction of the sphere of radius r around 0 that lies in V.
absl::StatusOr<double> OriginCapFraction(const LossGeometry& geom, double r);

// U_R: fraction of the sphere of radius R around e1 that lies in V. Zero
// below the neighbor threshold.
absl::StatusOr<double> NeighborCapFraction(const LossGeometry& geom, double R);

// P(|y - center| <= r) for the l2 mechanism with scale sigma in R^dim, i.e.
// the regularized lower incomplete gamma P(dim, r / sigma).
absl::StatusOr<double> RadialCdf(int dim, double sigma, double r);

}  // namespace l2mech

#endif  // L2MECH_CAPGEOM_H_
