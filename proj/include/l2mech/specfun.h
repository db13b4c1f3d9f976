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

// Regularized incomplete gamma and beta functions, their inverses, and the
// standard normal CDF. Everything is evaluated in regularized form and in log
// space where it matters, so shapes in the thousands neither overflow nor
// underflow. All functions are pure and reentrant.

#ifndef L2MECH_SPECFUN_H_
#define L2MECH_SPECFUN_H_

#include "absl/status/statusor.h"

namespace l2mech {

// Raw outcome of an iterative evaluation. A result with converged == false
// must not be used as a value; the public wrappers turn it into an error.
struct SpecFunResult {
  double value = 0;
  bool converged = false;
  int iterations = 0;
};

// P(a, x) and Q(a, x) = 1 - P(a, x), each computed without cancellation on
// its small side.
struct GammaTails {
  double lower = 0;
  double upper = 1;
};

// P(a, x) = gamma(a, x) / Gamma(a). Requires a > 0 and x >= 0, both finite.
absl::StatusOr<double> RegularizedLowerGamma(double a, double x);

// Q(a, x) = Gamma(a, x) / Gamma(a).
absl::StatusOr<double> RegularizedUpperGamma(double a, double x);

absl::StatusOr<GammaTails> RegularizedGammaTails(double a, double x);

// I_x(a, b). Requires 0 <= x <= 1, a > 0, b > 0.
absl::StatusOr<double> RegularizedIncompleteBeta(double x, double a, double b);

// Smallest x >= 0 with P(a, x) = p, for 0 <= p < 1.
absl::StatusOr<double> InverseRegularizedLowerGamma(double a, double p);

// x with Q(a, x) = q, for 0 < q <= 1. Use this for tail targets such as
// q = 1e-9, where 1 - q is not representable precisely enough.
absl::StatusOr<double> InverseRegularizedUpperGamma(double a, double q);

// Phi(t) for finite t.
absl::StatusOr<double> StandardNormalCdf(double t);

// Thread-safe log Gamma(x) for x > 0.
double LogGamma(double x);

namespace internal {

// log(x^a e^{-x} / Gamma(a)), using a Stirling-corrected form for large a.
double LogGammaPrefix(double a, double x);

// Series for P(a, x); efficient when x < a + 1.
SpecFunResult LowerGammaSeries(double a, double x);

// Continued fraction for Q(a, x); efficient when x >= a + 1.
SpecFunResult UpperGammaContinuedFraction(double a, double x);

// I_x(a, b) from the continued fraction, without the symmetry swap.
SpecFunResult IncompleteBetaContinuedFraction(double x, double a, double b);

}  // namespace internal
}  // namespace l2mech

#endif  // L2MECH_SPECFUN_H_
