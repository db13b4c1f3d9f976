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

#include "l2mech/specfun.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace l2mech {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 100000;

absl::Status NotConverged(const char* what, double a, double x) {
  return absl::InternalError(absl::StrFormat(
      "%s did not converge for a=%.17g, x=%.17g", what, a, x));
}

// log(1 + t) - t without cancellation for small |t|.
double Log1pMinusX(double t) {
  if (std::fabs(t) > 0.1) return std::log1p(t) - t;
  // -t^2/2 + t^3/3 - ...
  double power = t * t;
  double sum = 0;
  for (int k = 2; k < 60; ++k) {
    const double term = power / k;
    sum += (k % 2 == 0) ? -term : term;
    if (std::fabs(term) < kEps * std::fabs(sum)) break;
    power *= t;
  }
  return sum;
}

// lgamma(a) - [(a - 1/2) log a - a + log(2 pi) / 2], valid for a >= 10.
double StirlingCorrection(double a) {
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12 +
          inv2 * (-1.0 / 360 +
                  inv2 * (1.0 / 1260 +
                          inv2 * (-1.0 / 1680 +
                                  inv2 * (1.0 / 1188 +
                                          inv2 * (-691.0 / 360360 +
                                                  inv2 * (1.0 / 156)))))));
}

absl::Status CheckGammaArgs(double a, double x) {
  if (!std::isfinite(a) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        "incomplete gamma: arguments must be finite");
  }
  if (a <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("incomplete gamma: shape must be positive, got %g", a));
  }
  if (x < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "incomplete gamma: argument must be nonnegative, got %g", x));
  }
  return absl::OkStatus();
}

enum class Tail { kLower, kUpper };

// Solves P(a, x) = target (kLower) or Q(a, x) = target (kUpper) by a
// bracketed Newton iteration on log P or log Q.
absl::StatusOr<double> InvertGamma(double a, double target, Tail tail) {
  auto log_tail = [&](double x) -> absl::StatusOr<double> {
    absl::StatusOr<GammaTails> t = RegularizedGammaTails(a, x);
    if (!t.ok()) return t.status();
    return std::log(tail == Tail::kLower ? t->lower : t->upper);
  };
  const double log_target = std::log(target);
  // g(x) = log P(x) - log target is increasing; for Q we flip the sign so
  // that g is increasing in both cases.
  const double sign = tail == Tail::kLower ? 1.0 : -1.0;

  double lo = 0;
  double hi = std::max(1.0, a);
  for (int i = 0;; ++i) {
    absl::StatusOr<double> g = log_tail(hi);
    if (!g.ok()) return g.status();
    if (sign * (*g - log_target) >= 0) break;
    lo = hi;
    hi *= 2;
    if (i > 2000 || !std::isfinite(hi)) {
      return absl::InternalError("inverse incomplete gamma: bracket failed");
    }
  }

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    absl::StatusOr<GammaTails> t = RegularizedGammaTails(a, x);
    if (!t.ok()) return t.status();
    const double value = tail == Tail::kLower ? t->lower : t->upper;
    const double g = sign * (std::log(value) - log_target);
    if (std::fabs(g) <= 4 * kEps) return x;
    if (g < 0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4 * kEps * hi) return x;
    // d/dx log P = density / P, density = exp(prefix) / x.
    const double density = std::exp(internal::LogGammaPrefix(a, x)) / x;
    double next = x - g * value / density;
    if (!(next > lo && next < hi) || !std::isfinite(next) || value == 0) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  return absl::InternalError(absl::StrFormat(
      "inverse incomplete gamma did not converge for a=%g, target=%g", a,
      target));
}

}  // namespace

double LogGamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace internal {

double LogGammaPrefix(double a, double x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  if (a < 10) return a * std::log(x) - x - LogGamma(a);
  const double t = (x - a) / a;
  return a * Log1pMinusX(t) + 0.5 * std::log(a / (2 * std::numbers::pi)) -
         StirlingCorrection(a);
}

SpecFunResult LowerGammaSeries(double a, double x) {
  SpecFunResult result;
  if (x == 0) {
    result.converged = true;
    return result;
  }
  double denom = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n <= kMaxIterations; ++n) {
    denom += 1;
    term *= x / denom;
    sum += term;
    if (term < sum * kEps) {
      result.value = std::exp(LogGammaPrefix(a, x)) * sum;
      result.converged = true;
      result.iterations = n;
      return result;
    }
  }
  result.iterations = kMaxIterations;
  return result;
}

SpecFunResult UpperGammaContinuedFraction(double a, double x) {
  SpecFunResult result;
  // Convergents A/B of 1/(b0 + a1/(b1 + a2/(b2 + ...))) by the forward
  // recurrence, with b_i = x + 1 - a + 2 i and a_i = -i (i - a).
  double b = x + 1 - a;
  double a_prev = 0;
  double b_prev = 1;
  double a_cur = 1;
  double b_cur = b;
  double h = a_cur / b_cur;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2;
    const double a_next = b * a_cur + an * a_prev;
    const double b_next = b * b_cur + an * b_prev;
    a_prev = a_cur;
    b_prev = b_cur;
    a_cur = a_next;
    b_cur = b_next;
    if (b_cur == 0) continue;
    const double next = a_cur / b_cur;
    const bool done = std::fabs(next - h) < kEps * std::fabs(next);
    h = next;
    if (done) {
      result.value = std::exp(LogGammaPrefix(a, x)) * h;
      result.converged = true;
      result.iterations = i;
      return result;
    }
    const double scale = std::fabs(b_cur);
    if (scale > 1e100 || scale < 1e-100) {
      a_prev /= scale;
      b_prev /= scale;
      a_cur /= scale;
      b_cur /= scale;
    }
  }
  result.iterations = kMaxIterations;
  return result;
}

SpecFunResult IncompleteBetaContinuedFraction(double x, double a, double b) {
  SpecFunResult result;
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           (LogGamma(a) + LogGamma(b) - LogGamma(a + b));
  const double qab = a + b;
  const double qap = a + 1;
  const double qam = a - 1;
  // Convergents A/B of 1/(1 + d1/(1 + d2/(1 + ...))) by the forward
  // recurrence, which keeps divisions off the dependency chain.
  double a_prev = 1;
  double b_prev = 1;
  double a_cur = 1;
  double b_cur = 1 - qab * x / qap;
  double h = a_cur / b_cur;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    const double even = m * (b - m) * x / ((qam + m2) * (a + m2));
    const double odd = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    double a_next = a_cur + even * a_prev;
    double b_next = b_cur + even * b_prev;
    a_prev = a_cur;
    b_prev = b_cur;
    a_cur = a_next + odd * a_prev;
    b_cur = b_next + odd * b_prev;
    a_prev = a_next;
    b_prev = b_next;
    if (b_cur == 0) continue;
    const double next = a_cur / b_cur;
    const bool done = std::fabs(next - h) < kEps * std::fabs(next);
    h = next;
    if (done) {
      result.value = std::exp(log_front) * h / a;
      result.converged = true;
      result.iterations = m;
      return result;
    }
    const double scale = std::fabs(b_cur);
    if (scale > 1e100 || scale < 1e-100) {
      a_prev /= scale;
      b_prev /= scale;
      a_cur /= scale;
      b_cur /= scale;
    }
  }
  result.iterations = kMaxIterations;
  return result;
}

}  // namespace internal

absl::StatusOr<GammaTails> RegularizedGammaTails(double a, double x) {
  if (absl::Status s = CheckGammaArgs(a, x); !s.ok()) return s;
  GammaTails tails;
  if (x == 0) return tails;
  if (x < a + 1) {
    const SpecFunResult p = internal::LowerGammaSeries(a, x);
    if (!p.converged) return NotConverged("incomplete gamma series", a, x);
    tails.lower = std::min(p.value, 1.0);
    tails.upper = 1 - tails.lower;
  } else {
    const SpecFunResult q = internal::UpperGammaContinuedFraction(a, x);
    if (!q.converged) {
      return NotConverged("incomplete gamma continued fraction", a, x);
    }
    tails.upper = std::min(q.value, 1.0);
    tails.lower = 1 - tails.upper;
  }
  return tails;
}

absl::StatusOr<double> RegularizedLowerGamma(double a, double x) {
  absl::StatusOr<GammaTails> tails = RegularizedGammaTails(a, x);
  if (!tails.ok()) return tails.status();
  return tails->lower;
}

absl::StatusOr<double> RegularizedUpperGamma(double a, double x) {
  absl::StatusOr<GammaTails> tails = RegularizedGammaTails(a, x);
  if (!tails.ok()) return tails.status();
  return tails->upper;
}

absl::StatusOr<double> RegularizedIncompleteBeta(double x, double a,
                                                 double b) {
  if (!std::isfinite(x) || !std::isfinite(a) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        "incomplete beta: arguments must be finite");
  }
  if (x < 0 || x > 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("incomplete beta: x must be in [0,1], got %g", x));
  }
  if (a <= 0 || b <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "incomplete beta: shapes must be positive, got a=%g b=%g", a, b));
  }
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  if (x < (a + 1) / (a + b + 2)) {
    const SpecFunResult r = internal::IncompleteBetaContinuedFraction(x, a, b);
    if (!r.converged) return NotConverged("incomplete beta", a, x);
    return std::clamp(r.value, 0.0, 1.0);
  }
  const SpecFunResult r =
      internal::IncompleteBetaContinuedFraction(1 - x, b, a);
  if (!r.converged) return NotConverged("incomplete beta", b, 1 - x);
  return std::clamp(1 - r.value, 0.0, 1.0);
}

absl::StatusOr<double> InverseRegularizedLowerGamma(double a, double p) {
  if (absl::Status s = CheckGammaArgs(a, 0); !s.ok()) return s;
  if (!(p >= 0 && p < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "inverse incomplete gamma: p must be in [0,1), got %g", p));
  }
  if (p == 0) return 0.0;
  if (p > 0.5) return InvertGamma(a, 1 - p, Tail::kUpper);
  return InvertGamma(a, p, Tail::kLower);
}

absl::StatusOr<double> InverseRegularizedUpperGamma(double a, double q) {
  if (absl::Status s = CheckGammaArgs(a, 0); !s.ok()) return s;
  if (!(q > 0 && q <= 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "inverse incomplete gamma: q must be in (0,1], got %g", q));
  }
  if (q == 1) return 0.0;
  if (q < 0.5) return InvertGamma(a, q, Tail::kUpper);
  return InvertGamma(a, 1 - q, Tail::kLower);
}

absl::StatusOr<double> StandardNormalCdf(double t) {
  if (!std::isfinite(t)) {
    return absl::InvalidArgumentError("normal cdf: argument must be finite");
  }
  return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

}  // namespace l2mech
