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

#include "l2mech/sampler.h"

#include <cmath>
#include <numbers>

#include "absl/status/status.h"

namespace l2mech {
namespace {

std::seed_seq MakeSeedSeq(uint64_t seed, uint64_t stream_id) {
  return std::seed_seq{static_cast<uint32_t>(seed),
                       static_cast<uint32_t>(seed >> 32),
                       static_cast<uint32_t>(stream_id),
                       static_cast<uint32_t>(stream_id >> 32)};
}

std::mt19937_64 MakeEngine(uint64_t seed, uint64_t stream_id) {
  std::seed_seq seq = MakeSeedSeq(seed, stream_id);
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(MakeEngine(seed, stream_id)) {}

double RngStream::UniformOpenClosed() {
  // (k + 1) / 2^53 for k uniform on [0, 2^53).
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::StandardNormal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2 * std::log(UniformOpenClosed()));
  const double angle = 2 * std::numbers::pi * UniformOpenClosed();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double SampleGamma(int shape, double scale, RngStream& rng) {
  double sum = 0;
  for (int i = 0; i < shape; ++i) sum -= std::log(rng.UniformOpenClosed());
  return scale * sum;
}

std::vector<double> SampleUnitBall(int dim, RngStream& rng) {
  std::vector<double> x(dim);
  double sum_squares = 0;
  while (sum_squares == 0) {
    sum_squares = 0;
    for (double& xi : x) {
      xi = rng.StandardNormal();
      sum_squares += xi * xi;
    }
  }
  const double scale =
      std::pow(rng.UniformOpenClosed(), 1.0 / dim) / std::sqrt(sum_squares);
  for (double& xi : x) xi *= scale;
  return x;
}

std::vector<double> SampleL2(std::span<const double> center, double sigma,
                             RngStream& rng) {
  const int dim = static_cast<int>(center.size());
  const double radius = SampleGamma(dim + 1, sigma, rng);
  std::vector<double> y = SampleUnitBall(dim, rng);
  for (int i = 0; i < dim; ++i) y[i] = center[i] + radius * y[i];
  return y;
}

std::vector<double> SampleLaplace(std::span<const double> center, double scale,
                                  RngStream& rng) {
  std::vector<double> y(center.begin(), center.end());
  for (double& yi : y) {
    // Difference of two Exp(1) variables is Laplace(1).
    yi += scale * (std::log(rng.UniformOpenClosed()) -
                   std::log(rng.UniformOpenClosed()));
  }
  return y;
}

std::vector<double> SampleGaussian(std::span<const double> center,
                                   double sigma, RngStream& rng) {
  std::vector<double> y(center.begin(), center.end());
  for (double& yi : y) yi += sigma * rng.StandardNormal();
  return y;
}

WorkerContribution WorkerDraw(RngStream& worker) {
  WorkerContribution c;
  c.neg_log_uniform = -std::log(worker.UniformOpenClosed());
  c.gauss = worker.StandardNormal();
  return c;
}

absl::StatusOr<ManagerBroadcast> CombineContributions(
    std::span<const WorkerContribution> contributions, double sigma,
    RngStream& manager) {
  ManagerBroadcast b;
  double log_sum = 0;
  for (const WorkerContribution& c : contributions) {
    log_sum += c.neg_log_uniform;
    b.sum_squares += c.gauss * c.gauss;
  }
  b.manager_neg_log_uniform = -std::log(manager.UniformOpenClosed());
  b.uniform_y = manager.UniformOpenClosed();
  b.radius = sigma * (b.manager_neg_log_uniform + log_sum);
  if (b.sum_squares == 0) {
    return absl::UnavailableError("all worker normals were zero; redraw");
  }
  return b;
}

double WorkerCoordinate(double center_i, const WorkerContribution& mine,
                        const ManagerBroadcast& broadcast, int dim) {
  return center_i + broadcast.radius *
                        std::pow(broadcast.uniform_y, 1.0 / dim) * mine.gauss /
                        std::sqrt(broadcast.sum_squares);
}

absl::StatusOr<ParallelSample> SampleL2Parallel(
    std::span<const double> center, double sigma,
    std::span<RngStream> worker_rngs, RngStream& manager_rng) {
  const int dim = static_cast<int>(center.size());
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (worker_rngs.size() != center.size()) {
    return absl::InvalidArgumentError("need exactly one worker per coordinate");
  }
  if (!(sigma > 0)) return absl::InvalidArgumentError("sigma must be positive");

  std::vector<WorkerContribution> contributions(dim);
  absl::StatusOr<ManagerBroadcast> broadcast;
  do {
    for (int i = 0; i < dim; ++i) contributions[i] = WorkerDraw(worker_rngs[i]);
    broadcast = CombineContributions(contributions, sigma, manager_rng);
  } while (!broadcast.ok() && absl::IsUnavailable(broadcast.status()));
  if (!broadcast.ok()) return broadcast.status();

  ParallelSample out;
  out.value.resize(dim);
  out.trace.worker_log_uniforms.resize(dim);
  out.trace.worker_gauss.resize(dim);
  for (int i = 0; i < dim; ++i) {
    out.value[i] = WorkerCoordinate(center[i], contributions[i], *broadcast, dim);
    out.trace.worker_log_uniforms[i] = contributions[i].neg_log_uniform;
    out.trace.worker_gauss[i] = contributions[i].gauss;
  }
  out.trace.manager_uniform_y = broadcast->uniform_y;
  out.trace.manager_log_uniform = broadcast->manager_neg_log_uniform;
  out.trace.radius = broadcast->radius;
  out.trace.sum_squares = broadcast->sum_squares;
  return out;
}

absl::StatusOr<SampleBatch> DrawBatch(Mechanism mechanism, int dim,
                                      double sigma, int count, uint64_t seed) {
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (count < 0) return absl::InvalidArgumentError("count must be >= 0");
  if (!std::isfinite(sigma) || sigma <= 0) {
    return absl::InvalidArgumentError("sigma must be positive");
  }
  SampleBatch batch;
  batch.dim = dim;
  batch.count = count;
  batch.mechanism = mechanism;
  batch.sigma = sigma;
  batch.seed = seed;
  batch.values.reserve(static_cast<size_t>(dim) * count);
  RngStream rng(seed, 0);
  const std::vector<double> origin(dim, 0.0);
  for (int i = 0; i < count; ++i) {
    std::vector<double> y;
    switch (mechanism) {
      case Mechanism::kL2:
        y = SampleL2(origin, sigma, rng);
        break;
      case Mechanism::kLaplace:
        y = SampleLaplace(origin, sigma, rng);
        break;
      case Mechanism::kGaussian:
        y = SampleGaussian(origin, sigma, rng);
        break;
    }
    batch.values.insert(batch.values.end(), y.begin(), y.end());
  }
  return batch;
}

}  // namespace l2mech
