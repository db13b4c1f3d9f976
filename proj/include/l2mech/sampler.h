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

// Exact samplers for the l2, Laplace and Gaussian mechanisms.
//
// The l2 mechanism with scale sigma outputs center + r z with
// r ~ Gamma(d + 1, sigma) and z uniform in the unit l2 ball. The gamma
// radius is a sum of d + 1 independent -log U terms and z is
// Y^{1/d} X / |X| with X standard normal, so the draw splits into a map over
// d coordinate workers plus a manager, a combine, and a final per-worker
// step. SampleL2Parallel runs that decomposition in-process.

#ifndef L2MECH_SAMPLER_H_
#define L2MECH_SAMPLER_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "l2mech/privacy_params.h"

namespace l2mech {

// Deterministic random stream. Identical (seed, stream_id) pairs reproduce
// identical draws on every platform: the engine is mt19937_64 seeded through
// std::seed_seq, and the uniform and normal transforms are our own.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

  // Uniform on (0, 1], 53-bit resolution; -log of it is always finite.
  double UniformOpenClosed();

  // Box-Muller; the second variate of each pair is cached.
  double StandardNormal();

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

// -scale * sum_{i=1}^{shape} log U_i, distributed Gamma(shape, scale).
double SampleGamma(int shape, double scale, RngStream& rng);

// Uniform point in the unit l2 ball of R^dim.
std::vector<double> SampleUnitBall(int dim, RngStream& rng);

// One draw of the l2 mechanism: density proportional to
// exp(-|y - center|_2 / sigma).
std::vector<double> SampleL2(std::span<const double> center, double sigma,
                             RngStream& rng);

// Independent Laplace(scale) noise on every coordinate.
std::vector<double> SampleLaplace(std::span<const double> center, double scale,
                                  RngStream& rng);

// Independent N(0, sigma^2) noise on every coordinate.
std::vector<double> SampleGaussian(std::span<const double> center,
                                   double sigma, RngStream& rng);

// What worker i reports in the first combine.
struct WorkerContribution {
  double neg_log_uniform = 0;  // -log U_i >= 0
  double gauss = 0;            // X_i
};

// What the manager publishes after the first combine.
struct ManagerBroadcast {
  double manager_neg_log_uniform = 0;  // -log U_{d+1}
  double uniform_y = 1;                // Y in (0, 1]
  double radius = 0;                   // sigma * sum of all -log U terms
  double sum_squares = 0;              // sum_i X_i^2
};

struct ParallelTrace {
  std::vector<double> worker_log_uniforms;
  std::vector<double> worker_gauss;
  double manager_uniform_y = 1;
  double manager_log_uniform = 0;
  double radius = 0;
  double sum_squares = 0;
};

struct ParallelSample {
  std::vector<double> value;
  ParallelTrace trace;
};

// Map step on one worker.
WorkerContribution WorkerDraw(RngStream& worker);

// Combine step on the manager. Fails with kUnavailable when the sum of
// squares is zero; the caller must then redraw every worker.
absl::StatusOr<ManagerBroadcast> CombineContributions(
    std::span<const WorkerContribution> contributions, double sigma,
    RngStream& manager);

// Final step on worker i: center_i + r Y^{1/d} X_i / sqrt(sum X^2).
double WorkerCoordinate(double center_i, const WorkerContribution& mine,
                        const ManagerBroadcast& broadcast, int dim);

// Same law as SampleL2, drawn through the map/combine decomposition with one
// stream per coordinate worker plus the manager's stream.
absl::StatusOr<ParallelSample> SampleL2Parallel(
    std::span<const double> center, double sigma,
    std::span<RngStream> worker_rngs, RngStream& manager_rng);

// count draws of one mechanism around the origin, row-major.
struct SampleBatch {
  int dim = 0;
  int count = 0;
  std::vector<double> values;
  Mechanism mechanism = Mechanism::kL2;
  // l2: the mechanism scale; laplace: per-coordinate scale; gaussian: the
  // per-coordinate standard deviation.
  double sigma = 0;
  uint64_t seed = 0;

  std::span<const double> row(int i) const {
    return std::span<const double>(values).subspan(
        static_cast<size_t>(i) * dim, dim);
  }
};

// Draws from stream (seed, 0).
absl::StatusOr<SampleBatch> DrawBatch(Mechanism mechanism, int dim,
                                      double sigma, int count, uint64_t seed);

}  // namespace l2mech

#endif  // L2MECH_SAMPLER_H_
