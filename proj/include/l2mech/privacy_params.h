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

#ifndef L2MECH_PRIVACY_PARAMS_H_
#define L2MECH_PRIVACY_PARAMS_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace l2mech {

// Target (epsilon, delta) for calibration and checking. Construct through
// Create() so that epsilon > 0 and 0 < delta < 1 always hold.
class PrivacyParams {
 public:
  static absl::StatusOr<PrivacyParams> Create(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

 private:
  PrivacyParams(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
};

enum class Mechanism { kL2, kLaplace, kGaussian };

// Lower-case names used in CSV/JSON output and on the command line.
std::string_view MechanismName(Mechanism mechanism);
absl::StatusOr<Mechanism> ParseMechanism(std::string_view name);

}  // namespace l2mech

#endif  // L2MECH_PRIVACY_PARAMS_H_
