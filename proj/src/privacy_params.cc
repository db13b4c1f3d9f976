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

#include "l2mech/privacy_params.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace l2mech {

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    double delta) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError("delta must be in (0,1)");
  }
  return PrivacyParams(epsilon, delta);
}

std::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kL2:
      return "l2";
    case Mechanism::kLaplace:
      return "laplace";
    case Mechanism::kGaussian:
      return "gaussian";
  }
  return "unknown";
}

absl::StatusOr<Mechanism> ParseMechanism(std::string_view name) {
  if (name == "l2") return Mechanism::kL2;
  if (name == "laplace") return Mechanism::kLaplace;
  if (name == "gaussian") return Mechanism::kGaussian;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", std::string(name),
                   "' (expected l2, laplace or gaussian)"));
}

}  // namespace l2mech
