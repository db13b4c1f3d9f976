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

// Wire formats: RFC 4180 CSV (CRLF line endings, quoted fields only when
// needed) and JSON documents for every result type the tool emits. Doubles
// are written in the shortest form that round-trips exactly.

#ifndef L2MECH_IO_H_
#define L2MECH_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "l2mech/calibrate.h"
#include "l2mech/errormodel.h"
#include "l2mech/lossbounds.h"
#include "l2mech/mcverify.h"
#include "l2mech/sampler.h"

namespace l2mech {

std::string FormatDouble(double value);

// Quotes a field if it contains a comma, quote, CR or LF.
std::string CsvField(std::string_view field);
// Joins fields and terminates the record with CRLF.
std::string CsvRecord(const std::vector<std::string>& fields);

// Header x0..x{d-1}, one record per draw.
std::string SampleBatchToCsv(const SampleBatch& batch);
// {"mechanism", "dim", "count", "sigma", "seed", "values": [[...], ...]}
nlohmann::json SampleBatchToJson(const SampleBatch& batch);

// Header d,mechanism,sigma,mse,normalized_mse.
std::string ErrorRowsToCsv(const std::vector<ErrorRow>& rows);
nlohmann::json ErrorRowsToJson(const std::vector<ErrorRow>& rows);

// {d, sigma, epsilon, n, c1, c2, lhs, std_error, seed}
nlohmann::json EstimateToJson(const EmpiricalPrivacyEstimate& estimate);

// {term1_upper, term2_lower, lhs_upper, satisfies_dp, branch, n_r, n_R,
//  r_star}
nlohmann::json BoundReportToJson(const BoundReport& report);

// {mechanism, dim, epsilon, delta, sigma, pure_epsilon (or null),
//  search_iterations, tolerance, hit_bracket_floor}
nlohmann::json CalibrationToJson(const CalibrationResult& result, int dim,
                                 const PrivacyParams& params);

}  // namespace l2mech

#endif  // L2MECH_IO_H_
