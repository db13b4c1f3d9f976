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

#include "l2mech/io.h"

#include <charconv>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace l2mech {

std::string FormatDouble(double value) {
  char buffer[32];
  std::to_chars_result result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string CsvRecord(const std::vector<std::string>& fields) {
  std::vector<std::string> escaped;
  escaped.reserve(fields.size());
  for (const std::string& f : fields) escaped.push_back(CsvField(f));
  return absl::StrCat(absl::StrJoin(escaped, ","), "\r\n");
}

std::string SampleBatchToCsv(const SampleBatch& batch) {
  std::vector<std::string> header;
  for (int j = 0; j < batch.dim; ++j) header.push_back(absl::StrCat("x", j));
  std::string out = CsvRecord(header);
  std::vector<std::string> fields(batch.dim);
  for (int i = 0; i < batch.count; ++i) {
    std::span<const double> row = batch.row(i);
    for (int j = 0; j < batch.dim; ++j) fields[j] = FormatDouble(row[j]);
    out += CsvRecord(fields);
  }
  return out;
}

nlohmann::json SampleBatchToJson(const SampleBatch& batch) {
  nlohmann::json values = nlohmann::json::array();
  for (int i = 0; i < batch.count; ++i) {
    std::span<const double> row = batch.row(i);
    values.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"mechanism", MechanismName(batch.mechanism)},
          {"dim", batch.dim},
          {"count", batch.count},
          {"sigma", batch.sigma},
          {"seed", batch.seed},
          {"values", std::move(values)}};
}

std::string ErrorRowsToCsv(const std::vector<ErrorRow>& rows) {
  std::string out = CsvRecord({"d", "mechanism", "sigma", "mse",
                               "normalized_mse"});
  for (const ErrorRow& row : rows) {
    out += CsvRecord({absl::StrCat(row.dim),
                      std::string(MechanismName(row.mechanism)),
                      FormatDouble(row.sigma), FormatDouble(row.mse),
                      FormatDouble(row.normalized_mse)});
  }
  return out;
}

nlohmann::json ErrorRowsToJson(const std::vector<ErrorRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const ErrorRow& row : rows) {
    out.push_back({{"d", row.dim},
                   {"mechanism", MechanismName(row.mechanism)},
                   {"sigma", row.sigma},
                   {"mse", row.mse},
                   {"normalized_mse", row.normalized_mse}});
  }
  return out;
}

nlohmann::json EstimateToJson(const EmpiricalPrivacyEstimate& estimate) {
  return {{"d", estimate.d},         {"sigma", estimate.sigma},
          {"epsilon", estimate.epsilon}, {"n", estimate.n},
          {"c1", estimate.c1},       {"c2", estimate.c2},
          {"lhs", estimate.lhs_estimate},
          {"std_error", estimate.std_error},
          {"seed", estimate.seed}};
}

nlohmann::json BoundReportToJson(const BoundReport& report) {
  return {{"term1_upper", report.term1_upper},
          {"term2_lower", report.term2_lower},
          {"lhs_upper", report.lhs_upper},
          {"satisfies_dp", report.satisfies_dp},
          {"branch", BoundBranchName(report.branch)},
          {"n_r", report.grid.n_r},
          {"n_R", report.grid.n_R},
          {"r_star", report.grid.r_star}};
}

nlohmann::json CalibrationToJson(const CalibrationResult& result, int dim,
                                 const PrivacyParams& params) {
  nlohmann::json out = {{"mechanism", MechanismName(result.mechanism)},
                        {"dim", dim},
                        {"epsilon", params.epsilon()},
                        {"delta", params.delta()},
                        {"sigma", result.sigma},
                        {"pure_epsilon", nullptr},
                        {"search_iterations", result.search_iterations},
                        {"tolerance", result.tolerance},
                        {"hit_bracket_floor", result.hit_bracket_floor}};
  if (result.pure_epsilon.has_value()) out["pure_epsilon"] = *result.pure_epsilon;
  return out;
}

}  // namespace l2mech
