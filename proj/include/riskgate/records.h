// Copyright 2026 The riskgate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISKGATE_RECORDS_H_
#define RISKGATE_RECORDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riskgate {

// Raw model evidence for one question. Admissibility is an ingested label:
// 1 when the answer matched ground truth, 0 on failure.
struct EvidenceRecord {
  std::string id;
  int admissible = 0;
  std::optional<std::vector<double>> option_probs;
  std::optional<std::vector<int>> sampled_option_ids;
  std::optional<std::vector<int>> cluster_labels;
  std::optional<std::vector<double>> sequence_probs;
  std::optional<std::vector<std::vector<double>>> similarity;
  std::optional<double> precomputed_uncertainty;

  bool operator==(const EvidenceRecord&) const = default;
};

// Returns one human-readable description per violated invariant; empty when
// the record is valid.
std::vector<std::string> ValidateRecord(const EvidenceRecord& record);

// The unit of calibration and selection.
class ScoredRecord {
 public:
  // Throws std::invalid_argument on non-finite uncertainty or a label
  // outside {0, 1}.
  ScoredRecord(std::string id, double uncertainty, int admissible);

  const std::string& id() const { return id_; }
  double uncertainty() const { return uncertainty_; }
  bool admissible() const { return admissible_; }
  bool failure() const { return !admissible_; }

  bool operator==(const ScoredRecord&) const = default;

 private:
  std::string id_;
  double uncertainty_;
  bool admissible_;
};

// Strict total order by (uncertainty, id).
bool operator<(const ScoredRecord& a, const ScoredRecord& b);

void SortByUncertainty(std::vector<ScoredRecord>& records);

enum class BoundMethod { kClopperPearson, kHoeffding };

// Which grid entries may be returned by threshold selection.
//   kLargestValid: the largest candidate whose upper bound is <= alpha.
//   kStrictPrefix: the end of the leading run of candidates whose bounds are
//                  all <= alpha (abstains if the smallest candidate fails).
enum class SelectionRule { kLargestValid, kStrictPrefix };

const char* ToString(BoundMethod method);
const char* ToString(SelectionRule rule);
// Accepts "cp"/"cp_exact" and "hfd"/"hoeffding". Throws on anything else.
BoundMethod ParseBoundMethod(const std::string& text);
// Accepts "largest" and "prefix".
SelectionRule ParseSelectionRule(const std::string& text);

struct RiskConfig {
  double alpha = 0.1;
  double delta = 0.05;
  BoundMethod bound_method = BoundMethod::kClopperPearson;
  SelectionRule selection = SelectionRule::kLargestValid;
  double split_ratio = 0.5;
  int n_trials = 100;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the first offending field.
  void Validate() const;

  bool operator==(const RiskConfig&) const = default;
};

}  // namespace riskgate

#endif  // RISKGATE_RECORDS_H_
