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

#include "riskgate/records.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace riskgate {
namespace {

constexpr double kProbSumTolerance = 1e-6;

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

}  // namespace

std::vector<std::string> ValidateRecord(const EvidenceRecord& record) {
  std::vector<std::string> violations;

  if (record.admissible != 0 && record.admissible != 1) {
    violations.push_back("admissible must be 0 or 1, got " +
                         std::to_string(record.admissible));
  }

  const bool has_evidence =
      record.option_probs || record.sampled_option_ids ||
      record.cluster_labels || record.sequence_probs || record.similarity ||
      record.precomputed_uncertainty;
  if (!has_evidence) {
    violations.push_back(
        "record has no evidence fields and no precomputed_uncertainty");
  }

  if (record.option_probs) {
    double sum = 0.0;
    bool negative = false;
    for (double p : *record.option_probs) {
      if (!(p >= 0.0)) negative = true;
      sum += p;
    }
    if (negative) violations.push_back("option_probs has a negative entry");
    if (record.option_probs->empty()) {
      violations.push_back("option_probs is empty");
    } else if (std::fabs(sum - 1.0) > kProbSumTolerance) {
      violations.push_back("option_probs sum " + FormatNumber(sum) +
                           " exceeds tolerance");
    }
  }

  if (record.sampled_option_ids) {
    if (record.sampled_option_ids->empty()) {
      violations.push_back("sampled_option_ids is empty");
    }
    for (int id : *record.sampled_option_ids) {
      if (id < 0) {
        violations.push_back("sampled_option_ids has a negative id");
        break;
      }
    }
  }

  if (record.cluster_labels && record.cluster_labels->empty()) {
    violations.push_back("cluster_labels is empty");
  }

  if (record.sequence_probs) {
    for (double p : *record.sequence_probs) {
      if (!(p > 0.0 && p <= 1.0)) {
        violations.push_back("sequence_probs entry " + FormatNumber(p) +
                             " outside (0,1]");
        break;
      }
    }
    if (record.cluster_labels &&
        record.cluster_labels->size() != record.sequence_probs->size()) {
      violations.push_back("cluster_labels and sequence_probs lengths differ (" +
                           std::to_string(record.cluster_labels->size()) +
                           " vs " +
                           std::to_string(record.sequence_probs->size()) + ")");
    }
  }

  if (record.similarity) {
    const auto& rows = *record.similarity;
    bool square = !rows.empty();
    bool finite = true;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) square = false;
      for (double x : row) {
        if (!std::isfinite(x)) finite = false;
      }
    }
    if (!square) violations.push_back("similarity is not a nonempty square matrix");
    if (!finite) violations.push_back("similarity has a non-finite entry");
  }

  if (record.precomputed_uncertainty &&
      !std::isfinite(*record.precomputed_uncertainty)) {
    violations.push_back("precomputed_uncertainty is not finite");
  }
  return violations;
}

ScoredRecord::ScoredRecord(std::string id, double uncertainty, int admissible)
    : id_(std::move(id)), uncertainty_(uncertainty), admissible_(admissible == 1) {
  if (!std::isfinite(uncertainty)) {
    throw std::invalid_argument("record '" + id_ +
                                "': uncertainty must be finite");
  }
  if (admissible != 0 && admissible != 1) {
    throw std::invalid_argument("record '" + id_ +
                                "': admissible must be 0 or 1");
  }
}

bool operator<(const ScoredRecord& a, const ScoredRecord& b) {
  if (a.uncertainty() != b.uncertainty()) {
    return a.uncertainty() < b.uncertainty();
  }
  return a.id() < b.id();
}

void SortByUncertainty(std::vector<ScoredRecord>& records) {
  std::sort(records.begin(), records.end());
}

const char* ToString(BoundMethod method) {
  return method == BoundMethod::kClopperPearson ? "cp" : "hfd";
}

const char* ToString(SelectionRule rule) {
  return rule == SelectionRule::kLargestValid ? "largest" : "prefix";
}

BoundMethod ParseBoundMethod(const std::string& text) {
  if (text == "cp" || text == "cp_exact" || text == "CP_EXACT") {
    return BoundMethod::kClopperPearson;
  }
  if (text == "hfd" || text == "hoeffding" || text == "HOEFFDING") {
    return BoundMethod::kHoeffding;
  }
  throw std::invalid_argument("unknown bound method '" + text + "'");
}

SelectionRule ParseSelectionRule(const std::string& text) {
  if (text == "largest") return SelectionRule::kLargestValid;
  if (text == "prefix") return SelectionRule::kStrictPrefix;
  throw std::invalid_argument("unknown selection rule '" + text + "'");
}

void RiskConfig::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw std::invalid_argument("split_ratio must lie in (0,1)");
  }
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
}

}  // namespace riskgate
