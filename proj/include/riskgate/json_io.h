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

#ifndef RISKGATE_JSON_IO_H_
#define RISKGATE_JSON_IO_H_

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"
#include "riskgate/calibration.h"
#include "riskgate/evaluation.h"
#include "riskgate/records.h"

namespace riskgate {

using Json = nlohmann::ordered_json;

// Decoders throw std::invalid_argument with a field-level message. Unknown
// keys are rejected.
Json ToJson(const EvidenceRecord& record);
EvidenceRecord EvidenceFromJson(const Json& j);

Json ToJson(const ScoredRecord& record);
ScoredRecord ScoredFromJson(const Json& j);

Json ToJson(const RiskConfig& config);
RiskConfig RiskConfigFromJson(const Json& j);

Json ToJson(const BoundCurve& curve);
BoundCurve BoundCurveFromJson(const Json& j);

Json ToJson(const CalibrationOutcome& outcome);
CalibrationOutcome CalibrationOutcomeFromJson(const Json& j);

Json ToJson(const TrialReport& report);
Json ToJson(const GuaranteeResult& result);

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

// Line-delimited records; blank lines are skipped, bad lines reported.
template <typename T>
struct JsonLines {
  std::vector<T> records;
  std::vector<LineError> errors;
};

JsonLines<EvidenceRecord> ReadEvidenceLines(std::istream& in);
JsonLines<ScoredRecord> ReadScoredLines(std::istream& in);

}  // namespace riskgate

#endif  // RISKGATE_JSON_IO_H_
