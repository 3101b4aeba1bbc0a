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

#include "riskgate/json_io.h"

#include <set>
#include <stdexcept>

namespace riskgate {
namespace {

Json OptionalNumber(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

std::optional<double> ReadOptionalNumber(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) {
    throw std::invalid_argument(std::string(key) + " must be a number");
  }
  return j.at(key).get<double>();
}

void RejectUnknownKeys(const Json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }
}

int ReadLabel(const Json& j) {
  if (!j.contains("admissible")) {
    throw std::invalid_argument("missing key 'admissible'");
  }
  const Json& a = j.at("admissible");
  if (a.is_boolean()) return a.get<bool>() ? 1 : 0;
  if (a.is_number_integer()) {
    const auto v = a.get<long long>();
    if (v == 0 || v == 1) return static_cast<int>(v);
  }
  throw std::invalid_argument("admissible must be 0 or 1");
}

std::string ReadId(const Json& j) {
  if (!j.contains("id") || !j.at("id").is_string()) {
    throw std::invalid_argument("missing string key 'id'");
  }
  return j.at("id").get<std::string>();
}

template <typename T>
std::optional<T> ReadOptionalArray(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string(key) + " has the wrong shape");
  }
}

template <typename T>
JsonLines<T> ReadLines(std::istream& in,
                       const std::function<T(const Json&)>& decode) {
  JsonLines<T> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.records.push_back(decode(Json::parse(line)));
    } catch (const std::exception& e) {
      out.errors.push_back({number, e.what()});
    }
  }
  return out;
}

}  // namespace

Json ToJson(const EvidenceRecord& r) {
  Json j;
  j["id"] = r.id;
  j["admissible"] = r.admissible;
  if (r.option_probs) j["option_probs"] = *r.option_probs;
  if (r.sampled_option_ids) j["sampled_option_ids"] = *r.sampled_option_ids;
  if (r.cluster_labels) j["cluster_labels"] = *r.cluster_labels;
  if (r.sequence_probs) j["sequence_probs"] = *r.sequence_probs;
  if (r.similarity) j["similarity"] = *r.similarity;
  if (r.precomputed_uncertainty) {
    j["precomputed_uncertainty"] = *r.precomputed_uncertainty;
  }
  return j;
}

EvidenceRecord EvidenceFromJson(const Json& j) {
  RejectUnknownKeys(j, {"id", "admissible", "option_probs",
                        "sampled_option_ids", "cluster_labels",
                        "sequence_probs", "similarity",
                        "precomputed_uncertainty"});
  EvidenceRecord r;
  r.id = ReadId(j);
  r.admissible = ReadLabel(j);
  r.option_probs = ReadOptionalArray<std::vector<double>>(j, "option_probs");
  r.sampled_option_ids =
      ReadOptionalArray<std::vector<int>>(j, "sampled_option_ids");
  r.cluster_labels = ReadOptionalArray<std::vector<int>>(j, "cluster_labels");
  r.sequence_probs = ReadOptionalArray<std::vector<double>>(j, "sequence_probs");
  r.similarity =
      ReadOptionalArray<std::vector<std::vector<double>>>(j, "similarity");
  r.precomputed_uncertainty = ReadOptionalNumber(j, "precomputed_uncertainty");
  return r;
}

Json ToJson(const ScoredRecord& r) {
  Json j;
  j["id"] = r.id();
  j["uncertainty"] = r.uncertainty();
  j["admissible"] = r.admissible() ? 1 : 0;
  return j;
}

ScoredRecord ScoredFromJson(const Json& j) {
  RejectUnknownKeys(j, {"id", "uncertainty", "admissible"});
  const auto u = ReadOptionalNumber(j, "uncertainty");
  if (!u) throw std::invalid_argument("missing number 'uncertainty'");
  return ScoredRecord(ReadId(j), *u, ReadLabel(j));
}

Json ToJson(const RiskConfig& c) {
  Json j;
  j["alpha"] = c.alpha;
  j["delta"] = c.delta;
  j["bound_method"] = ToString(c.bound_method);
  j["selection"] = ToString(c.selection);
  j["split_ratio"] = c.split_ratio;
  j["n_trials"] = c.n_trials;
  j["seed"] = c.seed;
  return j;
}

RiskConfig RiskConfigFromJson(const Json& j) {
  RiskConfig c;
  try {
    c.alpha = j.at("alpha").get<double>();
    c.delta = j.at("delta").get<double>();
    c.bound_method = ParseBoundMethod(j.at("bound_method").get<std::string>());
    c.selection = ParseSelectionRule(j.at("selection").get<std::string>());
    c.split_ratio = j.at("split_ratio").get<double>();
    c.n_trials = j.at("n_trials").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config: ") + e.what());
  }
  c.Validate();
  return c;
}

Json ToJson(const BoundCurve& curve) {
  Json entries = Json::array();
  for (const CurveEntry& e : curve.entries) {
    Json j;
    j["t"] = e.t;
    j["m_hat"] = e.m_hat;
    j["w_hat"] = e.w_hat;
    j["r_hat"] = e.r_hat;
    j["upper"] = e.upper;
    entries.push_back(std::move(j));
  }
  return entries;
}

BoundCurve BoundCurveFromJson(const Json& j) {
  BoundCurve curve;
  try {
    for (const Json& e : j) {
      curve.entries.push_back({e.at("t").get<double>(),
                               e.at("m_hat").get<std::int64_t>(),
                               e.at("w_hat").get<std::int64_t>(),
                               e.at("r_hat").get<double>(),
                               e.at("upper").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad curve: ") + e.what());
  }
  return curve;
}

Json ToJson(const CalibrationOutcome& o) {
  Json j;
  j["threshold"] = OptionalNumber(o.threshold);
  j["bound_at_threshold"] = OptionalNumber(o.bound_at_threshold);
  j["selected_count_cal"] = o.selected_count_cal;
  j["config"] = ToJson(o.config);
  j["curve"] = ToJson(o.curve);
  return j;
}

CalibrationOutcome CalibrationOutcomeFromJson(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  CalibrationOutcome o;
  o.threshold = ReadOptionalNumber(j, "threshold");
  o.bound_at_threshold = ReadOptionalNumber(j, "bound_at_threshold");
  if (j.contains("selected_count_cal")) {
    o.selected_count_cal = j.at("selected_count_cal").get<std::int64_t>();
  }
  if (j.contains("config")) o.config = RiskConfigFromJson(j.at("config"));
  if (j.contains("curve")) o.curve = BoundCurveFromJson(j.at("curve"));
  return o;
}

Json ToJson(const TrialReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["mean_fdr"] = OptionalNumber(r.mean_fdr);
  j["std_fdr"] = OptionalNumber(r.std_fdr);
  j["mean_power"] = r.mean_power;
  j["violation_fraction"] = r.violation_fraction;
  j["mean_threshold"] = OptionalNumber(r.mean_threshold);
  Json trials = Json::array();
  for (const TrialResult& t : r.per_trial) {
    Json tj;
    tj["trial_index"] = t.trial_index;
    tj["threshold"] = OptionalNumber(t.threshold);
    tj["test_fdr"] = OptionalNumber(t.test_fdr);
    tj["power"] = t.power;
    tj["n_selected"] = t.n_selected;
    trials.push_back(std::move(tj));
  }
  j["per_trial"] = std::move(trials);
  return j;
}

Json ToJson(const GuaranteeResult& g) {
  Json j;
  j["alpha"] = g.alpha;
  j["n_repeats"] = g.n_repeats;
  j["violation_fraction"] = g.violation_fraction;
  j["mean_true_tcfr"] = OptionalNumber(g.mean_true_tcfr);
  j["n_with_threshold"] = g.n_with_threshold;
  j["limit"] = g.limit;
  j["verdict"] = g.pass ? "pass" : "fail";
  return j;
}

JsonLines<EvidenceRecord> ReadEvidenceLines(std::istream& in) {
  return ReadLines<EvidenceRecord>(in, EvidenceFromJson);
}

JsonLines<ScoredRecord> ReadScoredLines(std::istream& in) {
  return ReadLines<ScoredRecord>(in, ScoredFromJson);
}

}  // namespace riskgate
