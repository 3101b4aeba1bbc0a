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

#include "riskgate/commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "riskgate/baseline.h"
#include "riskgate/calibration.h"
#include "riskgate/evaluation.h"
#include "riskgate/scorers.h"

namespace riskgate::cli {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Write to a sibling temp file, then rename over the destination.
void WriteAtomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << contents;
    if (!out.flush()) throw InputError("write to '" + path + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot move output into '" + path + "'");
}

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void AddInput(const std::string& path) {
    Json input;
    input["path"] = path;
    input["sha256"] = FileDigest(path);
    inputs_.push_back(std::move(input));
  }
  void SetConfig(Json config) { config_ = std::move(config); }
  void SetSeed(std::uint64_t seed) { seed_ = seed; }
  void AddSkipped(std::size_t n) { skipped_ += n; }

  Json ToJson() const {
    Json j;
    j["command"] = command_;
    j["tool_version"] = kToolVersion;
    j["config"] = config_;
    j["inputs"] = inputs_;
    j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
    j["skipped_lines"] = skipped_;
    j["created_at"] = UtcTimestamp();
    return j;
  }

 private:
  std::string command_;
  Json config_ = Json::object();
  Json inputs_ = Json::array();
  std::optional<std::uint64_t> seed_;
  std::size_t skipped_ = 0;
};

template <typename T>
void ReportLineErrors(const JsonLines<T>& lines, const std::string& path,
                      bool strict, std::ostream& log) {
  for (const LineError& e : lines.errors) {
    log << path << ":" << e.line << ": " << e.message << "\n";
  }
  if (strict && !lines.errors.empty()) {
    throw InputError(std::to_string(lines.errors.size()) +
                     " malformed line(s) in '" + path + "' (--strict)");
  }
}

JsonLines<ScoredRecord> LoadScored(const std::string& path, bool strict,
                                   std::ostream& log) {
  std::istringstream in(ReadFile(path));
  JsonLines<ScoredRecord> lines = ReadScoredLines(in);
  ReportLineErrors(lines, path, strict, log);
  return lines;
}

RiskConfig MakeConfig(double alpha, double delta, const std::string& bound,
                      const std::string& selection) {
  RiskConfig config;
  try {
    config.alpha = alpha;
    config.delta = delta;
    config.bound_method = ParseBoundMethod(bound);
    config.selection = ParseSelectionRule(selection);
    config.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

std::string DumpDocument(const Json& j) { return j.dump(2) + "\n"; }

// Runs `body`, mapping the error taxonomy onto exit codes.
template <typename Body>
int Guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InputError& e) {
    log << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    log << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int InferOptionCount(const EvidenceRecord& r) {
  if (r.option_probs) return static_cast<int>(r.option_probs->size());
  int max_id = 0;
  for (int id : *r.sampled_option_ids) max_id = std::max(max_id, id);
  return max_id + 1;
}

double ScoreRecord(const EvidenceRecord& r, const ScoreOptions& options) {
  const std::string& method = options.method;
  auto need = [&](bool present, const char* field) {
    if (!present) {
      throw std::invalid_argument("method " + method + " needs " + field);
    }
  };
  auto similarity = [&] {
    need(r.similarity.has_value(), "similarity");
    return SimilarityMatrix::Normalize(*r.similarity);
  };
  if (method == "pe_white") {
    need(r.option_probs.has_value(), "option_probs");
    return PredictiveEntropyWhite(*r.option_probs);
  }
  if (method == "pe_black") {
    need(r.sampled_option_ids.has_value(), "sampled_option_ids");
    return PredictiveEntropyBlack(*r.sampled_option_ids,
                                  options.num_options.value_or(InferOptionCount(r)));
  }
  if (method == "se_black") {
    need(r.cluster_labels.has_value(), "cluster_labels");
    return SemanticEntropyBlack(*r.cluster_labels);
  }
  if (method == "se_white") {
    need(r.cluster_labels.has_value(), "cluster_labels");
    need(r.sequence_probs.has_value(), "sequence_probs");
    return SemanticEntropyWhite(*r.cluster_labels, *r.sequence_probs);
  }
  if (method == "ecc") {
    const SimilarityMatrix w = similarity();
    return EccentricityUncertainty(
        w, std::min(options.ecc_dimension, static_cast<int>(w.size())));
  }
  if (method == "deg") return DegreeUncertainty(similarity());
  if (method == "eigv") return EigenvalueUncertainty(similarity());
  if (method == "passthrough") {
    need(r.precomputed_uncertainty.has_value(), "precomputed_uncertainty");
    return *r.precomputed_uncertainty;
  }
  throw ConfigError("unknown scoring method '" + method + "'");
}

std::string CsvLine(std::initializer_list<std::optional<double>> values) {
  std::string line;
  for (const auto& v : values) {
    if (!line.empty()) line += ',';
    line += FormatCsvNumber(v);
  }
  return line + "\n";
}

}  // namespace

std::vector<double> ParseAlphaRange(const std::string& text) {
  double parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(':', pos) : text.size();
    if (end == std::string::npos) {
      throw ConfigError("alpha range must be start:stop:step, got '" + text + "'");
    }
    const std::string field = text.substr(pos, end - pos);
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw ConfigError("bad number '" + field + "' in alpha range");
    }
    pos = end + 1;
  }
  const auto [start, stop, step] = parts;
  if (!(step > 0.0) || !(start < stop)) {
    throw ConfigError("alpha range needs start < stop and step > 0");
  }
  const auto count = static_cast<std::int64_t>(
      std::ceil((stop - start) / step - 1e-9));
  std::vector<double> alphas;
  for (std::int64_t i = 0; i < count; ++i) {
    // Round away the accumulation noise of start + i * step.
    const double a = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha values must lie in (0,1)");
    alphas.push_back(a);
  }
  return alphas;
}

std::uint64_t DefaultSeed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr) return 0;
  std::uint64_t seed = 0;
  const std::string text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) return 0;
  return seed;
}

std::string FormatCsvNumber(std::optional<double> x) {
  if (!x || std::isnan(*x)) return "nan";
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), *x, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

std::string FileDigest(const std::string& path) {
  const std::string bytes = ReadFile(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw InputError("cannot hash '" + path + "'");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xF];
  }
  return hex;
}

std::string MetaPath(const std::string& output) { return output + ".meta.json"; }

Json StripTimestamp(Json document) {
  if (document.contains("manifest")) document["manifest"].erase("created_at");
  return document;
}

int CmdScore(const ScoreOptions& options, std::ostream& log) {
  return Guarded(log, [&] {
    static const std::vector<std::string> kMethods = {
        "pe_white", "pe_black", "se_black", "se_white",
        "ecc",      "deg",      "eigv",     "passthrough"};
    if (std::find(kMethods.begin(), kMethods.end(), options.method) ==
        kMethods.end()) {
      throw ConfigError("unknown scoring method '" + options.method + "'");
    }
    if (options.ecc_dimension < 1) throw ConfigError("--ecc-k must be >= 1");

    std::istringstream in(ReadFile(options.input));
    const JsonLines<EvidenceRecord> lines = ReadEvidenceLines(in);
    for (const LineError& e : lines.errors) {
      log << options.input << ":" << e.line << ": " << e.message << "\n";
    }

    Json skipped = Json::array();
    for (const LineError& e : lines.errors) {
      Json s;
      s["line"] = e.line;
      s["reason"] = e.message;
      skipped.push_back(std::move(s));
    }
    std::string out;
    std::size_t written = 0;
    for (const EvidenceRecord& r : lines.records) {
      std::string reason;
      const auto violations = ValidateRecord(r);
      if (!violations.empty()) {
        reason = violations.front();
      } else {
        try {
          const ScoredRecord scored(r.id, ScoreRecord(r, options), r.admissible);
          out += ToJson(scored).dump() + "\n";
          ++written;
          continue;
        } catch (const std::invalid_argument& e) {
          reason = e.what();
        }
      }
      log << "skipping record '" << r.id << "': " << reason << "\n";
      Json s;
      s["id"] = r.id;
      s["reason"] = reason;
      skipped.push_back(std::move(s));
    }

    Manifest manifest("score");
    manifest.AddInput(options.input);
    Json config;
    config["method"] = options.method;
    config["strict"] = options.strict;
    config["ecc_k"] = options.ecc_dimension;
    config["num_options"] =
        options.num_options ? Json(*options.num_options) : Json(nullptr);
    manifest.SetConfig(config);
    manifest.AddSkipped(skipped.size());

    Json meta;
    meta["manifest"] = manifest.ToJson();
    meta["summary"]["n_written"] = written;
    meta["summary"]["n_skipped"] = skipped.size();
    meta["summary"]["skipped"] = skipped;
    WriteAtomically(options.output, out);
    WriteAtomically(MetaPath(options.output), DumpDocument(meta));

    if (options.strict && !skipped.empty()) {
      log << skipped.size() << " record(s) skipped under --strict\n";
      return static_cast<int>(kExitInputError);
    }
    return static_cast<int>(kExitOk);
  });
}

int CmdCalibrate(const CalibrateOptions& options, std::ostream& log) {
  return Guarded(log, [&] {
    const RiskConfig config =
        MakeConfig(options.alpha, options.delta, options.bound, options.selection);
    const JsonLines<ScoredRecord> lines =
        LoadScored(options.input, options.strict, log);
    if (lines.records.empty()) {
      throw InputError("no scored records in '" + options.input + "'");
    }
    const CalibrationOutcome outcome = Calibrate(lines.records, config);

    Manifest manifest("calibrate");
    manifest.AddInput(options.input);
    manifest.SetConfig(ToJson(config));
    manifest.AddSkipped(lines.errors.size());
    Json doc = ToJson(outcome);
    doc["manifest"] = manifest.ToJson();
    WriteAtomically(options.output, DumpDocument(doc));

    if (!outcome.threshold) {
      log << "no candidate threshold satisfies the risk bound\n";
      return static_cast<int>(kExitNoThreshold);
    }
    return static_cast<int>(kExitOk);
  });
}

int CmdSelect(const SelectOptions& options, std::ostream& log) {
  return Guarded(log, [&] {
    CalibrationOutcome outcome;
    try {
      outcome = CalibrationOutcomeFromJson(Json::parse(ReadFile(options.calibration)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("calibration document: " + std::string(e.what()));
    }
    if (!outcome.threshold) {
      log << "warning: calibration has no threshold; selecting nothing\n";
    }
    const JsonLines<ScoredRecord> lines =
        LoadScored(options.input, options.strict, log);
    const std::vector<ScoredRecord> selected =
        ApplyThreshold(lines.records, outcome.threshold);

    std::string out;
    for (const ScoredRecord& r : selected) out += ToJson(r).dump() + "\n";

    Json summary;
    summary["threshold"] =
        outcome.threshold ? Json(*outcome.threshold) : Json(nullptr);
    summary["n_selected"] = selected.size();
    const std::optional<double> fdr = TestFdr(selected);
    summary["test_fdr"] = fdr ? Json(*fdr) : Json(nullptr);
    const auto admissible_total =
        std::count_if(lines.records.begin(), lines.records.end(),
                      [](const auto& r) { return r.admissible(); });
    const auto admissible_selected = std::count_if(
        selected.begin(), selected.end(), [](const auto& r) { return r.admissible(); });
    summary["raw_power"] =
        admissible_total > 0
            ? Json(static_cast<double>(admissible_selected) /
                   static_cast<double>(admissible_total))
            : Json(nullptr);

    Manifest manifest("select");
    manifest.AddInput(options.calibration);
    manifest.AddInput(options.input);
    manifest.SetConfig(ToJson(outcome.config));
    manifest.AddSkipped(lines.errors.size());
    Json meta;
    meta["manifest"] = manifest.ToJson();
    meta["summary"] = summary;
    WriteAtomically(options.output, out);
    WriteAtomically(MetaPath(options.output), DumpDocument(meta));
    log << "selected " << selected.size() << " of " << lines.records.size()
        << " records\n";
    return static_cast<int>(kExitOk);
  });
}

int CmdEvaluate(const EvaluateOptions& options, std::ostream& log) {
  return Guarded(log, [&] {
    const std::vector<double> alphas = ParseAlphaRange(options.alphas);
    RiskConfig config =
        MakeConfig(alphas.front(), options.delta, options.bound, options.selection);
    config.n_trials = options.trials;
    config.split_ratio = options.split;
    config.seed = options.seed;
    try {
      config.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const JsonLines<ScoredRecord> lines =
        LoadScored(options.input, options.strict, log);
    if (lines.records.size() < 2) {
      throw InputError("evaluation needs at least 2 scored records");
    }
    const std::vector<TrialReport> reports =
        RunTrialsSweep(lines.records, config, alphas);

    std::string csv =
        "alpha,mean_fdr,std_fdr,mean_power,violation_fraction,mean_threshold\n";
    Json rows = Json::array();
    for (const TrialReport& r : reports) {
      csv += CsvLine({r.alpha, r.mean_fdr, r.std_fdr, r.mean_power,
                      r.violation_fraction, r.mean_threshold});
      rows.push_back(ToJson(r));
    }

    Manifest manifest("evaluate");
    manifest.AddInput(options.input);
    Json cfg = ToJson(config);
    cfg.erase("alpha");
    cfg["alphas"] = alphas;
    manifest.SetConfig(cfg);
    manifest.SetSeed(config.seed);
    manifest.AddSkipped(lines.errors.size());
    Json meta;
    meta["manifest"] = manifest.ToJson();
    meta["reports"] = std::move(rows);
    WriteAtomically(options.output, csv);
    WriteAtomically(MetaPath(options.output), DumpDocument(meta));
    return static_cast<int>(kExitOk);
  });
}

int CmdSimulate(const SimulateOptions& options, std::ostream& log) {
  return Guarded(log, [&] {
    SyntheticModel model = SyntheticModel::Linear();
    try {
      model = SyntheticModel::Parse(options.model);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    RiskConfig config =
        MakeConfig(options.alpha, options.delta, options.bound, options.selection);
    config.seed = options.seed;
    if (options.repeats < 100) throw ConfigError("--repeats must be >= 100");
    if (options.cal_size < 1) throw ConfigError("--cal-size must be >= 1");
    const GuaranteeResult result =
        GuaranteeCheck(model, options.cal_size, options.repeats, config);

    Manifest manifest("simulate");
    Json cfg = ToJson(config);
    cfg["model"] = model.Describe();
    cfg["cal_size"] = options.cal_size;
    cfg["repeats"] = options.repeats;
    manifest.SetConfig(cfg);
    manifest.SetSeed(config.seed);
    Json doc;
    doc["model"] = model.Describe();
    doc["cal_size"] = options.cal_size;
    doc["result"] = ToJson(result);
    doc["manifest"] = manifest.ToJson();
    WriteAtomically(options.output, DumpDocument(doc));
    log << "violation_fraction=" << result.violation_fraction
        << " limit=" << result.limit << " verdict="
        << (result.pass ? "pass" : "fail") << "\n";
    return static_cast<int>(result.pass ? kExitOk : kExitCheckFailed);
  });
}

int CmdBaseline(const BaselineOptions& options, std::ostream& log) {
  return Guarded(log, [&] {
    const std::vector<double> alphas = ParseAlphaRange(options.alphas);
    RiskConfig config =
        MakeConfig(alphas.front(), options.delta, options.bound, options.selection);
    config.n_trials = options.trials;
    config.split_ratio = options.split;
    config.seed = options.seed;
    try {
      config.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const JsonLines<ScoredRecord> lines =
        LoadScored(options.input, options.strict, log);
    if (lines.records.size() < 2) {
      throw InputError("baseline comparison needs at least 2 scored records");
    }
    const std::vector<ComparisonRow> rows =
        CompareWithBaseline(lines.records, config, alphas);

    std::string csv = "alpha,coin_power,ca_power,coin_fdr,ca_fdr\n";
    Json json_rows = Json::array();
    for (const ComparisonRow& r : rows) {
      csv += CsvLine({r.alpha, r.coin_power, r.ca_power, r.coin_fdr, r.ca_fdr});
      Json j;
      j["alpha"] = r.alpha;
      j["coin_power"] = r.coin_power;
      j["ca_power"] = r.ca_power;
      j["coin_fdr"] = r.coin_fdr ? Json(*r.coin_fdr) : Json(nullptr);
      j["ca_fdr"] = r.ca_fdr ? Json(*r.ca_fdr) : Json(nullptr);
      json_rows.push_back(std::move(j));
    }

    Manifest manifest("baseline");
    manifest.AddInput(options.input);
    Json cfg = ToJson(config);
    cfg.erase("alpha");
    cfg["alphas"] = alphas;
    cfg["baseline"] = "conformal p-values on s = -uncertainty + Benjamini-Hochberg";
    manifest.SetConfig(cfg);
    manifest.SetSeed(config.seed);
    manifest.AddSkipped(lines.errors.size());
    Json meta;
    meta["manifest"] = manifest.ToJson();
    meta["rows"] = std::move(json_rows);
    WriteAtomically(options.output, csv);
    WriteAtomically(MetaPath(options.output), DumpDocument(meta));
    return static_cast<int>(kExitOk);
  });
}

}  // namespace riskgate::cli
