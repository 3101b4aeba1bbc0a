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

#ifndef RISKGATE_COMMANDS_H_
#define RISKGATE_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "riskgate/json_io.h"

namespace riskgate::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "RISKGATE_SEED";

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // simulate: guarantee verdict "fail"
  kExitNoThreshold = 2,
  kExitInputError = 3,
  kExitConfigError = 4,
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScoreOptions {
  std::string input;
  std::string output;
  // pe_white, pe_black, se_black, se_white, ecc, deg, eigv, passthrough
  std::string method;
  bool strict = false;
  int ecc_dimension = 2;
  // Option count for pe_black; defaults to len(option_probs) when present,
  // else max(sampled id) + 1.
  std::optional<int> num_options;
};

struct CalibrateOptions {
  std::string input;
  std::string output;
  double alpha = 0.0;
  double delta = 0.05;
  std::string bound = "cp";
  std::string selection = "largest";
  bool strict = false;
};

struct SelectOptions {
  std::string calibration;
  std::string input;
  std::string output;
  bool strict = false;
};

struct EvaluateOptions {
  std::string input;
  std::string output;  // CSV
  std::string alphas = "0.05:0.26:0.01";
  double delta = 0.05;
  std::string bound = "cp";
  std::string selection = "largest";
  int trials = 100;
  double split = 0.5;
  std::uint64_t seed = 0;
  bool strict = false;
};

struct SimulateOptions {
  std::string model = "linear";
  std::int64_t cal_size = 1000;
  int repeats = 2000;
  double alpha = 0.1;
  double delta = 0.05;
  std::string bound = "cp";
  std::string selection = "largest";
  std::uint64_t seed = 0;
  std::string output;
};

struct BaselineOptions {
  std::string input;
  std::string output;  // CSV
  std::string alphas = "0.05:0.26:0.01";
  double delta = 0.05;
  std::string bound = "cp";
  std::string selection = "largest";
  int trials = 100;
  double split = 0.5;
  std::uint64_t seed = 0;
  bool strict = false;
};

// Each command returns an ExitCode and writes diagnostics to `log`.
int CmdScore(const ScoreOptions& options, std::ostream& log);
int CmdCalibrate(const CalibrateOptions& options, std::ostream& log);
int CmdSelect(const SelectOptions& options, std::ostream& log);
int CmdEvaluate(const EvaluateOptions& options, std::ostream& log);
int CmdSimulate(const SimulateOptions& options, std::ostream& log);
int CmdBaseline(const BaselineOptions& options, std::ostream& log);

// "start:stop:step", start inclusive, stop exclusive. Throws ConfigError.
std::vector<double> ParseAlphaRange(const std::string& text);

// RISKGATE_SEED when set and parseable, else 0.
std::uint64_t DefaultSeed();

// 6 significant digits, '.' separator regardless of locale; "nan" for absent.
std::string FormatCsvNumber(std::optional<double> x);

// Hex SHA-256 of a file's bytes. Throws InputError.
std::string FileDigest(const std::string& path);

// Sidecar path used for line-delimited and CSV outputs.
std::string MetaPath(const std::string& output);

// Removes the "created_at" timestamp from an embedded or sidecar manifest.
Json StripTimestamp(Json document);

}  // namespace riskgate::cli

#endif  // RISKGATE_COMMANDS_H_
