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

// riskgate: calibrate an uncertainty threshold whose conditional failure rate
// is bounded by alpha with confidence 1 - delta, and evaluate it.

#include <iostream>

#include "CLI11.hpp"
#include "riskgate/commands.h"

namespace {

constexpr const char* kFooter = R"(Exit codes:
  0  success
  1  simulate: guarantee verdict "fail"
  2  calibrate: no candidate threshold satisfies the bound
  3  input error (unreadable file, malformed line under --strict, empty input)
  4  config error (invalid flag value)

Environment:
  RISKGATE_SEED  default seed for evaluate/simulate/baseline when --seed is
                 not given)";

void AddRiskFlags(CLI::App* cmd, double* delta, std::string* bound,
                  std::string* selection) {
  cmd->add_option("--delta", *delta, "Significance level (default 0.05)");
  cmd->add_option("--bound", *bound, "Upper bound: cp | hfd (default cp)");
  cmd->add_option("--selection", *selection,
                  "Threshold rule: largest | prefix (default largest)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = riskgate::cli;
  CLI::App app{"Risk-controlled selective prediction toolkit", "riskgate"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kToolVersion);

  cli::ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Evidence JSONL -> scored JSONL");
  score_cmd->add_option("--input,-i", score.input, "Evidence records (JSONL)")->required();
  score_cmd->add_option("--output,-o", score.output, "Scored records (JSONL)")->required();
  score_cmd->add_option("--method,-m", score.method,
                        "pe_white | pe_black | se_black | se_white | ecc | deg | "
                        "eigv | passthrough")
      ->required();
  score_cmd->add_option("--ecc-k", score.ecc_dimension, "Ecc embedding dimension (default 2)");
  score_cmd->add_option("--num-options", score.num_options, "Option count for pe_black");
  score_cmd->add_flag("--strict", score.strict, "Fail when any record is skipped");

  cli::CalibrateOptions calibrate;
  auto* cal_cmd = app.add_subcommand("calibrate", "Scored JSONL -> calibration document");
  cal_cmd->add_option("--input,-i", calibrate.input, "Scored records (JSONL)")->required();
  cal_cmd->add_option("--output,-o", calibrate.output, "Calibration document (JSON)")->required();
  cal_cmd->add_option("--alpha", calibrate.alpha, "Target risk level")->required();
  AddRiskFlags(cal_cmd, &calibrate.delta, &calibrate.bound, &calibrate.selection);
  cal_cmd->add_flag("--strict", calibrate.strict, "Fail on malformed lines");

  cli::SelectOptions select;
  auto* sel_cmd = app.add_subcommand("select", "Apply a calibrated threshold");
  sel_cmd->add_option("--calibration,-c", select.calibration, "Calibration document")->required();
  sel_cmd->add_option("--input,-i", select.input, "Scored records (JSONL)")->required();
  sel_cmd->add_option("--output,-o", select.output, "Selected records (JSONL)")->required();
  sel_cmd->add_flag("--strict", select.strict, "Fail on malformed lines");

  const std::uint64_t default_seed = cli::DefaultSeed();

  cli::EvaluateOptions evaluate;
  evaluate.seed = default_seed;
  auto* eval_cmd = app.add_subcommand("evaluate", "Randomized-split FDR/power sweep");
  eval_cmd->add_option("--input,-i", evaluate.input, "Scored records (JSONL)")->required();
  eval_cmd->add_option("--output,-o", evaluate.output, "CSV table")->required();
  eval_cmd->add_option("--alphas", evaluate.alphas,
                       "start:stop:step, stop exclusive (default 0.05:0.26:0.01)");
  AddRiskFlags(eval_cmd, &evaluate.delta, &evaluate.bound, &evaluate.selection);
  eval_cmd->add_option("--trials", evaluate.trials, "Random splits (default 100)");
  eval_cmd->add_option("--split", evaluate.split, "Calibration fraction (default 0.5)");
  eval_cmd->add_option("--seed", evaluate.seed, "Split seed");
  eval_cmd->add_flag("--strict", evaluate.strict, "Fail on malformed lines");

  cli::SimulateOptions simulate;
  simulate.seed = default_seed;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of the risk guarantee");
  sim_cmd->add_option("--model", simulate.model,
                      "linear | logistic:s=10,c=0.5 | step:a=0,b=1,c=0.5");
  sim_cmd->add_option("--cal-size", simulate.cal_size, "Calibration set size (default 1000)");
  sim_cmd->add_option("--repeats", simulate.repeats, "Repeats, >= 100 (default 2000)");
  sim_cmd->add_option("--alpha", simulate.alpha, "Target risk level (default 0.1)");
  AddRiskFlags(sim_cmd, &simulate.delta, &simulate.bound, &simulate.selection);
  sim_cmd->add_option("--seed", simulate.seed, "Seed");
  sim_cmd->add_option("--output,-o", simulate.output, "Result document (JSON)")->required();

  cli::BaselineOptions baseline;
  baseline.seed = default_seed;
  auto* base_cmd = app.add_subcommand(
      "baseline", "Side-by-side power/FDR against conformal p-values + BH");
  base_cmd->add_option("--input,-i", baseline.input, "Scored records (JSONL)")->required();
  base_cmd->add_option("--output,-o", baseline.output, "CSV table")->required();
  base_cmd->add_option("--alphas", baseline.alphas, "start:stop:step, stop exclusive");
  AddRiskFlags(base_cmd, &baseline.delta, &baseline.bound, &baseline.selection);
  base_cmd->add_option("--trials", baseline.trials, "Random splits (default 100)");
  base_cmd->add_option("--split", baseline.split, "Calibration fraction (default 0.5)");
  base_cmd->add_option("--seed", baseline.seed, "Split seed");
  base_cmd->add_flag("--strict", baseline.strict, "Fail on malformed lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfigError;
  }

  std::ostream& log = std::cerr;
  if (*score_cmd) return cli::CmdScore(score, log);
  if (*cal_cmd) return cli::CmdCalibrate(calibrate, log);
  if (*sel_cmd) return cli::CmdSelect(select, log);
  if (*eval_cmd) return cli::CmdEvaluate(evaluate, log);
  if (*sim_cmd) return cli::CmdSimulate(simulate, log);
  if (*base_cmd) return cli::CmdBaseline(baseline, log);
  return cli::kExitConfigError;
}
