#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wmodk/estimator.hpp"
#include "wmodk/sampler.hpp"
#include "wmodk/types.hpp"

namespace wmodk {

// A sweep over one model parameter; empty means "run the config as-is".
struct SweepSpec {
  std::string param_name;       // "rho" | "k" | "beta"
  std::vector<double> values;

  bool empty() const { return values.empty(); }
  bool operator==(const SweepSpec&) const = default;
};

// Full description of one Monte-Carlo experiment. `beta` doubles as the
// off-diagonal level used when a "k" sweep rebuilds P per community count.
// Trials zero the sampled diagonal: self-loops reward spurious fine
// partitions with positive modularity, and the reference results for the
// one-community experiments are only reachable on loop-free networks.
struct ExperimentConfig {
  std::string id = "custom";
  int K = 1;
  int nodes_per_community = 50;
  int n_override = 0;           // 0: n = nodes_per_community * K
  Matrix P;
  double rho = 1.0;
  double beta = 0.0;
  DistributionSpec dist;
  ThetaMode theta_mode = ThetaMode::uniform_random;
  bool zero_diagonal = true;
  int reps = 100;
  int K0 = 20;
  std::uint64_t base_seed = 0;
  SweepSpec sweep;

  int n() const { return n_override > 0 ? n_override : nodes_per_community * K; }
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

struct TrialResult {
  int k_hat = 0;
  double q_at_k_hat = 0.0;
  std::uint64_t seed = 0;
};

struct AccuracyReport {
  std::string experiment_id;
  std::string param_name;
  double param_value = 0.0;
  int k_true = 0;
  int reps = 0;
  double accuracy = 0.0;        // fraction of reps with k_hat == k_true
  std::vector<TrialResult> trials;
  double wall_seconds = 0.0;
};

// K x K connectivity with unit diagonal and `off` everywhere else.
Matrix uniform_p(int K, double off);

// The simulation presets 1a..9d: distribution family, P, theta mode, n rule,
// and sweep grid.
ExperimentConfig preset(const std::string& id);
std::vector<std::string> preset_ids();

// Applies sweep point `index` of the config (param value, rebuilt P/n, and a
// point seed derived from (base_seed, index)).
ExperimentConfig materialize_point(const ExperimentConfig& config, int index);

// One generate -> estimate cycle; the trial seed is derived from
// (config.base_seed, rep_index).
TrialResult run_trial(const ExperimentConfig& config, int rep_index);

// One AccuracyReport per sweep point (or a single report if no sweep).
std::vector<AccuracyReport> accuracy_sweep(const ExperimentConfig& config);

// Per-repetition CSV rows:
// experiment_id,param_name,param_value,rep,k_true,k_hat,q_at_k_hat,seed
void write_sweep_csv(std::ostream& os, const std::vector<AccuracyReport>& reports);

std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig parse_config(const std::string& json_text);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace wmodk
