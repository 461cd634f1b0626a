// Command-line front end: generate DCDFM networks, estimate the number of
// communities, dump Q-vs-k curves, and run the simulation presets.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wmodk/dcdfm.hpp"
#include "wmodk/estimator.hpp"
#include "wmodk/harness.hpp"
#include "wmodk/io.hpp"
#include "wmodk/modularity.hpp"
#include "wmodk/rng.hpp"
#include "wmodk/sampler.hpp"

namespace {

using namespace wmodk;

// wrong invocation rather than bad data; exits with status 2
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WMODK_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    throw ConfigError(std::string("WMODK_SEED is not an integer: ") + env);
  }
  return 0;
}

int parse_kmax(const std::string& text, int n) {
  if (text == "n") return n;
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0')
    throw UsageError("--kmax must be an integer or 'n', got '" + text + "'");
  return static_cast<int>(v);
}

EstimateMode parse_mode(const std::string& text) {
  if (text == "argmax") return EstimateMode::argmax;
  if (text == "early-stop") return EstimateMode::early_stop;
  throw UsageError("--mode must be argmax or early-stop, got '" + text + "'");
}

void write_curve_csv(std::ostream& os, const ModularityCurve& curve) {
  os << "k,q\n";
  for (std::size_t i = 0; i < curve.k_values.size(); ++i)
    os << curve.k_values[i] << ',' << format_double(curve.q_values[i]) << '\n';
}

struct GenerateArgs {
  std::string preset_id, out_path, p_file;
  std::optional<std::uint64_t> seed;
  std::optional<double> rho, beta;
  std::optional<int> K;
  int n = 0;
  std::string dist = "bernoulli", theta_mode = "uniform-random";
  int trials = 5;
  double sigma2 = 1.0;
  bool uniform_literal = false, zero_diagonal = false, strict = false;
};

int run_generate(const GenerateArgs& args) {
  ExperimentConfig config;
  if (!args.preset_id.empty()) {
    config = preset(args.preset_id);
    config.sweep = {};
    // point overrides on top of the preset
    if (args.K) {
      config.K = *args.K;
      config.P = uniform_p(config.K, config.beta);
    }
    if (args.beta) {
      config.beta = *args.beta;
      config.P = uniform_p(config.K, config.beta);
    }
  } else {
    if (args.p_file.empty() && !args.beta)
      throw UsageError("give --preset, --p-file, or --beta");
    config.K = args.K.value_or(2);
    if (!args.p_file.empty()) {
      config.P = read_matrix(args.p_file);
      config.K = static_cast<int>(config.P.rows());
    } else {
      config.beta = *args.beta;
      config.P = uniform_p(config.K, config.beta);
    }
    config.dist.family = family_from_name(args.dist);
    config.dist.trials = args.trials;
    config.dist.sigma2 = args.sigma2;
    config.theta_mode = args.theta_mode == "constant" ? ThetaMode::constant
                                                      : ThetaMode::uniform_random;
  }
  if (args.rho) config.rho = *args.rho;
  config.dist.uniform_literal = args.uniform_literal;
  if (args.n > 0) config.n_override = args.n;

  ValidationReport pcheck =
      validate_connectivity(config.P, config.dist.family, args.strict);
  if (!pcheck.ok())
    throw ConfigError("connectivity matrix rejected:\n" + pcheck.summary());
  for (const auto& w : pcheck.warnings) std::cerr << "warning: " << w << '\n';

  const std::uint64_t seed = resolve_seed(args.seed);
  const int n = config.n();
  LabelVector labels = sample_labels(n, config.K, derive_seed(seed, 1));
  Vector theta =
      sample_theta(n, config.rho, config.theta_mode, derive_seed(seed, 2));
  Matrix omega = expectation_matrix(labels, config.P, theta);
  ValidationReport ocheck = validate_omega(omega, config.dist);
  if (!ocheck.ok())
    throw ConfigError("expectation matrix infeasible:\n" + ocheck.summary());
  SampleOptions opts;
  opts.zero_diagonal = args.zero_diagonal;
  Matrix a = sample_adjacency(omega, config.dist, derive_seed(seed, 3), opts);
  write_matrix(args.out_path, a);
  std::cout << "wrote " << n << "x" << n << " matrix to " << args.out_path
            << " (family " << family_name(config.dist.family) << ", K = "
            << config.K << ", rho = " << format_double(config.rho) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DCDFM network generator and community-count estimator"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "sample an adjacency matrix from the model");
  generate->add_option("--preset", gen.preset_id, "simulation preset id (1a..9d)");
  generate->add_option("--out", gen.out_path, "output matrix file")->required();
  generate->add_option("--seed", gen.seed, "RNG seed (fallback: WMODK_SEED)");
  generate->add_option("--rho", gen.rho, "sparsity scale");
  generate->add_option("--beta", gen.beta, "off-diagonal connectivity");
  generate->add_option("--k", gen.K, "number of communities");
  generate->add_option("--n", gen.n, "node count override");
  generate->add_option("--dist", gen.dist, "distribution family");
  generate->add_option("--m", gen.trials, "binomial trial count");
  generate->add_option("--sigma2", gen.sigma2, "normal/laplace variance");
  generate->add_option("--p-file", gen.p_file, "connectivity matrix file");
  generate->add_option("--theta-mode", gen.theta_mode,
                       "uniform-random or constant");
  generate->add_flag("--uniform-literal", gen.uniform_literal,
                     "uniform family draws from U(0, Omega) as written");
  generate->add_flag("--zero-diagonal", gen.zero_diagonal,
                     "zero the diagonal after sampling");
  generate->add_flag("--strict", gen.strict,
                     "enforce max |P| = 1 instead of warning");

  std::string est_input, est_kmax, est_mode = "argmax", est_curve_out;
  std::string est_format = "auto";
  std::optional<std::uint64_t> est_seed;
  int est_restarts = 10;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "estimate the number of communities of a network file");
  estimate->add_option("--input", est_input, "matrix or edge-list file")
      ->required();
  estimate->add_option("--kmax", est_kmax, "largest candidate k, or 'n'")
      ->required();
  estimate->add_option("--seed", est_seed, "RNG seed (fallback: WMODK_SEED)");
  estimate->add_option("--mode", est_mode, "argmax or early-stop");
  estimate->add_option("--format", est_format, "auto, matrix, or edgelist");
  estimate->add_option("--curve-out", est_curve_out, "write the Q curve CSV here");
  estimate->add_option("--restarts", est_restarts, "k-means restarts");

  std::string curve_input, curve_kmax = "n", curve_out, curve_format = "auto";
  std::string curve_mode = "argmax";
  std::optional<std::uint64_t> curve_seed;
  CLI::App* curve = app.add_subcommand(
      "curve", "emit the weighted-modularity curve Q(k) of a network file");
  curve->add_option("--input", curve_input, "matrix or edge-list file")
      ->required();
  curve->add_option("--kmax", curve_kmax, "largest candidate k, or 'n'");
  curve->add_option("--seed", curve_seed, "RNG seed (fallback: WMODK_SEED)");
  curve->add_option("--format", curve_format, "auto, matrix, or edgelist");
  curve->add_option("--mode", curve_mode, "argmax or early-stop");
  curve->add_option("--out", curve_out, "output CSV (default: stdout)");

  std::string sim_preset, sim_config, sim_out;
  std::optional<std::uint64_t> sim_seed;
  std::optional<int> sim_reps;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run a Monte-Carlo accuracy sweep and emit per-rep CSV");
  simulate->add_option("--preset", sim_preset, "preset id (1a..9d)");
  simulate->add_option("--config", sim_config, "experiment config JSON file");
  simulate->add_option("--reps", sim_reps, "repetitions per grid point");
  simulate->add_option("--seed", sim_seed, "base seed (fallback: WMODK_SEED)");
  simulate->add_option("--out", sim_out, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) return run_generate(gen);

    if (estimate->parsed() || curve->parsed()) {
      const bool is_curve = curve->parsed();
      const std::string& input = is_curve ? curve_input : est_input;
      const std::string& fmt_text = is_curve ? curve_format : est_format;
      InputFormat fmt = fmt_text == "matrix"     ? InputFormat::matrix
                        : fmt_text == "edgelist" ? InputFormat::edge_list
                        : InputFormat::automatic;
      Matrix a = read_network(input, fmt);
      const int n = static_cast<int>(a.rows());
      int kmax = parse_kmax(is_curve ? curve_kmax : est_kmax, n);
      EstimateMode mode = parse_mode(is_curve ? curve_mode : est_mode);
      std::uint64_t seed = resolve_seed(is_curve ? curve_seed : est_seed);
      KMeansOptions kopts;
      if (!is_curve) kopts.restarts = est_restarts;

      EstimateResult result = estimate_k(a, kmax, seed, mode, kopts);
      if (is_curve) {
        if (curve_out.empty()) {
          write_curve_csv(std::cout, result.curve);
        } else {
          std::ofstream out(curve_out);
          if (!out) throw ParseError("cannot write '" + curve_out + "'");
          write_curve_csv(out, result.curve);
          std::cout << "wrote Q curve to " << curve_out << '\n';
        }
      } else {
        if (!est_curve_out.empty()) {
          std::ofstream out(est_curve_out);
          if (!out) throw ParseError("cannot write '" + est_curve_out + "'");
          write_curve_csv(out, result.curve);
        }
        std::cout << "k_hat=" << result.k_hat << '\n'
                  << "q_at_k_hat="
                  << format_double(result.curve.q_values[result.k_hat - 1])
                  << '\n';
      }
      return 0;
    }

    if (simulate->parsed()) {
      if (sim_preset.empty() == sim_config.empty())
        throw UsageError("give exactly one of --preset or --config");
      ExperimentConfig config;
      if (!sim_preset.empty()) {
        config = preset(sim_preset);
      } else {
        std::ifstream in(sim_config);
        if (!in) throw ParseError("cannot open '" + sim_config + "'");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        config = parse_config(text);
      }
      if (sim_reps) config.reps = *sim_reps;
      config.base_seed = resolve_seed(sim_seed);

      std::vector<AccuracyReport> reports = accuracy_sweep(config);
      if (sim_out.empty()) {
        write_sweep_csv(std::cout, reports);
      } else {
        std::ofstream out(sim_out);
        if (!out) throw ParseError("cannot write '" + sim_out + "'");
        write_sweep_csv(out, reports);
      }
      for (const auto& rep : reports)
        std::cerr << "preset " << rep.experiment_id << " " << rep.param_name
                  << "=" << format_double(rep.param_value) << " k_true="
                  << rep.k_true << " accuracy=" << format_double(rep.accuracy)
                  << " (" << rep.reps << " reps)\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
