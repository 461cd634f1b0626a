#include "wmodk/harness.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

#include "wmodk/dcdfm.hpp"
#include "wmodk/rng.hpp"

namespace wmodk {

using nlohmann::json;

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.id == b.id && a.K == b.K &&
         a.nodes_per_community == b.nodes_per_community &&
         a.n_override == b.n_override && a.P.rows() == b.P.rows() &&
         a.P.cols() == b.P.cols() && a.P == b.P && a.rho == b.rho &&
         a.beta == b.beta && a.dist == b.dist && a.theta_mode == b.theta_mode &&
         a.zero_diagonal == b.zero_diagonal && a.reps == b.reps &&
         a.K0 == b.K0 && a.base_seed == b.base_seed && a.sweep == b.sweep;
}

std::string format_double(double x) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

Matrix uniform_p(int K, double off) {
  Matrix p = Matrix::Constant(K, K, off);
  p.diagonal().setConstant(1.0);
  return p;
}

namespace {

std::vector<double> grid(int lo, int hi, int step, double denom) {
  std::vector<double> v;
  for (int i = lo; i <= hi; i += step) v.push_back(i / denom);
  return v;
}

Matrix p_exp1a() {
  Matrix p(3, 3);
  p << 1.0, 0.2, 0.3,
       0.2, 0.8, 0.2,
       0.3, 0.2, 0.9;
  return p;
}

Matrix p_exp6a() {
  Matrix p(3, 3);
  p << 1.0, -0.2, -0.3,
      -0.2,  0.8,  0.2,
      -0.3,  0.2,  0.9;
  return p;
}

}  // namespace

std::vector<std::string> preset_ids() {
  std::vector<std::string> ids;
  for (int e = 1; e <= 9; ++e)
    for (char v : {'a', 'b', 'c', 'd'})
      ids.push_back(std::to_string(e) + v);
  return ids;
}

ExperimentConfig preset(const std::string& id) {
  if (id.size() != 2 || id[0] < '1' || id[0] > '9' || id[1] < 'a' || id[1] > 'd') {
    std::string all;
    for (const auto& s : preset_ids()) all += (all.empty() ? "" : " ") + s;
    throw ConfigError("unknown preset '" + id + "'; valid ids: " + all);
  }
  const int exp = id[0] - '0';
  const char variant = id[1];

  ExperimentConfig c;
  c.id = id;
  c.reps = 100;
  c.K0 = 20;
  c.nodes_per_community = 50;
  c.theta_mode = ThetaMode::uniform_random;

  switch (exp) {
    case 1: c.dist.family = Family::bernoulli; break;
    case 2: c.dist.family = Family::binomial; c.dist.trials = 5; break;
    case 3: c.dist.family = Family::poisson; break;
    case 4: c.dist.family = Family::geometric; c.theta_mode = ThetaMode::constant; break;
    case 5: c.dist.family = Family::exponential; break;
    case 6: c.dist.family = Family::normal; c.dist.sigma2 = 1.0; break;
    case 7: c.dist.family = Family::laplace; c.dist.sigma2 = 1.0; break;
    case 8: c.dist.family = Family::uniform; break;
    case 9:
      c.dist.family = Family::signed_edges;
      c.theta_mode = ThetaMode::constant;
      c.nodes_per_community = 100;
      break;
  }

  if (variant == 'a') {
    // rho sweep at K = 3 (block P specific to the family group)
    c.K = 3;
    c.P = exp == 6 || exp == 7 || exp == 9 ? p_exp6a() : p_exp1a();
    switch (exp) {
      case 1: c.sweep = {"rho", grid(2, 10, 1, 10.0)}; break;
      case 2:
      case 3: c.sweep = {"rho", grid(1, 10, 1, 2.0)}; break;
      case 4: c.sweep = {"rho", grid(5, 15, 1, 1.0)}; break;
      case 5:
      case 6:
      case 7: c.sweep = {"rho", grid(1, 10, 1, 1.0)}; break;
      case 8: c.sweep = {"rho", grid(2, 20, 2, 1.0)}; break;
      case 9: c.sweep = {"rho", grid(1, 10, 1, 10.0)}; break;
    }
    c.rho = c.sweep.values.front();
  } else if (variant == 'b') {
    // K sweep {2..6} with unit diagonal and 0.2 off-diagonal
    c.beta = 0.2;
    c.sweep = {"k", {2, 3, 4, 5, 6}};
    c.K = 2;
    c.P = uniform_p(2, 0.2);
    switch (exp) {
      case 1: c.rho = 0.9; break;
      case 2: c.rho = 2.0; break;
      case 3: c.rho = 2.0; break;
      case 4: c.rho = 10.0; break;
      case 5: c.rho = 5.0; break;
      case 6: c.rho = 3.0; break;
      case 7: c.rho = 3.0; break;
      case 8: c.rho = 0.3; break;
      case 9: c.rho = 0.5; break;
    }
  } else if (variant == 'c') {
    // rho sweep at K = 1, P = [1]
    c.K = 1;
    c.P = Matrix::Constant(1, 1, 1.0);
    switch (exp) {
      case 1: c.sweep = {"rho", grid(1, 10, 1, 10.0)}; break;
      case 2:
      case 3: c.sweep = {"rho", grid(1, 10, 1, 2.0)}; break;
      case 4: c.sweep = {"rho", grid(2, 20, 2, 1.0)}; break;
      case 5: c.sweep = {"rho", grid(1, 10, 1, 1.0)}; break;
      case 6:
      case 7: c.sweep = {"rho", grid(1, 20, 1, 2.0)}; break;
      case 8: c.sweep = {"rho", grid(2, 20, 2, 1.0)}; break;
      case 9: c.sweep = {"rho", grid(1, 10, 1, 10.0)}; break;
    }
    c.rho = c.sweep.values.front();
  } else {
    // beta sweep at K = 2 with unit diagonal
    c.K = 2;
    if (exp == 6 || exp == 7 || exp == 9)
      c.sweep = {"beta", grid(-5, 9, 1, 10.0)};
    else
      c.sweep = {"beta", grid(1, 8, 1, 10.0)};
    c.beta = c.sweep.values.front();
    c.P = uniform_p(2, c.beta);
    switch (exp) {
      case 1: c.rho = 1.0; break;
      case 2: c.rho = 1.0; break;
      case 3: c.rho = 2.0; break;
      case 4: c.rho = 10.0; break;
      case 5: c.rho = 5.0; break;
      case 6: c.rho = 2.0; break;
      case 7: c.rho = 2.0; break;
      case 8: c.rho = 1.0; break;
      case 9: c.rho = 0.5; break;
    }
  }
  return c;
}

ExperimentConfig materialize_point(const ExperimentConfig& config, int index) {
  if (config.sweep.empty()) {
    if (index != 0) throw ConfigError("config has no sweep; point index must be 0");
    ExperimentConfig point = config;
    point.base_seed = derive_seed(config.base_seed, 0);
    return point;
  }
  if (index < 0 || index >= static_cast<int>(config.sweep.values.size()))
    throw ConfigError("sweep point index out of range");

  ExperimentConfig point = config;
  point.sweep = {};
  point.base_seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(index));
  const double value = config.sweep.values[index];
  if (config.sweep.param_name == "rho") {
    point.rho = value;
  } else if (config.sweep.param_name == "k") {
    point.K = static_cast<int>(value);
    point.P = uniform_p(point.K, config.beta);
  } else if (config.sweep.param_name == "beta") {
    point.beta = value;
    point.P = uniform_p(config.K, value);
  } else {
    throw ConfigError("unknown sweep parameter '" + config.sweep.param_name + "'");
  }
  return point;
}

TrialResult run_trial(const ExperimentConfig& config, int rep_index) {
  config.dist.validate();
  const int n = config.n();
  TrialResult out;
  out.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(rep_index));

  LabelVector labels = sample_labels(n, config.K, derive_seed(out.seed, 1));
  Vector theta = sample_theta(n, config.rho, config.theta_mode,
                              derive_seed(out.seed, 2));
  Matrix omega = expectation_matrix(labels, config.P, theta);
  ValidationReport rep = validate_omega(omega, config.dist);
  if (!rep.ok())
    throw ConfigError("preset produces an infeasible expectation matrix:\n" +
                      rep.summary());
  SampleOptions sopts;
  sopts.zero_diagonal = config.zero_diagonal;
  Matrix a = sample_adjacency(omega, config.dist, derive_seed(out.seed, 3), sopts);

  EstimateResult est = estimate_k(a, std::min(config.K0, n),
                                  derive_seed(out.seed, 4));
  out.k_hat = est.k_hat;
  out.q_at_k_hat = est.curve.q_values[est.k_hat - 1];
  return out;
}

std::vector<AccuracyReport> accuracy_sweep(const ExperimentConfig& config) {
  const int points = config.sweep.empty()
                         ? 1
                         : static_cast<int>(config.sweep.values.size());
  std::vector<AccuracyReport> reports;
  for (int p = 0; p < points; ++p) {
    ExperimentConfig point = materialize_point(config, p);
    AccuracyReport report;
    report.experiment_id = config.id;
    report.param_name = config.sweep.empty() ? "none" : config.sweep.param_name;
    report.param_value = config.sweep.empty() ? 0.0 : config.sweep.values[p];
    report.k_true = point.K;
    report.reps = point.reps;

    auto t0 = std::chrono::steady_clock::now();
    int hits = 0;
    for (int r = 0; r < point.reps; ++r) {
      TrialResult trial = run_trial(point, r);
      hits += trial.k_hat == point.K ? 1 : 0;
      report.trials.push_back(trial);
    }
    report.accuracy = static_cast<double>(hits) / point.reps;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    reports.push_back(std::move(report));
  }
  return reports;
}

void write_sweep_csv(std::ostream& os,
                     const std::vector<AccuracyReport>& reports) {
  os << "experiment_id,param_name,param_value,rep,k_true,k_hat,q_at_k_hat,seed\n";
  for (const auto& rep : reports) {
    for (std::size_t r = 0; r < rep.trials.size(); ++r) {
      const TrialResult& t = rep.trials[r];
      os << rep.experiment_id << ',' << rep.param_name << ','
         << format_double(rep.param_value) << ',' << r << ',' << rep.k_true
         << ',' << t.k_hat << ',' << format_double(t.q_at_k_hat) << ','
         << t.seed << '\n';
    }
  }
}

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  const int r = static_cast<int>(rows.size());
  if (r == 0) return Matrix();
  const int c = static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  return m;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["id"] = c.id;
  j["K"] = c.K;
  j["nodes_per_community"] = c.nodes_per_community;
  j["n_override"] = c.n_override;
  j["P"] = matrix_to_json(c.P);
  j["rho"] = c.rho;
  j["beta"] = c.beta;
  j["dist"]["family"] = family_name(c.dist.family);
  j["dist"]["trials"] = c.dist.trials;
  j["dist"]["sigma2"] = c.dist.sigma2;
  j["dist"]["uniform_literal"] = c.dist.uniform_literal;
  j["theta_mode"] =
      c.theta_mode == ThetaMode::constant ? "constant" : "uniform-random";
  j["zero_diagonal"] = c.zero_diagonal;
  j["reps"] = c.reps;
  j["K0"] = c.K0;
  j["base_seed"] = c.base_seed;
  j["sweep"]["param"] = c.sweep.param_name;
  j["sweep"]["values"] = c.sweep.values;
  return j.dump(2);
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad config JSON: ") + e.what());
  }
  try {
    ExperimentConfig c;
    c.id = j.at("id").get<std::string>();
    c.K = j.at("K").get<int>();
    c.nodes_per_community = j.at("nodes_per_community").get<int>();
    c.n_override = j.value("n_override", 0);
    c.P = matrix_from_json(j.at("P"));
    c.rho = j.at("rho").get<double>();
    c.beta = j.value("beta", 0.0);
    c.dist.family = family_from_name(j.at("dist").at("family").get<std::string>());
    c.dist.trials = j.at("dist").value("trials", 1);
    c.dist.sigma2 = j.at("dist").value("sigma2", 1.0);
    c.dist.uniform_literal = j.at("dist").value("uniform_literal", false);
    std::string mode = j.at("theta_mode").get<std::string>();
    if (mode == "constant")
      c.theta_mode = ThetaMode::constant;
    else if (mode == "uniform-random")
      c.theta_mode = ThetaMode::uniform_random;
    else
      throw ConfigError("unknown theta_mode '" + mode + "'");
    c.zero_diagonal = j.value("zero_diagonal", true);
    c.reps = j.at("reps").get<int>();
    c.K0 = j.at("K0").get<int>();
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    c.sweep.param_name = j.at("sweep").at("param").get<std::string>();
    c.sweep.values = j.at("sweep").at("values").get<std::vector<double>>();
    if (c.reps < 1) throw ConfigError("reps must be >= 1");
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad config JSON: ") + e.what());
  }
}

}  // namespace wmodk
