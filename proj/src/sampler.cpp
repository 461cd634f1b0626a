#include "wmodk/sampler.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wmodk {

LabelVector sample_labels(int n, int K, std::uint64_t seed) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (K < 1 || K > n) throw ConfigError("need 1 <= K <= n, got K = " +
                                        std::to_string(K) + ", n = " +
                                        std::to_string(n));
  UniformStream u(seed);
  LabelVector labels;
  labels.k = K;
  labels.entries.resize(n);
  for (int i = 0; i < n; ++i) labels.entries[i] = 1 + u.index(K);
  return labels;
}

Vector sample_theta(int n, double rho, ThetaMode mode, std::uint64_t seed) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(rho > 0.0)) throw ConfigError("rho must be > 0");
  const double s = std::sqrt(rho);
  Vector theta(n);
  if (mode == ThetaMode::constant) {
    theta.setConstant(s);
  } else {
    UniformStream u(seed);
    for (int i = 0; i < n; ++i) theta(i) = u.unit_open() * s;
  }
  return theta;
}

Vector sample_theta(int n, const SamplerConfig& config) {
  return sample_theta(n, config.rho, config.theta_mode, config.seed);
}

ValidationReport validate_omega(const Matrix& omega, const DistributionSpec& dist) {
  dist.validate();
  require_square_symmetric(omega, 1e-9, "expectation matrix");
  ValidationReport rep;
  const int n = static_cast<int>(omega.rows());
  int reported = 0;
  auto offend = [&](int i, int j, const std::string& why) {
    if (reported < 8)
      rep.violations.push_back("Omega(" + std::to_string(i) + "," +
                               std::to_string(j) + ") " + why);
    else if (reported == 8)
      rep.violations.push_back("...");
    ++reported;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double w = omega(i, j);
      switch (dist.family) {
        case Family::bernoulli:
          if (w < 0.0 || w > 1.0) offend(i, j, "outside [0,1]");
          break;
        case Family::binomial:
          if (w < 0.0 || w > dist.trials)
            offend(i, j, "outside [0, m] for m = " + std::to_string(dist.trials));
          break;
        case Family::poisson:
        case Family::uniform:
          if (w < 0.0) offend(i, j, "negative");
          break;
        case Family::geometric:
          if (w < 1.0) offend(i, j, "below 1");
          break;
        case Family::exponential:
          if (!(w > 0.0)) offend(i, j, "not strictly positive");
          break;
        case Family::normal:
        case Family::laplace:
          break;  // any finite mean works
        case Family::signed_edges:
          if (w < -1.0 || w > 1.0) offend(i, j, "outside [-1,1]");
          break;
      }
    }
  }
  return rep;
}

namespace {

// Exact Poisson sampling by Knuth's product method; large means are split
// into chunks so the e^-lambda threshold stays representable.
double draw_poisson(double lambda, UniformStream& u) {
  double total = 0.0;
  while (lambda > 25.0) {
    double part = 25.0;
    double limit = std::exp(-part);
    double prod = u.unit_open();
    long count = 0;
    while (prod > limit) {
      prod *= u.unit_open();
      ++count;
    }
    total += static_cast<double>(count);
    lambda -= part;
  }
  double limit = std::exp(-lambda);
  double prod = u.unit_open();
  long count = 0;
  while (prod > limit) {
    prod *= u.unit_open();
    ++count;
  }
  return total + static_cast<double>(count);
}

double draw_normal(double mean, double sd, UniformStream& u) {
  // Box-Muller, cosine branch; two uniforms per draw keeps the stream layout
  // independent of earlier draws.
  double u1 = 1.0 - u.unit();  // (0, 1]
  double u2 = u.unit();
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

double draw_edge_weight(double mean, const DistributionSpec& dist,
                        UniformStream& u) {
  switch (dist.family) {
    case Family::bernoulli:
      return u.unit() < mean ? 1.0 : 0.0;
    case Family::binomial: {
      const double p = mean / dist.trials;
      int hits = 0;
      for (int t = 0; t < dist.trials; ++t) hits += u.unit() < p ? 1 : 0;
      return hits;
    }
    case Family::poisson:
      return draw_poisson(mean, u);
    case Family::geometric: {
      // support {1, 2, ...}, P(X = m) = p (1-p)^(m-1) with p = 1 / mean
      const double p = 1.0 / mean;
      if (p >= 1.0) return 1.0;
      double v = u.unit_open();
      return std::floor(std::log(v) / std::log1p(-p)) + 1.0;
    }
    case Family::exponential:
      return -mean * std::log(u.unit_open());
    case Family::normal:
      return draw_normal(mean, std::sqrt(dist.sigma2), u);
    case Family::laplace: {
      // scale b = sigma / sqrt(2) gives variance sigma^2
      const double b = std::sqrt(dist.sigma2 / 2.0);
      const double v = u.unit() - 0.5;
      return mean - b * (v < 0 ? -1.0 : 1.0) * std::log1p(-2.0 * std::abs(v));
    }
    case Family::uniform:
      return u.unit() * (dist.uniform_literal ? mean : 2.0 * mean);
    case Family::signed_edges:
      return u.unit() < (1.0 + mean) / 2.0 ? 1.0 : -1.0;
  }
  throw ConfigError("unhandled family");
}

Matrix sample_adjacency(const Matrix& omega, const DistributionSpec& dist,
                        std::uint64_t seed, const SampleOptions& opts) {
  ValidationReport rep = validate_omega(omega, dist);
  if (!rep.ok())
    throw ConfigError("expectation matrix infeasible for " +
                      std::string(family_name(dist.family)) + " sampling:\n" +
                      rep.summary());
  const int n = static_cast<int>(omega.rows());
  UniformStream u(seed);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double w = draw_edge_weight(omega(i, j), dist, u);
      a(i, j) = w;
      a(j, i) = w;
    }
  }
  if (opts.zero_diagonal) a.diagonal().setZero();
  return a;
}

}  // namespace wmodk
