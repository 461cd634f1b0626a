#pragma once

#include <cstdint>

#include "wmodk/dcdfm.hpp"
#include "wmodk/rng.hpp"
#include "wmodk/types.hpp"

namespace wmodk {

// Which family generates edge weights, plus its auxiliary parameters.
// `uniform_literal` switches the uniform family from the expectation-
// calibrated draw Uniform(0, 2*Omega_ij) to the literal Uniform(0, Omega_ij),
// whose mean is Omega_ij / 2.
struct DistributionSpec {
  Family family = Family::bernoulli;
  int trials = 1;        // binomial only
  double sigma2 = 1.0;   // normal / laplace only
  bool uniform_literal = false;

  void validate() const {
    if (family == Family::binomial && trials < 1)
      throw ConfigError("binomial needs trials >= 1");
    if ((family == Family::normal || family == Family::laplace) && !(sigma2 > 0.0))
      throw ConfigError("normal/laplace need sigma2 > 0");
  }
  bool operator==(const DistributionSpec&) const = default;
};

enum class ThetaMode { uniform_random, constant };

struct SamplerConfig {
  std::uint64_t seed = 0;
  double rho = 1.0;
  ThetaMode theta_mode = ThetaMode::uniform_random;
};

struct SampleOptions {
  bool zero_diagonal = false;
};

// Each label drawn independently and uniformly from {1, ..., K}.
LabelVector sample_labels(int n, int K, std::uint64_t seed);

// uniform_random: theta_i = u_i * sqrt(rho) with u_i ~ U(0,1), u_i > 0.
// constant: theta_i = sqrt(rho).
Vector sample_theta(int n, double rho, ThetaMode mode, std::uint64_t seed);
Vector sample_theta(int n, const SamplerConfig& config);

// Family-specific feasibility of an expectation matrix: bernoulli needs
// probabilities, geometric needs means >= 1, signed needs |Omega| <= 1, ...
ValidationReport validate_omega(const Matrix& omega, const DistributionSpec& dist);

// Draws the upper triangle (diagonal included) independently from the family
// with mean Omega_ij, then mirrors. Refuses infeasible Omega.
Matrix sample_adjacency(const Matrix& omega, const DistributionSpec& dist,
                        std::uint64_t seed, const SampleOptions& opts = {});

// Single draw with mean `mean`; consumes uniforms from `u`. Exposed for
// calibration tests.
double draw_edge_weight(double mean, const DistributionSpec& dist, UniformStream& u);

}  // namespace wmodk
