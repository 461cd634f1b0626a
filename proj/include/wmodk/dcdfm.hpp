#pragma once

#include "wmodk/types.hpp"

namespace wmodk {

enum class Family {
  bernoulli,
  binomial,
  poisson,
  geometric,
  exponential,
  normal,
  laplace,
  uniform,
  signed_edges,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// n x K binary membership matrix Z with Z(i, l_i - 1) = 1.
Matrix membership_from_labels(const LabelVector& labels);

// Reads labels back out of a membership matrix (row argmax).
LabelVector labels_from_membership(const Matrix& z);

// Checks the block connectivity matrix: entries in [-1,1], full rank,
// max-abs entry 1 (warning unless strict), and the sign range the sampling
// family admits. Shape problems throw; constraint problems land in the report.
ValidationReport validate_connectivity(const Matrix& p, Family family,
                                       bool strict = false);

// Expected adjacency: Omega_ij = theta_i * theta_j * P(l_i, l_j).
Matrix expectation_matrix(const LabelVector& labels, const Matrix& p,
                          const Vector& theta);
Matrix expectation_matrix(const Matrix& z, const Matrix& p, const Vector& theta);

}  // namespace wmodk
