#include "wmodk/dcdfm.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace wmodk {

const char* family_name(Family f) {
  switch (f) {
    case Family::bernoulli: return "bernoulli";
    case Family::binomial: return "binomial";
    case Family::poisson: return "poisson";
    case Family::geometric: return "geometric";
    case Family::exponential: return "exponential";
    case Family::normal: return "normal";
    case Family::laplace: return "laplace";
    case Family::uniform: return "uniform";
    case Family::signed_edges: return "signed";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::bernoulli, Family::binomial, Family::poisson,
                   Family::geometric, Family::exponential, Family::normal,
                   Family::laplace, Family::uniform, Family::signed_edges}) {
    if (name == family_name(f)) return f;
  }
  throw ConfigError("unknown distribution family '" + name + "'");
}

Matrix membership_from_labels(const LabelVector& labels) {
  const int n = labels.n();
  if (n < 1 || labels.k < 1) throw StructuralError("empty label vector");
  for (int i = 0; i < n; ++i) {
    if (labels.entries[i] < 1 || labels.entries[i] > labels.k)
      throw StructuralError("invalid label " + std::to_string(labels.entries[i]) +
                            " at index " + std::to_string(i));
  }
  Matrix z = Matrix::Zero(n, labels.k);
  for (int i = 0; i < n; ++i) z(i, labels.entries[i] - 1) = 1.0;
  return z;
}

LabelVector labels_from_membership(const Matrix& z) {
  LabelVector labels;
  labels.k = static_cast<int>(z.cols());
  labels.entries.resize(z.rows());
  for (int i = 0; i < z.rows(); ++i) {
    int col;
    z.row(i).maxCoeff(&col);
    labels.entries[i] = col + 1;
  }
  return labels;
}

ValidationReport validate_connectivity(const Matrix& p, Family family,
                                       bool strict) {
  require_square_symmetric(p, 1e-12, "connectivity matrix");
  ValidationReport rep;
  const int k = static_cast<int>(p.rows());

  double max_abs = p.cwiseAbs().maxCoeff();
  if (max_abs > 1.0 + 1e-12)
    rep.violations.push_back("entries must lie in [-1, 1]; max |P_kl| = " +
                             std::to_string(max_abs));
  if (std::abs(max_abs - 1.0) > 1e-12) {
    std::string msg = "max |P_kl| should equal 1, got " + std::to_string(max_abs);
    if (strict)
      rep.violations.push_back(msg);
    else
      rep.warnings.push_back(msg);
  }

  Eigen::JacobiSVD<Matrix> svd(p);
  double smin = svd.singularValues()(k - 1);
  double smax = svd.singularValues()(0);
  if (smax == 0.0 || smin <= 1e-10 * smax)
    rep.violations.push_back("rank below " + std::to_string(k) +
                             " (singular value ratio " +
                             std::to_string(smax == 0.0 ? 0.0 : smin / smax) + ")");

  bool need_nonneg = family == Family::bernoulli || family == Family::binomial ||
                     family == Family::poisson || family == Family::uniform;
  bool need_positive =
      family == Family::geometric || family == Family::exponential;
  double min_entry = p.minCoeff();
  if (need_nonneg && min_entry < 0.0)
    rep.violations.push_back(std::string(family_name(family)) +
                             " family requires nonnegative entries; min = " +
                             std::to_string(min_entry));
  if (need_positive && min_entry <= 0.0)
    rep.violations.push_back(std::string(family_name(family)) +
                             " family requires strictly positive entries; min = " +
                             std::to_string(min_entry));
  return rep;
}

Matrix expectation_matrix(const LabelVector& labels, const Matrix& p,
                          const Vector& theta) {
  labels.validate();
  require_square_symmetric(p, 1e-12, "connectivity matrix");
  const int n = labels.n();
  if (p.rows() != labels.k)
    throw StructuralError("connectivity matrix is " + std::to_string(p.rows()) +
                          "x" + std::to_string(p.cols()) + " but labels use k = " +
                          std::to_string(labels.k));
  if (theta.size() != n)
    throw StructuralError("theta length " + std::to_string(theta.size()) +
                          " != n = " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (!(theta(i) > 0.0))
      throw StructuralError("theta must be strictly positive (index " +
                            std::to_string(i) + ")");

  Matrix omega(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      omega(i, j) = theta(i) * theta(j) * p(labels.entries[i] - 1, labels.entries[j] - 1);
  return omega;
}

Matrix expectation_matrix(const Matrix& z, const Matrix& p, const Vector& theta) {
  if (z.rows() != theta.size() || z.cols() != p.rows())
    throw StructuralError("membership/connectivity/theta dimensions disagree");
  return expectation_matrix(labels_from_membership(z), p, theta);
}

}  // namespace wmodk
