#include "wmodk/modularity.hpp"

#include <string>
#include <vector>

namespace wmodk {

SignSplit sign_split(const Matrix& a) {
  require_square_symmetric(a, 1e-9, "adjacency matrix");
  SignSplit s;
  s.plus = a.cwiseMax(0.0);
  s.minus = (-a).cwiseMax(0.0);
  return s;
}

DegreeSummary degree_summary(const SignSplit& split) {
  DegreeSummary d;
  const int n = static_cast<int>(split.plus.rows());
  d.dplus.resize(n);
  d.dminus.resize(n);
  for (int i = 0; i < n; ++i) {
    double sp = 0.0, sm = 0.0;
    for (int j = 0; j < n; ++j) {
      sp += split.plus(i, j);
      sm += split.minus(i, j);
    }
    d.dplus(i) = sp;
    d.dminus(i) = sm;
  }
  double tp = 0.0, tm = 0.0;
  for (int i = 0; i < n; ++i) {
    tp += d.dplus(i);
    tm += d.dminus(i);
  }
  d.mplus = tp / 2.0;
  d.mminus = tm / 2.0;
  return d;
}

ModularityScorer::ModularityScorer(const Matrix& a)
    : split_(sign_split(a)), deg_(degree_summary(split_)) {}

PartitionScore ModularityScorer::score(const LabelVector& labels) const {
  const int n = static_cast<int>(split_.plus.rows());
  if (labels.n() != n)
    throw StructuralError("label vector length " + std::to_string(labels.n()) +
                          " != n = " + std::to_string(n));
  labels.validate();

  // Per-community within-weight W_c and total degree D_c. Row partial sums
  // keep W_c bit-identical to the degree sums when one community holds all
  // nodes, which makes Q exactly 0 there.
  const int k = labels.k;
  std::vector<double> wp(k, 0.0), wm(k, 0.0), dp(k, 0.0), dm(k, 0.0);
  for (int i = 0; i < n; ++i) {
    const int c = labels.entries[i] - 1;
    double rp = 0.0, rm = 0.0;
    for (int j = 0; j < n; ++j) {
      if (labels.entries[j] == labels.entries[i]) {
        rp += split_.plus(i, j);
        rm += split_.minus(i, j);
      }
    }
    wp[c] += rp;
    wm[c] += rm;
    dp[c] += deg_.dplus(i);
    dm[c] += deg_.dminus(i);
  }

  PartitionScore out;
  out.labels = labels;
  out.summary = deg_;
  const double two_mp = 2.0 * deg_.mplus;
  const double two_mm = 2.0 * deg_.mminus;
  if (two_mp > 0.0) {
    double q = 0.0;
    for (int c = 0; c < k; ++c) q += (wp[c] - dp[c] * dp[c] / two_mp) / two_mp;
    out.q_plus = q;
  }
  if (two_mm > 0.0) {
    double q = 0.0;
    for (int c = 0; c < k; ++c) q += (wm[c] - dm[c] * dm[c] / two_mm) / two_mm;
    out.q_minus = q;
  }
  // one-sided matrices reduce exactly (Q = Q+ for nonnegative input)
  if (two_mp > 0.0 && two_mm == 0.0)
    out.q = out.q_plus;
  else if (two_mm > 0.0 && two_mp == 0.0)
    out.q = -out.q_minus;
  else if (two_mp + two_mm > 0.0)
    out.q = (two_mp * out.q_plus - two_mm * out.q_minus) / (two_mp + two_mm);
  return out;
}

PartitionScore weighted_modularity(const Matrix& a, const LabelVector& labels) {
  return ModularityScorer(a).score(labels);
}

}  // namespace wmodk
