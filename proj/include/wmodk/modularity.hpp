#pragma once

#include "wmodk/types.hpp"

namespace wmodk {

// Entrywise positive/negative parts: A = plus - minus, plus .* minus = 0.
struct SignSplit {
  Matrix plus;
  Matrix minus;
};

SignSplit sign_split(const Matrix& a);

struct DegreeSummary {
  Vector dplus;   // row sums of the positive part
  Vector dminus;  // row sums of the negative part
  double mplus = 0.0;   // half the total positive weight
  double mminus = 0.0;  // half the total negative weight
};

DegreeSummary degree_summary(const SignSplit& split);

struct PartitionScore {
  LabelVector labels;
  double q = 0.0;
  double q_plus = 0.0;
  double q_minus = 0.0;
  DegreeSummary summary;
};

// Signed-aware weighted modularity:
//   Q = (2m+ * Q+ - 2m- * Q-) / (2m+ + 2m-),
// where Q+/Q- are Newman-Girvan sums over the positive/negative part and an
// all-zero side contributes 0. Reduces to Newman-Girvan when A >= 0.
PartitionScore weighted_modularity(const Matrix& a, const LabelVector& labels);

// Precomputes the split and degrees once so many partitions of the same
// matrix can be scored cheaply (the estimator probes k = 1..K0).
class ModularityScorer {
 public:
  explicit ModularityScorer(const Matrix& a);

  PartitionScore score(const LabelVector& labels) const;
  const DegreeSummary& degrees() const { return deg_; }

 private:
  SignSplit split_;
  DegreeSummary deg_;
};

}  // namespace wmodk
