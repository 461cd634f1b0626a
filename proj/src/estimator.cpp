#include "wmodk/estimator.hpp"

#include <string>

#include "wmodk/modularity.hpp"
#include "wmodk/rng.hpp"

namespace wmodk {

namespace {

LabelVector all_ones_labels(int n) {
  LabelVector labels;
  labels.k = 1;
  labels.entries.assign(n, 1);
  return labels;
}

}  // namespace

EstimateResult estimate_k(const Matrix& a, int K0, std::uint64_t seed,
                          EstimateMode mode, const KMeansOptions& kopts) {
  require_square_symmetric(a, 1e-9, "adjacency matrix");
  const int n = static_cast<int>(a.rows());
  if (K0 < 1 || K0 > n)
    throw std::invalid_argument("need 1 <= K0 <= n, got K0 = " +
                                std::to_string(K0) + ", n = " + std::to_string(n));

  ModularityScorer scorer(a);
  EstimateResult res;
  auto push = [&](int k, const LabelVector& labels) {
    double q = scorer.score(labels).q;
    res.curve.k_values.push_back(k);
    res.curve.q_values.push_back(q);
    res.curve.labels_per_k.push_back(labels);
    return q;
  };
  auto seed_for = [&](int k) {
    return derive_seed(seed, static_cast<std::uint64_t>(k));
  };

  if (mode == EstimateMode::argmax) {
    // One decomposition at the cap; the top-k slice of a magnitude-ordered
    // basis is exactly the top-k decomposition.
    SpectralEmbedding full;
    if (K0 > 1) full = top_k_eigen(a, K0);
    int best_k = 1;
    double best_q = push(1, all_ones_labels(n));
    for (int k = 2; k <= K0; ++k) {
      NormalizedEmbedding norm = row_normalize(Matrix(full.vectors.leftCols(k)));
      LabelVector labels = kmeans(norm.rows, k, seed_for(k), kopts);
      double q = push(k, labels);
      if (q > best_q) {
        best_q = q;
        best_k = k;
      }
    }
    res.k_hat = best_k;
  } else {
    double prev = push(1, all_ones_labels(n));
    res.k_hat = 1;
    for (int k = 2; k <= K0; ++k) {
      LabelVector labels = ndfa(a, k, seed_for(k), kopts);
      double q = push(k, labels);
      if (q <= prev) break;
      prev = q;
      res.k_hat = k;
    }
  }
  res.labels_at_k_hat = res.curve.labels_per_k[res.k_hat - 1];
  return res;
}

}  // namespace wmodk
