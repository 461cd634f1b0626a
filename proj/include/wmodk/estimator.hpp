#pragma once

#include <cstdint>
#include <vector>

#include "wmodk/spectral.hpp"
#include "wmodk/types.hpp"

namespace wmodk {

enum class EstimateMode { argmax, early_stop };

// Q(k) for every candidate k that was evaluated, with the partitions that
// produced the scores.
struct ModularityCurve {
  std::vector<int> k_values;
  std::vector<double> q_values;
  std::vector<LabelVector> labels_per_k;
};

struct EstimateResult {
  int k_hat = 0;
  ModularityCurve curve;
  LabelVector labels_at_k_hat;
};

// Sweeps k = 1..K0, clustering with a per-k seed derived from (seed, k) and
// scoring each partition with the weighted modularity.
//   argmax:     evaluate the whole range, return the smallest maximizer.
//   early_stop: stop at the first k with Q(k+1) <= Q(k) and return k.
EstimateResult estimate_k(const Matrix& a, int K0, std::uint64_t seed,
                          EstimateMode mode = EstimateMode::argmax,
                          const KMeansOptions& kopts = {});

}  // namespace wmodk
