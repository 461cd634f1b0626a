#pragma once

#include <cstdint>
#include <vector>

#include "wmodk/types.hpp"

namespace wmodk {

// Top-k eigenpairs by magnitude. Columns of `vectors` are orthonormal and
// sign-fixed so each one's largest-magnitude entry is positive; `values` are
// ordered by descending |lambda|, ties by descending lambda then by the
// source solver's index.
struct SpectralEmbedding {
  Matrix vectors;  // n x k
  Vector values;   // k
};

SpectralEmbedding top_k_eigen(const Matrix& a, int k);

// Full dense solve regardless of size; the iterative path is checked
// against this in tests.
SpectralEmbedding top_k_eigen_dense(const Matrix& a, int k);

struct NormalizedEmbedding {
  Matrix rows;                  // n x k, unit rows except the listed ones
  std::vector<int> zero_rows;   // rows with norm <= 1e-12, left untouched
};

NormalizedEmbedding row_normalize(const SpectralEmbedding& emb);
NormalizedEmbedding row_normalize(const Matrix& u);

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  double move_tol = 1e-9;
};

// Lloyd's algorithm with k-means++ seeding, several restarts (best WCSS
// wins, earliest restart breaks ties), and empty-cluster repair. Labels are
// 1-based and canonicalized by order of first appearance.
LabelVector kmeans(const Matrix& points, int k, std::uint64_t seed,
                   const KMeansOptions& opts = {});

// WCSS of an existing assignment against its class means.
double wcss_of(const Matrix& points, const LabelVector& labels);

// top_k_eigen -> row_normalize -> kmeans; k = 1 short-circuits to all ones.
LabelVector ndfa(const Matrix& a, int k, std::uint64_t seed,
                 const KMeansOptions& opts = {});

}  // namespace wmodk
