#include "wmodk/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wmodk/rng.hpp"

namespace wmodk {

namespace {

constexpr int kDenseCutoff = 512;

void check_eitargs(const Matrix& a, int k) {
  require_square_symmetric(a, 1e-9, "adjacency matrix");
  if (k < 1 || k > a.rows())
    throw std::invalid_argument("need 1 <= k <= n, got k = " + std::to_string(k) +
                                ", n = " + std::to_string(a.rows()));
}

// Order eigenpairs by |lambda| desc, then lambda desc, then source index asc.
std::vector<int> magnitude_order(const Vector& values) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    double ma = std::abs(values(a)), mb = std::abs(values(b));
    if (ma != mb) return ma > mb;
    if (values(a) != values(b)) return values(a) > values(b);
    return a < b;
  });
  return idx;
}

void fix_column_signs(Matrix& u) {
  for (int j = 0; j < u.cols(); ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < u.rows(); ++i) {
      double m = std::abs(u(i, j));
      if (m > best) {
        best = m;
        arg = i;
      }
    }
    if (u(arg, j) < 0.0) u.col(j) = -u.col(j);
  }
}

SpectralEmbedding select_pairs(const Matrix& vectors, const Vector& values, int k) {
  std::vector<int> order = magnitude_order(values);
  SpectralEmbedding emb;
  emb.vectors.resize(vectors.rows(), k);
  emb.values.resize(k);
  for (int j = 0; j < k; ++j) {
    emb.vectors.col(j) = vectors.col(order[j]);
    emb.values(j) = values(order[j]);
  }
  fix_column_signs(emb.vectors);
  return emb;
}

// Lanczos with full reorthogonalization. Grows the Krylov basis until the
// wanted Ritz pairs converge; falls back to the dense path if it cannot.
bool lanczos_top_k(const Matrix& a, int k, SpectralEmbedding* out) {
  const int n = static_cast<int>(a.rows());
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;

  int m = std::min(n, std::max(3 * k + 20, 60));
  UniformStream rng(0x5eed5eed5eedULL);

  while (true) {
    Matrix v(n, m + 1);
    Vector alpha(m), beta(m);
    for (int i = 0; i < n; ++i) v(i, 0) = rng.unit() - 0.5;
    v.col(0).normalize();

    int built = 0;
    for (int j = 0; j < m; ++j) {
      Vector w = a * v.col(j);
      alpha(j) = v.col(j).dot(w);
      w -= alpha(j) * v.col(j);
      if (j > 0) w -= beta(j - 1) * v.col(j - 1);
      // two Gram-Schmidt sweeps against the whole basis
      for (int pass = 0; pass < 2; ++pass)
        for (int t = 0; t <= j; ++t) w -= v.col(t).dot(w) * v.col(t);
      beta(j) = w.norm();
      built = j + 1;
      if (beta(j) < 1e-13 * scale) {
        // invariant subspace hit; restart direction orthogonal to the basis
        Vector f(n);
        for (int i = 0; i < n; ++i) f(i) = rng.unit() - 0.5;
        for (int pass = 0; pass < 2; ++pass)
          for (int t = 0; t <= j; ++t) f -= v.col(t).dot(f) * v.col(t);
        double fn = f.norm();
        if (fn < 1e-12) break;  // basis spans everything reachable
        v.col(j + 1) = f / fn;
        beta(j) = 0.0;
      } else {
        v.col(j + 1) = w / beta(j);
      }
    }

    Matrix t = Matrix::Zero(built, built);
    for (int j = 0; j < built; ++j) {
      t(j, j) = alpha(j);
      if (j + 1 < built) {
        t(j, j + 1) = beta(j);
        t(j + 1, j) = beta(j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> small(t);
    if (small.info() != Eigen::Success) return false;

    if (built >= k) {
      std::vector<int> order = magnitude_order(small.eigenvalues());
      bool converged = true;
      const double edge = built < m ? 0.0 : beta(built - 1);
      for (int j = 0; j < k && converged; ++j) {
        double resid = std::abs(edge * small.eigenvectors()(built - 1, order[j]));
        if (resid > tol) converged = false;
      }
      if (converged) {
        Matrix ritz = v.leftCols(built) * small.eigenvectors();
        Vector vals = small.eigenvalues();
        *out = select_pairs(ritz, vals, k);
        return true;
      }
    }
    if (m >= n) return false;
    m = std::min(n, 2 * m);
  }
}

}  // namespace

SpectralEmbedding top_k_eigen_dense(const Matrix& a, int k) {
  check_eitargs(a, k);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigendecomposition failed");
  return select_pairs(solver.eigenvectors(), solver.eigenvalues(), k);
}

SpectralEmbedding top_k_eigen(const Matrix& a, int k) {
  check_eitargs(a, k);
  if (a.rows() <= kDenseCutoff || k > a.rows() / 4)
    return top_k_eigen_dense(a, k);
  SpectralEmbedding emb;
  if (lanczos_top_k(a, k, &emb)) return emb;
  return top_k_eigen_dense(a, k);
}

NormalizedEmbedding row_normalize(const Matrix& u) {
  NormalizedEmbedding out;
  out.rows = u;
  for (int i = 0; i < u.rows(); ++i) {
    double norm = u.row(i).norm();
    if (norm > 1e-12)
      out.rows.row(i) /= norm;
    else
      out.zero_rows.push_back(i);
  }
  return out;
}

NormalizedEmbedding row_normalize(const SpectralEmbedding& emb) {
  return row_normalize(emb.vectors);
}

namespace {

struct LloydResult {
  std::vector<int> assign;  // 0-based
  double wcss = std::numeric_limits<double>::infinity();
};

// squared distances of every point to every center: n x k
Matrix pairwise_sq(const Matrix& x, const Matrix& c) {
  Matrix d = -2.0 * (x * c.transpose());
  Vector xn = x.rowwise().squaredNorm();
  Vector cn = c.rowwise().squaredNorm();
  d.colwise() += xn;
  d.rowwise() += cn.transpose();
  return d;
}

Matrix seed_centers_pp(const Matrix& x, int k, UniformStream& rng) {
  const int n = static_cast<int>(x.rows());
  Matrix centers(k, x.cols());
  centers.row(0) = x.row(rng.index(n));
  Vector d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    double total = d2.sum();
    int pick;
    if (total > 0.0) {
      double r = rng.unit() * total;
      double acc = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.index(n);
    }
    centers.row(c) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

LloydResult lloyd(const Matrix& x, int k, UniformStream& rng,
                  const KMeansOptions& opts) {
  const int n = static_cast<int>(x.rows());
  Matrix centers = seed_centers_pp(x, k, rng);
  std::vector<int> assign(n, -1);
  bool settling = false;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    Matrix d = pairwise_sq(x, centers);
    std::vector<int> next(n);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      int arg = 0;
      double best = d(i, 0);
      for (int c = 1; c < k; ++c) {
        if (d(i, c) < best) {
          best = d(i, c);
          arg = c;
        }
      }
      next[i] = arg;
      ++counts[arg];
    }
    // empty-cluster repair: hand the point farthest from its own center to
    // the empty cluster (never breaking up a singleton)
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[next[i]] < 2) continue;
        double di = d(i, next[i]);
        if (di > far_d) {
          far_d = di;
          far = i;
        }
      }
      if (far < 0) continue;  // fewer distinct points than clusters
      --counts[next[far]];
      next[far] = c;
      counts[c] = 1;
    }

    bool same = next == assign;
    assign = std::move(next);
    if (same || settling) break;

    Matrix fresh = Matrix::Zero(k, x.cols());
    for (int i = 0; i < n; ++i) fresh.row(assign[i]) += x.row(i);
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0) fresh.row(c) /= static_cast<double>(counts[c]);
    double move = (fresh - centers).cwiseAbs().maxCoeff();
    centers = fresh;
    // once centers stop moving, run one last assignment pass and stop
    if (move < opts.move_tol) settling = true;
  }

  LloydResult res;
  res.assign = assign;
  res.wcss = 0.0;
  Matrix means = Matrix::Zero(k, x.cols());
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) {
    means.row(assign[i]) += x.row(i);
    ++counts[assign[i]];
  }
  for (int c = 0; c < k; ++c)
    if (counts[c] > 0) means.row(c) /= static_cast<double>(counts[c]);
  for (int i = 0; i < n; ++i)
    res.wcss += (x.row(i) - means.row(assign[i])).squaredNorm();
  return res;
}

}  // namespace

double wcss_of(const Matrix& points, const LabelVector& labels) {
  labels.validate();
  if (labels.n() != points.rows())
    throw StructuralError("labels do not match point count");
  Matrix means = Matrix::Zero(labels.k, points.cols());
  std::vector<int> counts(labels.k, 0);
  for (int i = 0; i < points.rows(); ++i) {
    means.row(labels.entries[i] - 1) += points.row(i);
    ++counts[labels.entries[i] - 1];
  }
  for (int c = 0; c < labels.k; ++c)
    if (counts[c] > 0) means.row(c) /= static_cast<double>(counts[c]);
  double total = 0.0;
  for (int i = 0; i < points.rows(); ++i)
    total += (points.row(i) - means.row(labels.entries[i] - 1)).squaredNorm();
  return total;
}

LabelVector kmeans(const Matrix& points, int k, std::uint64_t seed,
                   const KMeansOptions& opts) {
  const int n = static_cast<int>(points.rows());
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (n < k)
    throw std::invalid_argument("k-means needs n >= k, got n = " +
                                std::to_string(n) + ", k = " + std::to_string(k));

  LloydResult best;
  for (int r = 0; r < opts.restarts; ++r) {
    UniformStream rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    LloydResult run = lloyd(points, k, rng, opts);
    if (run.wcss < best.wcss) best = std::move(run);
  }

  // canonical labels: first appearance order
  LabelVector labels;
  labels.k = k;
  labels.entries.resize(n);
  std::vector<int> remap(k, 0);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int c = best.assign[i];
    if (remap[c] == 0) remap[c] = ++next;
    labels.entries[i] = remap[c];
  }
  return labels;
}

LabelVector ndfa(const Matrix& a, int k, std::uint64_t seed,
                 const KMeansOptions& opts) {
  if (k == 1) {
    require_square_symmetric(a, 1e-9, "adjacency matrix");
    LabelVector labels;
    labels.k = 1;
    labels.entries.assign(a.rows(), 1);
    return labels;
  }
  SpectralEmbedding emb = top_k_eigen(a, k);
  NormalizedEmbedding norm = row_normalize(emb);
  return kmeans(norm.rows, k, seed, opts);
}

}  // namespace wmodk
