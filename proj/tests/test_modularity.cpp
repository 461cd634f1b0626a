#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wmodk/modularity.hpp"
#include "wmodk/rng.hpp"

using namespace wmodk;

TEST_CASE("sign split") {
  SUBCASE("all nonnegative") {
    Matrix a(2, 2);
    a << 0, 2, 2, 0;
    SignSplit s = sign_split(a);
    CHECK((s.plus - a).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.minus.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("all nonpositive") {
    Matrix a(2, 2);
    a << 0, -3, -3, 0;
    SignSplit s = sign_split(a);
    CHECK(s.plus.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.minus(0, 1) == 3.0);
  }

  SUBCASE("reconstruction and disjoint support on random matrices") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      Matrix a = oracles::random_signed_matrix(12, seed);
      SignSplit s = sign_split(a);
      CHECK((s.plus - s.minus - a).cwiseAbs().maxCoeff() == 0.0);
      CHECK((s.plus.array() * s.minus.array()).abs().maxCoeff() == 0.0);
      CHECK(s.plus.minCoeff() >= 0.0);
      CHECK(s.minus.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("degree summary identities") {
  Matrix a = oracles::random_signed_matrix(9, 4);
  DegreeSummary d = degree_summary(sign_split(a));
  CHECK(d.mplus == doctest::Approx(d.dplus.sum() / 2).epsilon(1e-15));
  CHECK(d.mminus == doctest::Approx(d.dminus.sum() / 2).epsilon(1e-15));
}

TEST_CASE("weighted modularity hand values") {
  SUBCASE("single community is exactly zero") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Matrix a = oracles::random_signed_matrix(15, seed);
      LabelVector all{{std::vector<int>(15, 1)}, 1};
      PartitionScore s = weighted_modularity(a, all);
      CHECK(std::abs(s.q) <= 1e-12);
      CHECK(std::abs(s.q_plus) <= 1e-12);
      CHECK(std::abs(s.q_minus) <= 1e-12);
    }
  }

  SUBCASE("two disjoint edges give Q = 0.5") {
    Matrix a = Matrix::Zero(4, 4);
    a(0, 1) = a(1, 0) = 1.0;
    a(2, 3) = a(3, 2) = 1.0;
    PartitionScore s = weighted_modularity(a, {{1, 1, 2, 2}, 2});
    CHECK(s.q == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.summary.mplus == doctest::Approx(2.0));
    CHECK(s.summary.mminus == 0.0);
  }

  SUBCASE("antagonistic pair split gives Q = +0.5") {
    Matrix a(2, 2);
    a << 0, -1, -1, 0;
    PartitionScore s = weighted_modularity(a, {{1, 2}, 2});
    CHECK(s.q == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(s.q_plus == 0.0);
    CHECK(s.q_minus == doctest::Approx(-0.5).epsilon(1e-13));
  }

  SUBCASE("all-zero matrix scores zero") {
    Matrix a = Matrix::Zero(3, 3);
    CHECK(weighted_modularity(a, {{1, 2, 1}, 2}).q == 0.0);
  }

  SUBCASE("label length mismatch throws") {
    Matrix a = Matrix::Zero(3, 3);
    CHECK_THROWS_AS(weighted_modularity(a, {{1, 2}, 2}), StructuralError);
  }
}

TEST_CASE("streaming accumulation matches the literal double sum") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    UniformStream u(seed);
    int n = 2 + u.index(63);
    int k = 1 + u.index(std::min(n, 5));
    Matrix a = oracles::random_signed_matrix(n, derive_seed(seed, 1));
    LabelVector labels = oracles::random_labels(n, k, derive_seed(seed, 2));
    double fast = weighted_modularity(a, labels).q;
    double slow = oracles::double_sum_modularity(a, labels);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
  }
}

TEST_CASE("newman-girvan reduction for nonnegative matrices") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    UniformStream u(derive_seed(7, seed));
    int n = 5 + u.index(40);
    int k = 1 + u.index(4);
    if (k > n) k = n;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double w = u.unit() < 0.3 ? u.unit() * 3.0 : 0.0;
        a(i, j) = w;
        a(j, i) = w;
      }
    if (a.sum() == 0.0) a(0, 1) = a(1, 0) = 1.0;
    LabelVector labels = oracles::random_labels(n, k, derive_seed(seed, 3));
    PartitionScore s = weighted_modularity(a, labels);
    CHECK(s.summary.mminus == 0.0);
    CHECK(s.q == s.q_plus);
    CHECK(s.q == doctest::Approx(oracles::newman_girvan(a, labels)).epsilon(1e-12));
  }
}

TEST_CASE("invariances of Q") {
  Matrix a = oracles::random_signed_matrix(24, 99);
  LabelVector labels = oracles::random_labels(24, 3, 123);
  double q = weighted_modularity(a, labels).q;

  SUBCASE("label permutation") {
    LabelVector swapped = labels;
    for (int& e : swapped.entries) e = e == 1 ? 3 : (e == 3 ? 1 : e);
    CHECK(weighted_modularity(a, swapped).q == doctest::Approx(q).epsilon(1e-15));
  }

  SUBCASE("uniform positive rescaling") {
    for (double c : {0.5, 3.0, 100.0}) {
      double qc = weighted_modularity(Matrix(c * a), labels).q;
      CHECK(qc == doctest::Approx(q).epsilon(1e-12));
    }
  }
}
