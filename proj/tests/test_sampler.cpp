#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "wmodk/dcdfm.hpp"
#include "wmodk/sampler.hpp"

using namespace wmodk;

TEST_CASE("sample_labels") {
  SUBCASE("K=1 gives all ones") {
    LabelVector l = sample_labels(5, 1, 99);
    CHECK(l.entries == std::vector<int>{1, 1, 1, 1, 1});
  }

  SUBCASE("per-community counts stay near n/K") {
    // binomial(150, 1/3) puts 99.99%+ of its mass inside [30, 70]
    LabelVector l = sample_labels(150, 3, 2024);
    int counts[3] = {0, 0, 0};
    for (int e : l.entries) ++counts[e - 1];
    for (int c = 0; c < 3; ++c) {
      CHECK(counts[c] >= 30);
      CHECK(counts[c] <= 70);
    }
  }

  SUBCASE("deterministic in the seed") {
    CHECK(sample_labels(80, 4, 7) == sample_labels(80, 4, 7));
    CHECK(sample_labels(80, 4, 7) != sample_labels(80, 4, 8));
  }

  SUBCASE("K > n rejected") {
    CHECK_THROWS_AS(sample_labels(3, 4, 0), ConfigError);
  }
}

TEST_CASE("sample_theta") {
  SUBCASE("constant mode") {
    Vector t = sample_theta(3, 4.0, ThetaMode::constant, 5);
    for (int i = 0; i < 3; ++i) CHECK(t(i) == 2.0);
  }

  SUBCASE("uniform mode mean near 1/2 at rho=1") {
    // sd of the mean is ~0.0029 for n = 1e4; 0.01 is beyond 3 sigma
    Vector t = sample_theta(10000, 1.0, ThetaMode::uniform_random, 11);
    CHECK(std::abs(t.mean() - 0.5) < 0.01);
  }

  SUBCASE("entries lie in (0, sqrt(rho)]") {
    Vector t = sample_theta(5000, 2.25, ThetaMode::uniform_random, 3);
    CHECK(t.minCoeff() > 0.0);
    CHECK(t.maxCoeff() <= 1.5);
  }

  SUBCASE("rho must be positive") {
    CHECK_THROWS_AS(sample_theta(3, 0.0, ThetaMode::constant, 0), ConfigError);
  }

  SUBCASE("config overload matches the explicit form") {
    SamplerConfig cfg{71, 2.0, ThetaMode::uniform_random};
    Vector a = sample_theta(12, cfg);
    Vector b = sample_theta(12, 2.0, ThetaMode::uniform_random, 71);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("distribution spec invariants") {
  DistributionSpec bad{Family::binomial, 0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  DistributionSpec badvar{Family::normal, 1, 0.0};
  CHECK_THROWS_AS(badvar.validate(), ConfigError);
  CHECK_NOTHROW(DistributionSpec{Family::laplace, 1, 0.5}.validate());
}

TEST_CASE("validate_omega verdicts") {
  SUBCASE("bernoulli rejects means above 1") {
    Matrix omega = Matrix::Constant(2, 2, 1.2);
    ValidationReport rep = validate_omega(omega, {Family::bernoulli});
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations[0].find("(0,0)") != std::string::npos);
  }

  SUBCASE("geometric boundary: rho * min P = 1 is feasible") {
    LabelVector l{{1, 1, 2, 2}, 2};
    Matrix p(2, 2);
    p << 1.0, 0.2, 0.2, 1.0;
    Vector theta = Vector::Constant(4, std::sqrt(5.0));  // rho = 5, 5*0.2 = 1
    Matrix omega = expectation_matrix(l, p, theta);
    CHECK(validate_omega(omega, {Family::geometric}).ok());
    Matrix below = 0.999 * omega;
    CHECK_FALSE(validate_omega(below, {Family::geometric}).ok());
  }

  SUBCASE("signed needs means in [-1, 1]") {
    Matrix inside(2, 2);
    inside << 0.5, -1.0, -1.0, 1.0;
    CHECK(validate_omega(inside, {Family::signed_edges}).ok());
    Matrix outside = Matrix::Constant(2, 2, -1.01);
    CHECK_FALSE(validate_omega(outside, {Family::signed_edges}).ok());
  }

  SUBCASE("exponential needs strictly positive means") {
    Matrix zero = Matrix::Zero(2, 2);
    CHECK_FALSE(validate_omega(zero, {Family::exponential}).ok());
  }
}

TEST_CASE("sample_adjacency basics") {
  SUBCASE("degenerate bernoulli and signed cases") {
    Matrix ones = Matrix::Constant(4, 4, 1.0);
    Matrix a = sample_adjacency(ones, {Family::bernoulli}, 3);
    CHECK((a - ones).cwiseAbs().maxCoeff() == 0.0);

    Matrix s = sample_adjacency(ones, {Family::signed_edges}, 3);
    CHECK((s - ones).cwiseAbs().maxCoeff() == 0.0);
    Matrix neg = sample_adjacency(Matrix::Constant(4, 4, -1.0),
                                  {Family::signed_edges}, 3);
    CHECK((neg + ones).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("output is exactly symmetric and deterministic") {
    Matrix omega = Matrix::Constant(30, 30, 2.0);
    for (Family f : {Family::poisson, Family::exponential, Family::normal,
                     Family::laplace, Family::uniform, Family::geometric}) {
      DistributionSpec dist{f};
      Matrix a = sample_adjacency(omega, dist, 17);
      CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
      Matrix b = sample_adjacency(omega, dist, 17);
      CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("zero-diagonal option") {
    Matrix omega = Matrix::Constant(6, 6, 2.0);
    SampleOptions opts;
    opts.zero_diagonal = true;
    Matrix a = sample_adjacency(omega, {Family::poisson}, 5, opts);
    CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("poisson upper-triangle mean inside the 3-sigma band") {
    const int n = 200;
    Matrix omega = Matrix::Constant(n, n, 2.0);
    Matrix a = sample_adjacency(omega, {Family::poisson}, 2027);
    double sum = 0.0;
    int cnt = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        sum += a(i, j);
        ++cnt;
      }
    CHECK(cnt == 20100);
    CHECK(std::abs(sum / cnt - 2.0) < 3.0 * std::sqrt(2.0 / 20100.0));
  }

  SUBCASE("infeasible omega is refused with the report attached") {
    Matrix omega = Matrix::Constant(3, 3, 0.5);  // below geometric's floor
    CHECK_THROWS_WITH_AS(sample_adjacency(omega, {Family::geometric}, 1),
                         doctest::Contains("infeasible"), ConfigError);
  }
}

TEST_CASE("support constraints per family") {
  Matrix omega = Matrix::Constant(40, 40, 1.6);
  DistributionSpec dist;

  SUBCASE("bernoulli in {0,1}") {
    Matrix a = sample_adjacency(0.4 * omega, {Family::bernoulli}, 9);
    for (int i = 0; i < a.size(); ++i)
      CHECK((a(i) == 0.0 || a(i) == 1.0));
  }
  SUBCASE("binomial in {0..m}") {
    dist = {Family::binomial, 5};
    Matrix a = sample_adjacency(omega, dist, 9);
    for (int i = 0; i < a.size(); ++i) {
      CHECK(a(i) == std::floor(a(i)));
      CHECK(a(i) >= 0.0);
      CHECK(a(i) <= 5.0);
    }
  }
  SUBCASE("poisson nonnegative integers") {
    Matrix a = sample_adjacency(omega, {Family::poisson}, 9);
    for (int i = 0; i < a.size(); ++i) {
      CHECK(a(i) == std::floor(a(i)));
      CHECK(a(i) >= 0.0);
    }
  }
  SUBCASE("geometric positive integers") {
    Matrix a = sample_adjacency(omega, {Family::geometric}, 9);
    for (int i = 0; i < a.size(); ++i) {
      CHECK(a(i) == std::floor(a(i)));
      CHECK(a(i) >= 1.0);
    }
  }
  SUBCASE("exponential strictly positive") {
    Matrix a = sample_adjacency(omega, {Family::exponential}, 9);
    CHECK(a.minCoeff() > 0.0);
  }
  SUBCASE("signed in {-1, +1}") {
    Matrix a = sample_adjacency(0.3 * omega, {Family::signed_edges}, 9);
    for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a(i)) == 1.0);
  }
}

TEST_CASE("expectation calibration of a fixed entry") {
  // mean over 1e4 reseeded draws of entry (0, 1) within 4 standard errors
  const int reps = 10000;
  auto calibrated = [&](const DistributionSpec& dist, double mean, double sd) {
    Matrix omega = Matrix::Constant(2, 2, mean);
    double sum = 0.0;
    for (int r = 0; r < reps; ++r)
      sum += sample_adjacency(omega, dist, derive_seed(31337, r))(0, 1);
    double err = std::abs(sum / reps - mean);
    INFO("family ", family_name(dist.family), " err ", err);
    CHECK(err < 4.0 * sd / std::sqrt(static_cast<double>(reps)));
  };

  calibrated({Family::bernoulli}, 0.37, std::sqrt(0.37 * 0.63));
  calibrated({Family::binomial, 5}, 1.8, std::sqrt(5 * 0.36 * 0.64));
  calibrated({Family::poisson}, 2.4, std::sqrt(2.4));
  calibrated({Family::geometric}, 3.0, std::sqrt(9.0 - 3.0));
  calibrated({Family::exponential}, 1.7, 1.7);
  calibrated({Family::normal, 1, 2.0}, -0.4, std::sqrt(2.0));
  calibrated({Family::laplace, 1, 2.0}, 0.9, std::sqrt(2.0));
  calibrated({Family::uniform}, 1.3, 2.6 / std::sqrt(12.0));
  calibrated({Family::signed_edges}, 0.42, std::sqrt(1.0 - 0.42 * 0.42));
}

TEST_CASE("uniform family literal mode") {
  DistributionSpec literal{Family::uniform};
  literal.uniform_literal = true;
  Matrix omega = Matrix::Constant(2, 2, 2.0);
  double sum = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    Matrix a = sample_adjacency(omega, literal, derive_seed(5, r));
    CHECK(a(0, 1) >= 0.0);
    CHECK(a(0, 1) <= 2.0);  // literal mode: U(0, Omega)
    sum += a(0, 1);
  }
  // literal mean is Omega/2
  CHECK(std::abs(sum / reps - 1.0) < 4.0 * (2.0 / std::sqrt(12.0)) / std::sqrt(reps));
}
