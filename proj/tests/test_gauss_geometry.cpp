#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "offwhite/error.hpp"
#include "offwhite/gauss_geometry.hpp"

using namespace offwhite;
using namespace offwhite::gauss;

namespace {

constexpr double kPi = std::numbers::pi;

// ∫ √(p₁p₂) for centred normals with variances 1 and v
double hellinger_quadrature(double v) {
  auto integrand = [v](double x) {
    const double p = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    const double q = std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * kPi * v);
    return std::sqrt(p * q);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -inf, inf, 15, 1e-14);
}

Eigen::MatrixXd line(double angle) {
  Eigen::MatrixXd m(2, 1);
  m << std::cos(angle), std::sin(angle);
  return m;
}

}  // namespace

TEST_SUITE("gauss_geometry") {

TEST_CASE("affinity of identical measures is one") {
  CHECK(affinity({{1.0, 1.0, 1.0}}) == 1.0);
  CHECK(affinity({}) == 1.0);
  CHECK(affinity_distance({{1.0}}) == 0.0);
  CHECK_THROWS_AS(affinity({{1.0, 0.0}}), ParameterError);
  CHECK_THROWS_AS(affinity({{-2.0}}), ParameterError);
}

TEST_CASE("single factor at ratio two") {
  const double a = affinity({{2.0}});
  CHECK(a == doctest::Approx(std::sqrt(2.0 * std::sqrt(2.0) / 3.0)).epsilon(1e-14));
  CHECK(a == doctest::Approx(0.9710).epsilon(1e-4));
  CHECK(affinity_distance({{2.0}}) == doctest::Approx(0.2410).epsilon(1e-3));
  CHECK(affinity_distance({{2.0}}) == doctest::Approx(std::acos(a)).epsilon(1e-12));
}

TEST_CASE("factors match Hellinger quadrature") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(std::log(0.25), std::log(4.0));
  for (int i = 0; i < 20; ++i) {
    const double l = std::exp(u(gen));
    CHECK(std::abs(affinity_factor(l) - hellinger_quadrature(l)) < 1e-10);
  }
}

TEST_CASE("affinity is symmetric under inversion and monotone in |log ratio|") {
  double prev = 1.0;
  for (int i = 1; i <= 40; ++i) {
    const double l = std::exp(0.1 * i);
    CHECK(affinity_factor(l) == doctest::Approx(affinity_factor(1.0 / l)).epsilon(1e-14));
    CHECK(affinity_factor(l) < prev);
    prev = affinity_factor(l);
  }
  double prev_d = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double d = affinity_distance({{std::exp(-0.1 * i)}});
    CHECK(d > prev_d);
    prev_d = d;
  }
}

TEST_CASE("tensorization") {
  const EigenRatioSeq r1{{2.0, 0.5, 1.3}};
  const EigenRatioSeq r2{{0.8, 3.0}};
  EigenRatioSeq both = r1;
  both.ratios.insert(both.ratios.end(), r2.ratios.begin(), r2.ratios.end());
  CHECK(log_affinity(both) == doctest::Approx(log_affinity(r1) + log_affinity(r2)).epsilon(1e-15));
  CHECK(affinity(both) == doctest::Approx(affinity(r1) * affinity(r2)).epsilon(1e-14));
}

TEST_CASE("long product with square-summable deviations converges") {
  auto partial = [](int n) {
    EigenRatioSeq r;
    for (int k = 1; k <= n; ++k) r.ratios.push_back(1.0 + 1.0 / k);
    return affinity(r);
  };
  const double a1 = partial(2500);
  const double a2 = partial(5000);
  const double a3 = partial(10000);
  CHECK(a3 > 0.0);
  CHECK(a3 < a2);
  CHECK(std::abs(std::log(a3) - std::log(a2)) < 0.6 * std::abs(std::log(a2) - std::log(a1)));
}

TEST_CASE("FHS defect examples") {
  const int dim = 1000;
  QuadraticFormPair p{Eigen::MatrixXd::Identity(dim, dim), Eigen::MatrixXd::Identity(dim, dim)};
  CHECK(fhs_defect(p) == doctest::Approx(0.0).scale(1e-12));
  double expected = 0.0;
  for (int k = 1; k <= dim; ++k) {
    p.b(k - 1, k - 1) = 1.0 + 1.0 / k;
    expected += 1.0 / (static_cast<double>(k) * k);
  }
  CHECK(fhs_defect(p) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(fhs_defect(p) == doctest::Approx(kPi * kPi / 6.0 - 1.0 / dim).epsilon(1e-6));

  // μ_k = 1 + 1/√k: defect is the harmonic sum, growing like ln(dim)
  std::vector<double> defects;
  for (int d : {100, 200, 400, 800}) {
    QuadraticFormPair q{Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d)};
    for (int k = 1; k <= d; ++k) q.b(k - 1, k - 1) = 1.0 + 1.0 / std::sqrt(static_cast<double>(k));
    defects.push_back(fhs_defect(q));
  }
  for (std::size_t i = 1; i < defects.size(); ++i) {
    CHECK(defects[i] - defects[i - 1] == doctest::Approx(std::log(2.0)).epsilon(0.02));
  }
}

TEST_CASE("FHS defect is invariant under a change of basis") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z;
  const int d = 12;
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = z(gen);
  }
  m += 4.0 * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd mu(d);
  for (int i = 0; i < d; ++i) mu(i) = 0.5 + 0.1 * i;
  QuadraticFormPair p;
  p.a = m.transpose() * m;
  p.b = m.transpose() * mu.asDiagonal() * m;
  p.b = 0.5 * (p.b + p.b.transpose()).eval();
  p.a = 0.5 * (p.a + p.a.transpose()).eval();
  const auto got = generalized_eigenvalues(p);
  for (int i = 0; i < d; ++i) CHECK(got(i) == doctest::Approx(mu(i)).epsilon(1e-10));
  CHECK(fhs_defect(p) == doctest::Approx((1.0 - mu.array()).square().sum()).epsilon(1e-10));
}

TEST_CASE("FHS defect rejects bad input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd b = a;
  b(0, 1) = 0.5;
  CHECK_THROWS_AS(fhs_defect({a, b}), ParameterError);
  b(1, 0) = 0.5;
  b(0, 0) = -1.0;
  CHECK_THROWS_AS(fhs_defect({a, b}), EvaluationError);
  CHECK_THROWS_AS(fhs_defect({a, Eigen::MatrixXd::Identity(2, 2)}), ParameterError);
}

TEST_CASE("principal angles") {
  CHECK(principal_angles({line(0.3), line(0.3)}).min == doctest::Approx(0.0).scale(1e-7));
  CHECK(principal_angles({line(0.0), line(kPi / 2)}).min == doctest::Approx(kPi / 2));
  CHECK(principal_angles({line(0.0), line(kPi / 4)}).min == doctest::Approx(kPi / 4));
  // coordinate planes in R^3 meet in a line
  Eigen::MatrixXd e(3, 2);
  e << 1, 0, 0, 1, 0, 0;
  Eigen::MatrixXd f(3, 2);
  f << 1, 0, 0, 0, 0, 1;
  const auto pa = principal_angles({e, f});
  REQUIRE(pa.angles.size() == 2);
  CHECK(pa.angles[0] == doctest::Approx(0.0).scale(1e-7));
  CHECK(pa.angles[1] == doctest::Approx(kPi / 2));
  Eigen::MatrixXd bad(2, 1);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(principal_angles({bad, line(0.0)}), ParameterError);
}

TEST_CASE("delta bound") {
  CHECK(delta_bound(kPi / 3, 1) == doctest::Approx(0.1369).epsilon(1e-3));
  CHECK(delta_bound(kPi / 2, 7) == doctest::Approx(0.0).scale(1e-7));
  CHECK(delta_bound(0.4, 0) == 0.0);
  CHECK_THROWS_AS(delta_bound(0.0, 1), ParameterError);
  for (int n : {1, 2, 5}) {
    double prev = INFINITY;
    for (int i = 1; i <= 50; ++i) {
      const double a = 0.5 * kPi * i / 51.0;
      const double d = delta_bound(a, n);
      CHECK(d < prev);
      prev = d;
    }
  }
  for (double a : {0.2, 0.9, 1.4}) CHECK(delta_bound(a, 1) < delta_bound(a, 2));
}

TEST_CASE("orthogonalizing norm") {
  const auto flat = orthogonalizing_norm(kPi / 2);
  CHECK(flat.ratios.ratios[0] == doctest::Approx(1.0));
  CHECK(flat.ratios.ratios[1] == doctest::Approx(1.0));
  CHECK(flat.distance == doctest::Approx(0.0).scale(1e-7));

  const auto o = orthogonalizing_norm(kPi / 3);
  const double t = std::tan(kPi / 6);
  CHECK(o.ratios.ratios[0] == doctest::Approx(1.0 / std::sqrt(t)));
  CHECK(o.ratios.ratios[1] == doctest::Approx(std::sqrt(t)));
  CHECK(o.distance == doctest::Approx(delta_bound(kPi / 3, 1)).epsilon(1e-12));
  for (int i = 1; i <= 40; ++i) {
    const double a = 0.05 + (kPi / 2 - 0.05) * i / 40.0;
    const auto n = orthogonalizing_norm(a);
    CHECK(std::abs(n.u.dot(n.gram * n.v)) < 1e-12);
    CHECK(std::acos(n.u.dot(n.v)) == doctest::Approx(a));
    CHECK(n.u.dot(n.gram * n.u) == doctest::Approx(n.v.dot(n.gram * n.v)));
    CHECK(std::abs(n.distance - delta_bound(a, 1)) < 1e-9);
  }
}

TEST_CASE("matrix io round trips") {
  const auto dir = std::filesystem::temp_directory_path() / "offwhite_matrixio";
  std::filesystem::create_directories(dir);
  Eigen::MatrixXd m(3, 4);
  m << 1.0, -2.5, 1e-17, 3.0, 0.1, 0.2, 0.3, 0.4, 7.0, 8.0, 9.0, 1e300;
  write_matrix_csv(dir / "m.csv", m);
  write_matrix_raw(dir / "m.bin", m);
  CHECK(read_matrix_csv(dir / "m.csv") == m);
  CHECK(read_matrix_raw(dir / "m.bin") == m);
  std::ofstream(dir / "bad.csv") << "1,2\n3,x\n";
  CHECK_THROWS_WITH_AS(read_matrix_csv(dir / "bad.csv"), doctest::Contains(":2:"), ParameterError);
}

}
