#include "doctest.h"
#include "ncf/compact.hpp"
#include "ncf/quad.hpp"
#include "ncf/special_fn.hpp"
#include "oracles.hpp"

using namespace ncf;

TEST_CASE("circle rule") {
  CHECK(quad::circle_rule(4).mass() == doctest::Approx(2 * kPi).epsilon(1e-15));
  const auto r8 = quad::circle_rule(8);
  CHECK(std::abs(r8.integrate([](double w) { return std::polar(1.0, 3 * w); })) < 1e-14);
  // aliasing at the exactness boundary
  CHECK(std::abs(r8.integrate([](double w) { return std::polar(1.0, 8 * w); }) - 2 * kPi) < 1e-13);
  CHECK(r8.exactness == 7);
  CHECK_THROWS(quad::circle_rule(0));
}

TEST_CASE("Gauss-Legendre") {
  const auto g2 = quad::gauss_legendre(2, -1, 1);
  CHECK(g2.integrate([](double x) { return x * x; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto g16 = quad::gauss_legendre(16, 0, 1);
  CHECK(std::abs(g16.integrate([](double x) { return std::exp(x); }) - (std::exp(1.0) - 1.0)) < 1e-14);
  CHECK(quad::gauss_legendre(7, 0, 2).mass() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS(quad::gauss_legendre(513, 0, 1));
  CHECK_THROWS(quad::gauss_legendre(4, 1, 1));
}

TEST_CASE("Gauss-Legendre nodes agree with Golub-Welsch") {
  for (int n : {3, 10, 40, 120}) {
    std::vector<double> x, w;
    oracle::golub_welsch(n, -1.0, 1.0, x, w);
    const auto g = quad::gauss_legendre(n, -1, 1);
    std::vector<double> nodes = g.nodes, weights = g.weights;
    std::vector<std::size_t> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](auto a, auto b) { return nodes[a] < nodes[b]; });
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(nodes[ord[i]] - x[i]));
      worst = std::max(worst, std::abs(weights[ord[i]] - w[i]));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("Gauss-Legendre polynomial exactness up to 2N - 1") {
  for (int n : {1, 5, 12}) {
    const auto g = quad::gauss_legendre(n, -1, 1);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      const double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
      CHECK(std::abs(g.integrate([&](double x) { return std::pow(x, p); }) - exact) < 1e-13);
    }
  }
}

TEST_CASE("composite Gauss-Legendre") {
  const auto c = quad::composite_gauss_legendre({0.0, 1.0, 2.5, 4.0}, 12);
  CHECK(c.size() == 36);
  CHECK(c.mass() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c.integrate([](double x) { return std::sin(x); }) == doctest::Approx(1.0 - std::cos(4.0)).epsilon(1e-13));
  CHECK_THROWS(quad::composite_gauss_legendre({0.0, 1.0, 0.5}, 4));
}

TEST_CASE("sphere rule") {
  const auto s = quad::sphere_rule(12);
  CHECK(s.mass() == doctest::Approx(4 * kPi).epsilon(1e-14));
  const auto Y2 = special::HarmonicIndex::sphere(2, 1);
  CHECK(std::abs(s.integrate([&](const quad::Point3& p) { return special::sph_harm(Y2, p); })) < 1e-12);
  const auto Y10 = special::HarmonicIndex::sphere(1, 0);
  CHECK(s.integrate([&](const quad::Point3& p) { return std::norm(special::sph_harm(Y10, p)); }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& p : s.nodes) CHECK(std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0) < 1e-14);
  CHECK_THROWS(quad::sphere_rule(65));
}

TEST_CASE("radial rule") {
  const auto r2 = quad::radial_rule(64, 10, 2);
  CHECK(std::abs(r2.integrate([](double t) { return std::exp(-t * t); }) - 0.5) < 1e-12);
  const auto r3 = quad::radial_rule(64, 10, 3);
  CHECK(std::abs(r3.integrate([](double t) { return std::exp(-t * t); }) - std::sqrt(kPi) / 4) < 1e-10);
  CHECK(quad::radial_rule(16, 3, 2).mass() == doctest::Approx(4.5).epsilon(1e-14));
}

TEST_CASE("SO(3) rule integrates Wigner-D products") {
  const auto rule = quad::so3_rule(8);
  CHECK(rule.mass() == doctest::Approx(1.0).epsilon(1e-14));
  // Schur orthogonality on l <= 4: int D^l_{ab} conj(D^l'_{cd}) = delta / (2l + 1)
  auto spec = compact::make_so3_spec(4);
  double worst = 0.0;
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2) {
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero((2 * l1 + 1) * (2 * l1 + 1), (2 * l2 + 1) * (2 * l2 + 1));
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const compact::GroupElement e = rule.nodes[i];
        const Eigen::MatrixXcd A = spec->rep(l1, e), B = spec->rep(l2, e);
        for (int p = 0; p < A.size(); ++p)
          for (int q = 0; q < B.size(); ++q) acc(p, q) += rule.weights[i] * A(p) * std::conj(B(q));
      }
      for (int p = 0; p < acc.rows(); ++p)
        for (int q = 0; q < acc.cols(); ++q) {
          const double expect = (l1 == l2 && p == q) ? 1.0 / (2 * l1 + 1) : 0.0;
          worst = std::max(worst, std::abs(acc(p, q) - expect));
        }
    }
  CHECK(worst < 1e-12);
}
