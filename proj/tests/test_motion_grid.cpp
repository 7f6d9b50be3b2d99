#include "doctest.h"
#include "ncf/motion_grid.hpp"

using namespace ncf;
using namespace ncf::motion;

namespace {

HarmonicTermFunction narrow(int l, int m, int power = 0) {
  return HarmonicTermFunction({HarmonicTerm{l, m, 1.0, gaussian_profile(1.0, power, 0.5)}});
}

}  // namespace

TEST_CASE("grid layout") {
  const GridFunction g(2.0, 0.5, 4);
  CHECK(g.half() == 4);
  CHECK(g.side() == 9);
  CHECK(g.values().size() == 9u * 9u * 4u);
  CHECK(g.theta(1) == doctest::Approx(kPi / 2));
  CHECK_THROWS(GridFunction(2.0, 0.3, 1));
  CHECK_THROWS(GridFunction(2.0, 0.5, 3));
  CHECK_THROWS(GridFunction(-1.0, 0.5, 1));
}

TEST_CASE("sampling agrees with pointwise evaluation") {
  const auto f = narrow(1, 1, 1);
  const auto g = GridFunction::sample(f, 4.0, 0.5, 4);
  for (int q = 0; q < 4; ++q)
    CHECK(std::abs(g.at(2, -1, q) - f(MotionElement{{1.0, -0.5}, q * kPi / 2})) < 1e-15);
  CHECK(g.effective_radius() < 4.0);
}

TEST_CASE("delta is an exact identity") {
  const auto f = GridFunction::sample(narrow(1, 1, 1), 8.0, 0.5, 4);
  const auto d = grid_delta(8.0, 0.5, 4);
  const auto fd = m2_convolve(f, d), df = m2_convolve(d, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    worst = std::max({worst, std::abs(fd.values()[i] - f.values()[i]), std::abs(df.values()[i] - f.values()[i])});
  CHECK(worst < 1e-13);
}

TEST_CASE("adjoint is an involution and matches the pointwise definition") {
  const auto fn = [](const MotionElement& e) {
    return cplx(std::exp(-(e.x[0] - 0.5) * (e.x[0] - 0.5) - e.x[1] * e.x[1]), std::sin(e.theta) * e.x[1]);
  };
  const auto f = GridFunction::sample(fn, 4.0, 0.5, 4);
  const auto fs = m2_adjoint(f);
  const auto fss = m2_adjoint(fs);
  for (std::size_t i = 0; i < f.values().size(); ++i) CHECK(fss.values()[i] == f.values()[i]);
  for (int q = 0; q < 4; ++q) {
    const MotionElement g{{1.0, -0.5}, q * kPi / 2};
    CHECK(std::abs(fs.at(2, -1, q) - std::conj(fn(m2_inv(g)))) < 1e-14);
  }
}

TEST_CASE("support overflow is reported") {
  const auto f = GridFunction::sample(narrow(0, 0), 4.0, 0.5, 1);
  CHECK_THROWS_AS(m2_convolve(f, f), std::domain_error);
  CHECK_THROWS(m2_convolve(f, GridFunction(4.0, 0.25, 1)));
}

TEST_CASE("f * f^* peaks at the identity for real symmetric f") {
  const auto fn = [](const MotionElement& e) {
    return cplx(std::exp(-2.0 * (e.x[0] * e.x[0] + e.x[1] * e.x[1])) * (1.0 + 0.3 * std::cos(e.theta)));
  };
  const auto f = GridFunction::sample(fn, 8.0, 0.5, 4);
  const auto h = m2_convolve(f, m2_adjoint(f));
  CHECK(std::abs(h.at(0, 0, 0)) == doctest::Approx(h.max_abs()).epsilon(1e-14));
}

TEST_CASE("grid transform agrees with the Hankel route") {
  // the lattice rule converges spectrally for smooth rapidly decaying f
  const auto f = narrow(1, 0, 1);
  const auto g = GridFunction::sample(f, 4.0, 0.25, 1);
  for (double a : {0.5, 1.5}) {
    const auto exact = fhat_operator(f, a, 4);
    const auto grid = fhat_from_grid(g, a, 4);
    CHECK((grid.matrix - exact.matrix).norm() < 1e-8 * exact.matrix.norm());
  }
}

TEST_CASE("convolution matches the operator product") {
  auto f = narrow(1, 1, 1);
  f.add({0, 0, 0.5, gaussian_profile(1.0, 0, 0.5)});
  const auto g = GridFunction::sample(f, 8.0, 0.5, 4);
  const auto h = m2_convolve(m2_adjoint(g), g);
  const auto F = fhat_from_grid(g, 1.0, 4);
  const auto H = fhat_from_grid(h, 1.0, 4);
  const Eigen::MatrixXcd prod = F.matrix.adjoint() * F.matrix;
  CHECK((H.matrix - prod).norm() < 1e-6 * prod.norm());
}
