#include "doctest.h"
#include "ncf/hup.hpp"
#include "oracles.hpp"

#include <random>

using namespace ncf;
using namespace ncf::hup;
using special::HarmonicIndex;

namespace {

std::vector<Point3> circle_probe(double r, int n) {
  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) {
    const double w = 2.0 * kPi * i / n;
    pts.push_back({r * std::cos(w), r * std::sin(w), 0.0});
  }
  return pts;
}

CurveMeasure uniform_circle() { return CurveMeasure::sphere(2, {{HarmonicIndex::circle_mode(0), std::sqrt(2 * kPi)}}); }

}  // namespace

TEST_CASE("kernel conventions") {
  CHECK(kernel_scale(Convention::PiScaled) == kPi);
  CHECK(kernel_scale(Convention::Angular) == 1.0);
  CHECK(kernel_scale(Convention::TwoPiScaled) == 2 * kPi);
  CHECK(std::string(to_string(Convention::Angular)) == "angular");
}

TEST_CASE("circle measure transforms") {
  const auto mu = uniform_circle();
  CHECK(std::abs(curve_fourier(mu, {{0, 0, 0}}, Convention::Angular)[0] - 2 * kPi) < 1e-12);
  for (double r : {0.5, 2.0, 7.3}) {
    const auto v = curve_fourier(mu, {{r * 0.6, r * 0.8, 0}}, Convention::Angular)[0];
    const cplx ref = oracle::integrate([&](double t) {
      return std::polar(1.0, -r * (0.6 * std::cos(t) + 0.8 * std::sin(t)));
    }, 0.0, 2 * kPi, 16);
    CHECK(std::abs(v - ref) < 1e-11);
    CHECK(std::abs(v - 2 * kPi * oracle::bessel_std(0, r)) < 1e-11);
  }
  const auto y1 = CurveMeasure::sphere(2, {{HarmonicIndex::circle_mode(1), 1.0}});
  for (double r : {1.0, 3.0}) {
    const auto v = curve_fourier(y1, {{r, 0, 0}}, Convention::Angular)[0];
    CHECK(std::abs(std::abs(v) - std::sqrt(2 * kPi) * std::abs(oracle::bessel_std(1, r))) < 1e-11);
  }
}

TEST_CASE("convention adapters") {
  std::vector<CurveMeasure> ms{uniform_circle(),
                               CurveMeasure::sphere(2, {{HarmonicIndex::circle_mode(2), cplx(1, 1)},
                                                        {HarmonicIndex::circle_mode(-1), 0.5}}),
                               CurveMeasure::sphere(3, {{HarmonicIndex::sphere(2, 1), 1.0}})};
  const std::vector<Point3> pts{{0.3, -0.2, 0.0}, {1.0, 0.5, 0.0}};
  for (const auto& mu : ms) {
    std::vector<Point3> scaled, scaled2;
    for (const auto& p : pts) {
      scaled.push_back({kPi * p[0], kPi * p[1], kPi * p[2]});
      scaled2.push_back({2 * kPi * p[0], 2 * kPi * p[1], 2 * kPi * p[2]});
    }
    const auto a = curve_fourier(mu, pts, Convention::PiScaled);
    const auto b = curve_fourier(mu, scaled, Convention::Angular);
    const auto c = curve_fourier(mu, pts, Convention::TwoPiScaled);
    const auto d = curve_fourier(mu, scaled2, Convention::Angular);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(std::abs(a[i] - b[i]) < 1e-12);
      CHECK(std::abs(c[i] - d[i]) < 1e-12);
    }
  }
}

TEST_CASE("sphere measures are diagonal in the circle-harmonic basis") {
  const int P = 64;
  for (int k : {0, 1, 3}) {
    const auto mu = CurveMeasure::sphere(2, {{HarmonicIndex::circle_mode(k), 1.0}});
    const double r = 2.3;
    const auto v = curve_fourier(mu, circle_probe(r, P), Convention::Angular);
    for (int m = -8; m <= 8; ++m) {
      cplx c = 0.0;
      for (int i = 0; i < P; ++i) c += v[i] * std::polar(1.0 / P, -m * 2.0 * kPi * i / P);
      // mode coefficient of the probe samples of c_k Y_k(xi / r)
      const double expect = m == k ? std::sqrt(2 * kPi) * std::abs(oracle::bessel_std(k, r)) : 0.0;
      CHECK(std::abs(std::abs(c) - expect) < 1e-10);
    }
  }
}

TEST_CASE("sphere HUP certificate") {
  const double j11 = special::bessel_zero(special::BesselOrder::integer(1), 1);
  const auto c = sphere_hup_certificate(j11, 2, 10);
  REQUIRE(c.fails_at);
  CHECK(*c.fails_at == 1);
  CHECK(c.verdict() == "fails-HUP k=1");
  REQUIRE(c.witness);
  double mx = 0.0;
  for (const auto& v : curve_fourier(*c.witness, circle_probe(j11, 64), Convention::Angular)) mx = std::max(mx, std::abs(v));
  CHECK(mx <= 1e-8);

  const auto ok = sphere_hup_certificate(1.0, 2, 20);
  CHECK_FALSE(ok.fails_at);
  CHECK(ok.min_abs > 0.0);
  CHECK(ok.values.size() == 21);
  CHECK(ok.verdict() == "no obstruction up to K_max=20");

  // n = 3: J_{k + 1/2} vanishes at k-th spherical Bessel zeros
  const double z = special::bessel_zero(special::BesselOrder::from_twice(3), 1);
  const auto c3 = sphere_hup_certificate(z, 3, 5);
  REQUIRE(c3.fails_at);
  CHECK(*c3.fails_at == 1);

  CHECK_THROWS(sphere_hup_certificate(0.0, 2, 5));
  CHECK_THROWS(sphere_hup_certificate(1.0, 2, 41));
}

TEST_CASE("lattice cross points") {
  const LatticeCross L{0.5, 2.0, 3};
  const auto p = L.points();
  CHECK(p.size() == 13);
  CHECK(p[3][0] == 0.0);
  CHECK(p[3][1] == 0.0);
  CHECK(p[0][0] == -1.5);
  CHECK(p.back()[1] == 6.0);
  CHECK_THROWS(LatticeCross{0.0, 1.0, 3}.points());
}

TEST_CASE("lattice cross matrix entries") {
  const HyperbolaDiscretization disc{2, 8, 2.0};
  const LatticeCross L{0.5, 0.75, 4};
  const auto A = lattice_cross_matrix(L, disc);
  const auto pts = L.points();
  CHECK(A.rows() == 17);
  CHECK(A.cols() == 16);
  const int N = disc.n_density;
  auto oracle_entry = [&](const Point3& p, int branch, int k) {
    const auto [e1, e2] = branch_signs(disc.branches, branch);
    return oracle::integrate([&](double s) {
      const double w = std::cos(0.5 * kPi * s / disc.S);
      const double speed = std::sqrt(std::exp(2 * s) + std::exp(-2 * s));
      return std::polar(w * w * speed, -kPi * (p[0] * e1 * std::exp(s) + p[1] * e2 * std::exp(-s)) +
                                           kPi * (k - N / 2) * s / disc.S);
    }, -disc.S, disc.S, 256);
  };
  double worst = 0.0;
  for (std::size_t r : {std::size_t{0}, std::size_t{4}, std::size_t{7}, std::size_t{16}})
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < N; ++k) worst = std::max(worst, std::abs(A(r, b * N + k) - oracle_entry(pts[r], b, k)));
  CHECK(worst < 1e-9);

  for (int c = 0; c < A.cols(); ++c) CHECK(A.col(c).norm() > 0.0);
  // A(-p, k) = conj(A(p, -k)) for the complex exponential basis
  for (int m = 1; m <= 4; ++m)
    for (int b = 0; b < 2; ++b)
      for (int k = 1; k < N; ++k) {
        const int kk = N - k;  // mode -(k - N/2) + N/2
        CHECK(std::abs(A(4 - m, b * N + k) - std::conj(A(4 + m, b * N + kk))) < 1e-10);
      }
}

TEST_CASE("basis Gram conditioning") {
  CHECK(hyperbola_gram_condition({4, 64, 3.0}) < 1e8);
  CHECK(hyperbola_gram_condition({1, 8, 3.0}) > 1.0);
}

TEST_CASE("adding rows cannot decrease the constrained minimum") {
  // tall matrices: sigma_min = min ||A c|| / ||c||
  const HyperbolaDiscretization disc{1, 8, 2.0};
  double prev = 0.0;
  for (int M : {8, 16, 24}) {
    const auto rows = sigma_min_scan({{0.5, 1.0}}, M, disc);
    CHECK(rows[0].M == M);
    CHECK(rows[0].sigma_min >= prev * (1 - 1e-12));
    CHECK(rows[0].ratio > 0.0);
    prev = rows[0].sigma_min;
  }
}

TEST_CASE("singular-value ratio is invariant under row permutation") {
  const HyperbolaDiscretization disc{1, 8, 2.0};
  const auto A = lattice_cross_matrix({0.5, 1.0, 8}, disc);
  Eigen::MatrixXcd B = A.colwise().reverse();
  Eigen::BDCSVD<Eigen::MatrixXcd> sa(A), sb(B);
  CHECK((sa.singularValues() - sb.singularValues()).norm() < 1e-12 * sa.singularValues()(0));
}

TEST_CASE("hyperbola measure transform matches the matrix rows") {
  const HyperbolaDiscretization disc{2, 8, 2.0};
  const LatticeCross L{0.5, 0.75, 3};
  const auto A = lattice_cross_matrix(L, disc);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<cplx> c(16);
  Eigen::VectorXcd cv(16);
  for (int i = 0; i < 16; ++i) cv(i) = c[i] = cplx(g(rng), g(rng));
  const auto mu = CurveMeasure::hyperbola(2, 2.0, 8, c);
  const auto v = curve_fourier(mu, L.points(), Convention::PiScaled);
  const Eigen::VectorXcd Ac = A * cv;
  for (int r = 0; r < A.rows(); ++r) CHECK(std::abs(v[r] - Ac(r)) < 1e-9 * std::max(1.0, std::abs(Ac(r))));
}

TEST_CASE("product-group transform") {
  auto so3 = compact::make_so3_spec(2);
  ProductFunction zero(so3);
  CHECK(product_fourier(zero, {0.3, 0.1}, 1).norm() == 0.0);

  // k-independent f: nontrivial delta gives zero
  ProductFunction flat(so3);
  flat.set_mode(1, compact::GroupFunction::from_blocks(so3, {{0, Eigen::MatrixXcd::Constant(1, 1, 1.0)}}));
  CHECK(product_fourier(flat, {0.3, 0.1}, 2).norm() < 1e-12);

  // f = Y_2(x) chi_1(k): trace = int Y_2 e^{-2 pi i x . y} dnu
  ProductFunction f(so3);
  f.set_mode(2, compact::GroupFunction::from_blocks(so3, {{1, Eigen::MatrixXcd::Identity(3, 3) / 3.0}}));
  const std::array<double, 2> y{0.4, -0.25};
  const cplx ref = oracle::integrate([&](double t) {
    return std::polar(1.0 / std::sqrt(2 * kPi), 2 * t - 2 * kPi * (std::cos(t) * y[0] + std::sin(t) * y[1]));
  }, 0.0, 2 * kPi, 16);
  CHECK(std::abs(product_fourier(f, y, 1).trace() - ref) < 1e-11);

  // projection reproduces the isotypic part
  const auto k = compact::So3Element{0.3, 1.0, -0.4};
  const auto proj = projection_f_k_sigma(f, k, 1);
  const double x[2] = {std::cos(0.7), std::sin(0.7)};
  CHECK(std::abs(3.0 * proj.sphere_density(x) - f(0.7, k)) < 1e-12);
  const auto none = projection_f_k_sigma(f, k, 2);
  CHECK(std::abs(none.sphere_density(x)) < 1e-15);
  CHECK_THROWS(projection_f_k_sigma(f, k, 3));
}

TEST_CASE("transfer identity and reconstruction") {
  std::mt19937_64 rng(19);
  for (const auto& spec : {compact::make_so2_spec(3), compact::make_cyclic_spec(5), compact::make_so3_spec(2)}) {
    const auto f = random_product_function(spec, 3, rng);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      const std::array<double, 2> y{u(rng), u(rng)};
      const auto k = spec->random_element(rng);
      for (const auto& ir : spec->irreps()) worst = std::max(worst, hup_transfer_defect(f, y, ir.label, k));
      CHECK(peter_weyl_reconstruction_defect(f, k) <= 1e-10);
    }
    CHECK(worst <= 1e-8);
  }
  // identity element and trivial irrep
  auto so2 = compact::make_so2_spec(2);
  std::mt19937_64 r2(1);
  const auto f = random_product_function(so2, 2, r2);
  const auto e = so2->identity();
  const std::array<double, 2> y{0.2, 0.3};
  const auto proj = projection_f_k_sigma(f, e, 0);
  const cplx lhs = curve_fourier(proj, {{y[0], y[1], 0.0}}, Convention::TwoPiScaled)[0];
  CHECK(std::abs(lhs - product_fourier(f, y, 0)(0, 0)) < 1e-10);
  ProductFunction zero(so2);
  CHECK(hup_transfer_defect(zero, y, 1, e) == 0.0);
}

TEST_CASE("motion measure transform and certificate") {
  const double j11 = special::bessel_zero(special::BesselOrder::integer(1), 1);
  const std::vector<SphereProductTerm> y1{{1, 0, 1.0}};
  CHECK(motion_measure_fourier(y1, j11, 4).hs_norm() < 1e-12);
  const double h1 = motion_measure_fourier(y1, 1.0, 4).hs_norm();
  CHECK(h1 > 0.1);
  // proportional to |J_1(a)| across a
  const double h2 = motion_measure_fourier(y1, 2.0, 4).hs_norm();
  CHECK(h1 / h2 == doctest::Approx(std::abs(oracle::bessel_std(1, 1.0) / oracle::bessel_std(1, 2.0))).epsilon(1e-10));
  CHECK(motion_measure_fourier({}, 1.0, 4).hs_norm() == 0.0);

  const auto refused = motion_measure_certificate(y1, j11 + 5e-7, 4);
  CHECK(refused.status == CertificateStatus::Refused);
  CHECK(refused.checked_l_max == 40);
  const auto nv = motion_measure_certificate(y1, 1.0, 4);
  CHECK(nv.status == CertificateStatus::NonVanishing);
  const auto zero = motion_measure_certificate({}, 1.0, 4);
  CHECK(zero.status == CertificateStatus::Certified);
  CHECK(std::string(to_string(CertificateStatus::Refused)) == "refused");
  CHECK_THROWS_AS(motion_measure_fourier({{3, 3, 1.0}}, 1.0, 4), compact::BandLimitError);
}
