#include "ncf/hup.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncf::hup {

using special::BesselOrder;
using special::HarmonicIndex;

double kernel_scale(Convention c) {
  switch (c) {
    case Convention::PiScaled: return kPi;
    case Convention::Angular: return 1.0;
    case Convention::TwoPiScaled: return 2.0 * kPi;
  }
  return 1.0;
}

const char* to_string(Convention c) {
  switch (c) {
    case Convention::PiScaled: return "pi-scaled";
    case Convention::Angular: return "angular";
    case Convention::TwoPiScaled: return "2pi-scaled";
  }
  return "?";
}

CurveMeasure CurveMeasure::sphere(int n, std::vector<std::pair<HarmonicIndex, cplx>> terms) {
  if (n != 2 && n != 3) throw std::invalid_argument("CurveMeasure::sphere: n must be 2 or 3");
  for (const auto& [idx, c] : terms) {
    if (idx.dim != n) throw std::invalid_argument("CurveMeasure::sphere: harmonic of the wrong dimension");
    special::validate(idx);
  }
  CurveMeasure m;
  m.kind_ = Kind::Sphere;
  m.n_ = n;
  m.terms_ = std::move(terms);
  return m;
}

CurveMeasure CurveMeasure::hyperbola(int branches, double S, int n_density, std::vector<cplx> coeffs) {
  if (branches != 1 && branches != 2 && branches != 4)
    throw std::invalid_argument("CurveMeasure::hyperbola: branches must be 1, 2 or 4");
  if (!(S > 0.0) || n_density < 1 || n_density % 2)
    throw std::invalid_argument("CurveMeasure::hyperbola: need S > 0 and an even positive mode count");
  if (coeffs.size() != static_cast<std::size_t>(branches * n_density))
    throw std::invalid_argument("CurveMeasure::hyperbola: coefficient count must be branches * n_density");
  CurveMeasure m;
  m.kind_ = Kind::Hyperbola;
  m.branches_ = branches;
  m.S_ = S;
  m.n_density_ = n_density;
  m.coeffs_ = std::move(coeffs);
  return m;
}

cplx CurveMeasure::sphere_density(std::span<const double> point) const {
  cplx s = 0.0;
  for (const auto& [idx, c] : terms_) s += c * special::sph_harm(idx, point);
  return s;
}

cplx CurveMeasure::hyperbola_density(int branch, double s) const {
  const double w = std::cos(0.5 * kPi * s / S_);
  cplx acc = 0.0;
  for (int k = 0; k < n_density_; ++k)
    acc += coeffs_[branch * n_density_ + k] * std::polar(1.0, kPi * (k - n_density_ / 2) * s / S_);
  return w * w * acc;
}

std::pair<int, int> branch_signs(int branches, int b) {
  static const std::pair<int, int> all[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  if (branches == 1 && b == 0) return all[0];
  if (branches == 2 && (b == 0 || b == 1)) return b == 0 ? all[0] : all[3];
  if (branches == 4 && b >= 0 && b < 4) return all[b];
  throw std::invalid_argument("branch_signs: bad branch index");
}

namespace {

double arc_speed(double s) { return std::hypot(std::exp(s), std::exp(-s)); }

// Composite Gauss-Legendre on [-S, S] whose panels each span about `phase`
// radians of the local oscillation rate.
quad::QuadRule<double> hyperbola_rule(double S, double scale, double p1, double p2, int n_density, double phase) {
  const double basis_rate = kPi * (0.5 * n_density + 1.0) / S;
  auto rate = [&](double s) { return scale * (std::abs(p1) * std::exp(s) + std::abs(p2) * std::exp(-s)) + basis_rate; };
  std::vector<double> edges{-S};
  double s = -S;
  while (s < S) {
    double d = phase / rate(s);
    for (int it = 0; it < 3; ++it) d = phase / std::max(rate(s), rate(std::min(S, s + d)));
    d = std::min(d, S - s);
    if (S - (s + d) < 1e-3 * d) d = S - s;
    s += d;
    edges.push_back(s);
  }
  edges.back() = S;
  return quad::composite_gauss_legendre(edges, 16);
}

cplx hyperbola_transform(const CurveMeasure& mu, const Point3& p, double scale, double phase) {
  const auto rule = hyperbola_rule(mu.half_width(), scale, p[0], p[1], mu.n_density(), phase);
  cplx acc = 0.0;
  for (int b = 0; b < mu.branches(); ++b) {
    const auto [e1, e2] = branch_signs(mu.branches(), b);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double s = rule.nodes[i];
      const double x1 = e1 * std::exp(s), x2 = e2 * std::exp(-s);
      acc += rule.weights[i] * arc_speed(s) * mu.hyperbola_density(b, s) *
             std::polar(1.0, -scale * (p[0] * x1 + p[1] * x2));
    }
  }
  return acc;
}

cplx circle_transform(const CurveMeasure& mu, const Point3& p, double scale, int nodes) {
  const auto rule = quad::circle_rule(nodes);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x[2] = {std::cos(rule.nodes[i]), std::sin(rule.nodes[i])};
    acc += rule.weights[i] * mu.sphere_density(x) * std::polar(1.0, -scale * (x[0] * p[0] + x[1] * p[1]));
  }
  return acc;
}

cplx sphere2_transform(const CurveMeasure& mu, const Point3& p, double scale, int order) {
  const auto rule = quad::sphere_rule(order);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& x = rule.nodes[i];
    acc += rule.weights[i] * mu.sphere_density(x) *
           std::polar(1.0, -scale * (x[0] * p[0] + x[1] * p[1] + x[2] * p[2]));
  }
  return acc;
}

void check_refinement(cplx coarse, cplx fine, const char* what) {
  if (std::abs(fine - coarse) > 1e-8 * std::max(1.0, std::abs(fine)))
    throw std::runtime_error(std::string("curve_fourier: ") + what + " quadrature did not converge to 1e-8");
}

}  // namespace

std::vector<cplx> curve_fourier(const CurveMeasure& mu, const std::vector<Point3>& points, Convention conv) {
  const double scale = kernel_scale(conv);
  std::vector<cplx> out;
  out.reserve(points.size());
  int lmax = 0;
  for (const auto& [idx, c] : mu.sphere_terms()) lmax = std::max(lmax, idx.degree);
  for (const auto& p : points) {
    const double rho = scale * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (mu.kind() == CurveMeasure::Kind::Hyperbola) {
      const cplx coarse = hyperbola_transform(mu, p, scale, 4.0);
      const cplx fine = hyperbola_transform(mu, p, scale, 2.0);
      check_refinement(coarse, fine, "hyperbola");
      out.push_back(fine);
    } else if (mu.ambient_dim() == 2) {
      const int nodes = 64 + 2 * (static_cast<int>(std::ceil(rho)) + lmax);
      const cplx coarse = circle_transform(mu, p, scale, nodes);
      const cplx fine = circle_transform(mu, p, scale, 2 * nodes);
      check_refinement(coarse, fine, "circle");
      out.push_back(fine);
    } else {
      const int need = std::max(16, static_cast<int>(std::ceil(rho)) + lmax + 16);
      const int o1 = std::min(48, need);
      const int o2 = std::min(64, std::max(o1 + 16, 2 * o1));
      const cplx coarse = sphere2_transform(mu, p, scale, o1);
      const cplx fine = sphere2_transform(mu, p, scale, o2);
      check_refinement(coarse, fine, "sphere");
      out.push_back(fine);
    }
  }
  return out;
}

std::string SphereHupCertificate::verdict() const {
  if (fails_at) return "fails-HUP k=" + std::to_string(*fails_at);
  return "no obstruction up to K_max=" + std::to_string(static_cast<int>(values.size()) - 1);
}

SphereHupCertificate sphere_hup_certificate(double r, int n, int K_max) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere_hup_certificate: radius must be positive");
  if (n != 2 && n != 3) throw std::invalid_argument("sphere_hup_certificate: n must be 2 or 3");
  if (K_max < 0 || K_max > 40) throw std::invalid_argument("sphere_hup_certificate: K_max must be in [0, 40]");
  SphereHupCertificate c;
  c.r = r;
  c.n = n;
  c.min_abs = INFINITY;
  for (int k = 0; k <= K_max; ++k) {
    const BesselOrder nu = BesselOrder::for_harmonic(k, n);
    const double v = special::bessel_j(nu, r);
    c.values.push_back(v);
    c.min_abs = std::min(c.min_abs, std::abs(v));
    // J_nu > 0 on (0, j_{nu,1}); small values there are decay, not zeros.
    const bool past_first_zero = r >= special::bessel_zero(nu, 1) - 1e-6;
    if (!c.fails_at && std::abs(v) <= 1e-10 && past_first_zero) c.fails_at = k;
  }
  if (c.fails_at) {
    const int k = *c.fails_at;
    const HarmonicIndex idx = n == 2 ? HarmonicIndex::circle_mode(k) : HarmonicIndex::sphere(k, 0);
    c.witness = CurveMeasure::sphere(n, {{idx, 1.0}});
  }
  return c;
}

std::vector<Point3> LatticeCross::points() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || M < 0) throw std::invalid_argument("LatticeCross: need alpha, beta > 0");
  std::vector<Point3> pts;
  for (int m = -M; m <= M; ++m) pts.push_back({alpha * m, 0.0, 0.0});
  for (int n = -M; n <= M; ++n)
    if (n != 0) pts.push_back({0.0, beta * n, 0.0});
  return pts;
}

double hyperbola_gram_condition(const HyperbolaDiscretization& disc) {
  const int N = disc.n_density;
  const double S = disc.S;
  std::vector<double> edges;
  const int panels = 4 * N;
  for (int i = 0; i <= panels; ++i) edges.push_back(-S + 2.0 * S * i / panels);
  const auto rule = quad::composite_gauss_legendre(edges, 16);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = rule.nodes[i];
    const double w = std::cos(0.5 * kPi * s / S);
    Eigen::VectorXcd b(N);
    for (int k = 0; k < N; ++k) b(k) = w * w * std::polar(1.0, kPi * (k - N / 2) * s / S);
    G += (rule.weights[i] * arc_speed(s)) * b * b.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  if (es.info() != Eigen::Success) throw std::runtime_error("hyperbola_gram_condition: eigen-decomposition failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return lo > 0.0 ? hi / lo : INFINITY;
}

Eigen::MatrixXcd lattice_cross_matrix(const LatticeCross& lattice, const HyperbolaDiscretization& disc) {
  if (disc.branches != 1 && disc.branches != 2 && disc.branches != 4)
    throw std::invalid_argument("lattice_cross_matrix: branches must be 1, 2 or 4");
  if (disc.n_density < 2 || disc.n_density % 2 || !(disc.S > 0.0))
    throw std::invalid_argument("lattice_cross_matrix: need an even mode count and S > 0");
  const double cond = hyperbola_gram_condition(disc);
  if (!(cond <= 1e8))
    throw std::runtime_error("lattice_cross_matrix: basis Gram condition " + std::to_string(cond) + " exceeds 1e8");

  const auto pts = lattice.points();
  const int N = disc.n_density;
  const double S = disc.S;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(pts.size(), disc.branches * N);

  auto fill_row = [&](const Point3& p, double phase) {
    Eigen::RowVectorXcd row(disc.branches * N);
    const auto rule = hyperbola_rule(S, kPi, p[0], p[1], N, phase);
    const std::size_t n = rule.size();
    std::vector<cplx> step(n), base(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = rule.nodes[i];
      const double w = std::cos(0.5 * kPi * s / S);
      step[i] = std::polar(1.0, kPi * s / S);
      base[i] = rule.weights[i] * arc_speed(s) * w * w * std::polar(1.0, -kPi * (N / 2) * s / S);
    }
    std::vector<cplx> v(n);
    for (int b = 0; b < disc.branches; ++b) {
      const auto [e1, e2] = branch_signs(disc.branches, b);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = rule.nodes[i];
        v[i] = base[i] * std::polar(1.0, -kPi * (p[0] * e1 * std::exp(s) + p[1] * e2 * std::exp(-s)));
      }
      for (int k = 0; k < N; ++k) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += v[i];
          v[i] *= step[i];
        }
        row(b * N + k) = acc;
      }
    }
    return row;
  };

  for (std::size_t r = 0; r < pts.size(); ++r) A.row(r) = fill_row(pts[r], 3.0);

  // Refinement spot check on the origin and the extreme points of each axis.
  const std::size_t M = static_cast<std::size_t>(lattice.M);
  for (std::size_t r : {M, std::size_t{0}, 2 * M, pts.size() - 1}) {
    const Eigen::RowVectorXcd fine = fill_row(pts[r], 1.5);
    const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
    if ((fine - A.row(r)).cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw std::runtime_error("lattice_cross_matrix: quadrature did not converge to 1e-8");
  }
  return A;
}

std::vector<SigmaRow> sigma_min_scan(const std::vector<std::pair<double, double>>& grid, int M,
                                     const HyperbolaDiscretization& disc) {
  std::vector<SigmaRow> rows;
  for (const auto& [alpha, beta] : grid) {
    const Eigen::MatrixXcd A = lattice_cross_matrix({alpha, beta, M}, disc);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    if (svd.info() != Eigen::Success) throw std::runtime_error("sigma_min_scan: SVD did not converge");
    const auto& sv = svd.singularValues();
    SigmaRow row;
    row.alpha = alpha;
    row.beta = beta;
    row.M = M;
    row.sigma_max = sv.maxCoeff();
    row.sigma_min = sv.minCoeff();
    row.ratio = row.sigma_max > 0.0 ? row.sigma_min / row.sigma_max : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void ProductFunction::set_mode(int n, compact::GroupFunction g) {
  if (g.spec()->name() != spec_->name()) throw std::invalid_argument("ProductFunction: mode on a different group");
  modes_.insert_or_assign(n, std::move(g));
}

cplx ProductFunction::operator()(double x_angle, const compact::GroupElement& k) const {
  cplx acc = 0.0;
  for (const auto& [n, g] : modes_) acc += std::polar(1.0 / std::sqrt(2.0 * kPi), n * x_angle) * g(k);
  return acc;
}

ProductFunction random_product_function(compact::SpecPtr spec, int max_mode, std::mt19937_64& rng) {
  ProductFunction f(spec);
  for (int n = -max_mode; n <= max_mode; ++n) f.set_mode(n, compact::random_group_function(spec, rng, 1.0));
  return f;
}

namespace {

int max_circle_mode(const ProductFunction& f) {
  int m = 0;
  for (const auto& [n, g] : f.modes()) m = std::max(m, std::abs(n));
  return m;
}

}  // namespace

Eigen::MatrixXcd product_fourier(const ProductFunction& f, const std::array<double, 2>& y, int delta) {
  const auto& spec = *f.spec();
  const int d = spec.dim(delta);
  const auto haar = spec.haar_rule();
  const double rho = 2.0 * kPi * std::hypot(y[0], y[1]);
  const auto circle = quad::circle_rule(64 + 2 * (static_cast<int>(std::ceil(rho)) + max_circle_mode(f)));

  std::vector<Eigen::MatrixXcd> inv_rep(haar.size());
  for (std::size_t q = 0; q < haar.size(); ++q) inv_rep[q] = spec.rep(delta, haar.nodes[q]).adjoint();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < circle.size(); ++i) {
    const double t = circle.nodes[i];
    const cplx kernel = std::polar(circle.weights[i], -2.0 * kPi * (std::cos(t) * y[0] + std::sin(t) * y[1]));
    for (std::size_t q = 0; q < haar.size(); ++q) out += (kernel * haar.weights[q] * f(t, haar.nodes[q])) * inv_rep[q];
  }
  return out;
}

CurveMeasure projection_f_k_sigma(const ProductFunction& f, const compact::GroupElement& k, int sigma) {
  const auto& spec = *f.spec();
  if (!spec.has_irrep(sigma)) throw std::invalid_argument("projection_f_k_sigma: unknown irrep");
  const Eigen::MatrixXcd rep = spec.rep(sigma, k);
  std::vector<std::pair<HarmonicIndex, cplx>> terms;
  for (const auto& [n, g] : f.modes()) {
    const cplx c = (g.block(sigma) * rep).trace();
    terms.push_back({HarmonicIndex::circle_mode(n), c});
  }
  return CurveMeasure::sphere(2, std::move(terms));
}

double hup_transfer_defect(const ProductFunction& f, const std::array<double, 2>& y, int sigma,
                           const compact::GroupElement& k) {
  const auto proj = projection_f_k_sigma(f, k, sigma);
  const cplx lhs = curve_fourier(proj, {{y[0], y[1], 0.0}}, Convention::TwoPiScaled).front();
  const cplx rhs = (product_fourier(f, y, sigma) * f.spec()->rep(sigma, k)).trace();
  return std::abs(lhs - rhs);
}

double peter_weyl_reconstruction_defect(const ProductFunction& f, const compact::GroupElement& k, int probes) {
  const auto& spec = *f.spec();
  std::vector<CurveMeasure> parts;
  for (const auto& ir : spec.irreps()) parts.push_back(projection_f_k_sigma(f, k, ir.label));
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const double t = 2.0 * kPi * (p + 0.25) / probes;
    const double x[2] = {std::cos(t), std::sin(t)};
    cplx sum = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i)
      sum += static_cast<double>(spec.irreps()[i].dim) * parts[i].sphere_density(x);
    worst = std::max(worst, std::abs(sum - f(t, k)));
  }
  return worst;
}

compact::OperatorMatrix motion_measure_fourier(const std::vector<SphereProductTerm>& f, double a, int N) {
  if (!(a > 0.0)) throw std::invalid_argument("motion_measure_fourier: a must be positive");
  int lmax = 0;
  for (const auto& t : f) {
    if (t.coeff == cplx(0.0)) continue;
    if (std::abs(t.m) > N || std::abs(t.m + t.l) > N)
      throw compact::BandLimitError("motion_measure_fourier: term leaves the band |k| <= " + std::to_string(N));
    lmax = std::max(lmax, std::abs(t.l));
  }
  compact::OperatorMatrix op;
  op.rows = motion::circle_basis(N);
  op.cols = op.rows;
  op.frequency = a;
  op.matrix = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
  if (f.empty()) return op;

  const int n_t = 64 + 2 * (static_cast<int>(std::ceil(a)) + lmax);
  const int n_w = 4 * N + 2 * static_cast<int>(std::ceil(a)) + 64;
  const auto trule = quad::circle_rule(n_t);
  for (int k = -N; k <= N; ++k) {
    std::vector<cplx> Fk(n_t, 0.0);
    bool any = false;
    for (const auto& t : f) {
      if (t.m != k || t.coeff == cplx(0.0)) continue;
      any = true;
      for (int i = 0; i < n_t; ++i) Fk[i] += t.coeff * std::polar(1.0 / std::sqrt(2.0 * kPi), t.l * trule.nodes[i]);
    }
    if (!any) continue;
    std::vector<cplx> ring(n_w, 0.0);
    for (int p = 0; p < n_w; ++p) {
      const double w = 2.0 * kPi * p / n_w;
      cplx s = 0.0;
      for (int i = 0; i < n_t; ++i) {
        const double tt = trule.nodes[i];
        const double proj = -std::sin(w) * std::cos(tt) + std::cos(w) * std::sin(tt);
        s += trule.weights[i] * Fk[i] * std::polar(1.0, -a * proj);
      }
      ring[p] = s;
    }
    for (int j = -N; j <= N; ++j) {
      cplx s = 0.0;
      for (int p = 0; p < n_w; ++p) s += ring[p] * std::polar(1.0 / n_w, -(j - k) * 2.0 * kPi * p / n_w);
      op.matrix(j + N, k + N) = s;
    }
  }
  return op;
}

const char* to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Certified: return "certified";
    case CertificateStatus::NonVanishing: return "non-vanishing";
    case CertificateStatus::Refused: return "refused";
  }
  return "?";
}

MeasureCertificate motion_measure_certificate(const std::vector<SphereProductTerm>& f, double a0, int N) {
  if (N < 0 || N > 20) throw std::invalid_argument("motion_measure_certificate: band limit must be in [0, 20]");
  if (!(a0 > 0.0) || a0 > 250.0) throw std::invalid_argument("motion_measure_certificate: a0 must be in (0, 250]");
  MeasureCertificate c;
  c.zero_distance = INFINITY;
  for (int l = 0; l <= c.checked_l_max; ++l) {
    for (int k = 1; k <= 100; ++k) {
      const double z = special::bessel_zero(BesselOrder::integer(l), k);
      c.zero_distance = std::min(c.zero_distance, std::abs(z - a0));
      if (z > a0) break;
    }
  }
  if (c.zero_distance <= 1e-6) {
    c.status = CertificateStatus::Refused;
    c.reason = "a0 lies within 1e-6 of a Bessel zero";
    return c;
  }
  const auto op = motion_measure_fourier(f, a0, N);
  c.hs_norm = op.hs_norm();
  if (c.hs_norm > 1e-8) {
    c.status = CertificateStatus::NonVanishing;
    c.reason = "transform does not vanish at a0";
    return c;
  }
  for (int j = -N; j <= N; ++j)
    for (int k = -N; k <= N; ++k) {
      const int l = j - k;
      // entry (m + l, m) is c sqrt(2 pi) J_l(a0); |J_{-l}| = |J_l|
      const double J = special::bessel_j(BesselOrder::integer(std::abs(l)), a0);
      c.max_coeff = std::max(c.max_coeff, std::abs(op.matrix(j + N, k + N)) / (std::sqrt(2.0 * kPi) * std::abs(J)));
    }
  if (c.max_coeff <= 1e-6) {
    c.status = CertificateStatus::Certified;
    c.reason = "density coefficients vanish";
  } else {
    c.status = CertificateStatus::NonVanishing;
    c.reason = "recovered coefficients exceed 1e-6";
  }
  return c;
}

}  // namespace ncf::hup
