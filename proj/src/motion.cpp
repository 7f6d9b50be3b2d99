#include "ncf/motion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ncf::motion {

namespace {

using special::BesselOrder;

double wrap_angle(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

// J_n for signed integer n.
double bessel_signed(int n, double x) {
  const double v = special::bessel_j(BesselOrder::integer(std::abs(n)), x);
  return (n < 0 && (n % 2 != 0)) ? -v : v;
}

double hankel_single(const RadialProfile& H, int dim, double a, int nodes) {
  const auto rule = quad::gauss_legendre(nodes, 0.0, H.radius);
  const BesselOrder nu = BesselOrder::from_twice(dim - 2);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes[i];
    s += rule.weights[i] * H(r) * special::bessel_j_scaled(nu, a * r) * std::pow(r, dim - 1);
  }
  return std::pow(2.0 * kPi, 0.5 * dim) * s;
}

}  // namespace

MotionElement m2_mul(const MotionElement& g1, const MotionElement& g2) {
  const double c = std::cos(g1.theta), s = std::sin(g1.theta);
  return {{g1.x[0] + c * g2.x[0] - s * g2.x[1], g1.x[1] + s * g2.x[0] + c * g2.x[1]},
          wrap_angle(g1.theta + g2.theta)};
}

MotionElement m2_inv(const MotionElement& g) {
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  return {{-(c * g.x[0] + s * g.x[1]), -(-s * g.x[0] + c * g.x[1])}, wrap_angle(-g.theta)};
}

RadialProfile gaussian_profile(double scale, int power, double width) {
  if (!(width > 0.0) || power < 0) throw std::invalid_argument("gaussian_profile: need width > 0, power >= 0");
  RadialProfile p;
  p.fn = [=](double r) { return scale * std::pow(r, power) * std::exp(-0.5 * r * r / (width * width)); };
  double r = width * (std::sqrt(static_cast<double>(power)) + 1.0);
  while (std::abs(p.fn(r)) > 1e-15) r += 0.05 * width;
  p.radius = r;
  p.note = "gaussian r^" + std::to_string(power) + " width " + std::to_string(width);
  return p;
}

cplx HarmonicTermFunction::operator()(const MotionElement& g) const {
  const double r = std::hypot(g.x[0], g.x[1]);
  const double phi = std::atan2(g.x[1], g.x[0]);
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    if (r > t.h.radius) continue;
    acc += t.coeff * t.h(r) * std::polar(1.0 / std::sqrt(2.0 * kPi), t.l * phi + t.m * g.theta);
  }
  return acc;
}

double HarmonicTermFunction::radius() const {
  double R = 0.0;
  for (const auto& t : terms_) R = std::max(R, t.h.radius);
  return R;
}

int HarmonicTermFunction::max_theta_mode() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.m));
  return m;
}

double HarmonicTermFunction::l2_norm_sq(int nodes) const {
  if (terms_.empty()) return 0.0;
  const auto rule = quad::gauss_legendre(nodes, 0.0, radius());
  std::map<std::pair<int, int>, std::vector<const HarmonicTerm*>> groups;
  for (const auto& t : terms_) groups[{t.l, t.m}].push_back(&t);
  double s = 0.0;
  for (const auto& [key, ts] : groups) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.nodes[i];
      cplx v = 0.0;
      for (const auto* t : ts)
        if (r <= t->h.radius) v += t->coeff * t->h(r);
      s += rule.weights[i] * r * std::norm(v);
    }
  }
  return s;
}

HarmonicTermFunction operator*(cplx s, HarmonicTermFunction f) {
  for (auto& t : f.terms_) t.coeff *= s;
  return f;
}

std::vector<double> default_a_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 32; ++i) g.push_back(0.25 * i);
  return g;
}

std::vector<double> hankel_fourier(const RadialProfile& H, int dim, const std::vector<double>& a_grid, int nodes) {
  if (dim < 2 || dim > 12) throw std::invalid_argument("hankel_fourier: dimension must be in [2, 12]");
  if (!H.fn) throw std::invalid_argument("hankel_fourier: empty profile");
  std::vector<double> out;
  out.reserve(a_grid.size());
  for (double a : a_grid) {
    if (a < 0.0) throw std::invalid_argument("hankel_fourier: frequencies must be nonnegative");
    const double coarse = hankel_single(H, dim, a, nodes);
    const double fine = hankel_single(H, dim, a, std::min(512, 2 * nodes));
    if (std::abs(fine - coarse) > 1e-8 * std::max(1.0, std::abs(fine)))
      throw std::runtime_error("hankel_fourier: radial quadrature not converged at a = " + std::to_string(a));
    out.push_back(fine);
  }
  return out;
}

double hankel_order(const RadialProfile& h, int L, double a, int nodes) {
  if (L < 0 || L > 5) throw std::invalid_argument("hankel_order: order must be in [0, 5]");
  RadialProfile H = h;
  H.fn = [f = h.fn, L](double r) { return f(r) / std::pow(r, L); };
  const double F = hankel_fourier(H, 2 + 2 * L, {a}, nodes).front();
  return std::pow(a, L) * F / std::pow(2.0 * kPi, 1 + L);
}

std::vector<compact::BasisLabel> circle_basis(int N) {
  std::vector<compact::BasisLabel> b;
  for (int k = -N; k <= N; ++k) b.push_back({k, 0, 0});
  return b;
}

OperatorMatrix fhat_operator(const HarmonicTermFunction& f, double a, int N, int nodes) {
  if (!(a > 0.0)) throw std::invalid_argument("fhat_operator: a must be positive");
  if (N < 0) throw std::invalid_argument("fhat_operator: band limit must be nonnegative");
  OperatorMatrix op;
  op.rows = circle_basis(N);
  op.cols = op.rows;
  op.frequency = a;
  op.matrix = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
  for (const auto& t : f.terms()) {
    if (t.coeff == cplx(0.0)) continue;
    const int col = t.m;
    const int row = t.m + t.l;
    if (std::abs(col) > N || std::abs(row) > N)
      throw compact::BandLimitError("fhat_operator: term (l=" + std::to_string(t.l) + ", m=" + std::to_string(t.m) +
                                    ") leaves the band |k| <= " + std::to_string(N));
    const int L = std::abs(t.l);
    const double sign = (t.l < 0 && L % 2 == 1) ? -1.0 : 1.0;
    op.matrix(row + N, col + N) += t.coeff * std::sqrt(2.0 * kPi) * sign * hankel_order(t.h, L, a, nodes);
  }
  const double total = op.matrix.squaredNorm();
  if (total > 0.0) {
    double edge = op.matrix.row(0).squaredNorm() + op.matrix.row(2 * N).squaredNorm() +
                  op.matrix.col(0).squaredNorm() + op.matrix.col(2 * N).squaredNorm();
    if (edge > 1e-8 * total)
      throw compact::BandLimitError("fhat_operator: outermost mode carries " + std::to_string(edge / total) +
                                    " of the HS mass; raise the band limit");
  }
  return op;
}

cplx representation_coefficient(double a, const MotionElement& g, int j, int k) {
  const double rho = std::hypot(g.x[0], g.x[1]);
  const double phi = std::atan2(g.x[1], g.x[0]);
  const int d = j - k;
  return bessel_signed(d, a * rho) * std::polar(1.0, -(d * phi + k * g.theta));
}

Eigen::MatrixXcd representation_matrix(double a, const MotionElement& g, int N) {
  const int n = 2 * N + 1;
  Eigen::VectorXcd phase(n);
  for (int p = 0; p < n; ++p) {
    const double w = 2.0 * kPi * p / n;
    const double proj = -std::sin(w) * g.x[0] + std::cos(w) * g.x[1];
    phase(p) = std::polar(1.0, -a * proj);
  }
  Eigen::MatrixXcd F(n, n);  // unitary DFT, rows modes -N..N
  for (int j = 0; j < n; ++j)
    for (int p = 0; p < n; ++p) F(j, p) = std::polar(1.0 / std::sqrt(n), -(j - N) * 2.0 * kPi * p / n);
  Eigen::VectorXcd shift(n);
  for (int k = 0; k < n; ++k) shift(k) = std::polar(1.0, -(k - N) * g.theta);
  return F * phase.asDiagonal() * F.adjoint() * shift.asDiagonal();
}

PlancherelResult plancherel_m2(const HarmonicTermFunction& f, double c2, double a_max, int N, int a_nodes,
                               int radial_nodes) {
  PlancherelResult res;
  res.rhs = f.l2_norm_sq(radial_nodes);
  bool any = false;
  for (const auto& t : f.terms()) any = any || t.coeff != cplx(0.0);
  if (!any) return res;

  auto integrand = [&](double a) { return fhat_operator(f, a, N, radial_nodes).matrix.squaredNorm() * a; };
  const auto rule = quad::gauss_legendre(a_nodes, 0.0, a_max);
  double body = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) body += rule.weights[i] * integrand(rule.nodes[i]);
  const auto tail_rule = quad::gauss_legendre(64, a_max, 2.0 * a_max);
  double tail = 0.0;
  for (std::size_t i = 0; i < tail_rule.size(); ++i) tail += tail_rule.weights[i] * integrand(tail_rule.nodes[i]);
  if (tail > 1e-10 * body)
    throw std::runtime_error("plancherel_m2: transform mass beyond a_max = " + std::to_string(a_max) +
                             " is " + std::to_string(tail / body) + " of the total");
  res.lhs = c2 * body;
  res.defect = std::abs(res.lhs - res.rhs) / std::max(res.rhs, 1e-300);
  return res;
}

C2Calibration calibrate_c2() {
  HarmonicTermFunction g({HarmonicTerm{0, 0, 1.0, gaussian_profile(1.0, 0, 1.0)}});
  const double norm = g.l2_norm_sq();
  auto estimate = [&](int a_nodes) {
    const auto rule = quad::gauss_legendre(a_nodes, 0.0, 12.0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
      s += rule.weights[i] * rule.nodes[i] * fhat_operator(g, rule.nodes[i], 4).matrix.squaredNorm();
    return norm / s;
  };
  C2Calibration c;
  const double coarse = estimate(64);
  c.c2 = estimate(128);
  c.residual = std::abs(c.c2 - coarse);
  return c;
}

std::vector<RankRow> rank_scan(const HarmonicTermFunction& f, const std::vector<double>& a_grid, int N, double tol) {
  std::vector<RankRow> rows;
  for (double a : a_grid) {
    const auto sd = compact::spectral(fhat_operator(f, a, N), tol);
    RankRow r;
    r.a = a;
    r.rank = sd.rank;
    r.sigma1 = sd.singular_values.empty() ? 0.0 : sd.singular_values[0];
    r.ratio = (r.sigma1 > 0.0 && sd.singular_values.size() > 1) ? sd.singular_values[1] / r.sigma1 : 0.0;
    rows.push_back(r);
  }
  return rows;
}

SphereGrid make_sphere_grid(int n, int order) {
  SphereGrid g;
  g.n = n;
  if (n == 2) {
    const auto c = quad::circle_rule(order + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      g.points.push_back({std::cos(c.nodes[i]), std::sin(c.nodes[i]), 0.0});
      g.weights.push_back(c.weights[i]);
    }
  } else if (n == 3) {
    const auto s = quad::sphere_rule(order);
    g.points = s.nodes;
    g.weights = s.weights;
  } else {
    throw std::invalid_argument("make_sphere_grid: n must be 2 or 3");
  }
  return g;
}

std::vector<cplx> pi_l_project(const SphereGrid& grid, const std::vector<cplx>& F, int l) {
  if (F.size() != grid.size()) throw std::invalid_argument("pi_l_project: sample count mismatch");
  if (l < 0) throw std::invalid_argument("pi_l_project: degree must be nonnegative");
  const std::size_t n = grid.size();
  std::vector<cplx> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& xi = grid.points[i];
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& eta = grid.points[j];
      const double t = std::clamp(xi[0] * eta[0] + xi[1] * eta[1] + xi[2] * eta[2], -1.0, 1.0);
      s += grid.weights[j] * special::zonal(l, grid.n, t) * F[j];
    }
    out[i] = s;
  }
  return out;
}

CesaroWeights::CesaroWeights(int p_, double delta_) : delta(delta_), p(p_) {
  if (p < 0) throw std::invalid_argument("CesaroWeights: degree must be nonnegative");
  if (!(delta >= 0.0)) throw std::invalid_argument("CesaroWeights: order must be nonnegative");
  // C(p - l + delta, delta) / C(p + delta, delta) via log-gamma.
  const double base = std::lgamma(p + delta + 1.0) - std::lgamma(p + 1.0);
  for (int l = 0; l <= p; ++l) A.push_back(std::exp(std::lgamma(p - l + delta + 1.0) - std::lgamma(p - l + 1.0) - base));
}

std::vector<cplx> cesaro_sum(const SphereGrid& grid, const std::vector<cplx>& F, int p, double delta) {
  if (!(delta > 0.5 * (grid.n - 2)))
    throw std::invalid_argument("cesaro_sum: order delta must exceed (n - 2) / 2");
  const CesaroWeights w(p, delta);
  std::vector<cplx> out(grid.size(), 0.0);
  for (int l = 0; l <= p; ++l) {
    const auto pl = pi_l_project(grid, F, l);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w.A[l] * pl[i];
  }
  return out;
}

double l1_distance(const SphereGrid& grid, const std::vector<cplx>& F, const std::vector<cplx>& G) {
  if (F.size() != grid.size() || G.size() != grid.size())
    throw std::invalid_argument("l1_distance: sample count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) s += grid.weights[i] * std::abs(F[i] - G[i]);
  return s;
}

RadialCertificate single_point_radial_certificate(const RadialProfile& f, double a0, int n, int nodes) {
  if (n != 2) throw std::invalid_argument("single_point_radial_certificate: only n = 2 is supported");
  if (!(a0 > 0.0)) throw std::invalid_argument("single_point_radial_certificate: a0 must be positive");
  const auto rule = quad::radial_rule(nodes, f.radius, n);
  RadialCertificate c;
  c.sign_condition = true;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double v = f(t);
    const double prod = special::bessel_j(BesselOrder::integer(0), a0 * t) * v;
    c.integral += rule.weights[i] * prod;
    c.max_abs_f = std::max(c.max_abs_f, std::abs(v));
    if (prod < -1e-12) c.sign_condition = false;
  }
  c.zero_certified = c.sign_condition && std::abs(c.integral) <= 1e-14;
  return c;
}

double lemma44_defect(const HarmonicTermFunction& f, double a0, int alpha0, int samples, int probes, int nodes) {
  if (alpha0 < 0) throw std::invalid_argument("lemma44_defect: alpha0 must be nonnegative");
  if (2 * alpha0 >= samples)
    throw compact::BandLimitError("lemma44_defect: " + std::to_string(samples) + " samples cannot resolve modes up to " +
                                  std::to_string(alpha0));
  if (f.empty()) return 0.0;
  const auto rule = quad::radial_rule(nodes, f.radius(), 2);
  const std::size_t nt = rule.size();
  std::vector<double> j0(nt);
  for (std::size_t i = 0; i < nt; ++i) j0[i] = special::bessel_j(BesselOrder::integer(0), a0 * rule.nodes[i]);

  // Fourier coefficients of F_t in s from equispaced samples.
  std::vector<std::vector<cplx>> coef(nt, std::vector<cplx>(2 * alpha0 + 1, 0.0));
  for (std::size_t i = 0; i < nt; ++i) {
    for (int p = 0; p < samples; ++p) {
      const double s = 2.0 * kPi * p / samples;
      const cplx v = f(MotionElement{{rule.nodes[i], 0.0}, s});
      for (int m = -alpha0; m <= alpha0; ++m) coef[i][m + alpha0] += v * std::polar(1.0 / samples, -m * s);
    }
  }
  double worst = 0.0;
  for (int q = 0; q < probes; ++q) {
    const double s = 2.0 * kPi * (q + 0.5) / probes;
    cplx direct = 0.0, series = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      direct += rule.weights[i] * j0[i] * f(MotionElement{{rule.nodes[i], 0.0}, s});
      cplx partial = 0.0;
      for (int m = -alpha0; m <= alpha0; ++m) partial += coef[i][m + alpha0] * std::polar(1.0, m * s);
      series += rule.weights[i] * j0[i] * partial;
    }
    worst = std::max(worst, std::abs(direct - series));
  }
  return worst;
}

}  // namespace ncf::motion
