#include "ncf/motion_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncf::motion {

GridFunction::GridFunction(double B, double h, int n_theta) : B_(B), h_(h), n_theta_(n_theta) {
  if (!(B > 0.0) || !(h > 0.0)) throw std::invalid_argument("GridFunction: box and spacing must be positive");
  if (n_theta != 1 && n_theta != 2 && n_theta != 4)
    throw std::invalid_argument("GridFunction: n_theta must be 1, 2 or 4");
  const double ratio = B / h;
  half_ = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - half_) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("GridFunction: B must be a multiple of h");
  values_.assign(static_cast<std::size_t>(side()) * side() * n_theta_, 0.0);
}

GridFunction GridFunction::sample(const std::function<cplx(const MotionElement&)>& f, double B, double h,
                                  int n_theta) {
  GridFunction g(B, h, n_theta);
  for (int ix = -g.half_; ix <= g.half_; ++ix)
    for (int iy = -g.half_; iy <= g.half_; ++iy)
      for (int q = 0; q < n_theta; ++q) g.at(ix, iy, q) = f(MotionElement{{ix * h, iy * h}, g.theta(q)});
  return g;
}

GridFunction GridFunction::sample(const HarmonicTermFunction& f, double B, double h, int n_theta) {
  return sample([&](const MotionElement& e) { return f(e); }, B, h, n_theta);
}

double GridFunction::theta(int q) const { return 2.0 * kPi * q / n_theta_; }

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::effective_radius(double rel) const {
  const double thr = rel * max_abs();
  double r = 0.0;
  for (int ix = -half_; ix <= half_; ++ix)
    for (int iy = -half_; iy <= half_; ++iy)
      for (int q = 0; q < n_theta_; ++q)
        if (std::abs(at(ix, iy, q)) > thr) r = std::max(r, h_ * std::hypot(ix, iy));
  return r;
}

bool GridFunction::same_layout(const GridFunction& o) const {
  return half_ == o.half_ && n_theta_ == o.n_theta_ && std::abs(h_ - o.h_) <= 1e-12 * h_;
}

namespace {

// Lattice point rotated by -q * (2 pi / n_theta).
std::pair<int, int> rotate_back(int ix, int iy, int q, int n_theta) {
  const int quarter = (q * (4 / n_theta)) % 4;
  switch (quarter) {
    case 0: return {ix, iy};
    case 1: return {iy, -ix};
    case 2: return {-ix, -iy};
    default: return {-iy, ix};
  }
}

}  // namespace

GridFunction m2_convolve(const GridFunction& f, const GridFunction& g) {
  if (!f.same_layout(g)) throw std::invalid_argument("m2_convolve: grids differ");
  const double rf = f.effective_radius();
  const double rg = g.effective_radius();
  if (rf + rg > f.box() + 1e-12)
    throw std::domain_error("m2_convolve: supports of radius " + std::to_string(rf) + " and " + std::to_string(rg) +
                            " overflow the box of half-width " + std::to_string(f.box()));
  const int H = f.half();
  const int nt = f.n_theta();
  const double w = f.spacing() * f.spacing() / nt;

  struct Entry {
    int ix, iy, q;
    cplx v;
  };
  std::vector<Entry> nz;
  for (int ix = -H; ix <= H; ++ix)
    for (int iy = -H; iy <= H; ++iy)
      for (int q = 0; q < nt; ++q)
        if (f.at(ix, iy, q) != cplx(0.0)) nz.push_back({ix, iy, q, f.at(ix, iy, q)});

  GridFunction out(f.box(), f.spacing(), nt);
  for (int ix = -H; ix <= H; ++ix)
    for (int iy = -H; iy <= H; ++iy)
      for (int p = 0; p < nt; ++p) {
        cplx acc = 0.0;
        for (const auto& e : nz) {
          const auto [rx, ry] = rotate_back(ix - e.ix, iy - e.iy, e.q, nt);
          if (!g.inside(rx, ry)) continue;
          acc += e.v * g.at(rx, ry, ((p - e.q) % nt + nt) % nt);
        }
        out.at(ix, iy, p) = w * acc;
      }
  return out;
}

GridFunction m2_adjoint(const GridFunction& f) {
  const int H = f.half();
  const int nt = f.n_theta();
  GridFunction out(f.box(), f.spacing(), nt);
  for (int ix = -H; ix <= H; ++ix)
    for (int iy = -H; iy <= H; ++iy)
      for (int q = 0; q < nt; ++q) {
        // (x, theta)^{-1} = (-R_{-theta} x, -theta)
        const auto [rx, ry] = rotate_back(ix, iy, q, nt);
        out.at(ix, iy, q) = std::conj(f.at(-rx, -ry, (nt - q) % nt));
      }
  return out;
}

GridFunction grid_delta(double B, double h, int n_theta) {
  GridFunction d(B, h, n_theta);
  d.at(0, 0, 0) = n_theta / (h * h);
  return d;
}

OperatorMatrix fhat_from_grid(const GridFunction& f, double a, int N, int n_omega) {
  if (!(a > 0.0)) throw std::invalid_argument("fhat_from_grid: a must be positive");
  const int H = f.half();
  const int nt = f.n_theta();
  const int K = std::min(N, (nt - 1) / 2);
  const double h2 = f.spacing() * f.spacing();

  OperatorMatrix op;
  op.rows = circle_basis(N);
  op.cols = op.rows;
  op.frequency = a;
  op.matrix = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);

  for (int k = -K; k <= K; ++k) {
    // theta-Fourier coefficient of the samples, then its planar transform on
    // the circle of radius a.
    std::vector<std::pair<std::array<double, 2>, cplx>> Fk;
    for (int ix = -H; ix <= H; ++ix)
      for (int iy = -H; iy <= H; ++iy) {
        cplx c = 0.0;
        for (int q = 0; q < nt; ++q) c += f.at(ix, iy, q) * std::polar(1.0 / nt, -k * f.theta(q));
        if (c != cplx(0.0)) Fk.push_back({{ix * f.spacing(), iy * f.spacing()}, h2 * c});
      }
    std::vector<cplx> ring(n_omega, 0.0);
    for (int p = 0; p < n_omega; ++p) {
      const double w = 2.0 * kPi * p / n_omega;
      const double ux = -std::sin(w), uy = std::cos(w);
      cplx s = 0.0;
      for (const auto& [x, c] : Fk) s += c * std::polar(1.0, -a * (x[0] * ux + x[1] * uy));
      ring[p] = s;
    }
    for (int j = -N; j <= N; ++j) {
      cplx s = 0.0;
      for (int p = 0; p < n_omega; ++p) s += ring[p] * std::polar(1.0 / n_omega, -(j - k) * 2.0 * kPi * p / n_omega);
      op.matrix(j + N, k + N) = s;
    }
  }
  return op;
}

}  // namespace ncf::motion
