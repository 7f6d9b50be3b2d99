#include "ncf/quad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncf::quad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Legendre P_N and its derivative at x by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int N, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (N == 0) return {1.0, 0.0};
  for (int k = 2; k <= N; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = N * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Nodes and weights on [-1, 1], ascending.
void gauss_legendre_unit(int N, std::vector<double>& x, std::vector<double>& w) {
  x.assign(N, 0.0);
  w.assign(N, 0.0);
  const int half = (N + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (N + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_with_derivative(N, z);
      dp = d;
      const double dz = p / d;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    dp = legendre_with_derivative(N, z).second;
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[N - 1 - i] = z;
    x[i] = -z;
    w[i] = wi;
    w[N - 1 - i] = wi;
  }
  if (N % 2 == 1) x[N / 2] = 0.0;
}

}  // namespace

QuadRule<double> circle_rule(int N) {
  if (N < 1) throw std::invalid_argument("circle_rule: N must be >= 1");
  QuadRule<double> r;
  r.nodes.resize(N);
  r.weights.assign(N, 2.0 * kPi / N);
  for (int k = 0; k < N; ++k) r.nodes[k] = 2.0 * kPi * k / N;
  r.exactness = N - 1;
  return r;
}

QuadRule<double> gauss_legendre(int N, double a, double b) {
  if (N < 1 || N > 512) throw std::invalid_argument("gauss_legendre: N must be in [1, 512]");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
  std::vector<double> x, w;
  gauss_legendre_unit(N, x, w);
  QuadRule<double> r;
  r.nodes.resize(N);
  r.weights.resize(N);
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (b + a);
  for (int i = 0; i < N; ++i) {
    r.nodes[i] = c + h * x[i];
    r.weights[i] = h * w[i];
  }
  r.exactness = 2 * N - 1;
  return r;
}

QuadRule<double> composite_gauss_legendre(const std::vector<double>& edges, int nodes_per_panel) {
  if (edges.size() < 2) throw std::invalid_argument("composite_gauss_legendre: need two edges");
  std::vector<double> x, w;
  gauss_legendre_unit(nodes_per_panel, x, w);
  QuadRule<double> r;
  r.nodes.reserve((edges.size() - 1) * nodes_per_panel);
  r.weights.reserve(r.nodes.capacity());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p];
    const double b = edges[p + 1];
    if (!(a < b)) throw std::invalid_argument("composite_gauss_legendre: edges must increase");
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (b + a);
    for (int i = 0; i < nodes_per_panel; ++i) {
      r.nodes.push_back(c + h * x[i]);
      r.weights.push_back(h * w[i]);
    }
  }
  r.exactness = 2 * nodes_per_panel - 1;
  return r;
}

QuadRule<Point3> sphere_rule(int order) {
  if (order < 1 || order > 64) throw std::invalid_argument("sphere_rule: order must be in [1, 64]");
  const int n_polar = order / 2 + 1;
  const int n_azimuth = order + 1;
  std::vector<double> z, wz;
  gauss_legendre_unit(n_polar, z, wz);
  QuadRule<Point3> r;
  r.nodes.reserve(n_polar * n_azimuth);
  r.weights.reserve(n_polar * n_azimuth);
  for (int i = 0; i < n_polar; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
    for (int k = 0; k < n_azimuth; ++k) {
      const double phi = 2.0 * kPi * k / n_azimuth;
      r.nodes.push_back({s * std::cos(phi), s * std::sin(phi), z[i]});
      r.weights.push_back(wz[i] * 2.0 * kPi / n_azimuth);
    }
  }
  r.exactness = order;
  return r;
}

QuadRule<double> radial_rule(int N, double R, int n) {
  if (n < 1) throw std::invalid_argument("radial_rule: dimension must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("radial_rule: R must be positive");
  auto r = gauss_legendre(N, 0.0, R);
  for (std::size_t i = 0; i < r.size(); ++i) r.weights[i] *= std::pow(r.nodes[i], n - 1);
  r.exactness = std::max(1, 2 * N - 1 - (n - 1));
  return r;
}

QuadRule<EulerAngles> so3_rule(int degree) {
  if (degree < 0 || degree > 256) throw std::invalid_argument("so3_rule: degree must be in [0, 256]");
  const int n_angle = degree + 1;
  const int n_beta = degree / 2 + 1;
  std::vector<double> c, wc;
  gauss_legendre_unit(n_beta, c, wc);
  QuadRule<EulerAngles> r;
  r.nodes.reserve(n_angle * n_angle * n_beta);
  r.weights.reserve(r.nodes.capacity());
  const double w_angle = 1.0 / n_angle;
  for (int ib = 0; ib < n_beta; ++ib) {
    const double beta = std::acos(c[ib]);
    for (int ia = 0; ia < n_angle; ++ia) {
      for (int ig = 0; ig < n_angle; ++ig) {
        r.nodes.push_back({2.0 * kPi * ia / n_angle, beta, 2.0 * kPi * ig / n_angle});
        r.weights.push_back(0.5 * wc[ib] * w_angle * w_angle);
      }
    }
  }
  r.exactness = degree;
  return r;
}

}  // namespace ncf::quad
