#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace ncf::quad {

using Point3 = std::array<double, 3>;

// ZYZ Euler angles of a rotation in SO(3): R = Rz(alpha) Ry(beta) Rz(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Nodes and positive weights. `exactness` is the polynomial (or trigonometric,
// or spherical-harmonic) degree integrated exactly.
template <class Node>
struct QuadRule {
  std::vector<Node> nodes;
  std::vector<double> weights;
  int exactness = 1;

  std::size_t size() const { return nodes.size(); }

  double mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  template <class F>
  auto integrate(F&& f) const -> decltype(f(nodes.front()) * 1.0) {
    using R = decltype(f(nodes.front()) * 1.0);
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

// N equispaced angles on [0, 2 pi) with weight 2 pi / N.
QuadRule<double> circle_rule(int N);

// Gauss-Legendre rule mapped to [a, b], N <= 512.
QuadRule<double> gauss_legendre(int N, double a, double b);

// Composite Gauss-Legendre on consecutive panels [edges[i], edges[i+1]].
QuadRule<double> composite_gauss_legendre(const std::vector<double>& edges, int nodes_per_panel);

// Product rule on S^2: Gauss-Legendre in cos(polar) times equispaced azimuth.
// Exact for spherical harmonics of degree <= order; total mass 4 pi.
QuadRule<Point3> sphere_rule(int order);

// Gauss-Legendre on [0, R] with the radial Jacobian t^{n-1} folded into the
// weights. The integrand is assumed negligible beyond R.
QuadRule<double> radial_rule(int N, double R, int n);

// Euler-angle product rule on SO(3) with normalized Haar mass 1, exact for
// matrix coefficients (and their products) of total degree <= degree.
QuadRule<EulerAngles> so3_rule(int degree);

}  // namespace ncf::quad
