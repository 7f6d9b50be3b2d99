#pragma once

// Independent reference computations used by the test suites. None of these
// call into the library's special-function or transform code paths.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = 3.141592653589793238462643383279502884;

// Gauss-Legendre on [a, b] by Golub-Welsch (Eigen's symmetric eigensolver),
// deliberately not the library's Newton construction.
inline void golub_welsch(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (b - a) * es.eigenvalues()(i) + 0.5 * (a + b);
    const double v = es.eigenvectors()(0, i);
    w[i] = (b - a) * v * v;
  }
}

// Composite Gauss-Legendre integral of f over [a, b].
template <class F>
auto integrate(F&& f, double a, double b, int panels = 32, int order = 20) {
  std::vector<double> x, w;
  golub_welsch(order, 0.0, 1.0, x, w);
  using R = decltype(f(a));
  R acc{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < order; ++i) acc += h * w[i] * f(a + h * (p + x[i]));
  return acc;
}

// J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt for integer n.
inline double bessel_integral(int n, double x) {
  const int panels = 16 + static_cast<int>(x);
  return integrate([&](double t) { return std::cos(n * t - x * std::sin(t)); }, 0.0, kPi, panels) / kPi;
}

inline double bessel_std(double nu, double x) { return std::cyl_bessel_j(nu, x); }

// Explicit sum formula for the Wigner small-d element d^j_{m' m}(beta).
inline double wigner_explicit(int j, int mp, int m, double beta) {
  auto fact = [](int n) { return std::tgamma(n + 1.0); };
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  double sum = 0.0;
  for (int k = 0; k <= 2 * j; ++k) {
    if (j + m - k < 0 || mp - m + k < 0 || j - mp - k < 0) continue;
    const double num = ((mp - m + k) % 2 == 0 ? 1.0 : -1.0);
    const double den = fact(j + m - k) * fact(k) * fact(mp - m + k) * fact(j - mp - k);
    sum += num / den * std::pow(c, 2 * j + m - mp - 2 * k) * std::pow(s, mp - m + 2 * k);
  }
  return std::sqrt(fact(j + mp) * fact(j - mp) * fact(j + m) * fact(j - m)) * sum;
}

// Matrix of int f(x, s) e^{-i a <x, u(w)>} phi(w - s) dx ds / 2 pi on the
// circle modes |j|, |k| <= N, u(w) = (-sin w, cos w), by nested Cartesian
// quadrature: polar rule in x, equispaced s and w. No Bessel functions.
inline Eigen::MatrixXcd fhat_direct(const std::function<cplx(double, double, double)>& f, double a, int N,
                                    double R, int n_r = 96, int n_phi = 96, int n_s = 32, int n_w = 128) {
  std::vector<double> rx, rw;
  golub_welsch(n_r, 0.0, R, rx, rw);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
  for (int k = -N; k <= N; ++k) {
    // G_k(x) = int f(x, s) e^{-i k s} ds / 2 pi on the polar nodes
    std::vector<cplx> G(n_r * n_phi);
    std::vector<double> X(n_r * n_phi), Y(n_r * n_phi), W(n_r * n_phi);
    for (int i = 0; i < n_r; ++i)
      for (int p = 0; p < n_phi; ++p) {
        const double phi = 2.0 * kPi * p / n_phi;
        const double x = rx[i] * std::cos(phi), y = rx[i] * std::sin(phi);
        cplx g = 0.0;
        for (int q = 0; q < n_s; ++q) {
          const double s = 2.0 * kPi * q / n_s;
          g += f(x, y, s) * std::polar(1.0 / n_s, -k * s);
        }
        const int idx = i * n_phi + p;
        G[idx] = g;
        X[idx] = x;
        Y[idx] = y;
        W[idx] = rw[i] * rx[i] * 2.0 * kPi / n_phi;
      }
    for (int t = 0; t < n_w; ++t) {
      const double w = 2.0 * kPi * t / n_w;
      const double ux = -std::sin(w), uy = std::cos(w);
      cplx phi_k = 0.0;
      for (std::size_t idx = 0; idx < G.size(); ++idx)
        phi_k += W[idx] * G[idx] * std::polar(1.0, -a * (X[idx] * ux + Y[idx] * uy));
      phi_k *= std::polar(1.0, k * w);
      for (int j = -N; j <= N; ++j) out(j + N, k + N) += phi_k * std::polar(1.0 / n_w, -j * w);
    }
  }
  return out;
}

}  // namespace oracle
