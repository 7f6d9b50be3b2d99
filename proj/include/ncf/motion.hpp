#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ncf/compact.hpp"
#include "ncf/quad.hpp"
#include "ncf/special_fn.hpp"

namespace ncf::motion {

using compact::OperatorMatrix;

// Element (x, theta) of M(2) = R^2 x SO(2).
struct MotionElement {
  std::array<double, 2> x{0.0, 0.0};
  double theta = 0.0;
};

// (x, theta)(y, tau) = (x + R_theta y, theta + tau).
MotionElement m2_mul(const MotionElement& g1, const MotionElement& g2);
MotionElement m2_inv(const MotionElement& g);

// Radial function with declared decay radius: |h| <= 1e-14 beyond `radius`.
struct RadialProfile {
  std::function<double(double)> fn;
  double radius = 12.0;
  std::string note;

  double operator()(double r) const { return fn(r); }
};

RadialProfile gaussian_profile(double scale = 1.0, int power = 0, double width = 1.0);

// One term c h(|x|) Y_l(x / |x|) e^{i m theta}, Y_l(phi) = e^{i l phi} / sqrt(2 pi).
struct HarmonicTerm {
  int l = 0;
  int m = 0;
  cplx coeff = 1.0;
  RadialProfile h;
};

class HarmonicTermFunction {
 public:
  HarmonicTermFunction() = default;
  explicit HarmonicTermFunction(std::vector<HarmonicTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  void add(HarmonicTerm t) { terms_.push_back(std::move(t)); }
  bool empty() const { return terms_.empty(); }

  cplx operator()(const MotionElement& g) const;
  double radius() const;
  int max_theta_mode() const;

  // ||f||_2^2 for Haar measure dx dtheta / 2 pi, by radial Gauss-Legendre.
  double l2_norm_sq(int nodes = 256) const;

  friend HarmonicTermFunction operator*(cplx s, HarmonicTermFunction f);

 private:
  std::vector<HarmonicTerm> terms_;
};

// Defaults for the operator transform.
inline constexpr int kDefaultModes = 32;
inline constexpr int kDefaultRadialNodes = 256;
std::vector<double> default_a_grid();  // 0.25, 0.5, ..., 8

// m-dimensional Fourier transform (kernel e^{-i <x, xi>}) of the radial
// extension of H, evaluated at |xi| = a for each a in a_grid:
//   (2 pi)^{m/2} int_0^R H(r) J_nu(a r) / (a r)^nu r^{m-1} dr,  nu = m/2 - 1.
// Radial nodes are doubled once; the two levels must agree within 1e-8.
std::vector<double> hankel_fourier(const RadialProfile& H, int dim, const std::vector<double>& a_grid,
                                   int nodes = kDefaultRadialNodes);

// int_0^R h(r) J_L(a r) r dr, obtained from hankel_fourier in dimension
// 2 + 2L applied to h / r^L. Requires L <= 5.
double hankel_order(const RadialProfile& h, int L, double a, int nodes = kDefaultRadialNodes);

// Circle Fourier basis e_k(w) = e^{i k w}, |k| <= N, orthonormal for dw / 2 pi.
std::vector<compact::BasisLabel> circle_basis(int N);

// Matrix of fhat(a) phi(w) = int f(x, s) e^{-i a <x, u(w)>} phi(w - s) dx ds,
// u(w) = R_w e_2, on the circle basis. Each term feeds the single entry
// (m + l, m). Throws BandLimitError when a term leaves the band or the
// outermost mode carries more than 1e-8 of the squared HS norm.
OperatorMatrix fhat_operator(const HarmonicTermFunction& f, double a, int N = kDefaultModes,
                             int nodes = kDefaultRadialNodes);

// <e_j, pi_a(g) e_k> = J_{j-k}(a |x|) e^{-i (j-k) phi_x} e^{-i k theta}.
cplx representation_coefficient(double a, const MotionElement& g, int j, int k);

// pi_a(g) discretized on 2N + 1 equispaced samples of the circle (band-limited
// shift, pointwise phase), expressed on the circle basis. Unitary to rounding.
Eigen::MatrixXcd representation_matrix(double a, const MotionElement& g, int N);

struct PlancherelResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double defect = 0.0;  // |lhs - rhs| / max(rhs, tiny); zero for f = 0
};

// lhs = c2 int_0^{a_max} ||fhat(a)||_HS^2 a da, rhs = ||f||_2^2. The mass of
// the integrand on [a_max, 2 a_max] must stay below 1e-10 times lhs.
PlancherelResult plancherel_m2(const HarmonicTermFunction& f, double c2, double a_max = 12.0, int N = kDefaultModes,
                               int a_nodes = 256, int radial_nodes = kDefaultRadialNodes);

struct C2Calibration {
  double c2 = 0.0;
  double residual = 0.0;  // change of c2 when the a-rule is doubled
};

// c2 from the Gaussian e^{-|x|^2 / 2} (constant in theta).
C2Calibration calibrate_c2();

struct RankRow {
  double a = 0.0;
  int rank = 0;
  double sigma1 = 0.0;
  double ratio = 0.0;  // sigma_2 / sigma_1, zero when sigma_1 = 0
};

std::vector<RankRow> rank_scan(const HarmonicTermFunction& f, const std::vector<double>& a_grid,
                               int N = kDefaultModes, double tol = compact::kDefaultRankTol);

// Quadrature nodes on S^{n-1} for n = 2 (equispaced, `order + 1` points) or
// n = 3 (sphere_rule(order)).
struct SphereGrid {
  int n = 2;
  std::vector<quad::Point3> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  std::span<const double> point(std::size_t i) const { return {points[i].data(), static_cast<std::size_t>(n)}; }
};

SphereGrid make_sphere_grid(int n, int order);

// Pi_l F(xi) = int Z^{(l)}_xi(eta) F(eta) dsigma(eta) at every grid node.
std::vector<cplx> pi_l_project(const SphereGrid& grid, const std::vector<cplx>& F, int l);

struct CesaroWeights {
  double delta = 1.0;
  int p = 0;
  std::vector<double> A;  // A_l^p, l = 0 .. p

  CesaroWeights(int p, double delta);
};

// sum_{l <= p} A_l^p Pi_l F. Requires delta > (n - 2) / 2.
std::vector<cplx> cesaro_sum(const SphereGrid& grid, const std::vector<cplx>& F, int p, double delta = 1.0);

// int |F - G| dsigma on the grid.
double l1_distance(const SphereGrid& grid, const std::vector<cplx>& F, const std::vector<cplx>& G);

struct RadialCertificate {
  double integral = 0.0;      // int_0^R J_0(a0 t) f(t) t dt
  bool sign_condition = false;  // J_0(a0 t) f(t) >= -1e-12 on every node
  bool zero_certified = false;  // sign condition and |integral| <= 1e-14
  double max_abs_f = 0.0;       // on the quadrature nodes
};

RadialCertificate single_point_radial_certificate(const RadialProfile& f, double a0, int n = 2,
                                                  int nodes = kDefaultRadialNodes);

// With F_t(s) = f((t, 0), s),
//   sup_s | int J_0(a0 t) F_t(s) t dt - sum_{|m| <= alpha0} int J_0(a0 t) Fhat_t(m) e^{i m s} t dt |
// on `probes` equispaced s. Fhat_t(m) comes from `samples` equispaced s values;
// alpha0 must stay below samples / 2 (otherwise the modes alias and
// BandLimitError is thrown).
double lemma44_defect(const HarmonicTermFunction& f, double a0, int alpha0, int samples = 64, int probes = 64,
                      int nodes = kDefaultRadialNodes);

}  // namespace ncf::motion
