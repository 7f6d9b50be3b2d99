#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncf/compact.hpp"
#include "ncf/motion.hpp"
#include "ncf/quad.hpp"
#include "ncf/special_fn.hpp"

namespace ncf::hup {

using quad::Point3;

// Kernel e^{-i c <x, xi>} with c = pi, 1 or 2 pi.
enum class Convention { PiScaled, Angular, TwoPiScaled };
double kernel_scale(Convention c);
const char* to_string(Convention c);

// Finite measure on a curve with density expanded in a finite basis.
//
// Sphere: S^{n-1}, n = 2 or 3, density sum c Y_{lj} against the unnormalized
//   surface measure.
// Hyperbola: x1 x2 = 1 with branches (+-e^s, +-e^{-s}), s in [-S, S], and
//   per-branch density sum_k c_k cos^2(pi s / 2S) e^{i pi k s / S},
//   k = -N/2 .. N/2 - 1, against arc length.
class CurveMeasure {
 public:
  enum class Kind { Sphere, Hyperbola };

  static CurveMeasure sphere(int n, std::vector<std::pair<special::HarmonicIndex, cplx>> terms);
  static CurveMeasure hyperbola(int branches, double S, int n_density, std::vector<cplx> coeffs);

  Kind kind() const { return kind_; }
  int ambient_dim() const { return kind_ == Kind::Sphere ? n_ : 2; }
  const std::vector<std::pair<special::HarmonicIndex, cplx>>& sphere_terms() const { return terms_; }
  int branches() const { return branches_; }
  double half_width() const { return S_; }
  int n_density() const { return n_density_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  // Density at a point of the sphere (unit vector in R^n).
  cplx sphere_density(std::span<const double> point) const;
  // Density at parameter s on the given branch.
  cplx hyperbola_density(int branch, double s) const;

 private:
  Kind kind_ = Kind::Sphere;
  int n_ = 2;
  std::vector<std::pair<special::HarmonicIndex, cplx>> terms_;
  int branches_ = 1;
  double S_ = 3.0;
  int n_density_ = 0;
  std::vector<cplx> coeffs_;
};

// Sign pattern (e1, e2) of hyperbola branch b for a set of 1, 2 or 4 branches.
std::pair<int, int> branch_signs(int branches, int b);

// hat mu(xi) = int e^{-i c <x, xi>} dmu(x). The rule is doubled once and the
// two levels must agree within 1e-8 (std::runtime_error otherwise).
std::vector<cplx> curve_fourier(const CurveMeasure& mu, const std::vector<Point3>& points, Convention conv);

struct SphereHupCertificate {
  double r = 0.0;
  int n = 2;
  std::vector<double> values;  // J_{(n + 2k - 2)/2}(r), k = 0 .. K_max
  double min_abs = 0.0;
  std::optional<int> fails_at;  // first k with |value| <= 1e-10 at or past the first zero of its order
  std::optional<CurveMeasure> witness;  // Y_k dsigma for that k

  std::string verdict() const;
};

SphereHupCertificate sphere_hup_certificate(double r, int n, int K_max);

// Lambda_{alpha, beta} truncated to |m|, |n| <= M with the origin once.
struct LatticeCross {
  double alpha = 1.0;
  double beta = 1.0;
  int M = 32;

  std::vector<Point3> points() const;
};

struct HyperbolaDiscretization {
  int branches = 4;
  int n_density = 64;
  double S = 3.0;
};

// A[(point), (branch, k)] = int e^{-i pi <p, gamma(s)>} b_k(s) |gamma'(s)| ds.
// Rows follow LatticeCross::points, columns run over branches then modes.
// Throws std::runtime_error when the per-branch Gram matrix of the basis has
// condition number above 1e8.
Eigen::MatrixXcd lattice_cross_matrix(const LatticeCross& lattice, const HyperbolaDiscretization& disc);

// Condition number of the arc-length Gram matrix of one branch's basis.
double hyperbola_gram_condition(const HyperbolaDiscretization& disc);

struct SigmaRow {
  double alpha = 0.0;
  double beta = 0.0;
  int M = 0;
  double sigma_min = 0.0;  // smallest of the min(rows, cols) singular values
  double sigma_max = 0.0;
  double ratio = 0.0;
};

std::vector<SigmaRow> sigma_min_scan(const std::vector<std::pair<double, double>>& grid, int M,
                                     const HyperbolaDiscretization& disc);

// Function on S^1 x K: f(x, k) = sum_n Y_n(x) g_n(k), Y_n the circle modes.
class ProductFunction {
 public:
  explicit ProductFunction(compact::SpecPtr spec) : spec_(std::move(spec)) {}

  void set_mode(int n, compact::GroupFunction g);
  const std::map<int, compact::GroupFunction>& modes() const { return modes_; }
  const compact::SpecPtr& spec() const { return spec_; }

  cplx operator()(double x_angle, const compact::GroupElement& k) const;

 private:
  compact::SpecPtr spec_;
  std::map<int, compact::GroupFunction> modes_;
};

ProductFunction random_product_function(compact::SpecPtr spec, int max_mode, std::mt19937_64& rng);

// hat mu(y, delta) = int_Gamma int_K f(x, k) e^{-2 pi i x . y} delta(k^{-1}) dnu dk,
// Gamma the unit circle, by circle x Haar quadrature.
Eigen::MatrixXcd product_fourier(const ProductFunction& f, const std::array<double, 2>& y, int delta);

// f_{k, sigma}(x) = int_K f(x, k h^{-1}) chi_sigma(h) dh as a circle density.
CurveMeasure projection_f_k_sigma(const ProductFunction& f, const compact::GroupElement& k, int sigma);

// | hat f_{k, sigma}(y) - tr(hat mu(y, sigma) sigma(k)) |.
double hup_transfer_defect(const ProductFunction& f, const std::array<double, 2>& y, int sigma,
                           const compact::GroupElement& k);

// max over probe angles of | sum_sigma d_sigma f_{k, sigma}(x) - f(x, k) |.
double peter_weyl_reconstruction_defect(const ProductFunction& f, const compact::GroupElement& k, int probes = 32);

// Density on S^1 x SO(2): sum c Y_l(t) e^{i m s}.
struct SphereProductTerm {
  int l = 0;
  int m = 0;
  cplx coeff = 1.0;
};

// (hat mu(a) phi)(w) = int_{S^1} int_K f(t, s) e^{-i a <t, u(w)>} phi(w - s) dt ds
// on the circle basis |j| <= N, by quadrature in t and w.
compact::OperatorMatrix motion_measure_fourier(const std::vector<SphereProductTerm>& f, double a, int N);

enum class CertificateStatus { Certified, NonVanishing, Refused };
const char* to_string(CertificateStatus s);

struct MeasureCertificate {
  CertificateStatus status = CertificateStatus::Refused;
  double hs_norm = 0.0;
  double max_coeff = 0.0;           // recovered density coefficients
  double zero_distance = 0.0;       // distance of a0 to the nearest checked zero
  int checked_l_max = 40;
  std::string reason;
};

// When ||hat mu(a0)||_HS <= 1e-8 and a0 stays 1e-6 away from every zero of
// J_l, l = 0 .. 40, the density coefficients are recovered through the Bessel
// diagonalization and must all be <= 1e-6.
MeasureCertificate motion_measure_certificate(const std::vector<SphereProductTerm>& f, double a0, int N);

}  // namespace ncf::hup
