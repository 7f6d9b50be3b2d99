#pragma once

#include <complex>
#include <functional>
#include <span>

namespace ncf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

namespace special {

// Largest Bessel order the evaluators accept.
inline constexpr int kMaxBesselOrder = 60;

// Integer or half-integer Bessel order. Stored as twice the order so that
// no rounding of the order itself ever happens.
class BesselOrder {
 public:
  static BesselOrder integer(int n);
  static BesselOrder from_twice(int twice_nu);
  // Order (n - 2) / 2 + l, the one attached to degree-l harmonics on S^{n-1}.
  static BesselOrder for_harmonic(int l, int n);

  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }

  friend bool operator==(BesselOrder, BesselOrder) = default;

 private:
  explicit BesselOrder(int twice_nu) : twice_(twice_nu) {}
  int twice_;
};

// J_nu(x) for x >= 0. Absolute error below 1e-12 on [0, 100]; larger x is
// accepted (Miller recurrence stays accurate) but carries no contract.
double bessel_j(BesselOrder order, double x);

// J_nu(z) / z^nu, finite at z = 0 where it equals 1 / (2^nu Gamma(nu + 1)).
double bessel_j_scaled(BesselOrder order, double z);

// k-th positive zero of J_nu, k in [1, 100].
double bessel_zero(BesselOrder order, int k);

// Gegenbauer polynomial G_l^beta(t) from the three-term recurrence.
double gegenbauer(int l, double beta, double t);

// Chebyshev polynomial T_l(t), the beta -> 0 limit of the normalized
// Gegenbauer family (harmonics on S^1).
double chebyshev_t(int l, double t);

// Surface measure of S^{n-1}, unnormalized: 2 pi for n = 2, 4 pi for n = 3.
double sphere_area(int n);

// Dimension of the degree-l harmonic space on S^{n-1}.
int harmonic_dimension(int l, int n);

// Index of an orthonormal harmonic Y_{l j} on S^{n-1}, j in [1, d_l].
//
// n = 2: harmonics are the Fourier modes e^{i m w} / sqrt(2 pi). Degree 0 has
// the single component j = 1 (m = 0); for l >= 1, j = 1 is m = +l and j = 2 is
// m = -l.
// n = 3: j = 1 .. 2l + 1 runs over the orders m = j - l - 1 = -l .. l.
struct HarmonicIndex {
  int degree = 0;
  int component = 1;
  int dim = 2;

  // Signed Fourier mode (n = 2) or azimuthal order (n = 3).
  int order() const;

  static HarmonicIndex circle_mode(int m);
  static HarmonicIndex sphere(int l, int m);

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
};

// Throws std::invalid_argument when the index is outside its range.
void validate(const HarmonicIndex& idx);

// Orthonormal complex harmonic under the unnormalized surface measure.
// `point` must be a unit vector in R^n (|point| = 1 within 1e-12).
cplx sph_harm(const HarmonicIndex& idx, std::span<const double> point);

// Zonal harmonic Z^{(l)}_xi(eta) as a function of xi . eta.
double zonal(int l, int n, double cosangle);

// Funk-Hecke multiplier c_l with  int F(xi . eta) Y_l(eta) dsigma = c_l Y_l(xi).
// The weighted Gegenbauer integral is refined by doubling until two levels
// agree within 1e-8; throws std::runtime_error when they never do.
cplx funk_hecke_coeff(const std::function<cplx(double)>& F, int l, int n);

// The proportionality constant in front of the Gegenbauer integral for
// degree l. Calibrated from a direct surface quadrature at l = 0.
double funk_hecke_alpha(int l, int n);

}  // namespace special
}  // namespace ncf
