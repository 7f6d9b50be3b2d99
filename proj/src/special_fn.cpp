#include "ncf/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncf/quad.hpp"

namespace ncf::special {

BesselOrder BesselOrder::integer(int n) { return from_twice(2 * n); }

BesselOrder BesselOrder::from_twice(int twice_nu) {
  if (twice_nu < 0) throw std::invalid_argument("BesselOrder: order must be nonnegative");
  return BesselOrder(twice_nu);
}

BesselOrder BesselOrder::for_harmonic(int l, int n) {
  if (l < 0 || n < 2) throw std::invalid_argument("BesselOrder::for_harmonic: need l >= 0, n >= 2");
  return from_twice(2 * l + n - 2);
}

namespace {

void check_order(BesselOrder order) {
  if (order.twice() > 2 * kMaxBesselOrder)
    throw std::invalid_argument("bessel: order " + std::to_string(order.value()) +
                                " exceeds supported maximum " + std::to_string(kMaxBesselOrder));
}

// Power series of J_nu(x) / x^nu. Accurate while the terms do not cancel badly,
// which bounds its use to moderate x.
double scaled_series(double nu, double x) {
  const double q = -0.25 * x * x;
  double term = std::exp(-nu * std::log(2.0) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > x) break;
  }
  return sum;
}

constexpr double kSeriesCutoff = 5.0;

// Miller backward recurrence on the ladder nu_k = k + frac, k = 0 .. start;
// returns the unnormalized value of the requested order together with the
// normalization factor.
double miller(BesselOrder order, double x) {
  const bool integral = order.is_integer();
  const int target = order.twice() / 2;  // ladder index of the requested order
  const double lead = std::max<double>(target, x);
  int start = static_cast<int>(std::ceil(lead + 40.0 + 3.0 * std::sqrt(x)));
  if (start % 2) ++start;
  const double frac = integral ? 0.0 : 0.5;

  double above = 0.0;   // J at ladder index k + 1
  double here = 1e-30;  // J at ladder index k
  double result = 0.0;
  double even_sum = 0.0;  // integer ladder: J_0 + 2 sum J_{2k}
  double at_half = 0.0;   // half-integer ladder: J_{1/2}
  double at_minus_half = 0.0;
  constexpr double kBig = 1e200;

  for (int k = start; k >= 0; --k) {
    if (k == target) result = here;
    if (integral) {
      if (k == 0) even_sum += here;
      else if (k % 2 == 0) even_sum += 2.0 * here;
    } else if (k == 0) {
      at_half = here;
    }
    const double nu = k + frac;
    const double below = (2.0 * nu / x) * here - above;
    if (k == 0) {
      if (!integral) at_minus_half = below;
      break;
    }
    above = here;
    here = below;
    if (std::abs(here) > kBig) {
      above /= kBig;
      here /= kBig;
      result /= kBig;
      even_sum /= kBig;
    }
  }
  if (integral) return result / even_sum;

  const double amp = std::sqrt(2.0 / (kPi * x));
  const double s = amp * std::sin(x);
  const double c = amp * std::cos(x);
  // Normalize on whichever closed form is farther from a zero.
  if (std::abs(s) >= std::abs(c)) return result * (s / at_half);
  return result * (c / at_minus_half);
}

}  // namespace

double bessel_j(BesselOrder order, double x) {
  check_order(order);
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("bessel_j: x must be finite and >= 0");
  const double nu = order.value();
  if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
  if (x < kSeriesCutoff) return std::pow(x, nu) * scaled_series(nu, x);
  return miller(order, x);
}

double bessel_j_scaled(BesselOrder order, double z) {
  check_order(order);
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("bessel_j_scaled: z must be finite and >= 0");
  const double nu = order.value();
  if (z < kSeriesCutoff) return scaled_series(nu, z);
  return miller(order, z) / std::pow(z, nu);
}

double bessel_zero(BesselOrder order, int k) {
  check_order(order);
  if (k < 1 || k > 100) throw std::invalid_argument("bessel_zero: k must be in [1, 100]");
  // Zeros exceed nu and are spaced by more than 2.4, so a 0.5 scan brackets
  // each one exactly once.
  constexpr double step = 0.5;
  double lo = std::max(order.value(), 1e-3);
  double flo = bessel_j(order, lo);
  int found = 0;
  while (true) {
    const double hi = lo + step;
    const double fhi = bessel_j(order, hi);
    if (flo == 0.0) {
      if (++found == k) return lo;
    } else if ((flo < 0.0) != (fhi < 0.0) && fhi != 0.0) {
      if (++found == k) {
        double a = lo, b = hi, fa = flo;
        for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
          const double m = 0.5 * (a + b);
          const double fm = bessel_j(order, m);
          if (fm == 0.0) return m;
          if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        return 0.5 * (a + b);
      }
    }
    lo = hi;
    flo = fhi;
  }
}

double gegenbauer(int l, double beta, double t) {
  if (l < 0 || l > 200) throw std::invalid_argument("gegenbauer: degree must be in [0, 200]");
  if (!(beta > 0.0)) throw std::invalid_argument("gegenbauer: beta must be positive");
  if (!(std::abs(t) <= 1.0)) throw std::invalid_argument("gegenbauer: |t| must be <= 1");
  if (l == 0) return 1.0;
  double g0 = 1.0;
  double g1 = 2.0 * beta * t;
  for (int k = 2; k <= l; ++k) {
    const double g2 = (2.0 * t * (k + beta - 1.0) * g1 - (k + 2.0 * beta - 2.0) * g0) / k;
    g0 = g1;
    g1 = g2;
  }
  return g1;
}

double chebyshev_t(int l, double t) {
  if (l < 0) throw std::invalid_argument("chebyshev_t: degree must be nonnegative");
  if (!(std::abs(t) <= 1.0)) throw std::invalid_argument("chebyshev_t: |t| must be <= 1");
  if (l == 0) return 1.0;
  double t0 = 1.0, t1 = t;
  for (int k = 2; k <= l; ++k) {
    const double t2 = 2.0 * t * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

double sphere_area(int n) {
  switch (n) {
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: throw std::invalid_argument("sphere_area: n must be 2 or 3");
  }
}

int harmonic_dimension(int l, int n) {
  if (l < 0) throw std::invalid_argument("harmonic_dimension: degree must be nonnegative");
  switch (n) {
    case 2: return l == 0 ? 1 : 2;
    case 3: return 2 * l + 1;
    default: throw std::invalid_argument("harmonic_dimension: n must be 2 or 3");
  }
}

int HarmonicIndex::order() const {
  if (dim == 2) return degree == 0 ? 0 : (component == 1 ? degree : -degree);
  return component - degree - 1;
}

HarmonicIndex HarmonicIndex::circle_mode(int m) {
  return {std::abs(m), m >= 0 ? 1 : 2, 2};
}

HarmonicIndex HarmonicIndex::sphere(int l, int m) {
  if (std::abs(m) > l) throw std::invalid_argument("HarmonicIndex::sphere: |m| must be <= l");
  return {l, m + l + 1, 3};
}

void validate(const HarmonicIndex& idx) {
  const int d = harmonic_dimension(idx.degree, idx.dim);
  if (idx.component < 1 || idx.component > d)
    throw std::invalid_argument("HarmonicIndex: component " + std::to_string(idx.component) +
                                " outside [1, " + std::to_string(d) + "]");
}

namespace {

// Orthonormalized associated Legendre factor of Y_l^m (m >= 0), including the
// Condon-Shortley phase, so that Y_l^m = plm * e^{i m phi}.
double normalized_legendre(int l, int m, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  if (l == m) return pmm;
  double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1) return pm1;
  double p0 = pmm, p1 = pm1;
  for (int k = m + 2; k <= l; ++k) {
    const double a = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - static_cast<double>(m) * m));
    const double b = std::sqrt(((k - 1.0) * (k - 1.0) - static_cast<double>(m) * m) /
                               (4.0 * (k - 1.0) * (k - 1.0) - 1.0));
    const double p2 = a * (x * p1 - b * p0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

cplx sph_harm(const HarmonicIndex& idx, std::span<const double> point) {
  validate(idx);
  if (point.size() != static_cast<std::size_t>(idx.dim))
    throw std::invalid_argument("sph_harm: point dimension does not match harmonic index");
  double norm2 = 0.0;
  for (double v : point) norm2 += v * v;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw std::invalid_argument("sph_harm: point is not a unit vector");

  const int m = idx.order();
  const double phi = std::atan2(point[1], point[0]);
  if (idx.dim == 2) return std::polar(1.0 / std::sqrt(2.0 * kPi), m * phi);

  const int am = std::abs(m);
  const double z = std::clamp(point[2], -1.0, 1.0);
  const double p = normalized_legendre(idx.degree, am, z);
  const cplx y = std::polar(p, am * phi);
  if (m >= 0) return y;
  return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

double zonal(int l, int n, double cosangle) {
  if (l < 0) throw std::invalid_argument("zonal: degree must be nonnegative");
  const double t = std::clamp(cosangle, -1.0, 1.0);
  if (!(std::abs(cosangle) <= 1.0 + 1e-12)) throw std::invalid_argument("zonal: cosangle outside [-1, 1]");
  const double scale = harmonic_dimension(l, n) / sphere_area(n);
  if (n == 2) return scale * chebyshev_t(l, t);
  return scale * gegenbauer(l, 0.5, t);
}

namespace {

// Integral of F(t) P_l(t) w_n(t) on [-1, 1] with P_l normalized to P_l(1) = 1
// and w_n(t) = (1 - t^2)^{(n-3)/2}, using `N` nodes.
cplx weighted_legendre_integral(const std::function<cplx(double)>& F, int l, int n, int N) {
  cplx acc = 0.0;
  if (n == 2) {
    // t = cos(phi) removes the endpoint singularity of the Chebyshev weight.
    for (int k = 0; k < N; ++k) {
      const double phi = kPi * (k + 0.5) / N;
      acc += F(std::cos(phi)) * std::cos(l * phi);
    }
    return acc * (kPi / N);
  }
  const int nodes = std::min(N, 512);
  const auto rule = quad::gauss_legendre(nodes, -1.0, 1.0);
  const double norm = gegenbauer(l, 0.5, 1.0);
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc += rule.weights[i] * F(rule.nodes[i]) * (gegenbauer(l, 0.5, rule.nodes[i]) / norm);
  return acc;
}

// Mass of S^{n-1} by direct surface quadrature over the product rules.
double surface_mass_by_quadrature(int n) {
  if (n == 2) return quad::circle_rule(16).mass();
  return quad::sphere_rule(4).mass();
}

double weight_mass(int n) {
  return weighted_legendre_integral([](double) { return cplx(1.0); }, 0, n, 64).real();
}

}  // namespace

double funk_hecke_alpha(int l, int n) {
  if (l < 0) throw std::invalid_argument("funk_hecke_alpha: degree must be nonnegative");
  harmonic_dimension(l, n);
  // alpha_0 from  int_{S^{n-1}} 1 dsigma = alpha_0 int w_n ; higher degrees go
  // through the Gegenbauer normalization G_l(1), which the weighted integral
  // already divides out.
  return surface_mass_by_quadrature(n) / weight_mass(n);
}

cplx funk_hecke_coeff(const std::function<cplx(double)>& F, int l, int n) {
  const double alpha = funk_hecke_alpha(l, n);
  cplx prev = alpha * weighted_legendre_integral(F, l, n, 32);
  for (int N = 64; N <= 8192; N *= 2) {
    if (n == 3 && N > 512) break;
    const cplx cur = alpha * weighted_legendre_integral(F, l, n, N);
    if (std::abs(cur - prev) <= 1e-8 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw std::runtime_error("funk_hecke_coeff: quadrature refinement did not converge to 1e-8");
}

}  // namespace ncf::special
