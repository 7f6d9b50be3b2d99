#pragma once

#include <functional>
#include <vector>

#include "ncf/motion.hpp"

namespace ncf::motion {

// Samples of a function on M(2) over the lattice h Z^2 cut to [-B, B]^2 and
// n_theta equispaced rotations. With n_theta in {1, 2, 4} every rotation maps
// the lattice onto itself, so convolution needs no interpolation.
class GridFunction {
 public:
  GridFunction(double B, double h, int n_theta);

  static GridFunction sample(const std::function<cplx(const MotionElement&)>& f, double B, double h, int n_theta);
  static GridFunction sample(const HarmonicTermFunction& f, double B, double h, int n_theta);

  double box() const { return B_; }
  double spacing() const { return h_; }
  int n_theta() const { return n_theta_; }
  int half() const { return half_; }  // lattice indices run over -half .. half
  int side() const { return 2 * half_ + 1; }

  cplx& at(int ix, int iy, int q) { return values_[index(ix, iy, q)]; }
  cplx at(int ix, int iy, int q) const { return values_[index(ix, iy, q)]; }
  bool inside(int ix, int iy) const { return std::abs(ix) <= half_ && std::abs(iy) <= half_; }

  double theta(int q) const;
  double max_abs() const;
  // Largest |x| carrying |f| > rel * max|f|.
  double effective_radius(double rel = 1e-10) const;
  bool same_layout(const GridFunction& o) const;

  const std::vector<cplx>& values() const { return values_; }

 private:
  std::size_t index(int ix, int iy, int q) const {
    return (static_cast<std::size_t>(ix + half_) * side() + static_cast<std::size_t>(iy + half_)) * n_theta_ + q;
  }

  double B_;
  double h_;
  int n_theta_;
  int half_;
  std::vector<cplx> values_;
};

// (f * g)(x, theta) = int f(y, tau) g((y, tau)^{-1} (x, theta)) dy dtau / 2 pi by
// the lattice rule. Throws std::domain_error when the effective supports of
// f and g do not fit the box together.
GridFunction m2_convolve(const GridFunction& f, const GridFunction& g);

// f*(g) = conj(f(g^{-1})).
GridFunction m2_adjoint(const GridFunction& f);

// Lattice delta at the identity: f * delta = f exactly.
GridFunction grid_delta(double B, double h, int n_theta);

// fhat(a) of grid samples on the circle basis |j| <= N. Columns are limited
// to |k| <= (n_theta - 1) / 2, the theta modes the samples resolve; the
// w-integral uses n_omega equispaced nodes.
OperatorMatrix fhat_from_grid(const GridFunction& f, double a, int N, int n_omega = 256);

}  // namespace ncf::motion
