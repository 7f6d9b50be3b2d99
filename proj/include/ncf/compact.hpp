#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ncf/quad.hpp"
#include "ncf/special_fn.hpp"

namespace ncf::compact {

struct So2Element {
  double theta = 0.0;
};
struct CyclicElement {
  int k = 0;
};
using So3Element = quad::EulerAngles;

using GroupElement = std::variant<So2Element, CyclicElement, So3Element>;

struct Irrep {
  int label;
  int dim;
};

// A compact group presented through a finite band of irreducible
// representations and a Haar rule of total mass 1.
class CompactGroupSpec {
 public:
  virtual ~CompactGroupSpec() = default;

  virtual std::string name() const = 0;
  const std::vector<Irrep>& irreps() const { return irreps_; }
  bool has_irrep(int label) const;
  int dim(int label) const;

  // Representation matrix delta(k); its entries are the matrix coefficients
  // phi^delta_{ij}(k) = <e_i, delta(k) e_j>.
  virtual Eigen::MatrixXcd rep(int label, const GroupElement& k) const = 0;
  cplx character(int label, const GroupElement& k) const { return rep(label, k).trace(); }

  virtual GroupElement multiply(const GroupElement& s, const GroupElement& t) const = 0;
  virtual GroupElement inverse(const GroupElement& s) const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement random_element(std::mt19937_64& rng) const = 0;

  // Haar rule (mass 1) exact for matrix coefficients of total degree
  // <= degree. haar_rule() integrates products of two band-limited
  // coefficients exactly.
  virtual quad::QuadRule<GroupElement> haar_rule(int degree) const = 0;
  quad::QuadRule<GroupElement> haar_rule() const { return haar_rule(2 * band_limit()); }

  // Size of an irrep label for band-limit bookkeeping: |m| on SO(2), l on SO(3).
  virtual int shell(int label) const = 0;
  int band_limit() const { return band_limit_; }
  // True when the band lists every irrep of the group (finite groups).
  virtual bool complete() const { return false; }

 protected:
  std::vector<Irrep> irreps_;
  int band_limit_ = 0;
};

using SpecPtr = std::shared_ptr<const CompactGroupSpec>;

// SO(2) with characters e^{i m theta}, |m| <= N.
SpecPtr make_so2_spec(int N);
// Z_q with characters e^{2 pi i m k / q}, m = 0 .. q - 1.
SpecPtr make_cyclic_spec(int q);
// SO(3) with Wigner-D irreps l = 0 .. L.
SpecPtr make_so3_spec(int L);

// Rotation matrix of ZYZ Euler angles.
Eigen::Matrix3d rotation_matrix(const So3Element& e);
So3Element euler_from_matrix(const Eigen::Matrix3d& r);

// Wigner small-d matrix d^l(beta), rows/cols indexed by m = -l .. l. Computed
// from the three-term recurrence in l.
Eigen::MatrixXd wigner_d(int l, double beta);

// Function on the group stored as Fourier blocks
//   C_delta = int g(k) delta(k)^dagger dk,  g(k) = sum_delta d_delta tr(C_delta delta(k)).
class GroupFunction {
 public:
  explicit GroupFunction(SpecPtr spec);

  static GroupFunction from_blocks(SpecPtr spec, std::map<int, Eigen::MatrixXcd> blocks);
  // Project a callable onto the band with a Haar rule of the given degree
  // (defaults to four times the band limit, enough for smooth inputs).
  static GroupFunction project(SpecPtr spec, const std::function<cplx(const GroupElement&)>& fn,
                               std::optional<int> rule_degree = std::nullopt);
  // Inverse of samples(): values on the nodes of spec->haar_rule().
  static GroupFunction from_samples(SpecPtr spec, const std::vector<cplx>& values);

  const SpecPtr& spec() const { return spec_; }
  const std::map<int, Eigen::MatrixXcd>& blocks() const { return blocks_; }
  Eigen::MatrixXcd block(int label) const;

  cplx operator()(const GroupElement& k) const;
  std::vector<cplx> samples() const;

  double l2_norm() const;  // Plancherel side: sqrt(sum d ||C||_HS^2)
  double l1_norm(int rule_degree) const;

  GroupFunction& operator+=(const GroupFunction& o);
  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator*(cplx s, GroupFunction g);

 private:
  SpecPtr spec_;
  std::map<int, Eigen::MatrixXcd> blocks_;
};

// Peter-Weyl basis label psi^delta_{ij} = sqrt(d) phi^delta_{ij}; for the
// circle Fourier basis of the motion group, irrep is the mode and i = j = 0.
struct BasisLabel {
  int irrep = 0;
  int row = 0;
  int col = 0;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

struct OperatorMatrix {
  Eigen::MatrixXcd matrix;
  std::vector<BasisLabel> rows;
  std::vector<BasisLabel> cols;
  std::optional<double> frequency;

  double hs_norm() const { return matrix.norm(); }
};

// Band-limit, label or decomposition failures.
class BandLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Peter-Weyl basis of the spec's band, ordered by irrep, then i, then j.
std::vector<BasisLabel> peter_weyl_basis(const CompactGroupSpec& spec);

OperatorMatrix weyl_transform(const GroupFunction& g, const CompactGroupSpec& spec);

// (g1 * g2)(t) = int g1(s) g2(s^{-1} t) ds.
GroupFunction group_convolve(const GroupFunction& g1, const GroupFunction& g2);

// g*(t) = conj(g(t^{-1})).
GroupFunction adjoint_function(const GroupFunction& g);

// tr(pi(t)^* W) with pi the left regular representation on the band.
cplx invert_weyl(const OperatorMatrix& op, const GroupElement& t, const CompactGroupSpec& spec);

// g * chi_delta.
GroupFunction character_project(const GroupFunction& g, int label);

struct SpectralData {
  std::vector<double> singular_values;  // descending
  bool self_adjoint = false;
  std::vector<double> eigenvalues;  // ascending; filled when self-adjoint
  Eigen::MatrixXcd eigenvectors;
  int rank = 0;
};

inline constexpr double kDefaultRankTol = 1e-10;

// Numerical rank counts sigma_k > tol * sigma_1.
SpectralData spectral(const Eigen::MatrixXcd& op, double tol = kDefaultRankTol);
inline SpectralData spectral(const OperatorMatrix& op, double tol = kDefaultRankTol) {
  return spectral(op.matrix, tol);
}

enum class TrigVerdict { TrigPolynomial, Saturated };

struct TrigSupport {
  std::set<int> support;
  TrigVerdict verdict = TrigVerdict::TrigPolynomial;
};

// Irreps carrying ||C_delta||_HS > tol. Reported as a trigonometric polynomial
// only when the two outermost shells of the band are empty (or the band is the
// whole dual of a finite group); otherwise the band is saturated and no
// verdict is drawn.
TrigSupport trig_poly_support(const GroupFunction& g, double tol);

// Random band-limited function: i.i.d. complex Gaussian block entries scaled
// by (1 + shell)^{-decay}.
GroupFunction random_group_function(SpecPtr spec, std::mt19937_64& rng, double decay = 0.0,
                                    std::optional<std::set<int>> support = std::nullopt);

}  // namespace ncf::compact
