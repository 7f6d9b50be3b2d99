#include "ncf/compact.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncf::compact {

bool CompactGroupSpec::has_irrep(int label) const {
  return std::any_of(irreps_.begin(), irreps_.end(), [&](const Irrep& r) { return r.label == label; });
}

int CompactGroupSpec::dim(int label) const {
  for (const auto& r : irreps_)
    if (r.label == label) return r.dim;
  throw std::invalid_argument(name() + ": unknown irrep label " + std::to_string(label));
}

namespace {

double wrap_angle(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

class So2Spec final : public CompactGroupSpec {
 public:
  explicit So2Spec(int N) {
    band_limit_ = N;
    for (int m = -N; m <= N; ++m) irreps_.push_back({m, 1});
  }
  std::string name() const override { return "SO(2)[N=" + std::to_string(band_limit_) + "]"; }

  Eigen::MatrixXcd rep(int label, const GroupElement& k) const override {
    Eigen::MatrixXcd r(1, 1);
    r(0, 0) = std::polar(1.0, label * std::get<So2Element>(k).theta);
    return r;
  }
  GroupElement multiply(const GroupElement& s, const GroupElement& t) const override {
    return So2Element{wrap_angle(std::get<So2Element>(s).theta + std::get<So2Element>(t).theta)};
  }
  GroupElement inverse(const GroupElement& s) const override {
    return So2Element{wrap_angle(-std::get<So2Element>(s).theta)};
  }
  GroupElement identity() const override { return So2Element{0.0}; }
  GroupElement random_element(std::mt19937_64& rng) const override {
    return So2Element{std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng)};
  }
  quad::QuadRule<GroupElement> haar_rule(int degree) const override {
    const auto c = quad::circle_rule(std::max(1, degree + 1));
    quad::QuadRule<GroupElement> r;
    for (std::size_t i = 0; i < c.size(); ++i) {
      r.nodes.push_back(So2Element{c.nodes[i]});
      r.weights.push_back(c.weights[i] / (2.0 * kPi));
    }
    r.exactness = c.exactness;
    return r;
  }
  int shell(int label) const override { return std::abs(label); }
};

class CyclicSpec final : public CompactGroupSpec {
 public:
  explicit CyclicSpec(int q) : q_(q) {
    band_limit_ = q / 2;
    for (int m = 0; m < q; ++m) irreps_.push_back({m, 1});
  }
  std::string name() const override { return "Z_" + std::to_string(q_); }

  Eigen::MatrixXcd rep(int label, const GroupElement& k) const override {
    const long long e = (static_cast<long long>(label) * std::get<CyclicElement>(k).k) % q_;
    Eigen::MatrixXcd r(1, 1);
    r(0, 0) = std::polar(1.0, 2.0 * kPi * static_cast<double>(e) / q_);
    return r;
  }
  GroupElement multiply(const GroupElement& s, const GroupElement& t) const override {
    return CyclicElement{(std::get<CyclicElement>(s).k + std::get<CyclicElement>(t).k) % q_};
  }
  GroupElement inverse(const GroupElement& s) const override {
    return CyclicElement{(q_ - std::get<CyclicElement>(s).k % q_) % q_};
  }
  GroupElement identity() const override { return CyclicElement{0}; }
  GroupElement random_element(std::mt19937_64& rng) const override {
    return CyclicElement{std::uniform_int_distribution<int>(0, q_ - 1)(rng)};
  }
  quad::QuadRule<GroupElement> haar_rule(int) const override {
    quad::QuadRule<GroupElement> r;
    for (int k = 0; k < q_; ++k) {
      r.nodes.push_back(CyclicElement{k});
      r.weights.push_back(1.0 / q_);
    }
    r.exactness = q_ - 1;
    return r;
  }
  int shell(int label) const override { return std::min(label, q_ - label); }
  bool complete() const override { return true; }

 private:
  int q_;
};

class So3Spec final : public CompactGroupSpec {
 public:
  explicit So3Spec(int L) {
    band_limit_ = L;
    for (int l = 0; l <= L; ++l) irreps_.push_back({l, 2 * l + 1});
  }
  std::string name() const override { return "SO(3)[L=" + std::to_string(band_limit_) + "]"; }

  // D^l_{m m'}(alpha, beta, gamma) = e^{-i m alpha} d^l_{m m'}(beta) e^{-i m' gamma}.
  Eigen::MatrixXcd rep(int label, const GroupElement& k) const override {
    const auto& e = std::get<So3Element>(k);
    const Eigen::MatrixXd d = wigner_d(label, e.beta);
    const int n = 2 * label + 1;
    Eigen::MatrixXcd r(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int m = a - label, mp = b - label;
        r(a, b) = std::polar(d(a, b), -(m * e.alpha + mp * e.gamma));
      }
    return r;
  }
  GroupElement multiply(const GroupElement& s, const GroupElement& t) const override {
    return euler_from_matrix(rotation_matrix(std::get<So3Element>(s)) * rotation_matrix(std::get<So3Element>(t)));
  }
  GroupElement inverse(const GroupElement& s) const override {
    const auto& e = std::get<So3Element>(s);
    return euler_from_matrix(rotation_matrix(e).transpose());
  }
  GroupElement identity() const override { return So3Element{}; }
  GroupElement random_element(std::mt19937_64& rng) const override {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    const double a = angle(rng);
    const double b = std::acos(c(rng));
    const double g = angle(rng);
    return So3Element{a, b, g};
  }
  quad::QuadRule<GroupElement> haar_rule(int degree) const override {
    const auto s = quad::so3_rule(degree);
    quad::QuadRule<GroupElement> r;
    r.nodes.assign(s.nodes.begin(), s.nodes.end());
    r.weights = s.weights;
    r.exactness = s.exactness;
    return r;
  }
  int shell(int label) const override { return label; }
};

Eigen::MatrixXcd zero_block(int d) { return Eigen::MatrixXcd::Zero(d, d); }

void require_same_spec(const GroupFunction& a, const GroupFunction& b) {
  if (a.spec() != b.spec() && a.spec()->name() != b.spec()->name())
    throw std::invalid_argument("group functions live on different group specs");
}

}  // namespace

SpecPtr make_so2_spec(int N) {
  if (N < 0 || N > 64) throw std::invalid_argument("make_so2_spec: band limit must be in [0, 64]");
  return std::make_shared<So2Spec>(N);
}

SpecPtr make_cyclic_spec(int q) {
  if (q < 1 || q > 1024) throw std::invalid_argument("make_cyclic_spec: q must be in [1, 1024]");
  return std::make_shared<CyclicSpec>(q);
}

SpecPtr make_so3_spec(int L) {
  if (L < 0 || L > 64) throw std::invalid_argument("make_so3_spec: band limit must be in [0, 64]");
  return std::make_shared<So3Spec>(L);
}

Eigen::Matrix3d rotation_matrix(const So3Element& e) {
  auto rz = [](double a) {
    Eigen::Matrix3d r;
    r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return r;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(e.beta), 0, std::sin(e.beta), 0, 1, 0, -std::sin(e.beta), 0, std::cos(e.beta);
  return rz(e.alpha) * ry * rz(e.gamma);
}

So3Element euler_from_matrix(const Eigen::Matrix3d& r) {
  const double sb = std::hypot(r(0, 2), r(1, 2));
  const double beta = std::atan2(sb, r(2, 2));
  if (sb > 1e-12) {
    return {wrap_angle(std::atan2(r(1, 2), r(0, 2))), beta, wrap_angle(std::atan2(r(2, 1), -r(2, 0)))};
  }
  if (r(2, 2) > 0.0) return {wrap_angle(std::atan2(r(1, 0), r(0, 0))), 0.0, 0.0};
  return {wrap_angle(std::atan2(-r(1, 0), -r(0, 0))), kPi, 0.0};
}

namespace {

// Closed form of d^j_{m' m}(beta) at j = max(|m|, |m'|), where the sum over s
// has a single term.
double wigner_seed(int j, int mp, int m, double beta) {
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const int s_lo = std::max(0, m - mp);
  const int s_hi = std::min(j + m, j - mp);
  double total = 0.0;
  for (int k = s_lo; k <= s_hi; ++k) {
    const double log_mag = 0.5 * (std::lgamma(j + mp + 1.0) + std::lgamma(j - mp + 1.0) + std::lgamma(j + m + 1.0) +
                                  std::lgamma(j - m + 1.0)) -
                           (std::lgamma(j + m - k + 1.0) + std::lgamma(k + 1.0) + std::lgamma(mp - m + k + 1.0) +
                            std::lgamma(j - mp - k + 1.0));
    const int pc = 2 * j + m - mp - 2 * k;
    const int ps = mp - m + 2 * k;
    const double sign = ((mp - m + k) % 2 == 0) ? 1.0 : -1.0;
    total += sign * std::exp(log_mag) * std::pow(c, pc) * std::pow(s, ps);
  }
  return total;
}

}  // namespace

Eigen::MatrixXd wigner_d(int l, double beta) {
  if (l < 0) throw std::invalid_argument("wigner_d: l must be nonnegative");
  const int n = 2 * l + 1;
  Eigen::MatrixXd d(n, n);
  const double cb = std::cos(beta);
  for (int mp = -l; mp <= l; ++mp) {
    for (int m = -l; m <= l; ++m) {
      const int j0 = std::max(std::abs(m), std::abs(mp));
      double prev = 0.0;
      double cur = wigner_seed(j0, mp, m, beta);
      int j = j0;
      if (j0 == 0 && l > 0) {
        prev = cur;
        cur = cb;  // d^1_{00}
        j = 1;
      }
      for (; j < l; ++j) {
        const double jd = j;
        const double a = jd * std::sqrt(((jd + 1) * (jd + 1) - m * m) * ((jd + 1) * (jd + 1) - mp * mp));
        const double b = (2 * jd + 1) * (jd * (jd + 1) * cb - static_cast<double>(m) * mp);
        const double c = (jd + 1) * std::sqrt((jd * jd - m * m) * (jd * jd - mp * mp));
        const double next = (b * cur - c * prev) / a;
        prev = cur;
        cur = next;
      }
      d(mp + l, m + l) = cur;
    }
  }
  return d;
}

GroupFunction::GroupFunction(SpecPtr spec) : spec_(std::move(spec)) {
  if (!spec_) throw std::invalid_argument("GroupFunction: null spec");
}

GroupFunction GroupFunction::from_blocks(SpecPtr spec, std::map<int, Eigen::MatrixXcd> blocks) {
  GroupFunction g(std::move(spec));
  for (auto& [label, b] : blocks) {
    if (!g.spec_->has_irrep(label))
      throw BandLimitError("GroupFunction: irrep " + std::to_string(label) + " outside band of " + g.spec_->name());
    const int d = g.spec_->dim(label);
    if (b.rows() != d || b.cols() != d) throw std::invalid_argument("GroupFunction: block has wrong dimension");
  }
  g.blocks_ = std::move(blocks);
  return g;
}

GroupFunction GroupFunction::project(SpecPtr spec, const std::function<cplx(const GroupElement&)>& fn,
                                     std::optional<int> rule_degree) {
  GroupFunction g(spec);
  const auto rule = spec->haar_rule(rule_degree.value_or(4 * std::max(1, spec->band_limit())));
  std::vector<cplx> values(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) values[i] = fn(rule.nodes[i]);
  for (const auto& ir : spec->irreps()) {
    Eigen::MatrixXcd c = zero_block(ir.dim);
    for (std::size_t i = 0; i < rule.size(); ++i)
      c += (rule.weights[i] * values[i]) * spec->rep(ir.label, rule.nodes[i]).adjoint();
    g.blocks_[ir.label] = std::move(c);
  }
  return g;
}

GroupFunction GroupFunction::from_samples(SpecPtr spec, const std::vector<cplx>& values) {
  const auto rule = spec->haar_rule();
  if (values.size() != rule.size()) throw std::invalid_argument("GroupFunction::from_samples: sample count mismatch");
  GroupFunction g(spec);
  for (const auto& ir : spec->irreps()) {
    Eigen::MatrixXcd c = zero_block(ir.dim);
    for (std::size_t i = 0; i < rule.size(); ++i)
      c += (rule.weights[i] * values[i]) * spec->rep(ir.label, rule.nodes[i]).adjoint();
    g.blocks_[ir.label] = std::move(c);
  }
  return g;
}

Eigen::MatrixXcd GroupFunction::block(int label) const {
  auto it = blocks_.find(label);
  if (it != blocks_.end()) return it->second;
  return zero_block(spec_->dim(label));
}

cplx GroupFunction::operator()(const GroupElement& k) const {
  cplx acc = 0.0;
  for (const auto& [label, c] : blocks_) acc += static_cast<double>(c.rows()) * (c * spec_->rep(label, k)).trace();
  return acc;
}

std::vector<cplx> GroupFunction::samples() const {
  const auto rule = spec_->haar_rule();
  std::vector<cplx> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = (*this)(rule.nodes[i]);
  return v;
}

double GroupFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& [label, c] : blocks_) s += c.rows() * c.squaredNorm();
  return std::sqrt(s);
}

double GroupFunction::l1_norm(int rule_degree) const {
  const auto rule = spec_->haar_rule(rule_degree);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::abs((*this)(rule.nodes[i]));
  return s;
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& o) {
  require_same_spec(*this, o);
  for (const auto& [label, c] : o.blocks_) {
    auto it = blocks_.find(label);
    if (it == blocks_.end()) blocks_[label] = c;
    else it->second += c;
  }
  return *this;
}

GroupFunction operator*(cplx s, GroupFunction g) {
  for (auto& [label, c] : g.blocks_) c *= s;
  return g;
}

std::vector<BasisLabel> peter_weyl_basis(const CompactGroupSpec& spec) {
  std::vector<BasisLabel> basis;
  for (const auto& ir : spec.irreps())
    for (int i = 0; i < ir.dim; ++i)
      for (int j = 0; j < ir.dim; ++j) basis.push_back({ir.label, i, j});
  return basis;
}

namespace {

// Operator acting on the delta block as psi_{ij} -> sum_p B_{ip} psi_{pj}.
Eigen::MatrixXcd block_operator(const CompactGroupSpec& spec, const std::function<Eigen::MatrixXcd(int)>& block_of) {
  std::size_t total = 0;
  for (const auto& ir : spec.irreps()) total += static_cast<std::size_t>(ir.dim) * ir.dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(total, total);
  std::size_t offset = 0;
  for (const auto& ir : spec.irreps()) {
    const int d = ir.dim;
    const Eigen::MatrixXcd b = block_of(ir.label);
    if (b.size() != 0) {
      for (int i = 0; i < d; ++i)
        for (int p = 0; p < d; ++p)
          for (int j = 0; j < d; ++j) m(offset + p * d + j, offset + i * d + j) = b(i, p);
    }
    offset += static_cast<std::size_t>(d) * d;
  }
  return m;
}

}  // namespace

OperatorMatrix weyl_transform(const GroupFunction& g, const CompactGroupSpec& spec) {
  for (const auto& [label, c] : g.blocks())
    if (!spec.has_irrep(label))
      throw BandLimitError("weyl_transform: irrep " + std::to_string(label) + " outside band of " + spec.name());
  OperatorMatrix op;
  op.rows = peter_weyl_basis(spec);
  op.cols = op.rows;
  op.matrix = block_operator(spec, [&](int label) {
    auto it = g.blocks().find(label);
    return it == g.blocks().end() ? Eigen::MatrixXcd() : it->second;
  });
  return op;
}

GroupFunction group_convolve(const GroupFunction& g1, const GroupFunction& g2) {
  require_same_spec(g1, g2);
  std::map<int, Eigen::MatrixXcd> out;
  for (const auto& [label, c1] : g1.blocks()) {
    auto it = g2.blocks().find(label);
    if (it == g2.blocks().end()) continue;
    out[label] = it->second * c1;
  }
  return GroupFunction::from_blocks(g1.spec(), std::move(out));
}

GroupFunction adjoint_function(const GroupFunction& g) {
  std::map<int, Eigen::MatrixXcd> out;
  for (const auto& [label, c] : g.blocks()) out[label] = c.adjoint();
  return GroupFunction::from_blocks(g.spec(), std::move(out));
}

cplx invert_weyl(const OperatorMatrix& op, const GroupElement& t, const CompactGroupSpec& spec) {
  const auto basis = peter_weyl_basis(spec);
  if (op.rows != basis || op.cols != basis)
    throw std::invalid_argument("invert_weyl: operator is not on the Peter-Weyl basis of " + spec.name());
  // pi(t)^* = pi(t^{-1}) sends psi_{ij} to sum_p delta(t)_{ip} psi_{pj}.
  const Eigen::MatrixXcd p = block_operator(spec, [&](int label) { return spec.rep(label, t); });
  return p.cwiseProduct(op.matrix.transpose()).sum();
}

GroupFunction character_project(const GroupFunction& g, int label) {
  if (!g.spec()->has_irrep(label))
    throw std::invalid_argument("character_project: unknown irrep " + std::to_string(label));
  std::map<int, Eigen::MatrixXcd> out;
  auto it = g.blocks().find(label);
  if (it != g.blocks().end()) out[label] = it->second / static_cast<double>(g.spec()->dim(label));
  return GroupFunction::from_blocks(g.spec(), std::move(out));
}

SpectralData spectral(const Eigen::MatrixXcd& op, double tol) {
  SpectralData out;
  if (op.size() == 0) return out;
  if (!op.allFinite()) throw std::runtime_error("spectral: matrix has non-finite entries");

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(op);
  if (svd.info() != Eigen::Success) throw std::runtime_error("spectral: singular value decomposition did not converge");
  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  if (!std::is_sorted(out.singular_values.rbegin(), out.singular_values.rend()))
    std::sort(out.singular_values.begin(), out.singular_values.end(), std::greater<>());

  const double s1 = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  out.rank = s1 == 0.0 ? 0
                       : static_cast<int>(std::count_if(out.singular_values.begin(), out.singular_values.end(),
                                                        [&](double s) { return s > tol * s1; }));

  if (op.rows() == op.cols()) {
    const double asym = (op - op.adjoint()).norm();
    out.self_adjoint = asym <= 1e-10 * std::max(1.0, op.norm());
    if (out.self_adjoint) {
      const Eigen::MatrixXcd herm = 0.5 * (op + op.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
      if (es.info() != Eigen::Success) throw std::runtime_error("spectral: eigen-decomposition did not converge");
      out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
      out.eigenvectors = es.eigenvectors();
    }
  }
  return out;
}

TrigSupport trig_poly_support(const GroupFunction& g, double tol) {
  TrigSupport out;
  for (const auto& [label, c] : g.blocks())
    if (c.norm() > tol) out.support.insert(label);
  if (g.spec()->complete()) return out;
  const int top = g.spec()->band_limit();
  for (int label : out.support)
    if (g.spec()->shell(label) >= top - 1) out.verdict = TrigVerdict::Saturated;
  return out;
}

GroupFunction random_group_function(SpecPtr spec, std::mt19937_64& rng, double decay,
                                    std::optional<std::set<int>> support) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::map<int, Eigen::MatrixXcd> blocks;
  for (const auto& ir : spec->irreps()) {
    if (support && !support->count(ir.label)) continue;
    const double scale = std::pow(1.0 + spec->shell(ir.label), -decay) / std::sqrt(2.0 * ir.dim);
    Eigen::MatrixXcd c(ir.dim, ir.dim);
    for (int i = 0; i < ir.dim; ++i)
      for (int j = 0; j < ir.dim; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        c(i, j) = scale * cplx(re, im);
      }
    blocks[ir.label] = std::move(c);
  }
  return GroupFunction::from_blocks(std::move(spec), std::move(blocks));
}

}  // namespace ncf::compact
