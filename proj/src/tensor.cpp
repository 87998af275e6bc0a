#include "crosscal/tensor.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace crosscal {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > AlternatingTensor::kMaxDim)
    throw std::invalid_argument("tensor dimension out of range 1..10");
}

}  // namespace

AlternatingTensor::AlternatingTensor(int dim, int grade) : dim_(dim), grade_(grade) {
  check_dim(dim);
  if (grade < 0 || grade > dim) throw std::invalid_argument("tensor grade out of range 0..dim");
}

AlternatingTensor AlternatingTensor::basis(int dim, std::initializer_list<int> indices,
                                           double coeff) {
  return basis(dim, std::vector<int>(indices), coeff);
}

AlternatingTensor AlternatingTensor::basis(int dim, const std::vector<int>& indices,
                                           double coeff) {
  AlternatingTensor t(dim, static_cast<int>(indices.size()));
  // sort the index list, tracking parity; repeated indices give zero
  std::vector<int> idx = indices;
  int sign = 1;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  Mask key = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > dim) throw std::invalid_argument("basis index out of range");
    if (i + 1 < idx.size() && idx[i] == idx[i + 1]) return t;  // repeated index
    key |= Mask{1} << (idx[i] - 1);
  }
  t.c_[key] = sign * coeff;
  t.prune();
  return t;
}

AlternatingTensor AlternatingTensor::scalar(int dim, double value) {
  AlternatingTensor t(dim, 0);
  if (std::abs(value) > kZeroThreshold) t.c_[0] = value;
  return t;
}

AlternatingTensor AlternatingTensor::volume(int dim) {
  AlternatingTensor t(dim, dim);
  t.c_[(Mask{1} << dim) - 1] = 1.0;
  return t;
}

double AlternatingTensor::coeff(Mask key) const {
  auto it = c_.find(key);
  return it == c_.end() ? 0.0 : it->second;
}

double AlternatingTensor::coeff(const std::vector<int>& indices) const {
  // evaluate on (possibly unsorted) basis indices, i.e. with parity sign
  std::vector<int> idx = indices;
  int sign = 1;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  Mask key = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i + 1 < idx.size() && idx[i] == idx[i + 1]) return 0.0;
    key |= Mask{1} << (idx[i] - 1);
  }
  return sign * coeff(key);
}

void AlternatingTensor::add_term(const std::vector<int>& indices, double c) {
  *this += basis(dim_, indices, c);
}

void AlternatingTensor::add_term(std::initializer_list<int> indices, double c) {
  add_term(std::vector<int>(indices), c);
}

void AlternatingTensor::add_term(Mask key, double c) {
  if (std::popcount(key) != grade_) throw std::invalid_argument("term key has wrong grade");
  if (key >= (Mask{1} << dim_)) throw std::invalid_argument("term key out of dimension");
  double& slot = c_[key];
  slot += c;
  if (std::abs(slot) <= kZeroThreshold) c_.erase(key);
}

AlternatingTensor& AlternatingTensor::operator+=(const AlternatingTensor& o) {
  if (o.dim_ != dim_ || o.grade_ != grade_)
    throw std::invalid_argument("tensor sum requires matching dim and grade");
  for (const auto& [k, v] : o.c_) add_term(k, v);
  return *this;
}

AlternatingTensor& AlternatingTensor::operator-=(const AlternatingTensor& o) {
  if (o.dim_ != dim_ || o.grade_ != grade_)
    throw std::invalid_argument("tensor difference requires matching dim and grade");
  for (const auto& [k, v] : o.c_) add_term(k, -v);
  return *this;
}

AlternatingTensor& AlternatingTensor::operator*=(double s) {
  for (auto& [k, v] : c_) v *= s;
  prune();
  return *this;
}

void AlternatingTensor::prune(double threshold) {
  for (auto it = c_.begin(); it != c_.end();)
    it = std::abs(it->second) <= threshold ? c_.erase(it) : std::next(it);
}

AlternatingTensor::Mask AlternatingTensor::mask_of(const std::vector<int>& indices) {
  Mask key = 0;
  for (int i : indices) key |= Mask{1} << (i - 1);
  return key;
}

std::vector<int> AlternatingTensor::indices_of(Mask key) {
  std::vector<int> idx;
  for (int i = 0; i < kMaxDim; ++i)
    if (key & (Mask{1} << i)) idx.push_back(i + 1);
  return idx;
}

int merge_sign(AlternatingTensor::Mask a, AlternatingTensor::Mask b) {
  // number of pairs (i in a, j in b) with i > j
  int inversions = 0;
  for (int j = 0; j < AlternatingTensor::kMaxDim; ++j)
    if (b & (AlternatingTensor::Mask{1} << j))
      inversions += std::popcount(a >> (j + 1));
  return (inversions % 2 == 0) ? 1 : -1;
}

AlternatingTensor wedge(const AlternatingTensor& a, const AlternatingTensor& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge requires matching dimension");
  if (a.grade() + b.grade() > a.dim())
    throw std::invalid_argument("wedge grade exceeds dimension");
  AlternatingTensor out(a.dim(), a.grade() + b.grade());
  for (const auto& [ka, va] : a.terms())
    for (const auto& [kb, vb] : b.terms()) {
      if (ka & kb) continue;
      out.add_term(ka | kb, merge_sign(ka, kb) * va * vb);
    }
  out.prune();
  return out;
}

AlternatingTensor interior(const AlternatingTensor& x, const AlternatingTensor& a) {
  if (x.dim() != a.dim()) throw std::invalid_argument("interior requires matching dimension");
  if (x.grade() > a.grade())
    throw std::invalid_argument("interior requires grade(x) <= grade(a)");
  AlternatingTensor out(a.dim(), a.grade() - x.grade());
  for (const auto& [kx, vx] : x.terms())
    for (const auto& [ka, va] : a.terms()) {
      if ((kx & ka) != kx) continue;
      // a(e_{kx}, e_{rest}) = merge parity of placing kx before the rest
      const AlternatingTensor::Mask rest = ka & ~kx;
      out.add_term(rest, merge_sign(kx, rest) * vx * va);
    }
  out.prune();
  return out;
}

AlternatingTensor contract(const Eigen::VectorXd& v, const AlternatingTensor& a) {
  if (v.size() != a.dim()) throw std::invalid_argument("contract requires matching dimension");
  if (a.grade() < 1) throw std::invalid_argument("cannot contract a scalar");
  AlternatingTensor out(a.dim(), a.grade() - 1);
  using Mask = AlternatingTensor::Mask;
  for (const auto& [ka, va] : a.terms()) {
    int pos = 0;  // position of the contracted index within the sorted subset
    for (int i = 0; i < a.dim(); ++i) {
      const Mask bit = Mask{1} << i;
      if (!(ka & bit)) continue;
      const double vi = v[i];
      if (vi != 0.0) out.add_term(ka & ~bit, (pos % 2 == 0 ? 1.0 : -1.0) * vi * va);
      ++pos;
    }
  }
  out.prune();
  return out;
}

AlternatingTensor hodge_star(const AlternatingTensor& a) {
  AlternatingTensor out(a.dim(), a.dim() - a.grade());
  const AlternatingTensor::Mask full = (AlternatingTensor::Mask{1} << a.dim()) - 1;
  for (const auto& [k, v] : a.terms()) {
    const AlternatingTensor::Mask comp = full & ~k;
    out.add_term(comp, merge_sign(k, comp) * v);
  }
  return out;
}

double inner(const AlternatingTensor& a, const AlternatingTensor& b) {
  if (a.dim() != b.dim() || a.grade() != b.grade())
    throw std::invalid_argument("inner requires matching dim and grade");
  const auto& small = a.terms().size() <= b.terms().size() ? a : b;
  const auto& large = a.terms().size() <= b.terms().size() ? b : a;
  double s = 0.0;
  for (const auto& [k, v] : small.terms()) s += v * large.coeff(k);
  return s;
}

double norm(const AlternatingTensor& a) { return std::sqrt(inner(a, a)); }

double evaluate(const AlternatingTensor& a, const std::vector<Eigen::VectorXd>& vs) {
  if (static_cast<int>(vs.size()) != a.grade())
    throw std::invalid_argument("evaluate requires grade-many vectors");
  AlternatingTensor cur = a;
  for (const auto& v : vs) cur = contract(v, cur);
  return cur.coeff(AlternatingTensor::Mask{0});
}

double evaluate(const AlternatingTensor& a, const Eigen::MatrixXd& columns) {
  std::vector<Eigen::VectorXd> vs;
  vs.reserve(columns.cols());
  for (int j = 0; j < columns.cols(); ++j) vs.push_back(columns.col(j));
  return evaluate(a, vs);
}

AlternatingTensor restrict_to(const AlternatingTensor& a, const Eigen::MatrixXd& frame) {
  if (frame.rows() != a.dim())
    throw std::invalid_argument("restriction frame has wrong ambient dimension");
  const int k = static_cast<int>(frame.cols());
  if ((frame.transpose() * frame - Eigen::MatrixXd::Identity(k, k)).norm() > 1e-8)
    throw std::invalid_argument("restriction frame must be orthonormal");
  if (a.grade() > k)
    throw std::invalid_argument("restriction grade exceeds subspace dimension");
  AlternatingTensor out(std::max(k, 1), a.grade());
  // coefficient at {j1<...<jg} = a(frame_{j1}, ..., frame_{jg})
  std::vector<int> pick(a.grade());
  const int g = a.grade();
  if (g == 0) return AlternatingTensor::scalar(std::max(k, 1), a.coeff(AlternatingTensor::Mask{0}));
  // iterate strictly increasing g-subsets of {0..k-1}
  for (int i = 0; i < g; ++i) pick[i] = i;
  while (true) {
    AlternatingTensor cur = a;
    for (int i = 0; i < g; ++i) cur = contract(frame.col(pick[i]), cur);
    const double val = cur.coeff(AlternatingTensor::Mask{0});
    if (std::abs(val) > AlternatingTensor::kZeroThreshold) {
      AlternatingTensor::Mask key = 0;
      for (int i = 0; i < g; ++i) key |= AlternatingTensor::Mask{1} << pick[i];
      out.add_term(key, val);
    }
    int i = g - 1;
    while (i >= 0 && pick[i] == k - g + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < g; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.prune();
  return out;
}

AlternatingTensor wedge_vectors(const std::vector<Eigen::VectorXd>& vs, int dim) {
  AlternatingTensor out = AlternatingTensor::scalar(dim, 1.0);
  for (const auto& v : vs) {
    AlternatingTensor t(dim, 1);
    for (int i = 0; i < dim; ++i)
      if (v[i] != 0.0) t.add_term(AlternatingTensor::Mask{1} << i, v[i]);
    out = wedge(out, t);
  }
  return out;
}

AlternatingTensor wedge_columns(const Eigen::MatrixXd& columns) {
  std::vector<Eigen::VectorXd> vs;
  vs.reserve(columns.cols());
  for (int j = 0; j < columns.cols(); ++j) vs.push_back(columns.col(j));
  return wedge_vectors(vs, static_cast<int>(columns.rows()));
}

// --------------------------------------------------------------------------

ComplexAlternatingTensor::ComplexAlternatingTensor(AlternatingTensor re, AlternatingTensor im)
    : re_(std::move(re)), im_(std::move(im)) {
  if (re_.dim() != im_.dim() || re_.grade() != im_.grade())
    throw std::invalid_argument("complex tensor parts must share dim and grade");
}

ComplexAlternatingTensor ComplexAlternatingTensor::real(AlternatingTensor re) {
  AlternatingTensor im(re.dim(), re.grade());
  return ComplexAlternatingTensor(std::move(re), std::move(im));
}

ComplexAlternatingTensor& ComplexAlternatingTensor::operator+=(const ComplexAlternatingTensor& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexAlternatingTensor& ComplexAlternatingTensor::operator*=(std::complex<double> s) {
  AlternatingTensor re = re_ * s.real() - im_ * s.imag();
  AlternatingTensor im = re_ * s.imag() + im_ * s.real();
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexAlternatingTensor wedge(const ComplexAlternatingTensor& a,
                               const ComplexAlternatingTensor& b) {
  return ComplexAlternatingTensor(wedge(a.re(), b.re()) - wedge(a.im(), b.im()),
                                  wedge(a.re(), b.im()) + wedge(a.im(), b.re()));
}

ComplexAlternatingTensor conjugate(const ComplexAlternatingTensor& a) {
  return ComplexAlternatingTensor(a.re(), -a.im());
}

ComplexAlternatingTensor contract(const Eigen::VectorXd& v, const ComplexAlternatingTensor& a) {
  return ComplexAlternatingTensor(contract(v, a.re()), contract(v, a.im()));
}

ComplexAlternatingTensor contract_complex(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                          const ComplexAlternatingTensor& a) {
  // iota_{p + i q}(re + i im) = (iota_p re - iota_q im) + i (iota_p im + iota_q re)
  return ComplexAlternatingTensor(contract(p, a.re()) - contract(q, a.im()),
                                  contract(p, a.im()) + contract(q, a.re()));
}

std::complex<double> evaluate(const ComplexAlternatingTensor& a,
                              const std::vector<Eigen::VectorXd>& vs) {
  return {evaluate(a.re(), vs), evaluate(a.im(), vs)};
}

std::complex<double> evaluate(const ComplexAlternatingTensor& a, const Eigen::MatrixXd& columns) {
  return {evaluate(a.re(), columns), evaluate(a.im(), columns)};
}

double norm(const ComplexAlternatingTensor& a) {
  return std::sqrt(inner(a.re(), a.re()) + inner(a.im(), a.im()));
}

ComplexAlternatingTensor restrict_to(const ComplexAlternatingTensor& a,
                                     const Eigen::MatrixXd& frame) {
  return ComplexAlternatingTensor(restrict_to(a.re(), frame), restrict_to(a.im(), frame));
}

}  // namespace crosscal
