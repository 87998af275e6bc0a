#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

namespace crosscal {

// Alternating k-tensor over Euclidean R^n, n <= 10, stored sparsely: one real
// coefficient per strictly increasing basis index subset {i1 < ... < ik}.
// Subsets are encoded as bitmasks (bit i-1 <-> index i).  The standard basis
// is orthonormal, so the same object serves as a k-form and a k-vector; index
// raising/lowering is the identity.
class AlternatingTensor {
 public:
  using Mask = std::uint32_t;

  static constexpr int kMaxDim = 10;
  static constexpr double kZeroThreshold = 1e-14;

  AlternatingTensor(int dim, int grade);

  // dx^{i1} ^ ... ^ dx^{ik} for a (possibly unsorted, 1-based) index list;
  // the sign from sorting is folded into the coefficient.
  static AlternatingTensor basis(int dim, std::initializer_list<int> indices,
                                 double coeff = 1.0);
  static AlternatingTensor basis(int dim, const std::vector<int>& indices,
                                 double coeff = 1.0);
  static AlternatingTensor scalar(int dim, double value);
  static AlternatingTensor volume(int dim);

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  const std::map<Mask, double>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  double coeff(Mask key) const;
  double coeff(const std::vector<int>& indices) const;  // 1-based, any order
  double coeff(std::initializer_list<int> indices) const {
    return coeff(std::vector<int>(indices));
  }
  void add_term(Mask key, double c);                    // key must have popcount == grade
  void add_term(const std::vector<int>& indices, double c);  // 1-based, any order
  void add_term(std::initializer_list<int> indices, double c);

  AlternatingTensor& operator+=(const AlternatingTensor& o);
  AlternatingTensor& operator-=(const AlternatingTensor& o);
  AlternatingTensor& operator*=(double s);

  friend AlternatingTensor operator+(AlternatingTensor a, const AlternatingTensor& b) { return a += b; }
  friend AlternatingTensor operator-(AlternatingTensor a, const AlternatingTensor& b) { return a -= b; }
  friend AlternatingTensor operator*(AlternatingTensor a, double s) { return a *= s; }
  friend AlternatingTensor operator*(double s, AlternatingTensor a) { return a *= s; }
  friend AlternatingTensor operator-(AlternatingTensor a) { return a *= -1.0; }

  // Drops coefficients below the zero threshold.
  void prune(double threshold = kZeroThreshold);

  static Mask mask_of(const std::vector<int>& indices);  // requires sorted unique
  static std::vector<int> indices_of(Mask key);          // 1-based, increasing

 private:
  int dim_;
  int grade_;
  std::map<Mask, double> c_;
};

// Parity sign (-1)^{#inversions} of merging two disjoint sorted index sets
// (all of `a` placed before all of `b`).
int merge_sign(AlternatingTensor::Mask a, AlternatingTensor::Mask b);

AlternatingTensor wedge(const AlternatingTensor& a, const AlternatingTensor& b);

// Interior product; contracted slots are the FIRST arguments of the result:
// for decomposable x = v1 ^ ... ^ vj,
//   (interior(x, a))(w1, ..., w_{k-j}) = a(v1, ..., vj, w1, ..., w_{k-j}).
AlternatingTensor interior(const AlternatingTensor& x, const AlternatingTensor& a);

// interior by a single vector.
AlternatingTensor contract(const Eigen::VectorXd& v, const AlternatingTensor& a);

// Hodge star for the orientation e_1 ^ ... ^ e_n; e_I ^ *(e_I) = vol.
AlternatingTensor hodge_star(const AlternatingTensor& a);

// Euclidean pairing: basis k-subsets are orthonormal, so this is the sum of
// coefficient products.
double inner(const AlternatingTensor& a, const AlternatingTensor& b);
double norm(const AlternatingTensor& a);

// Full contraction a(v_1, ..., v_k); vectors fill slots left to right.
double evaluate(const AlternatingTensor& a, const std::vector<Eigen::VectorXd>& vs);
double evaluate(const AlternatingTensor& a, const Eigen::MatrixXd& columns);

// Pullback along the inclusion of the span of `frame` (orthonormal columns of
// an n x k matrix), with the frame as the standard basis of R^k.
AlternatingTensor restrict_to(const AlternatingTensor& a, const Eigen::MatrixXd& frame);

// Multivector v1 ^ ... ^ vk from vectors.
AlternatingTensor wedge_vectors(const std::vector<Eigen::VectorXd>& vs, int dim);
AlternatingTensor wedge_columns(const Eigen::MatrixXd& columns);

// --------------------------------------------------------------------------
// Complex-valued forms as real/imaginary pairs.

class ComplexAlternatingTensor {
 public:
  ComplexAlternatingTensor(AlternatingTensor re, AlternatingTensor im);
  static ComplexAlternatingTensor real(AlternatingTensor re);

  int dim() const { return re_.dim(); }
  int grade() const { return re_.grade(); }
  const AlternatingTensor& re() const { return re_; }
  const AlternatingTensor& im() const { return im_; }

  ComplexAlternatingTensor& operator+=(const ComplexAlternatingTensor& o);
  ComplexAlternatingTensor& operator*=(std::complex<double> s);
  friend ComplexAlternatingTensor operator+(ComplexAlternatingTensor a,
                                            const ComplexAlternatingTensor& b) { return a += b; }
  friend ComplexAlternatingTensor operator*(ComplexAlternatingTensor a,
                                            std::complex<double> s) { return a *= s; }

 private:
  AlternatingTensor re_;
  AlternatingTensor im_;
};

ComplexAlternatingTensor wedge(const ComplexAlternatingTensor& a,
                               const ComplexAlternatingTensor& b);
ComplexAlternatingTensor conjugate(const ComplexAlternatingTensor& a);

// Contraction by a real vector, and by a complexified vector p + i q.
ComplexAlternatingTensor contract(const Eigen::VectorXd& v,
                                  const ComplexAlternatingTensor& a);
ComplexAlternatingTensor contract_complex(const Eigen::VectorXd& p,
                                          const Eigen::VectorXd& q,
                                          const ComplexAlternatingTensor& a);

std::complex<double> evaluate(const ComplexAlternatingTensor& a,
                              const std::vector<Eigen::VectorXd>& vs);
std::complex<double> evaluate(const ComplexAlternatingTensor& a,
                              const Eigen::MatrixXd& columns);

// |a|^2 = |re|^2 + |im|^2.
double norm(const ComplexAlternatingTensor& a);
ComplexAlternatingTensor restrict_to(const ComplexAlternatingTensor& a,
                                     const Eigen::MatrixXd& frame);

}  // namespace crosscal
