#pragma once

#include <Eigen/Dense>

namespace crosscal {

// Octonions as vectors in R^8: component 0 is the real part, components 1..7
// the imaginary units e_1..e_7.  The multiplication table is generated from
// the associative 3-form Omega on R^7 by
//   e_i e_j = -delta_ij + sum_k Omega(e_i, e_j, e_k) e_k   (i, j in 1..7),
// which fixes e_1 e_2 = e_3, e_1 e_6 = -e_7, e_2 e_5 = e_7, etc.
using Octonion = Eigen::Matrix<double, 8, 1>;

// Product e_i e_j of two units (i, j in 0..7, 0 = the real unit) written as
// sign * e_index.
struct UnitProduct {
  int index;
  int sign;
};
UnitProduct oct_unit_product(int i, int j);

Octonion oct_unit(int i);  // 0..7
Octonion oct_mul(const Octonion& a, const Octonion& b);
double oct_re(const Octonion& a);
Octonion oct_im(const Octonion& a);
Octonion oct_conj(const Octonion& a);  // 2 Re(a) - a

// Two-fold cross product on Im O = R^7: Im(a b) for imaginary a, b.
Eigen::VectorXd oct_cross2(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Three-fold cross product on O = R^8: (1/2) (a (conj(b) c) - c (conj(b) a)).
Octonion oct_cross3(const Octonion& a, const Octonion& b, const Octonion& c);

}  // namespace crosscal
