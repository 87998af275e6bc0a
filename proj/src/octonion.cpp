#include "crosscal/octonion.hpp"

#include <array>
#include <stdexcept>

#include "crosscal/forms.hpp"

namespace crosscal {

namespace {

// table[i][j] = product of units e_i e_j, i, j in 0..7.
std::array<std::array<UnitProduct, 8>, 8> build_table() {
  std::array<std::array<UnitProduct, 8>, 8> t{};
  const AlternatingTensor omega = g2_three_form();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (i == 0) {
        t[i][j] = {j, 1};
      } else if (j == 0) {
        t[i][j] = {i, 1};
      } else if (i == j) {
        t[i][j] = {0, -1};
      } else {
        UnitProduct p{0, 0};
        for (int k = 1; k <= 7; ++k) {
          if (k == i || k == j) continue;
          const double c = omega.coeff({i, j, k});
          if (c != 0.0) {
            p = {k, c > 0 ? 1 : -1};
            break;
          }
        }
        t[i][j] = p;
      }
    }
  return t;
}

const std::array<std::array<UnitProduct, 8>, 8>& table() {
  static const auto t = build_table();
  return t;
}

}  // namespace

UnitProduct oct_unit_product(int i, int j) {
  if (i < 0 || i > 7 || j < 0 || j > 7)
    throw std::invalid_argument("octonion unit index out of range 0..7");
  return table()[i][j];
}

Octonion oct_unit(int i) {
  Octonion a = Octonion::Zero();
  a[i] = 1.0;
  return a;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
  Octonion out = Octonion::Zero();
  const auto& t = table();
  for (int i = 0; i < 8; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < 8; ++j) {
      if (b[j] == 0.0) continue;
      const UnitProduct p = t[i][j];
      out[p.index] += p.sign * a[i] * b[j];
    }
  }
  return out;
}

double oct_re(const Octonion& a) { return a[0]; }

Octonion oct_im(const Octonion& a) {
  Octonion out = a;
  out[0] = 0.0;
  return out;
}

Octonion oct_conj(const Octonion& a) {
  Octonion out = -a;
  out[0] = a[0];
  return out;
}

Eigen::VectorXd oct_cross2(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != 7 || b.size() != 7)
    throw std::invalid_argument("two-fold octonion cross product expects R^7 vectors");
  Octonion oa = Octonion::Zero(), ob = Octonion::Zero();
  oa.tail<7>() = a;
  ob.tail<7>() = b;
  return oct_im(oct_mul(oa, ob)).tail<7>();
}

Octonion oct_cross3(const Octonion& a, const Octonion& b, const Octonion& c) {
  const Octonion bc = oct_mul(oct_conj(b), c);
  const Octonion ba = oct_mul(oct_conj(b), a);
  return 0.5 * (oct_mul(a, bc) - oct_mul(c, ba));
}

}  // namespace crosscal
