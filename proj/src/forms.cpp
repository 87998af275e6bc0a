#include "crosscal/forms.hpp"

namespace crosscal {

AlternatingTensor kahler_form(int m) {
  AlternatingTensor w(2 * m, 2);
  for (int j = 1; j <= m; ++j) w += AlternatingTensor::basis(2 * m, {2 * j - 1, 2 * j});
  return w;
}

AlternatingTensor g2_three_form() {
  AlternatingTensor w(7, 3);
  w += AlternatingTensor::basis(7, {1, 2, 3});
  w += AlternatingTensor::basis(7, {1, 6, 7}, -1.0);
  w += AlternatingTensor::basis(7, {1, 4, 5});
  w += AlternatingTensor::basis(7, {2, 5, 7});
  w += AlternatingTensor::basis(7, {2, 4, 6});
  w += AlternatingTensor::basis(7, {3, 5, 6}, -1.0);
  w += AlternatingTensor::basis(7, {3, 4, 7});
  return w;
}

AlternatingTensor cayley_four_form() {
  auto b = [](int i, int j) { return AlternatingTensor::basis(8, {i, j}); };
  AlternatingTensor w(8, 4);
  w += AlternatingTensor::basis(8, {1, 2, 3, 4}, -1.0);
  w += AlternatingTensor::basis(8, {5, 6, 7, 8}, -1.0);
  w -= wedge(b(2, 1) + b(3, 4), b(6, 5) + b(7, 8));
  w -= wedge(b(3, 1) + b(4, 2), b(7, 5) + b(8, 6));
  w -= wedge(b(4, 1) + b(2, 3), b(8, 5) + b(6, 7));
  return w;
}

AlternatingTensor volume_form(int n) { return AlternatingTensor::volume(n); }

Eigen::MatrixXd standard_complex_structure(int m) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    J(2 * j + 1, 2 * j) = 1.0;   // J e_{x^j} = e_{y^j}
    J(2 * j, 2 * j + 1) = -1.0;  // J e_{y^j} = -e_{x^j}
  }
  return J;
}

}  // namespace crosscal
