#pragma once

#include "crosscal/tensor.hpp"

namespace crosscal {

// Standard constant calibration forms on R^n.

// omega = sum_j dx^{2j-1} ^ dx^{2j} on R^{2m} with interleaved real
// coordinates (x^1, y^1, x^2, y^2, ...).
AlternatingTensor kahler_form(int m);

// The associative 3-form on R^7:
//   dx^{123} - dx^{167} + dx^{145} + dx^{257} + dx^{246} - dx^{356} + dx^{347}.
AlternatingTensor g2_three_form();

// The Cayley 4-form on R^8, built from the quaternionic wedge expression
//   -dx^{1234} - dx^{5678}
//   - (dx^{21} + dx^{34}) ^ (dx^{65} + dx^{78})
//   - (dx^{31} + dx^{42}) ^ (dx^{75} + dx^{86})
//   - (dx^{41} + dx^{23}) ^ (dx^{85} + dx^{67}).
AlternatingTensor cayley_four_form();

// dx^1 ^ ... ^ dx^n.
AlternatingTensor volume_form(int n);

// The complex structure on R^{2m} (interleaved coordinates) as a matrix:
// J dx^{2j-1} = dx^{2j}.
Eigen::MatrixXd standard_complex_structure(int m);

}  // namespace crosscal
