#pragma once

#include <string>
#include <vector>

#include "crosscal/tensor.hpp"

namespace crosscal {

// An oriented k-plane through the origin of R^n, carried by an ordered
// orthonormal frame (the columns of an n x k matrix).  The orientation is the
// frame order; xi() is the corresponding unit k-vector.
class OrientedPlane {
 public:
  // Validates orthonormality of the columns to 1e-12.
  static OrientedPlane from_frame(const Eigen::MatrixXd& frame);

  // Span of coordinate axes (1-based), oriented by the listed order.
  static OrientedPlane coordinate_span(int n, const std::vector<int>& axes);

  int n() const { return static_cast<int>(frame_.rows()); }
  int k() const { return static_cast<int>(frame_.cols()); }
  const Eigen::MatrixXd& frame() const { return frame_; }
  Eigen::VectorXd basis_vector(int j) const { return frame_.col(j); }

  // Unit k-vector f_1 ^ ... ^ f_k.
  AlternatingTensor xi() const;

  // Orthogonal projector F F^T onto the plane.
  Eigen::MatrixXd projector() const;

  std::string to_json() const;
  static OrientedPlane from_json(const std::string& text);

 private:
  explicit OrientedPlane(Eigen::MatrixXd frame) : frame_(std::move(frame)) {}
  Eigen::MatrixXd frame_;
};

// Pullback of a form to the plane's frame coordinates.
AlternatingTensor restrict_to(const AlternatingTensor& a, const OrientedPlane& plane);
ComplexAlternatingTensor restrict_to(const ComplexAlternatingTensor& a,
                                     const OrientedPlane& plane);

}  // namespace crosscal
