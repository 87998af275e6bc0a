#include "crosscal/plane.hpp"

#include <stdexcept>

#include "json.hpp"

namespace crosscal {

OrientedPlane OrientedPlane::from_frame(const Eigen::MatrixXd& frame) {
  const int k = static_cast<int>(frame.cols());
  if (frame.rows() < 1 || k < 1 || k > frame.rows())
    throw std::invalid_argument("plane frame must be n x k with 1 <= k <= n");
  const double defect =
      (frame.transpose() * frame - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
  if (defect > 1e-12)
    throw std::invalid_argument("plane frame columns are not orthonormal (defect " +
                                std::to_string(defect) + ")");
  return OrientedPlane(frame);
}

OrientedPlane OrientedPlane::coordinate_span(int n, const std::vector<int>& axes) {
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(n, static_cast<int>(axes.size()));
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (axes[j] < 1 || axes[j] > n)
      throw std::invalid_argument("coordinate axis out of range");
    frame(axes[j] - 1, static_cast<int>(j)) = 1.0;
  }
  return from_frame(frame);
}

AlternatingTensor OrientedPlane::xi() const { return wedge_columns(frame_); }

Eigen::MatrixXd OrientedPlane::projector() const { return frame_ * frame_.transpose(); }

std::string OrientedPlane::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = n();
  auto cols = nlohmann::ordered_json::array();
  for (int c = 0; c < k(); ++c) {
    auto col = nlohmann::ordered_json::array();
    for (int r = 0; r < n(); ++r) col.push_back(frame_(r, c));
    cols.push_back(col);
  }
  j["frame"] = cols;
  return j.dump();
}

OrientedPlane OrientedPlane::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("dim").get<int>();
  const auto& cols = j.at("frame");
  if (!cols.is_array() || cols.empty())
    throw std::invalid_argument("plane JSON: \"frame\" must be a nonempty array");
  const int k = static_cast<int>(cols.size());
  Eigen::MatrixXd frame(n, k);
  for (int c = 0; c < k; ++c) {
    const auto& col = cols.at(c);
    if (static_cast<int>(col.size()) != n)
      throw std::invalid_argument("plane JSON: frame vector length != dim");
    for (int r = 0; r < n; ++r) frame(r, c) = col.at(r).get<double>();
  }
  return from_frame(frame);
}

AlternatingTensor restrict_to(const AlternatingTensor& a, const OrientedPlane& plane) {
  return restrict_to(a, plane.frame());
}

ComplexAlternatingTensor restrict_to(const ComplexAlternatingTensor& a,
                                     const OrientedPlane& plane) {
  return restrict_to(a, plane.frame());
}

}  // namespace crosscal
