#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crosscal/tensor.hpp"

namespace crosscal {

// The four families of real vector cross products on Euclidean R^n: the
// complex structure (fold 1 on R^{2m}), the volume cross product (fold n-1),
// and the two exceptional products on R^7 (fold 2) and R^8 (fold 3).
enum class VcpKind { Complex, Volume, G2, Spin7 };

struct VcpStructure {
  VcpKind kind;
  int n;                 // ambient dimension
  int r;                 // fold
  AlternatingTensor phi; // the (r+1)-form g(chi(v_1..v_r), v_{r+1})
  std::string name;      // selector string, e.g. "complex:2", "g2"
};

// param is m for Complex, n for Volume, ignored otherwise.
VcpStructure make_structure(VcpKind kind, int param = 0);

// Parses "complex:m" | "volume:n" | "g2" | "spin7".
VcpStructure structure_from_name(const std::string& name);

// chi(v_1, ..., v_r): the metric dual of iota_{v_1 ^ ... ^ v_r} phi.
Eigen::VectorXd chi(const VcpStructure& S, const std::vector<Eigen::VectorXd>& vs);

// Deviation of phi from the defining property of a fold-r cross product form:
// |iota_{frame} phi| = 1 on every orthonormal r-frame.  Samples seeded random
// frames and reports the worst one.  fold 0 reduces to | ||phi|| - 1 |.
struct FormDefect {
  double defect;
  Eigen::MatrixXd worst_frame;  // n x fold
};
FormDefect vcp_form_defect(const AlternatingTensor& phi, int fold, int samples,
                           std::uint64_t seed);

// tau(v_1, ..., v_{r+1}) =
//   1/sqrt(r+1) * sum_k (-1)^{k-1} v_k ^ chi(v_1, ..., v-hat_k, ..., v_{r+1}),
// a 2-vector; vanishes exactly on planes preserved by chi.
AlternatingTensor tau(const VcpStructure& S, const std::vector<Eigen::VectorXd>& vs);

// Orthonormal basis (trace pairing tr(Z^T Z') = delta) of the Lie algebra of
// infinitesimal isometries preserving phi: the nullspace of the derivation
// constraint sum_i phi(e_{j1}, ..., zeta e_{j_i}, ..., e_{j_{r+1}}) = 0 over
// all basis (r+1)-tuples, restricted to skew-symmetric zeta.
struct LieSubalgebraBasis {
  std::vector<Eigen::MatrixXd> elements;
  int dim;
  Eigen::VectorXd singular_values;  // of the constraint matrix, decreasing
  double spectral_gap;              // sv[rank-1] / sv[rank]; +inf if clean
};
LieSubalgebraBasis automorphism_algebra(const VcpStructure& S);

// <beta, zeta-bar>, the pairing of a 2-vector with the 2-form
// zeta-bar(u, v) = g(zeta u, v) of a skew matrix.
double g_perp_pairing(const VcpStructure& S, const AlternatingTensor& beta,
                      const Eigen::MatrixXd& zeta);

// phi(., ..., ., nu) — the normal contracted into the last slot — expressed in
// an orthonormal basis of the hyperplane nu-perp (basis chosen from coordinate
// axes by Gram-Schmidt); a fold-(r-1) cross product form on R^{n-1}.
struct InducedHypersurface {
  AlternatingTensor form;  // grade r on R^{n-1}
  Eigen::MatrixXd basis;   // n x (n-1), columns span nu-perp
};
InducedHypersurface induced_hypersurface_vcp(const VcpStructure& S,
                                             const Eigen::VectorXd& nu);

}  // namespace crosscal
