#pragma once

#include <cstdint>
#include <string>

#include "crosscal/cvcp.hpp"
#include "crosscal/plane.hpp"
#include "crosscal/vcp.hpp"

namespace crosscal {

inline constexpr double kDefaultTol = 1e-8;

// Signed value phi(xi_P) of a grade-k form on an oriented k-plane.
double calibration_value(const AlternatingTensor& phi, const OrientedPlane& P);

// A plane of dimension r+1 is preserved by chi iff tau of its frame vanishes,
// iff |phi(xi_P)| = 1.  The verdict carries both quantities and whether they
// agree.
struct InstantonVerdict {
  bool is_instanton;
  double tau_norm;
  double cal_value;
  bool equivalence_ok;  // (|cal_value| ~ 1) == (tau_norm ~ 0) at this tol
};
InstantonVerdict instanton_test(const VcpStructure& S, const OrientedPlane& P,
                                double tol = kDefaultTol);

// A brane is a plane with phi|_C = 0 and dim C = (n + r - 1)/2.
struct BraneVerdict {
  bool form_vanishes;
  bool dim_ok;
  bool is_brane;
  double residual;  // ||restrict(phi, C)||
};
BraneVerdict brane_test(const VcpStructure& S, const OrientedPlane& C,
                        double tol = kDefaultTol);

// t(alpha)(u_1, ..., u_r) = alpha(chi(u_1, ..., u_r)) for tangent vectors of a
// brane C and a unit normal covector alpha, expressed in C's frame; a
// fold-(r-1) cross product form on C.
AlternatingTensor t_map(const VcpStructure& S, const OrientedPlane& C,
                        const Eigen::VectorXd& alpha, double tol = kDefaultTol);

// +1 / -1 if a is a Hodge-star eigenform to within tol, 0 otherwise.
int hodge_eigen_sign(const AlternatingTensor& a, double tol = kDefaultTol);

// For a 4-dimensional brane of a fold-2 structure: checks that t(alpha) lies
// in a single Hodge eigenspace of Lambda^2 T_C for every unit normal alpha,
// with a consistent sign across normals.  If that sign is -1 the orientation
// of C is flipped (last frame vector negated) and the check repeated, so the
// reported sign refers to the aligned orientation.
struct TMapDuality {
  int sign;                  // +1 after alignment; 0 if not an eigenform
  bool orientation_flipped;
  double max_residual;       // worst ||*t - sign * t|| over normals
};
TMapDuality t_map_duality(const VcpStructure& S, const OrientedPlane& C,
                          double tol = kDefaultTol);

// For an instanton plane A meeting a phi-annihilating plane C in a hyperplane
// of A spanned by u_1..u_r: chi(u_1, ..., u_r) must be orthogonal to C.
// Precondition violations are reported in the verdict rather than thrown.
struct BoundaryOrthogonalityVerdict {
  bool preconditions_ok;
  std::string precondition_message;  // empty when preconditions_ok
  double residual;                   // ||Pi_C chi(u...)||
  bool orthogonal;
};
BoundaryOrthogonalityVerdict boundary_orthogonality_check(
    const VcpStructure& S, const OrientedPlane& A, const OrientedPlane& C,
    const std::vector<Eigen::VectorXd>& u, double tol = kDefaultTol);

// Classification of a plane against a Calabi-Yau structure at phase theta:
// special Lagrangian (calibrated by Re(e^{i theta} Omega)), N-brane (complex
// hyperplane), D-brane (Lagrangian with Re(e^{i theta} Omega)|_C = 0).
struct ComplexPlaneClass {
  bool slag_phase_theta;
  bool nbrane;
  bool dbrane_phase_theta;
  double omega_residual;      // ||restrict(omega, P)||          (k = n cases)
  double slag_im_residual;    // ||restrict(Im e^{i theta}Omega, P)||
  double slag_value;          // Re(e^{i theta}Omega)(xi_P)
  double nbrane_residual;     // max of Re/Im Omega restriction norms
  double j_invariance;        // ||Pi J Pi - J Pi||
  double dbrane_residual;     // ||restrict(Re e^{i theta}Omega, P)||
};
ComplexPlaneClass classify_complex_plane(const CVcpStructure& S, const OrientedPlane& P,
                                         double theta, double tol = kDefaultTol);

// Hyperkahler fold-1 instantons at phase theta: 2-planes calibrated by
// Re(e^{i theta}Omega) = (cos theta) omega_I + (sin theta) omega_K,
// equivalently invariant under J_theta = (cos theta) I + (sin theta) K.
struct HkInstantonVerdict {
  bool is_instanton;
  double value;               // Re(e^{i theta}Omega)(xi_P) after alignment
  bool orientation_flipped;
  bool jtheta_invariant;
  bool cross_check_ok;        // is_instanton == jtheta_invariant
};
HkInstantonVerdict hk_instanton_test(const CVcpStructure& S, const OrientedPlane& P,
                                     double theta, double tol = kDefaultTol);

// For an orthogonal involution sigma: whether sigma commutes with chi
// (sampled), and whether its +1 eigenspace, when it has dimension r+1, is an
// instanton plane (it must be).
struct InvolutionVerdict {
  bool preserves_chi;
  double chi_residual;
  int fixed_dim;
  bool check_applicable;      // fixed_dim == r + 1
  bool fixed_is_instanton;    // meaningful only when applicable
};
InvolutionVerdict involution_fixed_check(const VcpStructure& S, const Eigen::MatrixXd& sigma,
                                         int samples, std::uint64_t seed,
                                         double tol = kDefaultTol);

}  // namespace crosscal
