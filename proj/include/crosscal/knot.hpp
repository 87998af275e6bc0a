#pragma once

#include <array>
#include <string>
#include <vector>

#include "crosscal/cvcp.hpp"
#include "crosscal/plane.hpp"
#include "crosscal/vcp.hpp"

namespace crosscal {

// Deterministic tree reduction; the summation order is fixed by the input
// order alone, so totals are reproducible across thread counts.
double pairwise_sum(std::vector<double> v);

enum class KnotShape { Circle, Sphere, Custom };

// A weighted point-cloud discretization of a closed s-manifold embedded in
// R^n: vertices, quadrature weights (units of s-volume), and an oriented
// orthonormal tangent s-frame per vertex.
struct DiscretizedKnot {
  int n;
  int s;
  KnotShape shape;
  std::vector<Eigen::VectorXd> vertices;
  std::vector<double> weights;
  std::vector<Eigen::MatrixXd> frames;        // n x s per vertex
  std::vector<std::array<int, 3>> triangles;  // sphere connectivity; else empty

  int size() const { return static_cast<int>(vertices.size()); }
};

// Unit circle in the (x^1, x^2)-plane of R^n, counterclockwise, m vertices at
// angles 2 pi j / m, weights 2 pi / m, frames = unit tangents.
DiscretizedKnot make_circle(int n, int m);

// Unit sphere in R^3 from `subdiv` rounds of midpoint 4-fold subdivision of
// the octahedron (midpoints reprojected); vertex weight = one third of the
// adjacent spherical triangle areas (these sum to 4 pi); frames from
// projected coordinate directions, oriented outward.
DiscretizedKnot make_sphere(int subdiv);

// Push a knot through a linear isometry given by orthonormal columns U
// (N x n): vertices and frames map by U, weights are preserved.
DiscretizedKnot embed_isometric(const DiscretizedKnot& knot, const Eigen::MatrixXd& U);

DiscretizedKnot knot_from_json(const std::string& text);
std::string knot_to_json(const DiscretizedKnot& knot);

// One ambient vector per vertex, orthogonal to the vertex tangent frame.
struct NormalField {
  std::vector<Eigen::VectorXd> vectors;
};

// Validates tangency: each vector's frame component must be below tol.
NormalField make_normal_field(const DiscretizedKnot& knot,
                              std::vector<Eigen::VectorXd> vectors, double tol = 1e-8);
NormalField constant_normal_field(const DiscretizedKnot& knot, const Eigen::VectorXd& v,
                                  double tol = 1e-8);
NormalField field_from_json(const DiscretizedKnot& knot, const std::string& text);
std::string field_to_json(const NormalField& field);

// Seeded Gaussian field projected into the normal bundle (frame-orthogonal
// at every vertex).
NormalField random_normal_field(const DiscretizedKnot& knot, std::uint64_t seed);

// L^2 pairing sum_i w_i <u_i, v_i>.
double g_k(const DiscretizedKnot& knot, const NormalField& u, const NormalField& v);

// Transgressed 2-form sum_i w_i phi(frame_i..., u_i, v_i); needs s = r - 1.
double omega_k(const VcpStructure& S, const DiscretizedKnot& knot, const NormalField& u,
               const NormalField& v);

// Transgressed almost complex structure: per-vertex chi(frame_i..., u_i).
NormalField j_k(const VcpStructure& S, const DiscretizedKnot& knot, const NormalField& u);

// A grade-k form whose coefficients are affine functions a0 + grad.x of the
// ambient coordinates — the only nonconstant forms supported here.
class AffineForm {
 public:
  struct Term {
    AlternatingTensor::Mask idx;
    double a0;
    Eigen::VectorXd grad;
  };

  AffineForm(int dim, int grade);
  static AffineForm constant(const AlternatingTensor& a);

  // Indices 1-based, any order (sign folded into the coefficient pair).
  void add_term(const std::vector<int>& indices, double a0, const Eigen::VectorXd& grad);

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  const std::vector<Term>& terms() const { return terms_; }

  AlternatingTensor at(const Eigen::VectorXd& x) const;  // coefficients frozen at x
  AlternatingTensor d() const;                           // exterior derivative (constant)

 private:
  int dim_;
  int grade_;
  std::vector<Term> terms_;
};

// F(knot) = sum_i w_i eta|_{x_i}(frame_i), the discretized integral of the
// pulled-back form; eta must have grade s.
double hamiltonian_value(const DiscretizedKnot& knot, const AffineForm& eta);

struct LinearVectorField {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd at(const Eigen::VectorXd& x) const { return A * x + b; }
};

// For a pair (v, eta) with iota_v phi = d eta (validated by sampling): checks
// the Hamiltonian property |(F(knot + eps delta) - F(knot))/eps -
// omega_k(v restricted to the knot, delta)|.  Both F evaluations use the
// same neighbor-difference quadrature F(Q) = sum_j eta|_{Q_j}((Q_{j+1} -
// Q_{j-1})/2).  Circle knots only.
double hamiltonian_pairing_check(const VcpStructure& S, const DiscretizedKnot& knot,
                                 const AffineForm& eta, const LinearVectorField& v,
                                 const NormalField& delta, double eps);

// Discrete test that transgressing over a knot inside a phi-annihilating
// plane C yields an isotropic (and maximally so) family: pairwise omega_k
// among the supplied C-tangent fields must vanish, while some bump field at
// the vertex where outward_field leaves C pairs nontrivially with it.
struct LagrangianProbeResult {
  bool vanishes_on_C;
  double max_pairwise;
  bool witness_found;
  int witness_vertex;
  double witness_value;
  Eigen::VectorXd witness_direction;
};
LagrangianProbeResult lagrangian_probe(const VcpStructure& S, const OrientedPlane& C,
                                       const DiscretizedKnot& knot,
                                       const std::vector<NormalField>& tangent_fields,
                                       const NormalField& outward_field, double tol = 1e-8);

// max |omega(frame_a, frame_b)| over vertices and frame pairs; 0 for s = 1.
double isotropy_check(const DiscretizedKnot& knot, const AlternatingTensor& omega);

// Per-vertex data of the quotient by the isotropy foliation: an orthonormal
// basis of the rank-4 fiber (span(frame) + J span(frame))^perp, the three
// symplectic forms restricted to it, and the induced I, J, K endomorphisms.
struct QuotientFiberData {
  std::vector<Eigen::MatrixXd> fiber_basis;                // n x 4
  std::vector<Eigen::MatrixXd> omega_I, omega_J, omega_K;  // 4 x 4 skew
  std::vector<Eigen::MatrixXd> I, J, K;                    // 4 x 4
};

// Requires a Calabi-Yau structure, s = n - 2, and isotropy_check < 1e-8.
QuotientFiberData quotient_structures(const CVcpStructure& S, const DiscretizedKnot& knot);

// Max residual over vertices of
// {I^2+Id, K^2+Id, J^2+Id, IJ+JI, KJ+JK, I+KJ, K-IJ}.
double hamilton_check(const QuotientFiberData& q);

// Max over vertices and fiber directions of | |iota_e~(omega_I - i omega_K)|
// - 2 | for unit (1,0) fiber vectors e~.
double fiber_normalization_defect(const QuotientFiberData& q);

// Max projector residual ||(Id - B B^T) J B|| of J-invariance of the fibers.
double fiber_j_invariance(const CVcpStructure& S, const QuotientFiberData& q);

// Evaluates the three transgressed symplectic forms on fields projected into
// the quotient fibers: val_X(u, v) = sum_i w_i (B^T u_i)^T M_X (B^T v_i).
struct ComplexLagrangianProbeResult {
  bool omegaI_vanishes, omegaJ_vanishes, omegaK_vanishes;
  double max_I, max_J, max_K;
};
ComplexLagrangianProbeResult complex_lagrangian_probe(
    const CVcpStructure& S, const DiscretizedKnot& knot, const QuotientFiberData& q,
    const OrientedPlane& C, const std::vector<NormalField>& fields, double tol = 1e-9);

// Cauchy-Schwarz-type bound omega_k(nu, mu) <= (|nu|^2 |mu|^2 - <nu,mu>^2)^{1/2}
// in the transgressed metric, with equality diagnostics (weighted mean and
// variance of the pointwise length ratio and angle).
struct SubmersionVerdict {
  double lhs, rhs, slack;
  double ratio_mean, ratio_variance;
  double angle_mean, angle_variance;
  bool inequality_holds;  // slack >= -1e-10
  bool equality;          // |slack| < 1e-8
};
SubmersionVerdict submersion_inequality_check(const VcpStructure& S,
                                              const DiscretizedKnot& knot,
                                              const NormalField& nu, const NormalField& mu);

}  // namespace crosscal
