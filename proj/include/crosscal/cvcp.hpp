#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "crosscal/tensor.hpp"

namespace crosscal {

// Complex vector cross products on C^n identified with R^{2n} via interleaved
// real coordinates (x^1, y^1, ..., x^n, y^n): the holomorphic volume form
// (Calabi-Yau model, fold n-1) and the holomorphic symplectic form
// (hyperkahler model on C^{2m}, fold 1).
enum class CVcpKind { CalabiYau, Hyperkahler };

struct CVcpStructure {
  CVcpKind kind;
  int n;         // complex dimension (n for CY, 2m for HK)
  int m;         // HK parameter (0 for CY)
  int dim_real;  // 2n
  int r;         // fold: n-1 (CY), 1 (HK)
  Eigen::MatrixXd J;              // standard complex structure, J^2 = -Id
  AlternatingTensor omega;        // Kahler form
  ComplexAlternatingTensor Omega; // dz^1^...^dz^n (CY) or sum dz^{2j-1}^dz^{2j} (HK)
  AlternatingTensor omega_I;      // Re Omega (HK only; empty grade-2 otherwise)
  AlternatingTensor omega_K;      // -Im Omega (HK only)
  std::string name;               // "cy:n" or "hk:m"
};

// param is n for CalabiYau (>= 1), m for Hyperkahler (>= 1).
CVcpStructure make_cvcp(CVcpKind kind, int param);

// Parses "cy:n" | "hk:m".
CVcpStructure cvcp_from_name(const std::string& name);

// The complex 1-form dz^j = dx^j + i dy^j on R^{2n}, 1-based j.
ComplexAlternatingTensor dz_form(int n, int j);

// Max over seeded samples of | |iota_{e~_1 ^ ... ^ e~_r} Omega| - 2^{(r+1)/2} |
// where e~_i = (a_i - i J a_i)/sqrt(2) for a random J-closed orthonormal
// 2r-frame (a_1, J a_1, ..., a_r, J a_r).
double cvcp_defect(const Eigen::MatrixXd& J, const ComplexAlternatingTensor& Omega, int fold,
                   int samples, std::uint64_t seed);
double cvcp_defect(const CVcpStructure& S, int samples, std::uint64_t seed);

// Max over seeded unit vectors v of ||iota_{v + i J v} Omega||; zero iff Omega
// has pure type (r+1, 0).
double cvcp_type_defect(const Eigen::MatrixXd& J, const ComplexAlternatingTensor& Omega,
                        int samples, std::uint64_t seed);
double cvcp_type_defect(const CVcpStructure& S, int samples, std::uint64_t seed);

// e^{i theta} Omega.
ComplexAlternatingTensor phase_rotate(const CVcpStructure& S, double theta);

// The hyperkahler endomorphism triple: I and K raise an index of
// omega_I(A, B) = g(I A, B) and omega_K(A, B) = g(K A, B); J is the standard
// complex structure.
struct HyperkahlerTriple {
  Eigen::MatrixXd I, J, K;
};
HyperkahlerTriple hk_triple(const CVcpStructure& S);

// Max residual over the quaternion relations
//   I^2 = J^2 = K^2 = IJK = -Id,  IJ = -JI,  KJ = -JK,  I = -KJ,  K = IJ.
double hk_matrix_residual(const HyperkahlerTriple& t);

// Omega ^ conj(Omega) = c * omega^n: the measured constant, the closed-form
// i^n (-1)^{n(n-1)/2} 2^{-n} / n! quoted for comparison (the two differ by a
// normalization factor (-4)^n under this library's dz conventions), and the
// proportionality residual ||Omega ^ conj(Omega) - c * omega^n||.
struct VolumePairing {
  std::complex<double> measured;
  std::complex<double> quoted;
  double residual;
};
VolumePairing volume_pairing(const CVcpStructure& S);

}  // namespace crosscal
