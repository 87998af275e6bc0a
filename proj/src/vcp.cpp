#include "crosscal/vcp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crosscal/forms.hpp"
#include "crosscal/gram.hpp"

namespace crosscal {

VcpStructure make_structure(VcpKind kind, int param) {
  switch (kind) {
    case VcpKind::Complex: {
      if (param < 1) throw std::invalid_argument("complex structure requires m >= 1");
      return {kind, 2 * param, 1, kahler_form(param), "complex:" + std::to_string(param)};
    }
    case VcpKind::Volume: {
      if (param < 2) throw std::invalid_argument("volume structure requires n >= 2");
      return {kind, param, param - 1, volume_form(param), "volume:" + std::to_string(param)};
    }
    case VcpKind::G2:
      return {kind, 7, 2, g2_three_form(), "g2"};
    case VcpKind::Spin7:
      return {kind, 8, 3, cayley_four_form(), "spin7"};
  }
  throw std::invalid_argument("unknown structure kind");
}

VcpStructure structure_from_name(const std::string& name) {
  if (name == "g2") return make_structure(VcpKind::G2);
  if (name == "spin7") return make_structure(VcpKind::Spin7);
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    int param = 0;
    try {
      param = std::stoi(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad structure parameter in '" + name + "'");
    }
    if (head == "complex") return make_structure(VcpKind::Complex, param);
    if (head == "volume") return make_structure(VcpKind::Volume, param);
  }
  throw std::invalid_argument("unknown structure selector '" + name + "'");
}

Eigen::VectorXd chi(const VcpStructure& S, const std::vector<Eigen::VectorXd>& vs) {
  if (static_cast<int>(vs.size()) != S.r)
    throw std::invalid_argument("chi expects exactly r vectors");
  AlternatingTensor cur = S.phi;
  for (const auto& v : vs) {
    if (v.size() != S.n) throw std::invalid_argument("chi input has wrong dimension");
    cur = contract(v, cur);
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(S.n);
  for (const auto& [k, c] : cur.terms()) {
    int i = 0;
    while (!(k & (AlternatingTensor::Mask{1} << i))) ++i;
    out[i] = c;
  }
  return out;
}

FormDefect vcp_form_defect(const AlternatingTensor& phi, int fold, int samples,
                           std::uint64_t seed) {
  if (phi.grade() != fold + 1)
    throw std::invalid_argument("vcp_form_defect: grade(phi) must equal fold + 1");
  const int n = phi.dim();
  if (fold == 0) return {std::abs(norm(phi) - 1.0), Eigen::MatrixXd(n, 0)};
  FormDefect out{-1.0, Eigen::MatrixXd(n, fold)};
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const Eigen::MatrixXd frame = random_orthonormal_frame(n, fold, rng);
    AlternatingTensor cur = phi;
    for (int j = 0; j < fold; ++j) cur = contract(frame.col(j), cur);
    const double dev = std::abs(norm(cur) - 1.0);
    if (dev > out.defect) {
      out.defect = dev;
      out.worst_frame = frame;
    }
  }
  return out;
}

AlternatingTensor tau(const VcpStructure& S, const std::vector<Eigen::VectorXd>& vs) {
  if (static_cast<int>(vs.size()) != S.r + 1)
    throw std::invalid_argument("tau expects exactly r + 1 vectors");
  AlternatingTensor out(S.n, 2);
  std::vector<Eigen::VectorXd> rest(S.r, Eigen::VectorXd(S.n));
  for (int k = 0; k <= S.r; ++k) {
    int p = 0;
    for (int i = 0; i <= S.r; ++i)
      if (i != k) rest[p++] = vs[i];
    const Eigen::VectorXd x = chi(S, rest);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^{k-1} with 1-based k
    out += sign * wedge_vectors({vs[k], x}, S.n);
  }
  out *= 1.0 / std::sqrt(static_cast<double>(S.r + 1));
  return out;
}

LieSubalgebraBasis automorphism_algebra(const VcpStructure& S) {
  const int n = S.n;
  const int D = n * (n - 1) / 2;  // skew basis E_{pq}, p < q: E e_q = e_p, E e_p = -e_q

  // rows: one derivation constraint per (r+1)-subset of the coordinate basis
  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> pick(S.r + 1);
    for (int i = 0; i <= S.r; ++i) pick[i] = i + 1;
    for (;;) {
      subsets.push_back(pick);
      int i = S.r;
      while (i >= 0 && pick[i] == n - S.r + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j <= S.r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<int>(subsets.size()), D);
  int col = 0;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q, ++col) {
      // zeta = E_{pq}: replaces e_q by e_p and e_p by -e_q in each slot
      for (std::size_t row = 0; row < subsets.size(); ++row) {
        double sum = 0.0;
        for (int slot = 0; slot <= S.r; ++slot) {
          std::vector<int> idx = subsets[row];
          double sign = 1.0;
          if (idx[slot] == q) {
            idx[slot] = p;
          } else if (idx[slot] == p) {
            idx[slot] = q;
            sign = -1.0;
          } else {
            continue;
          }
          sum += sign * S.phi.coeff(idx);
        }
        A(static_cast<int>(row), col) += sum;
      }
    }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  constexpr double kRankTol = 1e-9;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > kRankTol) ++rank;

  LieSubalgebraBasis out;
  out.dim = D - rank;
  out.singular_values = sv;
  if (rank == 0 || rank >= sv.size() || sv[rank] == 0.0)
    out.spectral_gap = std::numeric_limits<double>::infinity();
  else
    out.spectral_gap = sv[rank - 1] / sv[rank];

  const Eigen::MatrixXd& V = svd.matrixV();  // D x D; last (D - rank) cols = nullspace
  for (int j = rank; j < D; ++j) {
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n, n);
    int c = 0;
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q, ++c) {
        Z(p - 1, q - 1) += V(c, j);
        Z(q - 1, p - 1) -= V(c, j);
      }
    // coefficient-orthonormal columns give tr(Z^T Z) = 2; renormalize to 1
    out.elements.push_back(Z / std::sqrt(2.0));
  }
  return out;
}

double g_perp_pairing(const VcpStructure& S, const AlternatingTensor& beta,
                      const Eigen::MatrixXd& zeta) {
  if (beta.dim() != S.n || zeta.rows() != S.n || zeta.cols() != S.n)
    throw std::invalid_argument("g_perp_pairing: dimension mismatch");
  if (beta.grade() != 2) throw std::invalid_argument("g_perp_pairing: beta must have grade 2");
  AlternatingTensor zbar(S.n, 2);
  for (int p = 1; p <= S.n; ++p)
    for (int q = p + 1; q <= S.n; ++q) {
      // zeta-bar(e_p, e_q) = g(zeta e_p, e_q) = zeta_{qp}
      const double c = zeta(q - 1, p - 1);
      if (c != 0.0) zbar.add_term(AlternatingTensor::mask_of({p, q}), c);
    }
  return inner(beta, zbar);
}

InducedHypersurface induced_hypersurface_vcp(const VcpStructure& S,
                                             const Eigen::VectorXd& nu) {
  if (nu.size() != S.n) throw std::invalid_argument("normal vector has wrong dimension");
  if (nu.norm() < 1e-12) throw std::invalid_argument("normal vector is zero");
  if (std::abs(nu.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("normal vector must be unit");
  const Eigen::MatrixXd basis = orthonormal_complement(
      nu, Eigen::MatrixXd::Identity(S.n, S.n), S.n - 1);
  // phi(u_1, ..., u_r, nu): the normal sits in the last slot, so the
  // first-slot contraction picks up (-1)^r from moving nu across r arguments.
  const double sign = (S.r % 2 == 0) ? 1.0 : -1.0;
  InducedHypersurface out{restrict_to(sign * contract(nu, S.phi), basis), basis};
  return out;
}

}  // namespace crosscal
