#include "crosscal/calibrate.hpp"

#include <cmath>
#include <stdexcept>

#include "crosscal/gram.hpp"

namespace crosscal {

namespace {

std::vector<Eigen::VectorXd> columns_of(const Eigen::MatrixXd& M) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(M.cols());
  for (int j = 0; j < M.cols(); ++j) out.push_back(M.col(j));
  return out;
}

}  // namespace

double calibration_value(const AlternatingTensor& phi, const OrientedPlane& P) {
  if (phi.grade() != P.k())
    throw std::invalid_argument("calibration_value: grade(phi) != plane dimension");
  if (phi.dim() != P.n())
    throw std::invalid_argument("calibration_value: ambient dimension mismatch");
  return evaluate(phi, P.frame());
}

InstantonVerdict instanton_test(const VcpStructure& S, const OrientedPlane& P, double tol) {
  if (P.k() != S.r + 1)
    throw std::invalid_argument("instanton_test: plane dimension must be r + 1");
  const double tn = norm(tau(S, columns_of(P.frame())));
  const double cal = calibration_value(S.phi, P);
  const bool inst = tn < tol;
  const bool cal_one = std::abs(std::abs(cal) - 1.0) < tol;
  return {inst, tn, cal, cal_one == inst};
}

BraneVerdict brane_test(const VcpStructure& S, const OrientedPlane& C, double tol) {
  if (C.n() != S.n) throw std::invalid_argument("brane_test: ambient dimension mismatch");
  // A form of grade above the plane dimension restricts to zero identically.
  const double res =
      C.k() < S.phi.grade() ? 0.0 : norm(restrict_to(S.phi, C));
  const bool vanish = res < tol;
  const bool dim_ok = 2 * C.k() == S.n + S.r - 1;
  return {vanish, dim_ok, vanish && dim_ok, res};
}

AlternatingTensor t_map(const VcpStructure& S, const OrientedPlane& C,
                        const Eigen::VectorXd& alpha, double tol) {
  if (alpha.size() != S.n) throw std::invalid_argument("t_map: alpha has wrong dimension");
  if (std::abs(alpha.norm() - 1.0) > tol)
    throw std::invalid_argument("t_map: alpha must be a unit covector");
  if ((C.projector() * alpha).norm() > tol)
    throw std::invalid_argument("t_map: alpha must be normal to C");
  if (!brane_test(S, C, tol).is_brane)
    throw std::invalid_argument("t_map: C is not a brane");

  const int k = C.k();
  AlternatingTensor out(k, S.r);
  std::vector<int> pick(S.r);
  for (int i = 0; i < S.r; ++i) pick[i] = i;
  for (;;) {
    std::vector<Eigen::VectorXd> us;
    us.reserve(S.r);
    for (int i : pick) us.push_back(C.basis_vector(i));
    const double c = alpha.dot(chi(S, us));
    if (std::abs(c) > AlternatingTensor::kZeroThreshold) {
      AlternatingTensor::Mask key = 0;
      for (int i : pick) key |= AlternatingTensor::Mask{1} << i;
      out.add_term(key, c);
    }
    int i = S.r - 1;
    while (i >= 0 && pick[i] == k - S.r + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < S.r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

int hodge_eigen_sign(const AlternatingTensor& a, double tol) {
  const AlternatingTensor star = hodge_star(a);
  if (norm(star - a) < tol) return 1;
  if (norm(star + a) < tol) return -1;
  return 0;
}

TMapDuality t_map_duality(const VcpStructure& S, const OrientedPlane& C, double tol) {
  if (S.r != 2 || C.k() != 4)
    throw std::invalid_argument("t_map_duality: needs a fold-2 structure and a 4-plane");
  const Eigen::MatrixXd normals = orthonormal_complement(
      C.frame(), Eigen::MatrixXd::Identity(S.n, S.n), S.n - C.k());

  auto scan = [&](const OrientedPlane& plane) {
    TMapDuality d{0, false, 0.0};
    int common = 2;  // sentinel: unset
    for (int j = 0; j < normals.cols(); ++j) {
      const AlternatingTensor t = t_map(S, plane, normals.col(j), tol);
      const int s = hodge_eigen_sign(t, tol);
      const double res =
          std::min(norm(hodge_star(t) - t), norm(hodge_star(t) + t));
      d.max_residual = std::max(d.max_residual, res);
      if (s == 0 || (common != 2 && s != common)) {
        d.sign = 0;
        return d;
      }
      common = s;
    }
    d.sign = common == 2 ? 0 : common;
    return d;
  };

  TMapDuality d = scan(C);
  if (d.sign == -1) {
    Eigen::MatrixXd flipped = C.frame();
    flipped.col(flipped.cols() - 1) *= -1.0;
    d = scan(OrientedPlane::from_frame(flipped));
    d.orientation_flipped = true;
  }
  return d;
}

BoundaryOrthogonalityVerdict boundary_orthogonality_check(
    const VcpStructure& S, const OrientedPlane& A, const OrientedPlane& C,
    const std::vector<Eigen::VectorXd>& u, double tol) {
  BoundaryOrthogonalityVerdict v{true, "", 0.0, false};
  auto fail = [&](const std::string& msg) {
    v.preconditions_ok = false;
    v.precondition_message = msg;
    return v;
  };
  if (static_cast<int>(u.size()) != S.r) return fail("need exactly r frame vectors");
  if (A.k() != S.r + 1) return fail("A must have dimension r + 1");
  const double tau_a = norm(tau(S, columns_of(A.frame())));
  if (tau_a > tol) return fail("A is not an instanton plane");
  if (norm(restrict_to(S.phi, C)) > tol) return fail("phi does not vanish on C");
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(u[i].dot(u[j])) > tol) return fail("u vectors not orthonormal");
    if (std::abs(u[i].norm() - 1.0) > tol) return fail("u vectors not unit");
    if ((u[i] - A.projector() * u[i]).norm() > tol) return fail("u vectors not inside A");
    if ((u[i] - C.projector() * u[i]).norm() > tol) return fail("u vectors not inside C");
  }
  v.residual = (C.projector() * chi(S, u)).norm();
  v.orthogonal = v.residual < std::max(tol, 1e-10);
  return v;
}

ComplexPlaneClass classify_complex_plane(const CVcpStructure& S, const OrientedPlane& P,
                                         double theta, double tol) {
  if (P.n() != S.dim_real)
    throw std::invalid_argument("classify_complex_plane: ambient dimension mismatch");
  ComplexPlaneClass c{};
  const ComplexAlternatingTensor rot = phase_rotate(S, theta);

  if (P.k() == S.n) {  // middle-dimensional: slag / dbrane candidates
    c.omega_residual = norm(restrict_to(S.omega, P));
    c.slag_im_residual = norm(restrict_to(rot.im(), P));
    c.slag_value = evaluate(rot.re(), P.frame());
    c.dbrane_residual = norm(restrict_to(rot.re(), P));
    const bool lagr = c.omega_residual < tol;
    c.slag_phase_theta =
        lagr && c.slag_im_residual < tol && std::abs(std::abs(c.slag_value) - 1.0) < tol;
    c.dbrane_phase_theta = lagr && c.dbrane_residual < tol;
  }
  if (P.k() == S.n + S.r - 1) {  // real dimension 2n - 2: N-brane candidate
    c.nbrane_residual =
        std::max(norm(restrict_to(S.Omega.re(), P)), norm(restrict_to(S.Omega.im(), P)));
    const Eigen::MatrixXd Pi = P.projector();
    c.j_invariance = (Pi * S.J * Pi - S.J * Pi).cwiseAbs().maxCoeff();
    c.nbrane = c.nbrane_residual < tol && c.j_invariance < tol;
  }
  return c;
}

HkInstantonVerdict hk_instanton_test(const CVcpStructure& S, const OrientedPlane& P,
                                     double theta, double tol) {
  if (S.kind != CVcpKind::Hyperkahler)
    throw std::invalid_argument("hk_instanton_test requires a hyperkahler structure");
  if (P.k() != 2) throw std::invalid_argument("hk_instanton_test: plane must be 2-dimensional");
  double value = evaluate(phase_rotate(S, theta).re(), P.frame());
  bool flipped = false;
  if (value < 0.0) {
    value = -value;
    flipped = true;
  }
  const bool inst = std::abs(value - 1.0) < tol;
  const HyperkahlerTriple t = hk_triple(S);
  const Eigen::MatrixXd Jt = std::cos(theta) * t.I + std::sin(theta) * t.K;
  const Eigen::MatrixXd Pi = P.projector();
  const bool invariant = (Pi * Jt * Pi - Jt * Pi).cwiseAbs().maxCoeff() < tol;
  return {inst, value, flipped, invariant, inst == invariant};
}

InvolutionVerdict involution_fixed_check(const VcpStructure& S, const Eigen::MatrixXd& sigma,
                                         int samples, std::uint64_t seed, double tol) {
  const int n = S.n;
  if (sigma.rows() != n || sigma.cols() != n)
    throw std::invalid_argument("involution has wrong dimension");
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(n, n);
  if ((sigma * sigma - Id).cwiseAbs().maxCoeff() > 1e-12 ||
      (sigma.transpose() * sigma - Id).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("sigma must be an orthogonal involution");

  double chi_res = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<Eigen::VectorXd> vs, svs;
    for (int i = 0; i < S.r; ++i) {
      vs.push_back(rng.gaussian_vector(n));
      svs.push_back(sigma * vs.back());
    }
    chi_res = std::max(chi_res, (sigma * chi(S, vs) - chi(S, svs)).norm());
  }

  // sigma is symmetric (orthogonal involution), so eigenspaces are clean
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  std::vector<int> plus;
  for (int i = 0; i < n; ++i)
    if (eig.eigenvalues()[i] > 0.0) plus.push_back(i);
  const int fixed_dim = static_cast<int>(plus.size());

  InvolutionVerdict v{chi_res < std::max(tol, 1e-9), chi_res, fixed_dim, false, false};
  if (fixed_dim == S.r + 1) {
    v.check_applicable = true;
    Eigen::MatrixXd frame(n, fixed_dim);
    for (int j = 0; j < fixed_dim; ++j) frame.col(j) = eig.eigenvectors().col(plus[j]);
    v.fixed_is_instanton =
        instanton_test(S, OrientedPlane::from_frame(frame), std::max(tol, 1e-8)).is_instanton;
  }
  return v;
}

}  // namespace crosscal
