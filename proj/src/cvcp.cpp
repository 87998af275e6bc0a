#include "crosscal/cvcp.hpp"

#include <cmath>
#include <stdexcept>

#include "crosscal/forms.hpp"
#include "crosscal/gram.hpp"

namespace crosscal {

ComplexAlternatingTensor dz_form(int n, int j) {
  if (j < 1 || j > n) throw std::invalid_argument("dz index out of range");
  return ComplexAlternatingTensor(AlternatingTensor::basis(2 * n, {2 * j - 1}),
                                  AlternatingTensor::basis(2 * n, {2 * j}));
}

CVcpStructure make_cvcp(CVcpKind kind, int param) {
  if (param < 1) throw std::invalid_argument("complex structure parameter must be >= 1");
  if (kind == CVcpKind::CalabiYau) {
    const int n = param, N = 2 * param;
    ComplexAlternatingTensor O =
        ComplexAlternatingTensor::real(AlternatingTensor::scalar(N, 1.0));
    for (int j = 1; j <= n; ++j) O = wedge(O, dz_form(n, j));
    return {kind,
            n,
            0,
            N,
            n - 1,
            standard_complex_structure(n),
            kahler_form(n),
            std::move(O),
            AlternatingTensor(N, 2),
            AlternatingTensor(N, 2),
            "cy:" + std::to_string(param)};
  }
  const int m = param, n = 2 * param, N = 2 * n;
  ComplexAlternatingTensor O(AlternatingTensor(N, 2), AlternatingTensor(N, 2));
  for (int j = 1; j <= m; ++j) O += wedge(dz_form(n, 2 * j - 1), dz_form(n, 2 * j));
  AlternatingTensor omega_I = O.re();
  AlternatingTensor omega_K = -1.0 * O.im();  // Omega = omega_I - i omega_K
  return {kind,
          n,
          m,
          N,
          1,
          standard_complex_structure(n),
          kahler_form(n),
          std::move(O),
          std::move(omega_I),
          std::move(omega_K),
          "hk:" + std::to_string(param)};
}

CVcpStructure cvcp_from_name(const std::string& name) {
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    int param = 0;
    try {
      param = std::stoi(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad structure parameter in '" + name + "'");
    }
    if (head == "cy") return make_cvcp(CVcpKind::CalabiYau, param);
    if (head == "hk") return make_cvcp(CVcpKind::Hyperkahler, param);
  }
  throw std::invalid_argument("unknown complex structure selector '" + name + "'");
}

namespace {

// Orthonormal 2r-frame closed under J: pairs (a_i, J a_i).  Each new a is a
// Gaussian draw projected off the previously chosen J-invariant span (which
// keeps J a orthogonal to it as well); near-degenerate draws are redrawn.
Eigen::MatrixXd random_j_closed_pairs(const Eigen::MatrixXd& J, int r, Rng& rng) {
  const int N = static_cast<int>(J.rows());
  Eigen::MatrixXd pairs(N, 2 * r);
  int got = 0;
  while (got < r) {
    Eigen::VectorXd a = rng.gaussian_vector(N);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < 2 * got; ++i) a -= pairs.col(i).dot(a) * pairs.col(i);
    const double nrm = a.norm();
    if (nrm < 1e-8) continue;
    a /= nrm;
    pairs.col(2 * got) = a;
    pairs.col(2 * got + 1) = J * a;
    ++got;
  }
  return pairs;
}

}  // namespace

double cvcp_defect(const Eigen::MatrixXd& J, const ComplexAlternatingTensor& Omega, int fold,
                   int samples, std::uint64_t seed) {
  if (Omega.grade() != fold + 1)
    throw std::invalid_argument("cvcp_defect: grade(Omega) must equal fold + 1");
  const double target = std::pow(2.0, 0.5 * (fold + 1));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const Eigen::MatrixXd pairs = random_j_closed_pairs(J, fold, rng);
    ComplexAlternatingTensor cur = Omega;
    for (int i = 0; i < fold; ++i) {
      // e~ = (a - i J a)/sqrt(2), contracted as p + i q with q = -J a /sqrt(2)
      const Eigen::VectorXd p = inv_sqrt2 * pairs.col(2 * i);
      const Eigen::VectorXd q = -inv_sqrt2 * pairs.col(2 * i + 1);
      cur = contract_complex(p, q, cur);
    }
    worst = std::max(worst, std::abs(norm(cur) - target));
  }
  return worst;
}

double cvcp_defect(const CVcpStructure& S, int samples, std::uint64_t seed) {
  return cvcp_defect(S.J, S.Omega, S.r, samples, seed);
}

double cvcp_type_defect(const Eigen::MatrixXd& J, const ComplexAlternatingTensor& Omega,
                        int samples, std::uint64_t seed) {
  const int N = static_cast<int>(J.rows());
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Eigen::VectorXd v = rng.gaussian_vector(N);
    const double nrm = v.norm();
    if (nrm < 1e-12) continue;
    v /= nrm;
    worst = std::max(worst, norm(contract_complex(v, J * v, Omega)));
  }
  return worst;
}

double cvcp_type_defect(const CVcpStructure& S, int samples, std::uint64_t seed) {
  return cvcp_type_defect(S.J, S.Omega, samples, seed);
}

ComplexAlternatingTensor phase_rotate(const CVcpStructure& S, double theta) {
  return S.Omega * std::complex<double>(std::cos(theta), std::sin(theta));
}

HyperkahlerTriple hk_triple(const CVcpStructure& S) {
  if (S.kind != CVcpKind::Hyperkahler)
    throw std::invalid_argument("hk_triple requires a hyperkahler structure");
  const int N = S.dim_real;
  Eigen::MatrixXd MI = Eigen::MatrixXd::Zero(N, N), MK = Eigen::MatrixXd::Zero(N, N);
  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b) {
      const double ci = S.omega_I.coeff({a, b});
      const double ck = S.omega_K.coeff({a, b});
      MI(a - 1, b - 1) = ci;
      MI(b - 1, a - 1) = -ci;
      MK(a - 1, b - 1) = ck;
      MK(b - 1, a - 1) = -ck;
    }
  // omega(A, B) = g(X A, B) = (X A) . B means M = X^T
  return {MI.transpose(), S.J, MK.transpose()};
}

double hk_matrix_residual(const HyperkahlerTriple& t) {
  const int N = static_cast<int>(t.I.rows());
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(N, N);
  double worst = 0.0;
  auto upd = [&](const Eigen::MatrixXd& M) { worst = std::max(worst, M.cwiseAbs().maxCoeff()); };
  upd(t.I * t.I + Id);
  upd(t.J * t.J + Id);
  upd(t.K * t.K + Id);
  upd(t.I * t.J * t.K + Id);
  upd(t.I * t.J + t.J * t.I);
  upd(t.K * t.J + t.J * t.K);
  upd(t.I + t.K * t.J);
  upd(t.K - t.I * t.J);
  return worst;
}

VolumePairing volume_pairing(const CVcpStructure& S) {
  if (S.kind != CVcpKind::CalabiYau)
    throw std::invalid_argument("volume_pairing requires a Calabi-Yau structure");
  const int n = S.n;
  const ComplexAlternatingTensor P = wedge(S.Omega, conjugate(S.Omega));
  AlternatingTensor wn = AlternatingTensor::scalar(S.dim_real, 1.0);
  for (int j = 0; j < n; ++j) wn = wedge(wn, S.omega);
  const AlternatingTensor::Mask full = (AlternatingTensor::Mask{1} << S.dim_real) - 1;
  const double denom = wn.coeff(full);
  const std::complex<double> c(P.re().coeff(full) / denom, P.im().coeff(full) / denom);
  const double residual = norm(ComplexAlternatingTensor(P.re() - c.real() * wn,
                                                        P.im() - c.imag() * wn));
  // closed form i^n (-1)^{n(n-1)/2} 2^{-n} / n!
  std::complex<double> in(1.0, 0.0);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) in *= i_unit;
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  const double parity = (((n * (n - 1) / 2) % 2) == 0) ? 1.0 : -1.0;
  const std::complex<double> quoted = in * parity / (std::pow(2.0, n) * fact);
  return {c, quoted, residual};
}

}  // namespace crosscal
