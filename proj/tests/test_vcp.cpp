#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crosscal/forms.hpp"
#include "crosscal/rng.hpp"
#include "crosscal/vcp.hpp"

using namespace crosscal;

namespace {

Eigen::VectorXd unit(int n, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v[i - 1] = 1.0;
  return v;
}

const std::vector<VcpStructure>& all_structures() {
  static const std::vector<VcpStructure> s = {
      make_structure(VcpKind::Complex, 3), make_structure(VcpKind::Volume, 5),
      make_structure(VcpKind::G2), make_structure(VcpKind::Spin7)};
  return s;
}

}  // namespace

TEST_CASE("structure parameters") {
  auto c = make_structure(VcpKind::Complex, 2);
  CHECK(c.n == 4);
  CHECK(c.r == 1);
  auto v = make_structure(VcpKind::Volume, 6);
  CHECK(v.n == 6);
  CHECK(v.r == 5);
  auto g = make_structure(VcpKind::G2);
  CHECK(g.n == 7);
  CHECK(g.r == 2);
  auto s = make_structure(VcpKind::Spin7);
  CHECK(s.n == 8);
  CHECK(s.r == 3);
  CHECK(s.phi.coeff({1, 2, 3, 4}) == doctest::Approx(-1.0));
  CHECK(s.phi.coeff({1, 2, 5, 6}) == doctest::Approx(-1.0));
  CHECK_THROWS(make_structure(VcpKind::Complex, 0));
  CHECK_THROWS(make_structure(VcpKind::Volume, 1));
}

TEST_CASE("selector parsing") {
  CHECK(structure_from_name("complex:2").n == 4);
  CHECK(structure_from_name("volume:7").r == 6);
  CHECK(structure_from_name("g2").n == 7);
  CHECK(structure_from_name("spin7").n == 8);
  CHECK_THROWS(structure_from_name("qy:3"));
  CHECK_THROWS(structure_from_name("complex:x"));
}

TEST_CASE("chi on coordinate vectors") {
  auto g = make_structure(VcpKind::G2);
  CHECK((chi(g, {unit(7, 1), unit(7, 2)}) - unit(7, 3)).norm() < 1e-14);
  auto c = make_structure(VcpKind::Complex, 2);
  CHECK((chi(c, {unit(4, 1)}) - unit(4, 2)).norm() < 1e-14);  // J dx^1 = dy^1
  auto v3 = make_structure(VcpKind::Volume, 3);
  CHECK((chi(v3, {unit(3, 1), unit(3, 2)}) - unit(3, 3)).norm() < 1e-14);
  CHECK_THROWS(chi(g, {unit(7, 1)}));            // wrong arity
  CHECK_THROWS(chi(g, {unit(6, 1), unit(6, 2)}));  // wrong dimension
}

TEST_CASE("chi axioms on random tuples") {
  for (const auto& S : all_structures()) {
    Rng rng(21);
    for (int t = 0; t < 500; ++t) {
      std::vector<Eigen::VectorXd> vs;
      Eigen::MatrixXd V(S.n, S.r);
      for (int i = 0; i < S.r; ++i) {
        vs.push_back(rng.gaussian_vector(S.n));
        V.col(i) = vs.back();
      }
      Eigen::VectorXd x = chi(S, vs);
      for (int i = 0; i < S.r; ++i) CHECK(std::abs(x.dot(V.col(i))) < 1e-10);
      CHECK(std::abs(x.norm() - norm(wedge_columns(V))) < 1e-10);
    }
  }
}

TEST_CASE("form defect is tiny for genuine VCP forms") {
  for (const auto& S : all_structures()) {
    FormDefect fd = vcp_form_defect(S.phi, S.r, 2000, 17);
    CHECK(fd.defect < 1e-9);
    CHECK(fd.worst_frame.rows() == S.n);
    CHECK(fd.worst_frame.cols() == S.r);
  }
}

TEST_CASE("form defect detects a broken form") {
  auto bad = g2_three_form();
  bad.add_term({4, 5, 6}, 0.5);  // not a VCP form any more
  FormDefect fd = vcp_form_defect(bad, 2, 500, 3);
  CHECK(fd.defect > 1e-3);
}

TEST_CASE("form defect at fold zero checks the norm") {
  auto dx1 = AlternatingTensor::basis(5, {1});
  CHECK(vcp_form_defect(dx1, 0, 10, 1).defect < 1e-15);
  auto half = AlternatingTensor::basis(5, {1}, 0.5);
  CHECK(vcp_form_defect(half, 0, 10, 1).defect == doctest::Approx(0.5));
}

TEST_CASE("tau vanishes exactly on instanton tuples") {
  auto g = make_structure(VcpKind::G2);
  auto t = tau(g, {unit(7, 1), unit(7, 2), unit(7, 3)});
  CHECK(norm(t) < 1e-14);
  auto s = make_structure(VcpKind::Spin7);
  auto ts = tau(s, {unit(8, 1), unit(8, 2), unit(8, 3), unit(8, 4)});
  CHECK(norm(ts) < 1e-14);
}

TEST_CASE("tau norm identity on random tuples") {
  for (const auto& S : all_structures()) {
    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
      std::vector<Eigen::VectorXd> vs;
      Eigen::MatrixXd V(S.n, S.r + 1);
      for (int i = 0; i < S.r + 1; ++i) {
        vs.push_back(rng.gaussian_vector(S.n));
        V.col(i) = vs.back();
      }
      double cal = evaluate(S.phi, vs);
      auto tt = tau(S, vs);
      double gram = (V.transpose() * V).determinant();
      CHECK(std::abs(cal * cal + inner(tt, tt) - gram) < 1e-9);
    }
  }
}

TEST_CASE("automorphism algebra dimensions and gaps") {
  for (int m = 1; m <= 3; ++m) {
    auto L = automorphism_algebra(make_structure(VcpKind::Complex, m));
    CHECK(L.dim == m * m);
    CHECK(L.spectral_gap > 1e6);
  }
  for (int n = 3; n <= 8; ++n) {
    auto L = automorphism_algebra(make_structure(VcpKind::Volume, n));
    CHECK(L.dim == n * (n - 1) / 2);
    CHECK(L.spectral_gap > 1e6);
  }
  auto Lg = automorphism_algebra(make_structure(VcpKind::G2));
  CHECK(Lg.dim == 14);
  CHECK(Lg.spectral_gap > 1e6);
  auto Ls = automorphism_algebra(make_structure(VcpKind::Spin7));
  CHECK(Ls.dim == 21);
  CHECK(Ls.spectral_gap > 1e6);
}

TEST_CASE("automorphism elements are skew, normalized derivations") {
  for (const auto& S : all_structures()) {
    auto L = automorphism_algebra(S);
    Rng rng(41);
    for (const auto& Z : L.elements) {
      CHECK((Z + Z.transpose()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((Z.transpose() * Z).trace() == doctest::Approx(1.0).epsilon(1e-9));
      // derivation property on a random tuple
      std::vector<Eigen::VectorXd> vs;
      for (int i = 0; i < S.r + 1; ++i) vs.push_back(rng.gaussian_vector(S.n));
      double total = 0.0;
      for (int i = 0; i < S.r + 1; ++i) {
        auto ws = vs;
        ws[i] = Z * vs[i];
        total += evaluate(S.phi, ws);
      }
      CHECK(std::abs(total) < 1e-9);
    }
  }
}

TEST_CASE("tau is orthogonal to the automorphism algebra") {
  for (const auto& S : all_structures()) {
    auto L = automorphism_algebra(S);
    Rng rng(51);
    for (int t = 0; t < 100; ++t) {
      std::vector<Eigen::VectorXd> vs;
      for (int i = 0; i < S.r + 1; ++i) vs.push_back(rng.gaussian_vector(S.n));
      auto tt = tau(S, vs);
      for (const auto& Z : L.elements)
        CHECK(std::abs(g_perp_pairing(S, tt, Z)) < 1e-9);
    }
  }
}

TEST_CASE("pairing convention: a quarter turn pairs positively with e1^e2") {
  auto S = make_structure(VcpKind::Complex, 2);
  Eigen::MatrixXd zeta = Eigen::MatrixXd::Zero(4, 4);
  zeta(1, 0) = 1.0;  // e1 -> e2
  zeta(0, 1) = -1.0;
  Eigen::MatrixXd cols(4, 2);
  cols.col(0) = unit(4, 1);
  cols.col(1) = unit(4, 2);
  auto beta = wedge_columns(cols);
  CHECK(g_perp_pairing(S, beta, zeta) == doctest::Approx(1.0));
}

TEST_CASE("induced hypersurface form for G2 along e7") {
  auto S = make_structure(VcpKind::G2);
  auto ih = induced_hypersurface_vcp(S, unit(7, 7));
  CHECK(ih.form.dim() == 6);
  CHECK(ih.form.grade() == 2);
  CHECK(ih.form.coeff({1, 6}) == doctest::Approx(-1.0));
  CHECK(ih.form.coeff({2, 5}) == doctest::Approx(1.0));
  CHECK(ih.form.coeff({3, 4}) == doctest::Approx(1.0));
  CHECK(ih.form.terms().size() == 3);
  FormDefect fd = vcp_form_defect(ih.form, 1, 1000, 5);
  CHECK(fd.defect < 1e-9);
}

TEST_CASE("induced hypersurface form for Spin7 along e8 is G2-type") {
  auto S = make_structure(VcpKind::Spin7);
  auto ih = induced_hypersurface_vcp(S, unit(8, 8));
  CHECK(ih.form.dim() == 7);
  CHECK(ih.form.grade() == 3);
  CHECK(ih.form.coeff({1, 2, 7}) == doctest::Approx(1.0));
  CHECK(ih.form.coeff({1, 3, 6}) == doctest::Approx(-1.0));
  CHECK(ih.form.coeff({1, 4, 5}) == doctest::Approx(-1.0));
  CHECK(ih.form.coeff({2, 3, 5}) == doctest::Approx(1.0));
  CHECK(ih.form.coeff({2, 4, 6}) == doctest::Approx(-1.0));
  CHECK(ih.form.coeff({3, 4, 7}) == doctest::Approx(-1.0));
  CHECK(ih.form.coeff({5, 6, 7}) == doctest::Approx(-1.0));
  CHECK(ih.form.terms().size() == 7);
  FormDefect fd = vcp_form_defect(ih.form, 2, 1000, 5);
  CHECK(fd.defect < 1e-9);
}

TEST_CASE("induced hypersurface form for a volume structure") {
  auto S = make_structure(VcpKind::Volume, 4);
  auto ih = induced_hypersurface_vcp(S, unit(4, 4));
  CHECK(ih.form.dim() == 3);
  CHECK(ih.form.coeff({1, 2, 3}) == doctest::Approx(1.0));
}

TEST_CASE("induced hypersurface along a generic unit normal") {
  auto S = make_structure(VcpKind::G2);
  Rng rng(61);
  Eigen::VectorXd nu = rng.gaussian_vector(7).normalized();
  auto ih = induced_hypersurface_vcp(S, nu);
  CHECK((ih.basis.transpose() * ih.basis -
         Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((ih.basis.transpose() * nu).cwiseAbs().maxCoeff() < 1e-12);
  FormDefect fd = vcp_form_defect(ih.form, 1, 500, 9);
  CHECK(fd.defect < 1e-9);
  CHECK_THROWS(induced_hypersurface_vcp(S, 2.0 * nu));  // not unit
}
