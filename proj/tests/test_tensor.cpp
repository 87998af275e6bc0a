#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "crosscal/forms.hpp"
#include "crosscal/rng.hpp"
#include "crosscal/tensor.hpp"

using namespace crosscal;

namespace {

Eigen::VectorXd unit(int n, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v[i - 1] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("basis term sign folds index sorting") {
  auto a = AlternatingTensor::basis(7, {2, 1});
  CHECK(a.coeff({1, 2}) == doctest::Approx(-1.0));
  auto b = AlternatingTensor::basis(7, {3, 1, 2});
  CHECK(b.coeff({1, 2, 3}) == doctest::Approx(1.0));  // cyclic, even permutation
}

TEST_CASE("duplicate index gives the zero tensor") {
  CHECK(AlternatingTensor::basis(5, {1, 1}).is_zero());
}

TEST_CASE("wedge of basis covectors") {
  auto dx1 = AlternatingTensor::basis(4, {1});
  auto dx2 = AlternatingTensor::basis(4, {2});
  auto w = wedge(dx1, dx2);
  CHECK(w.grade() == 2);
  CHECK(w.coeff({1, 2}) == doctest::Approx(1.0));
  auto wr = wedge(dx2, dx1);
  CHECK(wr.coeff({1, 2}) == doctest::Approx(-1.0));

  auto dx13 = AlternatingTensor::basis(4, {1, 3});
  auto v = wedge(dx13, dx2);  // (1,3,2) is an odd shuffle
  CHECK(v.coeff({1, 2, 3}) == doctest::Approx(-1.0));

  auto z = wedge(dx1, dx13);  // repeated index annihilates
  CHECK(z.terms().empty());
}

TEST_CASE("wedge is graded-commutative") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    AlternatingTensor a(6, 2);
    AlternatingTensor b(6, 3);
    a.add_term({1 + (trial % 3), 4}, rng.gaussian());
    a.add_term({2, 5}, rng.gaussian());
    b.add_term({1, 3, 6}, rng.gaussian());
    b.add_term({2, 4, 5}, rng.gaussian());
    auto ab = wedge(a, b);
    auto ba = wedge(b, a);
    for (const auto& [mask, c] : ab.terms())
      CHECK(ba.coeff(mask) == doctest::Approx(c));  // (-1)^{2*3} = +1
  }
}

TEST_CASE("interior product of the G2 form along e7") {
  auto omega = g2_three_form();
  auto c = contract(unit(7, 7), omega);
  CHECK(c.grade() == 2);
  CHECK(c.coeff({1, 6}) == doctest::Approx(-1.0));
  CHECK(c.coeff({2, 5}) == doctest::Approx(1.0));
  CHECK(c.coeff({3, 4}) == doctest::Approx(1.0));
  CHECK(c.terms().size() == 3);
}

TEST_CASE("interior product of the Cayley form along e8") {
  auto theta = cayley_four_form();
  auto c = contract(unit(8, 8), theta);
  CHECK(c.grade() == 3);
  CHECK(c.coeff({1, 2, 7}) == doctest::Approx(-1.0));
  CHECK(c.coeff({1, 3, 6}) == doctest::Approx(1.0));
  CHECK(c.coeff({1, 4, 5}) == doctest::Approx(1.0));
  CHECK(c.coeff({2, 3, 5}) == doctest::Approx(-1.0));
  CHECK(c.coeff({2, 4, 6}) == doctest::Approx(1.0));
  CHECK(c.coeff({3, 4, 7}) == doctest::Approx(1.0));
  CHECK(c.coeff({5, 6, 7}) == doctest::Approx(1.0));
  CHECK(c.terms().size() == 7);
}

TEST_CASE("evaluate chains interior products in argument order") {
  auto omega = g2_three_form();
  CHECK(evaluate(omega, {unit(7, 1), unit(7, 2), unit(7, 3)}) == doctest::Approx(1.0));
  CHECK(evaluate(omega, {unit(7, 2), unit(7, 1), unit(7, 3)}) == doctest::Approx(-1.0));
  CHECK(evaluate(omega, {unit(7, 2), unit(7, 5), unit(7, 7)}) == doctest::Approx(1.0));
  CHECK(evaluate(omega, {unit(7, 1), unit(7, 6), unit(7, 7)}) == doctest::Approx(-1.0));
  CHECK(evaluate(omega, {unit(7, 1), unit(7, 2), unit(7, 4)}) == doctest::Approx(0.0));
}

TEST_CASE("hodge star satisfies a ^ *a = |a|^2 vol") {
  for (int n = 2; n <= 7; ++n) {
    Rng rng(100 + n);
    for (int g = 1; g < n; ++g) {
      AlternatingTensor a(n, g);
      // a couple of random terms
      std::vector<int> idx;
      for (int i = 1; i <= g; ++i) idx.push_back(i);
      a.add_term(idx, rng.gaussian());
      if (g < n) {
        std::vector<int> idx2;
        for (int i = n - g + 1; i <= n; ++i) idx2.push_back(i);
        a.add_term(idx2, rng.gaussian());
      }
      auto star = hodge_star(a);
      CHECK(star.grade() == n - g);
      auto prod = wedge(a, star);
      CHECK(prod.coeff(AlternatingTensor::volume(n).terms().begin()->first) ==
            doctest::Approx(inner(a, a)));
    }
  }
}

TEST_CASE("hodge star in dimension three and seven") {
  auto s = hodge_star(AlternatingTensor::basis(3, {1, 2}));
  CHECK(s.coeff({3}) == doctest::Approx(1.0));
  auto s7 = hodge_star(AlternatingTensor::basis(7, {1, 2, 3}));
  CHECK(s7.coeff({4, 5, 6, 7}) == doctest::Approx(1.0));
}

TEST_CASE("double hodge star has sign (-1)^{k(n-k)}") {
  auto a = AlternatingTensor::basis(5, {2, 4});
  auto ss = hodge_star(hodge_star(a));
  CHECK(ss.coeff({2, 4}) == doctest::Approx(std::pow(-1.0, 2 * 3)));
  auto b = AlternatingTensor::basis(4, {1, 3});
  auto bb = hodge_star(hodge_star(b));
  CHECK(bb.coeff({1, 3}) == doctest::Approx(1.0));
}

TEST_CASE("inner products of the exceptional forms") {
  CHECK(inner(g2_three_form(), g2_three_form()) == doctest::Approx(7.0));
  CHECK(inner(cayley_four_form(), cayley_four_form()) == doctest::Approx(14.0));
  CHECK(norm(g2_three_form()) == doctest::Approx(std::sqrt(7.0)));
}

TEST_CASE("wedge_columns matches the Gram determinant") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd V = rng.gaussian_matrix(6, 3);
    auto xi = wedge_columns(V);
    double gram = (V.transpose() * V).determinant();
    CHECK(inner(xi, xi) == doctest::Approx(gram).epsilon(1e-10));
  }
}

TEST_CASE("restrict_to evaluates on frame subsets") {
  auto omega = g2_three_form();
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(7, 3);
  F(0, 0) = F(1, 1) = F(2, 2) = 1.0;
  auto r = restrict_to(omega, F);
  CHECK(r.dim() == 3);
  CHECK(r.coeff({1, 2, 3}) == doctest::Approx(1.0));

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(7, 4);
  G(3, 0) = G(4, 1) = G(5, 2) = G(6, 3) = 1.0;  // coassociative span
  auto z = restrict_to(omega, G);
  CHECK(z.terms().empty());
}

TEST_CASE("restrict_to validates the frame") {
  auto omega = g2_three_form();
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(7, 3);
  CHECK_THROWS(restrict_to(omega, bad));
  Eigen::MatrixXd small = Eigen::MatrixXd::Zero(7, 2);
  small(0, 0) = small(1, 1) = 1.0;
  CHECK_THROWS(restrict_to(omega, small));  // grade 3 > 2 columns
}

TEST_CASE("prune drops negligible coefficients") {
  AlternatingTensor a(4, 2);
  a.add_term({1, 2}, 1.0);
  a.add_term({3, 4}, 1e-16);
  a.prune();
  CHECK(a.terms().size() == 1);
}

TEST_CASE("add_term accumulates on the same subset") {
  AlternatingTensor a(4, 2);
  a.add_term({1, 2}, 1.0);
  a.add_term({2, 1}, 1.0);  // equals -1 on {1,2}
  a.prune();
  CHECK(a.terms().empty());
}

TEST_CASE("complex tensors multiply and conjugate componentwise") {
  auto re = AlternatingTensor::basis(4, {1, 2});
  auto im = AlternatingTensor::basis(4, {3, 4});
  ComplexAlternatingTensor c(re, im);
  auto cc = conjugate(c);
  CHECK(cc.im().coeff({3, 4}) == doctest::Approx(-1.0));
  ComplexAlternatingTensor ci = c;
  ci *= std::complex<double>(0.0, 1.0);  // i * (re + i im) = -im + i re
  CHECK(ci.re().coeff({3, 4}) == doctest::Approx(-1.0));
  CHECK(ci.im().coeff({1, 2}) == doctest::Approx(1.0));
}

TEST_CASE("complex contraction along p + iq") {
  // iota_{p+iq}(A+iB) = (iota_p A - iota_q B) + i(iota_p B + iota_q A)
  auto A = AlternatingTensor::basis(4, {1, 2});
  auto B = AlternatingTensor::basis(4, {2, 3});
  ComplexAlternatingTensor c(A, B);
  auto out = contract_complex(unit(4, 1), unit(4, 2), c);
  // iota_{e1}A = dx2, iota_{e2}B = dx3, iota_{e1}B = 0, iota_{e2}A = -dx1
  CHECK(out.re().coeff({2}) == doctest::Approx(1.0));
  CHECK(out.re().coeff({3}) == doctest::Approx(-1.0));
  CHECK(out.im().coeff({1}) == doctest::Approx(-1.0));
}

TEST_CASE("complex evaluate returns real and imaginary parts") {
  auto A = AlternatingTensor::basis(4, {1, 3});
  auto B = AlternatingTensor::basis(4, {1, 4});
  ComplexAlternatingTensor c(A, B);
  auto v = evaluate(c, std::vector<Eigen::VectorXd>{unit(4, 1), unit(4, 3)});
  CHECK(v.real() == doctest::Approx(1.0));
  CHECK(v.imag() == doctest::Approx(0.0));
  auto w = evaluate(c, std::vector<Eigen::VectorXd>{unit(4, 1), unit(4, 4)});
  CHECK(w.real() == doctest::Approx(0.0));
  CHECK(w.imag() == doctest::Approx(1.0));
}

TEST_CASE("kahler form pairs coordinate planes") {
  auto om = kahler_form(3);
  CHECK(om.dim() == 6);
  CHECK(om.coeff({1, 2}) == doctest::Approx(1.0));
  CHECK(om.coeff({3, 4}) == doctest::Approx(1.0));
  CHECK(om.coeff({5, 6}) == doctest::Approx(1.0));
  CHECK(om.terms().size() == 3);
}

TEST_CASE("G2 form has exactly the seven signed terms") {
  auto omega = g2_three_form();
  CHECK(omega.terms().size() == 7);
  CHECK(omega.coeff({1, 2, 3}) == doctest::Approx(1.0));
  CHECK(omega.coeff({1, 6, 7}) == doctest::Approx(-1.0));
  CHECK(omega.coeff({1, 4, 5}) == doctest::Approx(1.0));
  CHECK(omega.coeff({2, 5, 7}) == doctest::Approx(1.0));
  CHECK(omega.coeff({2, 4, 6}) == doctest::Approx(1.0));
  CHECK(omega.coeff({3, 5, 6}) == doctest::Approx(-1.0));
  CHECK(omega.coeff({3, 4, 7}) == doctest::Approx(1.0));
}

TEST_CASE("Cayley form expands to the fourteen signed terms") {
  auto theta = cayley_four_form();
  const struct { int a, b, c, d; double s; } expected[] = {
      {1, 2, 3, 4, -1}, {1, 2, 5, 6, -1}, {1, 2, 7, 8, 1},  {1, 3, 5, 7, -1},
      {1, 3, 6, 8, -1}, {1, 4, 5, 8, -1}, {1, 4, 6, 7, 1},  {2, 3, 5, 8, 1},
      {2, 3, 6, 7, -1}, {2, 4, 5, 7, -1}, {2, 4, 6, 8, -1}, {3, 4, 5, 6, 1},
      {3, 4, 7, 8, -1}, {5, 6, 7, 8, -1}};
  CHECK(theta.terms().size() == 14);
  for (const auto& e : expected)
    CHECK(theta.coeff({e.a, e.b, e.c, e.d}) == doctest::Approx(e.s));
}

TEST_CASE("volume form") {
  auto v = volume_form(5);
  CHECK(v.grade() == 5);
  CHECK(v.coeff({1, 2, 3, 4, 5}) == doctest::Approx(1.0));
}

