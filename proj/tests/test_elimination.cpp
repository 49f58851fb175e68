#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sosq/elimination.hpp"

using namespace sosq;

namespace {

Coefficient C(long n) { return Coefficient(n); }
TernaryForm X() { return TernaryForm::variable(0); }
TernaryForm Y() { return TernaryForm::variable(1); }
TernaryForm Z() { return TernaryForm::variable(2); }

TernaryForm cyclic_quartic() {
  TernaryForm x = X(), y = Y(), z = Z();
  TernaryForm s = x * x + y * y + z * z;
  return s * s - C(3) * (pow(x, 3) * y + pow(y, 3) * z + pow(z, 3) * x);
}

TernaryForm random_form(std::mt19937& rng, int degree) {
  std::uniform_int_distribution<int> coef(-5, 5);
  TernaryForm f;
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j)
      f = f + TernaryForm::monomial(i, j, degree - i - j, C(coef(rng)));
  return f;
}

BinaryForm bin(std::initializer_list<std::pair<std::array<int, 2>, long>> t) {
  BinaryForm b;
  for (const auto& [e, c] : t) b.set_coeff(e[0], e[1], C(c));
  return b;
}

}  // namespace

TEST_CASE("ternary resultant: linear cases") {
  TernaryForm a = X() - Z();               // x - z
  TernaryForm b = X() - C(2) * Z();        // x - 2z
  TernaryForm r = resultant_ternary(a, b, 0);
  CHECK(r == -Z());
  // shared factor -> zero
  CHECK(resultant_ternary(a * b, a * (Y() + Z()), 0).is_zero());
}

TEST_CASE("ternary resultant is multiplicative") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 5; ++trial) {
    TernaryForm f = random_form(rng, 2), g = random_form(rng, 2),
                h = random_form(rng, 2);
    if (f.degree_in(0) == 0 || g.degree_in(0) == 0 || h.degree_in(0) == 0)
      continue;
    TernaryForm lhs = resultant_ternary(f * g, h, 0);
    TernaryForm rhs = resultant_ternary(f, h, 0) * resultant_ternary(g, h, 0);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quartic resultant identity for the cyclic form") {
  TernaryForm f = cyclic_quartic();
  TernaryForm fx = f.derivative(0);
  TernaryForm R = resultant_ternary(f, fx, 0);

  BinaryForm h = bin({{{4, 0}, 13},
                      {{3, 1}, -18},
                      {{2, 2}, -1},
                      {{1, 3}, -6},
                      {{0, 4}, 13}});
  BinaryForm lin = bin({{{1, 0}, 1}, {{0, 1}, -1}});           // y - z
  BinaryForm cub = bin(
      {{{3, 0}, 1}, {{2, 1}, -5}, {{1, 2}, 6}, {{0, 3}, -1}});  // y^3-5y^2z...
  BinaryForm expected =
      (h * lin * lin * cub * cub) * C(9);
  CHECK(BinaryForm::from_ternary(R) == expected);
}

TEST_CASE("discriminant") {
  BinaryForm p = bin({{{2, 0}, 1}});            // y^2
  BinaryForm q = bin({{{1, 2}, 1}});            // y z^2
  BinaryForm r = bin({{{0, 4}, 1}});            // z^4
  CHECK(discriminant(p, q, r).is_zero());
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int trial = 0; trial < 5; ++trial) {
    BinaryForm a, b, c;
    for (int j = 0; j <= 2; ++j) {
      a.set_coeff(j, 2 - j, C(v(rng)));
      b.set_coeff(j, 2 - j, C(v(rng)));
      c.set_coeff(j, 2 - j, C(v(rng)));
    }
    Coefficient y = C(v(rng)), z = C(v(rng));
    Coefficient lhs = discriminant(a, b, c).evaluate(y, z);
    Coefficient rhs = a.evaluate(y, z) * c.evaluate(y, z) -
                      b.evaluate(y, z) * b.evaluate(y, z);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("squarefree decomposition of ternary forms") {
  TernaryForm x = X(), y = Y(), z = Z();
  TernaryForm s = x * x + y * y + z * z;
  TernaryForm f = (x - y) * (x - y) * s;
  auto dec = squarefree_decompose_ternary(f);
  TernaryForm prod = TernaryForm::monomial(0, 0, 0, C(1));
  for (const auto& [fac, mult] : dec)
    for (int i = 0; i < mult; ++i) prod = prod * fac;
  CHECK(prod == f);
  bool has_sq_linear = false, has_quadric = false;
  for (const auto& [fac, mult] : dec) {
    if (mult == 2 && fac.degree() == 1) has_sq_linear = true;
    if (mult == 1 && fac.degree() == 2) has_quadric = true;
  }
  CHECK(has_sq_linear);
  CHECK(has_quadric);

  // monomial powers
  auto dec2 = squarefree_decompose_ternary(x * x * y * y);
  TernaryForm prod2 = TernaryForm::monomial(0, 0, 0, C(1));
  for (const auto& [fac, mult] : dec2)
    for (int i = 0; i < mult; ++i) prod2 = prod2 * fac;
  CHECK(prod2 == x * x * y * y);

  // squarefree part drops multiplicities
  TernaryForm sf = squarefree_part_ternary(f);
  CHECK((sf == (x - y) * s || sf == (y - x) * s));
}

TEST_CASE("squarefree decomposition: random planted squares") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 8; ++trial) {
    TernaryForm g;
    do {
      g = TernaryForm::monomial(1, 0, 0, C(v(rng))) +
          TernaryForm::monomial(0, 1, 0, C(v(rng))) +
          TernaryForm::monomial(0, 0, 1, C(v(rng)));
    } while (g.is_zero());
    TernaryForm h = random_form(rng, 2);
    if (h.is_zero()) continue;
    TernaryForm f = g * g * h;
    auto dec = squarefree_decompose_ternary(f);
    TernaryForm prod = TernaryForm::monomial(0, 0, 0, C(1));
    for (const auto& [fac, mult] : dec)
      for (int i = 0; i < mult; ++i) prod = prod * fac;
    CHECK(prod == f);
  }
}

TEST_CASE("eliminate_system basics") {
  // {x^2 + y^2 - 1, x - y}, eliminate x -> 2y^2 - 1 up to constant
  MPoly x = MPoly::variable(0), y = MPoly::variable(1);
  MPoly p1 = x * x + y * y - MPoly(Rational(1));
  MPoly p2 = x - y;
  UniPoly e = eliminate_system({p1, p2}, {0}, 1);
  UniPoly expected({Rational(-1), Rational(0), Rational(2)});
  CHECK((e == expected || e == -expected));

  // planted {x - 3, y - 5}: eliminating x leaves y - 5
  MPoly q1 = x - MPoly(Rational(3));
  MPoly q2 = y - MPoly(Rational(5));
  UniPoly e2 = eliminate_system({q1, q2}, {0}, 1);
  CHECK(e2.eval(Rational(5)) == 0);
  CHECK(e2.degree() == 1);
}

TEST_CASE("eliminate_system on a two-step chain") {
  // {x - y, y - z^2, z - 2} eliminate x then y -> root z = 2 ... here keep
  // var z as result: x - y and y - z^2 give x - z^2; with z - 2 the root 2.
  MPoly x = MPoly::variable(0), y = MPoly::variable(1), z = MPoly::variable(2);
  UniPoly e = eliminate_system({x - y, y - z * z, z - MPoly(Rational(2))},
                               {0, 1}, 2);
  CHECK(e.eval(Rational(2)) == 0);
}

TEST_CASE("mpoly exact division via resultant ring") {
  // subresultant PRS over MPoly exercises exact_div; cross-check against
  // the Sylvester determinant
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int trial = 0; trial < 5; ++trial) {
    MPoly f, g;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        MPoly::Exp e{i, j, 0, 0};
        f = f + MPoly::monomial(e, Rational(v(rng)));
        g = g + MPoly::monomial(e, Rational(v(rng)));
      }
    if (f.degree_in(0) == 0 || g.degree_in(0) == 0) continue;
    PolyOver<MPoly> A, B;
    for (int k = 0; k <= f.degree_in(0); ++k) A.set_coeff(k, f.coeff_of(0, k));
    for (int k = 0; k <= g.degree_in(0); ++k) B.set_coeff(k, g.coeff_of(0, k));
    MPoly r1 = resultant_subres<MPoly>(A, B);
    MPoly r2 = bareiss_det(sylvester_matrix(A, B));
    CHECK(r1 == r2);
  }
}
