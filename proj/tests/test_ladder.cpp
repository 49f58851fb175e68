#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosq/ladder.hpp"

using namespace sosq;

namespace {

Coefficient C(long n) { return Coefficient(n); }
Coefficient Q(long n, long d) { return Coefficient(Rational(n, d)); }
TernaryForm X() { return TernaryForm::variable(0); }
TernaryForm Y() { return TernaryForm::variable(1); }
TernaryForm Z() { return TernaryForm::variable(2); }
TernaryForm S() { return X() * X() + Y() * Y() + Z() * Z(); }

BinaryForm byz(int j, int k) {  // y^j z^k
  BinaryForm b;
  b.set_coeff(j, k, Coefficient(1));
  return b;
}

Coefficient sqrt2() {
  UniPoly d({Rational(-2), Rational(0), Rational(1)});
  return RealAlgebraic::generator(
      NumberField::make(d, Rational(1), Rational(2)));
}

TernaryForm expand_step(const LadderStep& st) {
  TernaryForm sum = st.residual;
  for (const auto& t : st.terms) sum = sum + t.form * t.form * t.weight;
  return sum;
}

bool has_lemma(const Certificate& c, const std::string& name) {
  for (const auto& s : c.trace)
    if (s.lemma == name) return true;
  return false;
}

}  // namespace

TEST_CASE("circle minima of binary quartic ratios") {
  BinaryForm c2 = byz(2, 0) + byz(0, 2);
  CHECK(min_binary_on_circle(c2 * c2, c2 * c2) == RealAlgebraic(1));
  BinaryForm h = byz(4, 0) + byz(0, 4);
  CHECK(min_binary_on_circle(h, c2 * c2) == RealAlgebraic(Rational(1, 2)));
  CHECK(min_binary_on_circle(BinaryForm(), c2 * c2) == RealAlgebraic(0));
  // indefinite numerator: the minimum is negative
  BinaryForm ind = byz(4, 0) - byz(2, 2) + byz(0, 4);
  BinaryForm w = c2 * c2;
  RealAlgebraic m = min_binary_on_circle(byz(2, 2) * Coefficient(-1), w);
  CHECK(m.sign() < 0);
  CHECK(min_binary_on_circle(ind, w).sign() > 0);
}

TEST_CASE("sphere minimum: scaled squares take the shortcut") {
  SphereMinimum m = min_on_sphere(S() * S() * C(2));
  CHECK(m.exact);
  CHECK(m.value == RealAlgebraic(2));
  CHECK(m.enclosure.first == Rational(2));
  CHECK(m.enclosure.second == Rational(2));
}

TEST_CASE("sphere minimum of x^4 + y^4 + z^4 is 1/3") {
  TernaryForm f = pow(X(), 4) + pow(Y(), 4) + pow(Z(), 4);
  SphereMinimum m = min_on_sphere(f);
  REQUIRE(m.exact);
  CHECK(m.value == RealAlgebraic(Rational(1, 3)));
  // the witness attains the minimum: f(w) = value * s(w)^2 exactly
  const auto& w = m.witness.coords;
  Coefficient sw = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
  CHECK((f.evaluate(w[0], w[1], w[2]) - sw * sw * Q(1, 3)).is_zero());
  CHECK(sgn(m.enclosure.first) > 0);
  CHECK(m.enclosure.first <= Rational(1, 3));
  CHECK(Rational(1, 3) <= m.enclosure.second);
}

TEST_CASE("is_psd on structured inputs") {
  CHECK(is_psd(TernaryForm()));
  CHECK(is_psd(S()));
  CHECK(!is_psd(X() * X() - Y() * Y()));
  CHECK(is_psd(S() * S()));
  CHECK(is_psd(pow(X(), 4) + pow(Y(), 4) + pow(Z(), 4)));
  TernaryForm d = X() * X() - Y() * Y();
  CHECK(is_psd(d * d));
  CHECK(!is_psd(d * d * C(-1)));
  CHECK(!is_psd(pow(X(), 4) - C(3) * X() * X() * Y() * Y() + pow(Y(), 4) +
                pow(Z(), 4)));
  CHECK(!is_psd(pow(X(), 3)));  // odd degree changes sign
}

TEST_CASE("lemma 1 peels the sphere minimum") {
  LadderStep st = lemma1_step(S() * S() * C(2));
  REQUIRE(st.terms.size() == 1);
  CHECK(st.terms[0].weight == C(2));
  CHECK(st.terms[0].form == S());
  CHECK(st.residual.is_zero());

  TernaryForm f = pow(X(), 4) + pow(Y(), 4) + pow(Z(), 4);
  LadderStep st2 = lemma1_step(f);
  REQUIRE(st2.terms.size() == 1);
  CHECK(st2.terms[0].weight == Q(1, 3));
  CHECK(expand_step(st2) == f);
  // the residual vanishes on the diagonal directions
  CHECK(st2.residual.evaluate(C(1), C(1), C(1)).is_zero());
}

TEST_CASE("lemma 2, vanishing leading coefficient") {
  // f = (y^2+z^2)^2 + y^4 with its only x-fiber zero at (1,0,0)
  TernaryForm c2 = Y() * Y() + Z() * Z();
  TernaryForm f = c2 * c2 + pow(Y(), 4);
  ProjectiveZero zero;  // (1, 0, 0)
  LadderStep st = lemma2_step(f, zero);
  REQUIRE(st.terms.size() == 1);
  CHECK(st.terms[0].weight == C(1));
  CHECK(st.terms[0].form == c2);
  CHECK(st.residual == pow(Y(), 4));
}

TEST_CASE("lemma 2, rank-one leading coefficient") {
  // f = (xy + z^2)^2 + (y^2 - z^2)^2
  TernaryForm a = X() * Y() + Z() * Z();
  TernaryForm b = Y() * Y() - Z() * Z();
  TernaryForm f = a * a + b * b;
  ProjectiveZero zero;  // (1, 0, 0): both squares vanish
  REQUIRE(f.evaluate(C(1), C(0), C(0)).is_zero());
  LadderStep st = lemma2_step(f, zero);
  REQUIRE(st.terms.size() == 1);
  CHECK(st.terms[0].weight == C(1));
  CHECK(st.terms[0].form == a);
  CHECK(st.residual == b * b);
  CHECK(expand_step(st) == f);
}

TEST_CASE("lemma 2, rank-two leading coefficient") {
  // p = y^2+z^2, q = y p, r = 2y^4+2y^2z^2+z^4: the discriminant ratio
  // (pr - q^2)/p^3 = 1 - (yz/p)^2 attains its minimum 3/4 at y = +-z
  TernaryForm c2 = Y() * Y() + Z() * Z();
  TernaryForm f = X() * X() * c2 + C(2) * X() * Y() * c2 +
                  C(2) * pow(Y(), 4) + C(2) * Y() * Y() * Z() * Z() +
                  pow(Z(), 4);
  ProjectiveZero zero;  // (1, 0, 0)
  LadderStep st = lemma2_step(f, zero);
  REQUIRE(st.terms.size() == 1);
  CHECK(st.terms[0].weight == Q(3, 4));
  CHECK(st.terms[0].form == c2);
  CHECK(expand_step(st) == f);
  // the residual picked up new zeros away from (1,0,0)
  CHECK(st.residual.evaluate(C(-1), C(1), C(1)).is_zero());
  CHECK(st.residual.evaluate(C(1), C(-1), C(1)).is_zero());

  Certificate cert = decompose(f);
  CHECK(cert.verified);
  CHECK(has_lemma(cert, "L2"));
}

TEST_CASE("lemma 3, rank-one trailing coefficient over a quadratic field") {
  // f = (sqrt2 z^2 + xy)^2 + x^2 z^2, zeros at (1,0,0) and (0,1,0)
  Coefficient r2 = sqrt2();
  TernaryForm a = Z() * Z() * r2 + X() * Y();
  TernaryForm f = a * a + X() * X() * Z() * Z();
  ProjectiveZero z1;  // (1,0,0)
  ProjectiveZero z2 = ProjectiveZero::from_triple(C(0), C(1), C(0));
  LadderStep st = lemma3_step(f, z1, z2);
  REQUIRE(st.terms.size() == 1);
  CHECK(st.terms[0].weight == C(2));
  CHECK(st.residual == X() * X() * Z() * Z());
  CHECK(expand_step(st) == f);
}

TEST_CASE("lemma 3, full cascade stays rational") {
  // p = r = y^2+z^2, q = yz: one shear and one circle-minimum subtraction
  TernaryForm c2 = Y() * Y() + Z() * Z();
  TernaryForm f =
      X() * X() * c2 + C(2) * X() * Y() * Z() * Z() + Z() * Z() * c2;
  REQUIRE(f.evaluate(C(1), C(0), C(0)).is_zero());
  REQUIRE(f.evaluate(C(0), C(1), C(0)).is_zero());
  ProjectiveZero z1;
  ProjectiveZero z2 = ProjectiveZero::from_triple(C(0), C(1), C(0));
  LadderStep st = lemma3_step(f, z1, z2);
  CHECK(!st.terms.empty());
  CHECK(expand_step(st) == f);
  for (const auto& t : st.terms) {
    CHECK(t.weight.is_rational());
    CHECK(t.weight.sign() > 0);
  }

  Certificate cert = decompose(f);
  CHECK(cert.verified);
  CHECK(has_lemma(cert, "L3"));
}

TEST_CASE("lemma 4 via the product-basis Gram matrix") {
  TernaryForm f = X() * X() * Y() * Y() + Y() * Y() * Z() * Z() +
                  Z() * Z() * X() * X();
  Certificate cert = decompose(f);
  CHECK(cert.verified);
  CHECK(has_lemma(cert, "L4"));
}

TEST_CASE("lemma 4, repeated line times a definite conic") {
  TernaryForm l = Y() - Z();
  TernaryForm f = l * l * S();
  Certificate cert = decompose(f);
  CHECK(cert.verified);
  REQUIRE(cert.terms.size() == 3);
  for (const auto& t : cert.terms)
    CHECK((t.form.evaluate(C(0), C(1), C(1))).is_zero());
}

TEST_CASE("perfect squares decompose directly") {
  TernaryForm d = X() * X() - Y() * Y();
  Certificate cert = decompose(d * d);
  CHECK(cert.verified);
  REQUIRE(cert.terms.size() == 1);
  CHECK(cert.terms[0].weight == C(1));
  REQUIRE(cert.trace.size() == 1);
  CHECK(cert.trace[0].lemma == "direct");

  Certificate sq = decompose(S() * S());
  CHECK(sq.verified);
  REQUIRE(sq.terms.size() == 1);
  CHECK(sq.terms[0].form == S());
}

TEST_CASE("the zero form yields an empty verified certificate") {
  Certificate cert = decompose(TernaryForm());
  CHECK(cert.verified);
  CHECK(cert.terms.empty());
  CHECK(cert.trace.empty());
}

TEST_CASE("the four-zero quartic goes through lemma 4") {
  TernaryForm x = X(), y = Y(), z = Z();
  TernaryForm e1 = x * y + y * z + z * x;
  TernaryForm f = C(4) * (pow(x, 4) + pow(y, 4) + pow(z, 4)) +
                  C(21) * e1 * e1 - C(10) * S() * e1 -
                  C(37) * x * y * z * (x + y + z);
  Certificate cert = decompose(f);
  CHECK(cert.verified);
  CHECK(has_lemma(cert, "L4"));
  CHECK(cert.trace.back().zeros_before >= 3);
}

TEST_CASE("negative forms are rejected with an exact witness") {
  TernaryForm f = pow(X(), 4) - C(3) * X() * X() * Y() * Y() + pow(Y(), 4) +
                  pow(Z(), 4);
  bool caught = false;
  try {
    decompose(f);
  } catch (const NotPsdError& e) {
    caught = true;
    const auto& w = e.witness();
    CHECK(f.evaluate(w[0], w[1], w[2]).sign() < 0);
  }
  CHECK(caught);

  bool caught2 = false;
  try {
    decompose(S() * S() * C(-1));
  } catch (const NotPsdError& e) {
    caught2 = true;
    const auto& w = e.witness();
    CHECK((S() * S()).evaluate(w[0], w[1], w[2]).sign() > 0);
  }
  CHECK(caught2);
}

TEST_CASE("certificates expand back to the input exactly") {
  std::vector<TernaryForm> inputs = {
      S() * S(),
      pow(X(), 4) + pow(Y(), 4) + pow(Z(), 4),
      (Y() - Z()) * (Y() - Z()) * S(),
      X() * X() * Y() * Y() + Y() * Y() * Z() * Z() + Z() * Z() * X() * X(),
  };
  for (const TernaryForm& f : inputs) {
    Certificate cert = decompose(f);
    CHECK(cert.verified);
    CHECK(expand(cert) == f);
    for (const auto& t : cert.terms) CHECK(t.weight.sign() > 0);
  }
}
