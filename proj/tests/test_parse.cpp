#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosq/parse.hpp"

using namespace sosq;

namespace {

TernaryForm X() { return TernaryForm::variable(0); }
TernaryForm Y() { return TernaryForm::variable(1); }
TernaryForm Z() { return TernaryForm::variable(2); }
Coefficient Q(long n, long d = 1) { return Coefficient(Rational(n, d)); }

size_t error_pos(const std::string& text) {
  try {
    parse_polynomial(text);
  } catch (const ParseError& e) {
    return e.position;
  }
  return static_cast<size_t>(-2);
}

}  // namespace

TEST_CASE("literals, variables and precedence") {
  CHECK(parse_polynomial("x^4") == pow(X(), 4));
  CHECK(parse_polynomial("7/2*x^2*y^2") == pow(X() * Y(), 2) * Q(7, 2));
  CHECK(parse_polynomial("x*y*z*x") == pow(X(), 2) * Y() * Z());
  CHECK(parse_polynomial("2*x^2 + 3*y^2 - z^2") ==
        pow(X(), 2) * Q(2) + pow(Y(), 2) * Q(3) - pow(Z(), 2));
  CHECK(parse_polynomial("-x^2 + y^2") == pow(Y(), 2) - pow(X(), 2));
  CHECK(parse_polynomial("  ( x + y ) ^ 2  ") == pow(X() + Y(), 2));
  CHECK(parse_polynomial("0*x + 0*y") == TernaryForm());
  CHECK(parse_polynomial("3/6*x") == X() * Q(1, 2));
}

TEST_CASE("powers bind tighter than products, products than sums") {
  CHECK(parse_polynomial("2*x^2") == pow(X(), 2) * Q(2));
  CHECK(parse_polynomial("(2*x)^2") == pow(X(), 2) * Q(4));
  CHECK(parse_polynomial("x^2*y^2 + z^4") ==
        pow(X() * Y(), 2) + pow(Z(), 4));
  CHECK(parse_polynomial("x*(y+z)") == X() * Y() + X() * Z());
}

TEST_CASE("exact expansion of nested expressions") {
  TernaryForm f = parse_polynomial(
      "4*(x^4+y^4+z^4)+21*(x*y+y*z+z*x)^2"
      "-10*(x^2+y^2+z^2)*(x*y+y*z+z*x)-37*x*y*z*(x+y+z)");
  TernaryForm s = pow(X(), 2) + pow(Y(), 2) + pow(Z(), 2);
  TernaryForm m = X() * Y() + Y() * Z() + Z() * X();
  TernaryForm g = (pow(X(), 4) + pow(Y(), 4) + pow(Z(), 4)) * Q(4) +
                  pow(m, 2) * Q(21) - s * m * Q(10) -
                  X() * Y() * Z() * (X() + Y() + Z()) * Q(37);
  CHECK(f == g);
  CHECK(f.degree() == 4);

  TernaryForm h = parse_polynomial("(x^2+y^2+z^2)^2-3*(x^3*y+y^3*z+z^3*x)");
  CHECK(h == s * s - (pow(X(), 3) * Y() + pow(Y(), 3) * Z() +
                      pow(Z(), 3) * X()) * Q(3));
}

TEST_CASE("homogeneity is required") {
  CHECK_THROWS_AS(parse_polynomial("x^4+y^3"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x+1"), ParseError);
  CHECK(error_pos("x^4+y^3") == std::string::npos);
  // cancellation of the inhomogeneous part is not enough: the check sees
  // only the expanded result, so an exact cancellation is fine
  CHECK(parse_polynomial("(x^2 + y) * x^2 - y*x^2") == pow(X(), 4));
}

TEST_CASE("syntax errors carry a position") {
  CHECK(error_pos("") == 0);
  CHECK(error_pos("x^4 + ") == 6);
  CHECK(error_pos("x^") == 2);
  CHECK(error_pos("(x^2") == 4);
  CHECK(error_pos("x^4 $") == 4);
  CHECK(error_pos("x/2") == 1);
  CHECK(error_pos("x^4 + 1/0*y^4") == 8);
  CHECK(error_pos("x^65") == 2);
  CHECK(error_pos("x*-y") == 2);
  CHECK_THROWS_WITH(parse_polynomial("x^4 $"),
                    "unexpected trailing input at position 5");
}

TEST_CASE("parse-render-parse is a fixed point") {
  const char* inputs[] = {
      "x^4",
      "x^4 - y^4",
      "-x^4 + 3/2*x^2*y^2 - z^4",
      "4*(x^4+y^4+z^4)+21*(x*y+y*z+z*x)^2"
      "-10*(x^2+y^2+z^2)*(x*y+y*z+z*x)-37*x*y*z*(x+y+z)",
      "(x^2+y^2+z^2)^2-3*(x^3*y+y^3*z+z^3*x)",
      "0",
      "x*y*z*(x+y+z)",
  };
  for (const char* in : inputs) {
    TernaryForm f = parse_polynomial(in);
    std::string once = f.to_string();
    TernaryForm g = parse_polynomial(once);
    CHECK(g == f);
    CHECK(g.to_string() == once);
  }
}
