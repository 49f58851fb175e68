#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "sosq/zerofinder.hpp"

using namespace sosq;

namespace {

Coefficient C(long n) { return Coefficient(n); }
TernaryForm X() { return TernaryForm::variable(0); }
TernaryForm Y() { return TernaryForm::variable(1); }
TernaryForm Z() { return TernaryForm::variable(2); }

// 4(x^4+y^4+z^4) + 21(xy+yz+zx)^2 - 10(x^2+y^2+z^2)(xy+yz+zx) - 37xyz(x+y+z)
TernaryForm quartic_with_four_zeros() {
  TernaryForm x = X(), y = Y(), z = Z();
  TernaryForm e1 = x * y + y * z + z * x;
  TernaryForm s = x * x + y * y + z * z;
  return C(4) * (pow(x, 4) + pow(y, 4) + pow(z, 4)) + C(21) * e1 * e1 -
         C(10) * s * e1 - C(37) * x * y * z * (x + y + z);
}

// (x^2+y^2+z^2)^2 - 3(x^3 y + y^3 z + z^3 x)
TernaryForm cyclic_quartic() {
  TernaryForm x = X(), y = Y(), z = Z();
  TernaryForm s = x * x + y * y + z * z;
  return s * s - C(3) * (pow(x, 3) * y + pow(y, 3) * z + pow(z, 3) * x);
}

// x^4+y^4+z^4+xy^3+xz^3+yz^3-3x^2yz-4xy^2z+2x^2y^2 (strictly positive,
// not a rational sum of squares)
TernaryForm positive_quartic_no_rational_sos() {
  TernaryForm x = X(), y = Y(), z = Z();
  return pow(x, 4) + pow(y, 4) + pow(z, 4) + x * pow(y, 3) + x * pow(z, 3) +
         y * pow(z, 3) - C(3) * x * x * y * z - C(4) * x * y * y * z +
         C(2) * x * x * y * y;
}

ProjectiveZero pt(long x, long y, long z) {
  return ProjectiveZero::from_triple(C(x), C(y), C(z));
}

bool contains(const std::vector<ProjectiveZero>& pts,
              const ProjectiveZero& p) {
  for (const auto& q : pts)
    if (q == p) return true;
  return false;
}

Coefficient eval_point(const TernaryForm& f, const ProjectiveZero& p) {
  return f.evaluate(p.coords[0], p.coords[1], p.coords[2]);
}

}  // namespace

TEST_CASE("projective point normalization and equality") {
  CHECK(pt(2, 4, 2) == pt(1, 2, 1));
  CHECK(pt(3, -6, 0) == pt(-1, 2, 0));
  CHECK(pt(5, 0, 0) == pt(-1, 0, 0));
  CHECK(!(pt(1, 2, 1) == pt(1, 2, 2)));
  CHECK(pt(1, 0, 0).chart == ProjectiveZero::Chart::PointX);
  CHECK(pt(1, 2, 0).chart == ProjectiveZero::Chart::LineAtInfinity);
  CHECK_THROWS_AS(ProjectiveZero::from_triple(C(0), C(0), C(0)), MathError);
}

TEST_CASE("binary roots of y^2 - z^2") {
  BinaryForm b;
  b.set_coeff(2, 0, C(1));
  b.set_coeff(0, 2, C(-1));
  auto roots = binary_projective_roots(b);
  REQUIRE(roots.size() == 2);
  CHECK((roots[0].u + C(1)).is_zero());
  CHECK((roots[0].w - C(1)).is_zero());
  CHECK(roots[0].multiplicity == 1);
  CHECK((roots[1].u - C(1)).is_zero());
  CHECK(roots[1].multiplicity == 1);
}

TEST_CASE("binary roots of planted products with multiplicity and infinity") {
  // y^2 (y - 3z) (2y + z)^2 z
  BinaryForm y, z;
  y.set_coeff(1, 0, C(1));
  z.set_coeff(0, 1, C(1));
  BinaryForm b = y * y * (y - C(3) * z) * (C(2) * y + z) * (C(2) * y + z) * z;
  auto roots = binary_projective_roots(b);
  REQUIRE(roots.size() == 4);
  // ascending in u: -1/2 (mult 2), 0 (mult 2), 3 (mult 1), then (1,0)
  CHECK((roots[0].u + Coefficient(Rational(1, 2))).is_zero());
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].u.is_zero());
  CHECK(roots[1].multiplicity == 2);
  CHECK((roots[2].u - C(3)).is_zero());
  CHECK(roots[2].multiplicity == 1);
  CHECK(roots[3].w.is_zero());
  CHECK(roots[3].multiplicity == 1);
}

TEST_CASE("random planted rational roots are recovered exactly") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> v(-8, 8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> rs;
    BinaryForm y, z;
    y.set_coeff(1, 0, C(1));
    z.set_coeff(0, 1, C(1));
    BinaryForm b;
    b.set_coeff(0, 0, C(1));
    for (int i = 0; i < 4; ++i) {
      int r = v(rng);
      while (std::find(rs.begin(), rs.end(), r) != rs.end()) r = v(rng);
      rs.push_back(r);
      b = b * (y - C(r) * z);
    }
    std::sort(rs.begin(), rs.end());
    auto roots = binary_projective_roots(b);
    REQUIRE(roots.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK((roots[i].u - C(rs[i])).is_zero());
      CHECK((roots[i].w - C(1)).is_zero());
    }
  }
}

TEST_CASE("strict positivity of binary forms") {
  BinaryForm h;
  h.set_coeff(4, 0, C(13));
  h.set_coeff(3, 1, C(-18));
  h.set_coeff(2, 2, C(-1));
  h.set_coeff(1, 3, C(-6));
  h.set_coeff(0, 4, C(13));
  CHECK(is_strictly_positive_binary(h));

  BinaryForm d;
  d.set_coeff(2, 0, C(1));
  d.set_coeff(0, 2, C(-1));
  CHECK(!is_strictly_positive_binary(d));

  BinaryForm s;  // (y^2+z^2)^2
  s.set_coeff(4, 0, C(1));
  s.set_coeff(2, 2, C(2));
  s.set_coeff(0, 4, C(1));
  CHECK(is_strictly_positive_binary(s));
}

TEST_CASE("four rational zeros") {
  TernaryForm f = quartic_with_four_zeros();
  ZeroSet zs = projective_real_zeros(f);
  REQUIRE(zs.kind == ZeroSet::Kind::Finite);
  REQUIRE(zs.points.size() == 4);
  CHECK(contains(zs.points, pt(1, 1, 1)));
  CHECK(contains(zs.points, pt(3, 2, 2)));
  CHECK(contains(zs.points, pt(2, 3, 2)));
  CHECK(contains(zs.points, pt(2, 2, 3)));
  for (const auto& p : zs.points) CHECK(eval_point(f, p).is_zero());
}

TEST_CASE("cyclic quartic: one rational and three algebraic zeros") {
  TernaryForm f = cyclic_quartic();
  ZeroSet zs = projective_real_zeros(f);
  REQUIRE(zs.kind == ZeroSet::Kind::Finite);
  REQUIRE(zs.points.size() == 4);
  CHECK(contains(zs.points, pt(1, 1, 1)));
  for (const auto& p : zs.points) {
    CHECK(p.chart == ProjectiveZero::Chart::AffineZ);
    CHECK(eval_point(f, p).is_zero());
  }
  // the three irrational zeros are (1/a2, a1, 1), (1/a3, a2, 1),
  // (1/a1, a3, 1) with a1 < a2 < a3 the roots of t^3 - 5t^2 + 6t - 1
  UniPoly cubic({Rational(-1), Rational(6), Rational(-5), Rational(1)});
  auto alpha = real_roots(cubic);
  REQUIRE(alpha.size() == 3);
  int matched = 0;
  for (const auto& p : zs.points) {
    for (int i = 0; i < 3; ++i) {
      if (compare(p.coords[1], alpha[i]) == 0) {
        int j = (i + 1) % 3;  // y = a_i pairs with x = 1/a_{i+1}
        CHECK(compare(p.coords[0], alpha[j].inv()) == 0);
        ++matched;
      }
    }
  }
  CHECK(matched == 3);
}

TEST_CASE("strictly positive quartic has empty zero set") {
  ZeroSet zs = projective_real_zeros(positive_quartic_no_rational_sos());
  CHECK(zs.kind == ZeroSet::Kind::Empty);
}

TEST_CASE("squared definite conic has empty zero set") {
  TernaryForm s = X() * X() + Y() * Y() + Z() * Z();
  ZeroSet zs = projective_real_zeros(s * s);
  CHECK(zs.kind == ZeroSet::Kind::Empty);
}

TEST_CASE("squared rank-2 conic has the single kernel point") {
  TernaryForm q = Y() * Y() + Z() * Z();
  ZeroSet zs = projective_real_zeros(q * q);
  REQUIRE(zs.kind == ZeroSet::Kind::Finite);
  REQUIRE(zs.points.size() == 1);
  CHECK(zs.points[0] == pt(1, 0, 0));
}

TEST_CASE("repeated line gives an infinite zero set") {
  TernaryForm l = Y() - Z();
  TernaryForm s = X() * X() + Y() * Y() + Z() * Z();
  ZeroSet zs = projective_real_zeros(l * l * s);
  REQUIRE(zs.kind == ZeroSet::Kind::Infinite);
  REQUIRE(!zs.lines.empty());
  bool has_line = false;
  for (const auto& w : zs.lines)
    if (w.degree() == 1) has_line = true;
  CHECK(has_line);
  CHECK(!zs.factorization.empty());

  ZeroSet l4 = projective_real_zeros(pow(X() + Y() + Z(), 4));
  CHECK(l4.kind == ZeroSet::Kind::Infinite);
}

TEST_CASE("squared indefinite conic gives an infinite zero set") {
  TernaryForm q = X() * X() + Y() * Y() - C(2) * Z() * Z();
  ZeroSet zs = projective_real_zeros(q * q);
  REQUIRE(zs.kind == ZeroSet::Kind::Infinite);
  REQUIRE(zs.lines.size() == 1);
  CHECK(zs.lines[0].degree() == 2);
}

TEST_CASE("form free of x with no real binary roots") {
  // (y^2+z^2)(y^2+2z^2) is square-free and positive away from (1,0,0)
  TernaryForm q1 = Y() * Y() + Z() * Z();
  TernaryForm q2 = Y() * Y() + C(2) * Z() * Z();
  ZeroSet zs = projective_real_zeros(q1 * q2);
  REQUIRE(zs.kind == ZeroSet::Kind::Finite);
  REQUIRE(zs.points.size() == 1);
  CHECK(zs.points[0] == pt(1, 0, 0));
}

TEST_CASE("form free of x with real binary roots is infinite") {
  TernaryForm q1 = Y() * Y() - Z() * Z();  // real lines through (1,0,0)
  TernaryForm q2 = Y() * Y() + C(2) * Z() * Z();
  ZeroSet zs = projective_real_zeros(q1 * q2, false);
  CHECK(zs.kind == ZeroSet::Kind::Infinite);
}

TEST_CASE("irrational isolated zeros") {
  // (x^2 - 2z^2)^2 + y^4 vanishes exactly at (±sqrt2, 0, 1)
  TernaryForm d = X() * X() - C(2) * Z() * Z();
  TernaryForm f = d * d + pow(Y(), 4);
  ZeroSet zs = projective_real_zeros(f);
  REQUIRE(zs.kind == ZeroSet::Kind::Finite);
  REQUIRE(zs.points.size() == 2);
  for (const auto& p : zs.points) {
    CHECK(p.coords[1].is_zero());
    CHECK((p.coords[0] * p.coords[0] - C(2)).is_zero());
    CHECK(eval_point(f, p).is_zero());
  }
}

TEST_CASE("planted common zeros of two conics are recovered") {
  std::mt19937 rng(91);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int trial = 0; trial < 5; ++trial) {
    // two pencils of line pairs through P1 = (1,2,1) and P2 = (0,1,1)
    auto line_through = [&](long px, long py, long pz) {
      while (true) {
        long a = v(rng), b = v(rng);
        // c chosen so a*px + b*py + c*pz = 0 (pz = 1 for both points)
        long c = -(a * px + b * py) / pz;
        if (a * px + b * py + c * pz != 0) continue;
        TernaryForm l = C(a) * X() + C(b) * Y() + C(c) * Z();
        if (!l.is_zero()) return l;
      }
    };
    TernaryForm q1 = line_through(1, 2, 1) * line_through(0, 1, 1);
    TernaryForm q2 = line_through(1, 2, 1) * line_through(0, 1, 1);
    TernaryForm f = q1 * q1 + q2 * q2;
    if (squarefree_part_ternary(f) == f) {
      ZeroSet zs = projective_real_zeros(f);
      if (zs.kind == ZeroSet::Kind::Finite) {
        CHECK(contains(zs.points, pt(1, 2, 1)));
        CHECK(contains(zs.points, pt(0, 1, 1)));
        for (const auto& p : zs.points) CHECK(eval_point(f, p).is_zero());
      }
    }
  }
}

TEST_CASE("finite zero lists are pairwise non-proportional") {
  for (const TernaryForm& f :
       {quartic_with_four_zeros(), cyclic_quartic()}) {
    ZeroSet zs = projective_real_zeros(f);
    REQUIRE(zs.kind == ZeroSet::Kind::Finite);
    for (size_t i = 0; i < zs.points.size(); ++i)
      for (size_t j = i + 1; j < zs.points.size(); ++j) {
        const auto& a = zs.points[i].coords;
        const auto& b = zs.points[j].coords;
        bool prop = (a[1] * b[2] - a[2] * b[1]).is_zero() &&
                    (a[2] * b[0] - a[0] * b[2]).is_zero() &&
                    (a[0] * b[1] - a[1] * b[0]).is_zero();
        CHECK(!prop);
      }
  }
}

TEST_CASE("soundness on random square-free quartics") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> coef(-5, 5);
  int done = 0;
  for (int trial = 0; trial < 20 && done < 4; ++trial) {
    TernaryForm f;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        f = f + TernaryForm::monomial(i, j, 4 - i - j, C(coef(rng)));
    if (f.degree() != 4 || !(squarefree_part_ternary(f) == f)) continue;
    try {
      ZeroSet zs = projective_real_zeros(f, false);
      if (zs.kind == ZeroSet::Kind::Finite)
        for (const auto& p : zs.points) CHECK(eval_point(f, p).is_zero());
      ++done;
    } catch (const BudgetError&) {
      // acceptable on indefinite inputs
    }
  }
  CHECK(done >= 1);
}

TEST_CASE("degree and nullity are rejected") {
  CHECK_THROWS_AS(projective_real_zeros(TernaryForm()), MathError);
  CHECK_THROWS_AS(projective_real_zeros(X() * X()), MathError);
}
