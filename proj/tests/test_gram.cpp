#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sosq/gram.hpp"

using namespace sosq;

namespace {

Coefficient C(long n) { return Coefficient(n); }
Coefficient Q(long n, long d) { return Coefficient(Rational(n, d)); }

Coefficient quad_eval(const SymMatrix& M, const std::vector<Coefficient>& v) {
  Coefficient acc;
  for (int i = 0; i < M.size(); ++i)
    for (int j = 0; j < M.size(); ++j) acc = acc + v[i] * M.at(i, j) * v[j];
  return acc;
}

SymMatrix recompose(const LDLT& f) {
  int n = static_cast<int>(f.perm.size());
  SymMatrix M(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Coefficient acc;
      for (int k = 0; k < n; ++k) acc = acc + f.L[a][k] * f.D[k] * f.L[b][k];
      M.set(f.perm[a], f.perm[b], acc);
    }
  return M;
}

}  // namespace

TEST_CASE("identity matrix") {
  SymMatrix M(3);
  for (int i = 0; i < 3; ++i) M.set(i, i, C(1));
  LDLT f = ldlt_psd(M);
  REQUIRE(f.psd);
  for (int i = 0; i < 3; ++i) CHECK((f.D[i] - C(1)).is_zero());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j) CHECK(f.L[i][j].is_zero());
}

TEST_CASE("worked Gram matrix decomposes with nonnegative D") {
  SymMatrix M(3);
  M.set(0, 0, C(1));
  M.set(1, 1, C(49));
  M.set(2, 2, C(1));
  M.set(0, 1, Q(7, 2));
  M.set(0, 2, Q(-1, 2));
  M.set(1, 2, Q(7, 2));
  LDLT f = ldlt_psd(M);
  REQUIRE(f.psd);
  for (int k = 0; k < 3; ++k) CHECK(f.D[k].sign() >= 0);
  SymMatrix R = recompose(f);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK((R.at(i, j) - M.at(i, j)).is_zero());
}

TEST_CASE("indefinite matrix yields an exact witness") {
  SymMatrix M(3);
  M.set(0, 1, C(1));  // embedded [[0,1],[1,0]]
  LDLT f = ldlt_psd(M);
  REQUIRE(!f.psd);
  REQUIRE(f.witness.size() == 3);
  CHECK(quad_eval(M, f.witness).sign() < 0);
}

TEST_CASE("negative diagonal after elimination") {
  // [[1, 2], [2, 1]] embedded: Schur complement 1 - 4 < 0
  SymMatrix M(3);
  M.set(0, 0, C(1));
  M.set(1, 1, C(1));
  M.set(0, 1, C(2));
  M.set(2, 2, C(5));
  LDLT f = ldlt_psd(M);
  REQUIRE(!f.psd);
  CHECK(quad_eval(M, f.witness).sign() < 0);
}

TEST_CASE("random PSD matrices from B^T B") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> v(-6, 6);
  for (int trial = 0; trial < 30; ++trial) {
    int rank = 1 + trial % 3;
    std::vector<std::vector<Rational>> B(rank, std::vector<Rational>(3));
    for (auto& row : B)
      for (auto& x : row) x = Rational(v(rng));
    SymMatrix M(3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Rational acc(0);
        for (int r = 0; r < rank; ++r) acc += B[r][i] * B[r][j];
        M.set(i, j, Coefficient(acc));
      }
    LDLT f = ldlt_psd(M);
    REQUIRE(f.psd);
    for (int k = 0; k < 3; ++k) CHECK(f.D[k].sign() >= 0);
    SymMatrix R = recompose(f);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK((R.at(i, j) - M.at(i, j)).is_zero());
  }
}

TEST_CASE("sos_from_quadratic") {
  TernaryForm y = TernaryForm::variable(1), z = TernaryForm::variable(2);
  auto r = sos_from_quadratic(y * y + z * z);
  REQUIRE(r.ok);
  TernaryForm back;
  for (const auto& t : r.terms) back = back + t.weight * t.form * t.form;
  CHECK(back == y * y + z * z);

  auto rank1 = sos_from_quadratic((y + z) * (y + z));
  REQUIRE(rank1.ok);
  CHECK(rank1.terms.size() == 1);
  TernaryForm b1 = rank1.terms[0].weight * rank1.terms[0].form *
                   rank1.terms[0].form;
  CHECK(b1 == (y + z) * (y + z));

  auto bad = sos_from_quadratic(y * y - z * z);
  CHECK(!bad.ok);
  REQUIRE(bad.witness.size() == 3);
  // witness evaluates negatively in the form itself
  TernaryForm q = y * y - z * z;
  CHECK(q.evaluate(bad.witness[0], bad.witness[1], bad.witness[2]).sign() < 0);
}

TEST_CASE("sos_from_quadratic with algebraic entries") {
  RealAlgebraic r2 = RealAlgebraic(2).sqrt();
  TernaryForm x = TernaryForm::variable(0), y = TernaryForm::variable(1);
  // (x + sqrt2 y)^2
  TernaryForm q = (x + y * Coefficient(r2)) * (x + y * Coefficient(r2));
  auto res = sos_from_quadratic(q);
  REQUIRE(res.ok);
  TernaryForm back;
  for (const auto& t : res.terms) back = back + t.weight * t.form * t.form;
  CHECK(back == q);
}

TEST_CASE("binary quartic SOS: strictly positive quartic") {
  // 13y^4 - 18y^3 z - y^2 z^2 - 6 y z^3 + 13 z^4
  BinaryForm h;
  h.set_coeff(4, 0, C(13));
  h.set_coeff(3, 1, C(-18));
  h.set_coeff(2, 2, C(-1));
  h.set_coeff(1, 3, C(-6));
  h.set_coeff(0, 4, C(13));
  auto res = sos_binary_quartic(h);
  REQUIRE(res.ok);
  BinaryForm back;
  for (const auto& t : res.terms)
    back = back + t.weight * (t.form * t.form);
  CHECK(back == h);
}

TEST_CASE("binary quartic SOS: boundary and negative cases") {
  BinaryForm y2;  // (y^2 - z^2)^2: single-point Gram family
  y2.set_coeff(4, 0, C(1));
  y2.set_coeff(2, 2, C(-2));
  y2.set_coeff(0, 4, C(1));
  auto res = sos_binary_quartic(y2);
  REQUIRE(res.ok);
  BinaryForm back;
  for (const auto& t : res.terms) back = back + t.weight * (t.form * t.form);
  CHECK(back == y2);

  BinaryForm neg;  // y^3 z changes sign
  neg.set_coeff(3, 1, C(1));
  CHECK(!sos_binary_quartic(neg).ok);
}
