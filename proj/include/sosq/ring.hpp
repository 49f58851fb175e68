#ifndef SOSQ_RING_HPP
#define SOSQ_RING_HPP

#include <vector>

#include "sosq/rational.hpp"
#include "sosq/upoly.hpp"

namespace sosq {

/// Minimal integral-domain interface used by the generic PRS and Bareiss
/// routines. Specialize for every coefficient ring.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static Rational neg(const Rational& a) { return -a; }
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational sub(const Rational& a, const Rational& b) { return a - b; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational exact_div(const Rational& a, const Rational& b) {
    return a / b;
  }
};

template <>
struct RingTraits<UniPoly> {
  static UniPoly zero() { return UniPoly(); }
  static UniPoly one() { return UniPoly(Rational(1)); }
  static bool is_zero(const UniPoly& a) { return a.is_zero(); }
  static UniPoly neg(const UniPoly& a) { return -a; }
  static UniPoly add(const UniPoly& a, const UniPoly& b) { return a + b; }
  static UniPoly sub(const UniPoly& a, const UniPoly& b) { return a - b; }
  static UniPoly mul(const UniPoly& a, const UniPoly& b) { return a * b; }
  static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    return sosq::exact_div(a, b);
  }
};

/// Dense univariate polynomial with coefficients in an arbitrary ring,
/// constant term first. Used for resultants of polynomials whose
/// coefficients are themselves polynomials or algebraic numbers.
template <class R>
class PolyOver {
 public:
  using T = RingTraits<R>;

  PolyOver() = default;
  explicit PolyOver(std::vector<R> c) : c_(std::move(c)) { trim(); }
  explicit PolyOver(R c) {
    if (!T::is_zero(c)) c_.push_back(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const R& lc() const { return c_.back(); }
  const R& coeff(int i) const {
    static const R z = T::zero();
    return (i < 0 || i >= static_cast<int>(c_.size())) ? z : c_[i];
  }
  std::vector<R>& coeffs() { return c_; }
  const std::vector<R>& coeffs() const { return c_; }

  void set_coeff(int i, R v) {
    if (i >= static_cast<int>(c_.size())) {
      if (T::is_zero(v)) return;
      c_.resize(i + 1, T::zero());
    }
    c_[i] = std::move(v);
    trim();
  }

  PolyOver neg() const {
    PolyOver r(*this);
    for (auto& x : r.c_) x = T::neg(x);
    return r;
  }
  PolyOver add(const PolyOver& o) const {
    std::vector<R> r(std::max(c_.size(), o.c_.size()), T::zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = T::add(r[i], o.c_[i]);
    return PolyOver(std::move(r));
  }
  PolyOver sub(const PolyOver& o) const { return add(o.neg()); }
  PolyOver mul(const PolyOver& o) const {
    if (is_zero() || o.is_zero()) return PolyOver();
    std::vector<R> r(c_.size() + o.c_.size() - 1, T::zero());
    for (size_t i = 0; i < c_.size(); ++i) {
      if (T::is_zero(c_[i])) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = T::add(r[i + j], T::mul(c_[i], o.c_[j]));
    }
    return PolyOver(std::move(r));
  }
  PolyOver scale(const R& s) const {
    if (T::is_zero(s)) return PolyOver();
    PolyOver r(*this);
    for (auto& x : r.c_) x = T::mul(x, s);
    return r;
  }
  PolyOver shifted(int k) const {  // multiply by x^k
    if (is_zero()) return PolyOver();
    std::vector<R> r(c_.size() + k, T::zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return PolyOver(std::move(r));
  }
  PolyOver exact_div_coeff(const R& s) const {
    PolyOver r(*this);
    for (auto& x : r.c_) x = T::exact_div(x, s);
    return r;
  }
  PolyOver derivative() const {
    if (c_.size() <= 1) return PolyOver();
    std::vector<R> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
      R m = c_[i];
      for (size_t k = 1; k < i; ++k) m = T::add(m, c_[i]);
      r.push_back(std::move(m));
    }
    return PolyOver(std::move(r));
  }

  void trim() {
    while (!c_.empty() && T::is_zero(c_.back())) c_.pop_back();
  }

 private:
  std::vector<R> c_;
};

template <class R>
R ring_pow(R base, int e) {
  R acc = RingTraits<R>::one();
  for (int i = 0; i < e; ++i) acc = RingTraits<R>::mul(acc, base);
  return acc;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b.
template <class R>
PolyOver<R> pseudo_rem(PolyOver<R> a, const PolyOver<R>& b) {
  using T = RingTraits<R>;
  if (b.is_zero()) throw MathError("pseudo_rem by zero");
  int e = a.degree() - b.degree() + 1;
  if (e < 0) e = 0;
  const R& lb = b.lc();
  while (!a.is_zero() && a.degree() >= b.degree()) {
    int d = a.degree() - b.degree();
    PolyOver<R> t = b.shifted(d).scale(a.lc());
    a = a.scale(lb).sub(t);
    --e;
  }
  if (e > 0) a = a.scale(ring_pow(lb, e));
  return a;
}

/// Resultant via the subresultant PRS (Cohen, Alg. 3.3.7). Exact in any
/// integral domain with exact division.
template <class R>
R resultant_subres(PolyOver<R> A, PolyOver<R> B) {
  using T = RingTraits<R>;
  if (A.is_zero() || B.is_zero()) return T::zero();
  bool neg = false;
  if (A.degree() < B.degree()) {
    if ((A.degree() & 1) && (B.degree() & 1)) neg = !neg;
    std::swap(A, B);
  }
  if (B.degree() == 0) {
    R r = ring_pow(B.lc(), A.degree());
    return neg ? T::neg(r) : r;
  }
  R g = T::one(), h = T::one();
  while (true) {
    int da = A.degree(), db = B.degree();
    int delta = da - db;
    if ((da & 1) && (db & 1)) neg = !neg;
    PolyOver<R> Rm = pseudo_rem(A, B);
    if (Rm.is_zero()) return T::zero();
    R divisor = T::mul(g, ring_pow(h, delta));
    A = B;
    B = Rm.exact_div_coeff(divisor);
    g = A.lc();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = T::exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
    }
    if (B.degree() == 0) {
      // res = h^(1-da') * lc(B)^(da') with da' = deg A
      int dA = A.degree();
      R num = ring_pow(B.lc(), dA);
      R r;
      if (dA <= 1)
        r = dA == 1 ? num : T::exact_div(num, T::one());
      else
        r = T::exact_div(num, ring_pow(h, dA - 1));
      return neg ? T::neg(r) : r;
    }
  }
}

/// Determinant by fraction-free (Bareiss) elimination.
template <class R>
R bareiss_det(std::vector<std::vector<R>> m) {
  using T = RingTraits<R>;
  const int n = static_cast<int>(m.size());
  if (n == 0) return T::one();
  R prev = T::one();
  bool neg = false;
  for (int k = 0; k < n - 1; ++k) {
    if (T::is_zero(m[k][k])) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!T::is_zero(m[i][k])) {
          p = i;
          break;
        }
      if (p < 0) return T::zero();
      std::swap(m[k], m[p]);
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        R t = T::sub(T::mul(m[i][j], m[k][k]), T::mul(m[i][k], m[k][j]));
        m[i][j] = T::exact_div(t, prev);
      }
      m[i][k] = T::zero();
    }
    prev = m[k][k];
  }
  return neg ? T::neg(m[n - 1][n - 1]) : m[n - 1][n - 1];
}

/// Sylvester matrix of a and b (as univariate polynomials over R).
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const PolyOver<R>& a,
                                             const PolyOver<R>& b) {
  using T = RingTraits<R>;
  int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) throw MathError("sylvester of zero polynomial");
  int N = m + n;
  std::vector<std::vector<R>> s(N, std::vector<R>(N, T::zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.coeff(n - j);
  return s;
}

}  // namespace sosq

#endif
