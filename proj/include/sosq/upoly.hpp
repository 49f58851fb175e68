#ifndef SOSQ_UPOLY_HPP
#define SOSQ_UPOLY_HPP

#include <utility>
#include <vector>

#include "sosq/rational.hpp"

namespace sosq {

/// Dense univariate polynomial over Q, constant term first.
/// Invariant: leading coefficient nonzero unless the polynomial is zero
/// (zero polynomial has an empty coefficient vector).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const Rational& c) {
    if (sgn(c) != 0) c_.push_back(c);
  }
  explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  static UniPoly variable() { return monomial(1, Rational(1)); }
  static UniPoly monomial(int deg, const Rational& c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rational& lc() const { return c_.back(); }
  /// Coefficient of x^i (zero outside the stored range).
  const Rational& coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  UniPoly operator-() const;
  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& s) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly derivative() const;
  Rational eval(const Rational& x) const;
  /// Interval extension of eval: encloses {p(x) : x in [lo,hi]}.
  std::pair<Rational, Rational> eval_interval(const Rational& lo,
                                              const Rational& hi) const;

  /// p(-x), p(x^2), p(s*x), p(x+s)
  UniPoly compose_neg() const;
  UniPoly compose_square() const;
  UniPoly compose_scale(const Rational& s) const;
  UniPoly compose_shift(const Rational& s) const;

  /// 1 + max |c_i / c_n|; every real root lies in (-bound, bound).
  Rational root_bound() const;

  std::string to_string(const std::string& var = "t") const;

  void set_coeff(int i, const Rational& v);
  void trim();

 private:
  std::vector<Rational> c_;
};

UniPoly operator*(const Rational& s, const UniPoly& p);

/// Quotient and remainder over the field Q.
std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);
UniPoly exact_div(const UniPoly& a, const UniPoly& b);

/// Integer-primitive associate with positive leading coefficient.
UniPoly primitive_part(const UniPoly& p);

/// Monic gcd (primitive PRS underneath).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

UniPoly squarefree_part(const UniPoly& p);
/// Yun decomposition: p = lc * prod f_i^i with the f_i squarefree, coprime.
std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& p);

Rational resultant(const UniPoly& a, const UniPoly& b);

/// Signed Sturm remainder chain of p (nonzero p required).
struct SturmChain {
  std::vector<UniPoly> seq;
  explicit SturmChain(const UniPoly& p);
  int variations_at(const Rational& x) const;
  int variations_at_pos_inf() const;
  int variations_at_neg_inf() const;
  /// Distinct real roots in (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;
  int count_all_roots() const;
};

/// Isolating interval for one real root. lo == hi encodes a rational root;
/// otherwise the root lies in the open interval and p(lo), p(hi) != 0.
struct RootInterval {
  Rational lo, hi;
  int multiplicity = 1;
};

/// Ascending, pairwise disjoint isolating intervals covering every real root.
std::vector<RootInterval> isolate_roots(const UniPoly& p);

/// Roots of a squarefree polynomial only (multiplicity field is always 1).
std::vector<RootInterval> isolate_roots_squarefree(const UniPoly& p);

}  // namespace sosq

#endif
