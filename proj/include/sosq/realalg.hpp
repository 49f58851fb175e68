#ifndef SOSQ_REALALG_HPP
#define SOSQ_REALALG_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sosq/ring.hpp"
#include "sosq/upoly.hpp"

namespace sosq {

/// Cap on the degree of defining polynomials produced by algebraic
/// arithmetic. Exceeding it raises BudgetError (never silent truncation).
int degree_budget();
void set_degree_budget(int budget);

/// RAII override of the degree budget.
struct DegreeBudgetGuard {
  explicit DegreeBudgetGuard(int budget) : saved_(degree_budget()) {
    set_degree_budget(budget);
  }
  ~DegreeBudgetGuard() { set_degree_budget(saved_); }

 private:
  int saved_;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Real root field Q(theta): theta is the unique root of a squarefree
/// integer-primitive polynomial inside an open rational interval where the
/// polynomial changes sign. The interval only ever shrinks; the defining
/// polynomial may be replaced by a divisor when a zero divisor is discovered
/// (the defining polynomial need not be irreducible).
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  static FieldPtr make(const UniPoly& defining, const Rational& lo,
                       const Rational& hi);

  const UniPoly& defining() const { return defining_; }
  int degree() const { return defining_.degree(); }
  std::pair<Rational, Rational> interval() const { return {lo_, hi_}; }

  /// Halve the isolating interval (bisection on the sign change).
  void refine_interval() const;

  /// Most refined version of this field (defining may have been split).
  FieldPtr latest() const;

 private:
  friend class RealAlgebraic;
  NumberField(UniPoly d, Rational lo, Rational hi);

  /// Replace defining by the divisor that still vanishes at theta.
  FieldPtr split(const UniPoly& divisor) const;

  UniPoly defining_;
  mutable Rational lo_, hi_;
  mutable std::shared_ptr<const NumberField> refined_;
};

/// Exact real algebraic number. Rational values take a fast path (no field);
/// irrational values are polynomial expressions in a field generator.
class RealAlgebraic {
 public:
  RealAlgebraic() : rat_(0), rational_(true) {}
  RealAlgebraic(const Rational& q) : rat_(q), rational_(true) {}
  RealAlgebraic(long n) : rat_(n), rational_(true) {}
  static RealAlgebraic make(FieldPtr field, UniPoly rep);
  /// The generator theta of a field.
  static RealAlgebraic generator(FieldPtr field);

  bool is_rational() const { return rational_; }
  const Rational& rational_value() const;
  FieldPtr field() const { return field_; }
  const UniPoly& rep() const { return rep_; }

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  RealAlgebraic operator-() const;
  RealAlgebraic operator+(const RealAlgebraic& o) const;
  RealAlgebraic operator-(const RealAlgebraic& o) const;
  RealAlgebraic operator*(const RealAlgebraic& o) const;
  RealAlgebraic operator/(const RealAlgebraic& o) const;
  RealAlgebraic inv() const;

  bool operator==(const RealAlgebraic& o) const;
  bool operator<(const RealAlgebraic& o) const;
  bool operator<=(const RealAlgebraic& o) const;

  /// Closed rational enclosure of the value; shrinks with refine().
  std::pair<Rational, Rational> enclosure() const;
  /// Refine the enclosure until its width is <= width.
  void refine(const Rational& width) const;

  /// Squarefree rational polynomial vanishing at this value (cached).
  const UniPoly& defining_polynomial() const;
  /// Interval isolating this value among the roots of defining_polynomial().
  std::pair<Rational, Rational> isolating_interval() const;

  /// Principal square root; requires the value to be >= 0.
  RealAlgebraic sqrt() const;

  double to_double() const;
  /// "num/den" for rationals, "root(<poly in t>, [lo, hi])" otherwise.
  std::string to_string() const;

 private:
  void normalize() const;  // follow field refinements
  FieldPtr field_;           // null iff rational_
  mutable UniPoly rep_;      // value = rep_(theta), reduced mod defining
  Rational rat_;             // value when rational_
  bool rational_ = false;
  mutable std::shared_ptr<UniPoly> minpoly_cache_;
  mutable std::shared_ptr<std::pair<Rational, Rational>> isol_cache_;
};

/// Strict total order result.
int compare(const RealAlgebraic& a, const RealAlgebraic& b);

/// Exact sign of p at the algebraic point a.
int sign_at(const UniPoly& p, const RealAlgebraic& a);

/// Evaluate a rational polynomial at an algebraic point.
RealAlgebraic eval_at(const UniPoly& p, const RealAlgebraic& a);

RealAlgebraic alg_add(const RealAlgebraic& a, const RealAlgebraic& b);
RealAlgebraic alg_mul(const RealAlgebraic& a, const RealAlgebraic& b);
RealAlgebraic alg_neg(const RealAlgebraic& a);
RealAlgebraic alg_inv(const RealAlgebraic& a);
RealAlgebraic alg_sqrt_nonneg(const RealAlgebraic& a);

/// A RealAlgebraic for each real root of p (rational coefficients),
/// ascending. Multiplicities are dropped (use isolate_roots for those).
std::vector<RealAlgebraic> real_roots(const UniPoly& p);

template <>
struct RingTraits<RealAlgebraic> {
  static RealAlgebraic zero() { return RealAlgebraic(); }
  static RealAlgebraic one() { return RealAlgebraic(Rational(1)); }
  static bool is_zero(const RealAlgebraic& a) { return a.is_zero(); }
  static RealAlgebraic neg(const RealAlgebraic& a) { return -a; }
  static RealAlgebraic add(const RealAlgebraic& a, const RealAlgebraic& b) {
    return a + b;
  }
  static RealAlgebraic sub(const RealAlgebraic& a, const RealAlgebraic& b) {
    return a - b;
  }
  static RealAlgebraic mul(const RealAlgebraic& a, const RealAlgebraic& b) {
    return a * b;
  }
  static RealAlgebraic exact_div(const RealAlgebraic& a,
                                 const RealAlgebraic& b) {
    return a / b;
  }
};

/// Univariate polynomials with algebraic coefficients (all in one field or
/// rational). Dense, constant term first.
using APoly = PolyOver<RealAlgebraic>;

/// Monic-normalized remainder sequence root isolation over a real field.
/// Every returned root is either expressed inside the coefficients' field
/// (degree-1 factors) or in a fresh field obtained by flattening.
std::vector<RealAlgebraic> roots_over_field(const APoly& p);

/// Squarefree part over the field.
APoly apoly_squarefree(const APoly& p);
/// Yun decomposition over the field: p = lc·Π factorᵢ^multᵢ, factors monic,
/// squarefree, pairwise coprime.
std::vector<std::pair<APoly, int>> apoly_squarefree_decompose(const APoly& p);
std::pair<APoly, APoly> apoly_divrem(const APoly& a, const APoly& b);
APoly apoly_gcd(const APoly& a, const APoly& b);
RealAlgebraic apoly_eval(const APoly& p, const RealAlgebraic& x);

}  // namespace sosq

#endif
