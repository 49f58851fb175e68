#ifndef SOSQ_ELIMINATION_HPP
#define SOSQ_ELIMINATION_HPP

#include <map>
#include <utility>
#include <vector>

#include "sosq/forms.hpp"
#include "sosq/ring.hpp"

namespace sosq {

template <>
struct RingTraits<RealAlgebraic>;  // in realalg.hpp

/// APoly is an integral domain (coefficients form a field), so exact
/// division is plain division with a zero-remainder check.
template <>
struct RingTraits<APoly> {
  static APoly zero() { return APoly(); }
  static APoly one() { return APoly(RealAlgebraic(Rational(1))); }
  static bool is_zero(const APoly& a) { return a.is_zero(); }
  static APoly neg(const APoly& a) { return a.neg(); }
  static APoly add(const APoly& a, const APoly& b) { return a.add(b); }
  static APoly sub(const APoly& a, const APoly& b) { return a.sub(b); }
  static APoly mul(const APoly& a, const APoly& b) { return a.mul(b); }
  static APoly exact_div(const APoly& a, const APoly& b);
};

/// Bivariate polynomial: poly in a "main" variable whose coefficients are
/// APoly in a second variable.
using BPoly = PolyOver<APoly>;

APoly bp_content(const BPoly& f);
BPoly bp_primitive(const BPoly& f);
BPoly bp_gcd(const BPoly& f, const BPoly& g);
BPoly bp_exact_div(const BPoly& a, const BPoly& b);
BPoly bp_derivative_main(const BPoly& f);

/// f as a polynomial in `var` over the other two variables, with the last
/// variable in the cyclic order set to 1. var=0: poly in x, coeffs in y
/// (z=1). var=1: poly in y, coeffs in z (x=1). var=2: poly in z, coeffs in
/// x (y=1).
BPoly ternary_to_bpoly(const TernaryForm& f, int var);

/// Inverse of ternary_to_bpoly for a homogeneous result of known degree.
TernaryForm bpoly_to_ternary(const BPoly& g, int var, int degree);

/// Resultant of two ternary forms with respect to one variable; the result
/// is a form in the remaining two variables of degree deg(f)·deg(g).
/// Identically zero exactly when f and g share a factor involving var.
TernaryForm resultant_ternary(const TernaryForm& f, const TernaryForm& g,
                              int var);

/// pr - q² for an Eq. (1)/(2) presentation.
BinaryForm discriminant(const BinaryForm& p, const BinaryForm& q,
                        const BinaryForm& r);

/// f = Π factorᵢ^multᵢ exactly (a degree-0 constant factor may appear).
/// Factors are pairwise coprime and squarefree.
std::vector<std::pair<TernaryForm, int>> squarefree_decompose_ternary(
    const TernaryForm& f);
TernaryForm squarefree_part_ternary(const TernaryForm& f);

/// Sparse rational polynomial in up to 4 variables (x, y, z, μ), used for
/// the successive-resultant elimination of Lagrange systems.
class MPoly {
 public:
  static constexpr int kVars = 4;
  using Exp = std::array<int, kVars>;
  using Map = std::map<Exp, Rational>;

  MPoly() = default;
  explicit MPoly(const Rational& c);
  static MPoly variable(int var);
  static MPoly monomial(const Exp& e, const Rational& c);

  bool is_zero() const { return c_.empty(); }
  const Map& terms() const { return c_; }
  int degree_in(int var) const;
  bool depends_on(int var) const { return degree_in(var) > 0; }

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Rational& s) const;
  bool operator==(const MPoly& o) const { return c_ == o.c_; }

  MPoly derivative(int var) const;
  /// Coefficient of var^k (a polynomial not involving var).
  MPoly coeff_of(int var, int k) const;
  /// Divide out the integer content (keeps the sign of some fixed term).
  MPoly primitive() const;

  /// Requires the polynomial to involve only `var`.
  UniPoly to_unipoly(int var) const;
  static MPoly from_ternary(const TernaryForm& f);  // rational coeffs only

 private:
  void prune();
  Map c_;
};

template <>
struct RingTraits<MPoly> {
  static MPoly zero() { return MPoly(); }
  static MPoly one() { return MPoly(Rational(1)); }
  static bool is_zero(const MPoly& a) { return a.is_zero(); }
  static MPoly neg(const MPoly& a) { return -a; }
  static MPoly add(const MPoly& a, const MPoly& b) { return a + b; }
  static MPoly sub(const MPoly& a, const MPoly& b) { return a - b; }
  static MPoly mul(const MPoly& a, const MPoly& b) { return a * b; }
  static MPoly exact_div(const MPoly& a, const MPoly& b);
};

/// Resultant of two MPolys with respect to one variable.
MPoly resultant_mpoly(const MPoly& f, const MPoly& g, int var);

/// Successive-resultant elimination. `order` lists the variables to
/// eliminate, in order; exactly one further variable must remain, and the
/// returned univariate is in that variable. The real roots of the result
/// form a superset of that variable's coordinates over all solutions;
/// spurious roots are possible and must be screened by back-substitution.
UniPoly eliminate_system(std::vector<MPoly> polys,
                         const std::vector<int>& order, int result_var);

}  // namespace sosq

#endif
