#ifndef SOSQ_FORMS_HPP
#define SOSQ_FORMS_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sosq/coefficient.hpp"

namespace sosq {

/// Graded-lexicographic, highest first, with x > y > z. Gives the canonical
/// printing and iteration order.
struct GrlexDesc {
  template <size_t N>
  bool operator()(const std::array<int, N>& a,
                  const std::array<int, N>& b) const {
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    if (da != db) return da > db;
    return a > b;
  }
};

class BinaryForm;

/// Sparse homogeneous polynomial in x, y, z. The zero form has an empty map;
/// zero coefficients are never stored.
class TernaryForm {
 public:
  using Exp = std::array<int, 3>;
  using Map = std::map<Exp, Coefficient, GrlexDesc>;

  TernaryForm() = default;
  static TernaryForm monomial(int i, int j, int k, const Coefficient& c);
  static TernaryForm variable(int var);  // x, y or z as a degree-1 form

  /// -1 for the zero form.
  int degree() const;
  bool is_zero() const { return c_.empty(); }
  const Map& terms() const { return c_; }
  Coefficient coeff(int i, int j, int k) const;
  void set_coeff(int i, int j, int k, const Coefficient& c);
  /// Highest exponent of one variable across all terms.
  int degree_in(int var) const;

  TernaryForm operator-() const;
  TernaryForm operator+(const TernaryForm& o) const;
  TernaryForm operator-(const TernaryForm& o) const;
  TernaryForm operator*(const TernaryForm& o) const;
  TernaryForm operator*(const Coefficient& s) const;
  bool operator==(const TernaryForm& o) const;

  TernaryForm derivative(int var) const;
  Coefficient evaluate(const Coefficient& x, const Coefficient& y,
                       const Coefficient& z) const;

  std::string to_string() const;

 private:
  /// Drop exact zeros; check homogeneity.
  void normalize();
  Map c_;
};

TernaryForm operator*(const Coefficient& s, const TernaryForm& f);
TernaryForm pow(const TernaryForm& f, int e);

/// Sparse homogeneous polynomial in two variables (y and z by convention).
class BinaryForm {
 public:
  using Exp = std::array<int, 2>;
  using Map = std::map<Exp, Coefficient, GrlexDesc>;

  BinaryForm() = default;
  static BinaryForm monomial(int j, int k, const Coefficient& c);

  int degree() const;
  bool is_zero() const { return c_.empty(); }
  const Map& terms() const { return c_; }
  Coefficient coeff(int j, int k) const;
  void set_coeff(int j, int k, const Coefficient& c);

  BinaryForm operator-() const;
  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator*(const Coefficient& s) const;
  bool operator==(const BinaryForm& o) const;

  BinaryForm derivative(int var) const;  // var: 0 = y, 1 = z
  Coefficient evaluate(const Coefficient& y, const Coefficient& z) const;

  /// Set the other variable to 1: h(t, 1) (var = 0) or h(1, t) (var = 1).
  APoly dehomogenize(int var) const;
  /// Inverse of dehomogenize(0) at the stated total degree.
  static BinaryForm homogenize(const APoly& p, int degree);

  /// Embed as a ternary form in y and z.
  TernaryForm to_ternary() const;
  /// Project a ternary form with no x-dependence.
  static BinaryForm from_ternary(const TernaryForm& f);

  std::string to_string(const std::string& vy = "y",
                        const std::string& vz = "z") const;

 private:
  void normalize();
  Map c_;
};

BinaryForm operator*(const Coefficient& s, const BinaryForm& f);

/// Exact 3x3 matrix of coefficients, used for coordinate changes.
class Matrix3 {
 public:
  Matrix3();  // identity
  static Matrix3 from_columns(const std::array<Coefficient, 3>& c0,
                              const std::array<Coefficient, 3>& c1,
                              const std::array<Coefficient, 3>& c2);
  static Matrix3 from_rows(
      const std::array<std::array<Coefficient, 3>, 3>& rows);

  const Coefficient& at(int r, int c) const { return e_[r][c]; }
  Coefficient& at(int r, int c) { return e_[r][c]; }

  Coefficient det() const;
  Matrix3 inverse() const;  // throws MathError when singular
  Matrix3 operator*(const Matrix3& o) const;
  std::array<Coefficient, 3> apply(const std::array<Coefficient, 3>& v) const;

 private:
  std::array<std::array<Coefficient, 3>, 3> e_;
};

/// f composed with A: (f∘A)(x) = f(A·x). Degree preserved; A must be
/// invertible.
TernaryForm substitute_linear(const TernaryForm& f, const Matrix3& A);

enum class XLayout { Lemma2, Lemma3 };

/// Eq. (1): f = x²p(y,z) + 2x·q(y,z) + r(y,z)     (layout Lemma2)
/// Eq. (2): f = x²p(y,z) + 2xz·q(y,z) + z²r(y,z)  (layout Lemma3)
/// Throws MathError on a term that does not fit the layout.
struct XDecomposition {
  BinaryForm p, q, r;
};
XDecomposition x_decomposition(const TernaryForm& f, XLayout layout);

}  // namespace sosq

#endif
