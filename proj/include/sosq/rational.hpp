#ifndef SOSQ_RATIONAL_HPP
#define SOSQ_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace sosq {

using Int = mpz_class;
using Rational = mpq_class;

/// Thrown when the algebraic degree budget is exhausted. Distinct from
/// MathError so callers can tell "too expensive" from "mathematically wrong".
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw MathError("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

/// Canonical text form: "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rat_pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace sosq

#endif
