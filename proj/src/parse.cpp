#include "sosq/parse.hpp"

#include <cctype>
#include <map>

namespace sosq {

namespace {

std::string with_position(const std::string& msg, size_t position) {
  if (position == std::string::npos) return msg;
  return msg + " at position " + std::to_string(position + 1);
}

// intermediate sums need not be homogeneous, so the parser expands into a
// plain exponent map and converts at the very end
using Poly = std::map<std::array<int, 3>, Rational>;

void add_term(Poly& p, const std::array<int, 3>& e, const Rational& c) {
  Rational& slot = p[e];
  slot += c;
  if (sgn(slot) == 0) p.erase(e);
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b) add_term(r, e, c);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b) add_term(r, e, Rational(-c));
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b)
      add_term(r, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]},
               Rational(ca * cb));
  return r;
}

Poly poly_pow(Poly base, int e) {
  Poly r = {{{0, 0, 0}, Rational(1)}};
  for (; e > 0; --e) r = poly_mul(r, base);
  return r;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos);
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Int integer(const char* what) {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail(std::string("expected ") + what);
    return Int(s.substr(start, pos - start));
  }

  Poly expr() {
    int sign = eat('-') ? -1 : (eat('+'), 1);
    Poly acc = term();
    if (sign < 0) acc = poly_sub(Poly{}, acc);
    for (;;) {
      if (eat('+'))
        acc = poly_add(acc, term());
      else if (eat('-'))
        acc = poly_sub(acc, term());
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = poly_mul(acc, factor());
    return acc;
  }

  Poly factor() {
    Poly base = primary();
    if (!eat('^')) return base;
    size_t at = pos;
    Int e = integer("an exponent");
    if (e > 64) {
      pos = at;
      fail("exponent larger than 64");
    }
    return poly_pow(base, static_cast<int>(e.get_si()));
  }

  Poly primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos;
      std::array<int, 3> e = {0, 0, 0};
      e[c == 'x' ? 0 : c == 'y' ? 1 : 2] = 1;
      return Poly{{e, Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = integer("a number");
      Rational q(num);
      if (eat('/')) {
        size_t at = pos;
        Int den = integer("a denominator");
        if (sgn(den) == 0) {
          pos = at;
          fail("zero denominator");
        }
        q = Rational(num, den);
        q.canonicalize();
      }
      if (sgn(q) == 0) return Poly{};
      return Poly{{{0, 0, 0}, q}};
    }
    fail("expected a variable, a number, or '('");
  }
};

}  // namespace

ParseError::ParseError(const std::string& msg, size_t position)
    : std::runtime_error(with_position(msg, position)), position(position) {}

TernaryForm parse_polynomial(const std::string& text) {
  Parser p{text};
  Poly raw = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  int degree = -1;
  for (const auto& [e, c] : raw) {
    int d = e[0] + e[1] + e[2];
    if (degree < 0) degree = d;
    if (d != degree)
      throw ParseError("polynomial is not homogeneous", std::string::npos);
  }
  TernaryForm f;
  for (const auto& [e, c] : raw)
    f.set_coeff(e[0], e[1], e[2], Coefficient(c));
  return f;
}

}  // namespace sosq
