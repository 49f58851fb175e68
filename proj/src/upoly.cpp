#include "sosq/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace sosq {

namespace {
const Rational kZero(0);
}

UniPoly UniPoly::monomial(int deg, const Rational& c) {
  UniPoly p;
  if (sgn(c) == 0) return p;
  p.c_.assign(deg + 1, Rational(0));
  p.c_[deg] = c;
  return p;
}

const Rational& UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

void UniPoly::set_coeff(int i, const Rational& v) {
  if (i >= static_cast<int>(c_.size())) {
    if (sgn(v) == 0) return;
    c_.resize(i + 1, Rational(0));
  }
  c_[i] = v;
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UniPoly UniPoly::operator-() const {
  UniPoly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const Rational& s) const {
  if (sgn(s) == 0) return UniPoly();
  UniPoly r(*this);
  for (auto& x : r.c_) x *= s;
  return r;
}

UniPoly operator*(const Rational& s, const UniPoly& p) { return p * s; }

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(i);
  return UniPoly(std::move(r));
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<Rational, Rational> UniPoly::eval_interval(const Rational& lo,
                                                     const Rational& hi) const {
  Rational alo(0), ahi(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    // [alo,ahi] * [lo,hi] + c
    Rational p1 = alo * lo, p2 = alo * hi, p3 = ahi * lo, p4 = ahi * hi;
    Rational mn = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational mx = std::max(std::max(p1, p2), std::max(p3, p4));
    alo = mn + *it;
    ahi = mx + *it;
  }
  return {alo, ahi};
}

UniPoly UniPoly::compose_neg() const {
  UniPoly r(*this);
  for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

UniPoly UniPoly::compose_square() const {
  if (is_zero()) return UniPoly();
  std::vector<Rational> r(2 * (c_.size() - 1) + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::compose_scale(const Rational& s) const {
  UniPoly r(*this);
  Rational pw(1);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    r.c_[i] *= pw;
    pw *= s;
  }
  r.trim();
  return r;
}

UniPoly UniPoly::compose_shift(const Rational& s) const {
  // Horner: p(x+s)
  UniPoly acc;
  UniPoly lin;  // x + s
  lin.c_ = {s, Rational(1)};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * lin + UniPoly(*it);
  return acc;
}

Rational UniPoly::root_bound() const {
  if (c_.size() <= 1) return Rational(1);
  Rational m(0);
  for (size_t i = 0; i + 1 < c_.size(); ++i) {
    Rational a = abs(c_[i] / c_.back());
    if (a > m) m = a;
  }
  return m + 1;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeff(i);
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    bool unit = (a == 1);
    if (i == 0 || !unit) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw MathError("division by zero polynomial");
  UniPoly r = a;
  std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1),
                          Rational(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rational f = r.lc() / b.lc();
    int d = r.degree() - b.degree();
    q[d] = f;
    r = r - UniPoly::monomial(d, f) * b;
  }
  return {UniPoly(std::move(q)), r};
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw MathError("inexact polynomial division");
  return q;
}

UniPoly primitive_part(const UniPoly& p) {
  if (p.is_zero()) return p;
  Int den(1);
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                                           c.get_den_mpz_t());
  Int g(0);
  for (const auto& c : p.coeffs()) {
    Int n = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(den, g);
  scale.canonicalize();
  if (sgn(p.lc()) < 0) scale = -scale;
  return p * scale;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly u = primitive_part(a), v = primitive_part(b);
  if (u.is_zero()) return v.is_zero() ? v : v * (Rational(1) / v.lc());
  if (v.is_zero()) return u * (Rational(1) / u.lc());
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    // primitive PRS step
    UniPoly r = u;
    Rational lv = v.lc();
    while (!r.is_zero() && r.degree() >= v.degree()) {
      int e = r.degree() - v.degree();
      r = r * lv - UniPoly::monomial(e, r.lc()) * v;
    }
    u = v;
    v = primitive_part(r);
  }
  return u * (Rational(1) / u.lc());
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero() || p.degree() == 0) return p;
  UniPoly g = gcd(p, p.derivative());
  return exact_div(p, g);
}

std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& p) {
  std::vector<std::pair<UniPoly, int>> out;
  if (p.is_zero() || p.degree() == 0) return out;
  // Yun's algorithm on the monic associate.
  UniPoly f = p * (Rational(1) / p.lc());
  UniPoly d = f.derivative();
  UniPoly a = gcd(f, d);
  UniPoly b = exact_div(f, a);
  UniPoly c = exact_div(d, a);
  int i = 1;
  while (b.degree() > 0) {
    UniPoly w = c - b.derivative();
    UniPoly g = gcd(b, w);
    if (g.degree() > 0) out.push_back({g, i});
    b = exact_div(b, g);
    c = exact_div(w, g);
    ++i;
  }
  return out;
}

Rational resultant(const UniPoly& A0, const UniPoly& B0) {
  if (A0.is_zero() || B0.is_zero()) return Rational(0);
  if (A0.degree() == 0) return rat_pow(A0.lc(), B0.degree());
  if (B0.degree() == 0) return rat_pow(B0.lc(), A0.degree());
  // Euclidean PRS with leading-coefficient bookkeeping (fine over Q).
  UniPoly a = A0, b = B0;
  Rational res(1);
  bool neg = false;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
    std::swap(a, b);
  }
  while (true) {
    auto [q, r] = divrem(a, b);
    if (r.is_zero()) {
      if (b.degree() > 0) return Rational(0);
      res *= rat_pow(b.lc(), a.degree());
      break;
    }
    res *= rat_pow(b.lc(), a.degree() - r.degree());
    if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
    a = b;
    b = r;
    if (b.degree() == 0) {
      res *= rat_pow(b.lc(), a.degree());
      break;
    }
  }
  return neg ? -res : res;
}

SturmChain::SturmChain(const UniPoly& p) {
  if (p.is_zero()) throw MathError("Sturm chain of zero polynomial");
  seq.push_back(p);
  if (p.degree() == 0) return;
  seq.push_back(p.derivative());
  while (seq.back().degree() > 0) {
    auto [q, r] = divrem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}
}  // namespace

int SturmChain::variations_at(const Rational& x) const {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(sign(p.eval(x)));
  return count_variations(s);
}

int SturmChain::variations_at_pos_inf() const {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(sign(p.lc()));
  return count_variations(s);
}

int SturmChain::variations_at_neg_inf() const {
  std::vector<int> s;
  for (const auto& p : seq)
    s.push_back((p.degree() & 1) ? -sign(p.lc()) : sign(p.lc()));
  return count_variations(s);
}

int SturmChain::count_roots(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

int SturmChain::count_all_roots() const {
  return variations_at_neg_inf() - variations_at_pos_inf();
}

// Rational with the smallest denominator in the closed interval [lo, hi]
// (Stern-Brocot descent).
static Rational simplest_in(const Rational& lo, const Rational& hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_in(-hi, -lo);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(),
             lo.get_den().get_mpz_t());
  Rational f(fl);
  if (f + 1 <= hi) return f + 1;
  if (f == lo) return f;  // lo is an integer
  return f + Rational(1) / simplest_in(Rational(1) / (hi - f),
                                       Rational(1) / (lo - f));
}

std::vector<RootInterval> isolate_roots_squarefree(const UniPoly& p) {
  std::vector<RootInterval> out;
  if (p.is_zero()) throw MathError("root isolation of zero polynomial");
  if (p.degree() == 0) return out;
  SturmChain chain(p);
  Rational bound = p.root_bound();
  struct Seg {
    Rational lo, hi;
    int nroots;
  };
  std::vector<Seg> stack;
  {
    int n = chain.count_roots(-bound, bound);
    if (n > 0) stack.push_back({-bound, bound, n});
  }
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.nroots == 1 && sgn(p.eval(s.lo)) != 0 && sgn(p.eval(s.hi)) != 0) {
      // A simple root changes sign; bisect a little, then probe the
      // simplest rational in the interval so rational roots are caught
      // exactly even when bisection never lands on them.
      Rational lo = s.lo, hi = s.hi;
      bool rational_root = false;
      for (int k = 0; k < 24; ++k) {
        Rational mid = (lo + hi) / 2;
        int sm = sgn(p.eval(mid));
        if (sm == 0) {
          out.push_back({mid, mid, 1});
          rational_root = true;
          break;
        }
        if (sm == sgn(p.eval(lo)))
          lo = mid;
        else
          hi = mid;
      }
      if (!rational_root) {
        Rational t = simplest_in(lo, hi);
        if (sgn(p.eval(t)) == 0)
          out.push_back({t, t, 1});
        else
          out.push_back({lo, hi, 1});
      }
      continue;
    }
    Rational mid = (s.lo + s.hi) / 2;
    if (sgn(p.eval(mid)) == 0) {
      out.push_back({mid, mid, 1});
      // shrink a bracket (ml, mr) around mid until it holds no other root,
      // so the flanking segments keep every remaining root
      Rational eps = (s.hi - s.lo) / 4;
      Rational ml, mr;
      while (true) {
        ml = mid - eps;
        mr = mid + eps;
        if (sgn(p.eval(ml)) != 0 && sgn(p.eval(mr)) != 0 &&
            chain.count_roots(ml, mr) == 1)
          break;
        eps /= 2;
      }
      int nl = chain.count_roots(s.lo, ml);
      int nr = chain.count_roots(mr, s.hi);
      if (nl > 0) stack.push_back({s.lo, ml, nl});
      if (nr > 0) stack.push_back({mr, s.hi, nr});
      continue;
    }
    int nl = chain.count_roots(s.lo, mid);
    int nr = s.nroots - nl - 0;
    // recount right side exactly (mid is not a root)
    nr = chain.count_roots(mid, s.hi);
    if (nl > 0) stack.push_back({s.lo, mid, nl});
    if (nr > 0) stack.push_back({mid, s.hi, nr});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) {
              return a.lo < b.lo;
            });
  return out;
}

std::vector<RootInterval> isolate_roots(const UniPoly& p) {
  struct Item {
    RootInterval iv;
    const UniPoly* poly;
  };
  auto fac = squarefree_decompose(p);
  std::vector<Item> items;
  for (const auto& [f, mult] : fac) {
    for (auto iv : isolate_roots_squarefree(f)) {
      iv.multiplicity = mult;
      items.push_back({iv, &f});
    }
  }
  // Yun factors are pairwise coprime, so intervals from different factors
  // may overlap but never share a root; bisect until pairwise disjoint.
  auto narrow = [](Item& it) {
    if (it.iv.lo == it.iv.hi) return;
    SturmChain ch(*it.poly);
    Rational mid = (it.iv.lo + it.iv.hi) / 2;
    while (sgn(it.poly->eval(mid)) == 0) mid = (it.iv.lo + mid * 3) / 4;
    if (ch.count_roots(it.iv.lo, mid) == 1)
      it.iv.hi = mid;
    else
      it.iv.lo = mid;
  };
  auto lt = [](const Item& a, const Item& b) { return a.iv.lo < b.iv.lo; };
  std::sort(items.begin(), items.end(), lt);
  for (bool changed = true; changed;) {
    changed = false;
    std::sort(items.begin(), items.end(), lt);
    for (size_t i = 0; i + 1 < items.size(); ++i) {
      bool overlap = items[i].iv.hi > items[i + 1].iv.lo ||
                     (items[i].iv.hi == items[i + 1].iv.lo &&
                      (items[i].iv.lo == items[i].iv.hi ||
                       items[i + 1].iv.lo == items[i + 1].iv.hi));
      if (overlap) {
        narrow(items[i]);
        narrow(items[i + 1]);
        changed = true;
      }
    }
  }
  std::vector<RootInterval> out;
  for (auto& it : items) out.push_back(it.iv);
  return out;
}

}  // namespace sosq
