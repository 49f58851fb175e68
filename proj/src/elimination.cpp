#include "sosq/elimination.hpp"

#include <algorithm>

namespace sosq {

// ---------------------------------------------------------------------------
// APoly ring ops / bivariate helpers

APoly RingTraits<APoly>::exact_div(const APoly& a, const APoly& b) {
  auto [q, r] = apoly_divrem(a, b);
  if (!r.is_zero()) throw MathError("inexact APoly division");
  return q;
}

APoly bp_content(const BPoly& f) {
  APoly c;
  for (const auto& co : f.coeffs()) {
    if (co.is_zero()) continue;
    c = c.is_zero() ? co : apoly_gcd(c, co);
    if (c.degree() == 0) break;
  }
  if (!c.is_zero()) c = c.scale(c.lc().inv());
  return c;
}

BPoly bp_primitive(const BPoly& f) {
  if (f.is_zero()) return f;
  APoly c = bp_content(f);
  if (c.degree() == 0 && c.lc() == RealAlgebraic(Rational(1))) return f;
  return f.exact_div_coeff(c);
}

BPoly bp_exact_div(const BPoly& a, const BPoly& b) {
  if (b.is_zero()) throw MathError("bivariate division by zero");
  BPoly q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    APoly t = RingTraits<APoly>::exact_div(r.lc(), b.lc());
    int d = r.degree() - b.degree();
    q.set_coeff(d, t);
    r = r.sub(b.shifted(d).scale(t));
  }
  if (!r.is_zero()) throw MathError("inexact bivariate division");
  return q;
}

BPoly bp_derivative_main(const BPoly& f) { return f.derivative(); }

BPoly bp_gcd(const BPoly& f, const BPoly& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  APoly c = apoly_gcd(bp_content(f), bp_content(g));
  BPoly a = bp_primitive(f), b = bp_primitive(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    BPoly r = pseudo_rem(a, b);
    a = b;
    b = r.is_zero() ? r : bp_primitive(r);
  }
  a = bp_primitive(a).scale(c);
  // normalize: leading coefficient of the leading APoly is 1
  return a.scale(APoly(a.lc().lc().inv()));
}

// ---------------------------------------------------------------------------
// ternary <-> bivariate conversions

namespace {

// main, secondary and set-to-one variable for each choice of main var
void chart_vars(int var, int* main, int* sec, int* one) {
  *main = var;
  *sec = (var + 1) % 3;
  *one = (var + 2) % 3;
}

}  // namespace

BPoly ternary_to_bpoly(const TernaryForm& f, int var) {
  int main, sec, one;
  chart_vars(var, &main, &sec, &one);
  BPoly out;
  for (const auto& [e, c] : f.terms()) {
    (void)one;
    APoly co = out.coeff(e[main]);
    co.set_coeff(e[sec], co.coeff(e[sec]) + c);
    out.set_coeff(e[main], co);
  }
  return out;
}

TernaryForm bpoly_to_ternary(const BPoly& g, int var, int degree) {
  int main, sec, one;
  chart_vars(var, &main, &sec, &one);
  TernaryForm f;
  for (int m = 0; m <= g.degree(); ++m) {
    const APoly& co = g.coeff(m);
    for (int s = 0; s <= co.degree(); ++s) {
      if (co.coeff(s).is_zero()) continue;
      int o = degree - m - s;
      if (o < 0) throw MathError("rehomogenization degree too small");
      TernaryForm::Exp e{};
      e[main] = m;
      e[sec] = s;
      e[one] = o;
      f.set_coeff(e[0], e[1], e[2], f.coeff(e[0], e[1], e[2]) + co.coeff(s));
    }
  }
  return f;
}

TernaryForm resultant_ternary(const TernaryForm& f, const TernaryForm& g,
                              int var) {
  if (f.is_zero() || g.is_zero())
    throw MathError("resultant of the zero form");
  int df = f.degree_in(var), dg = g.degree_in(var);
  if (df == 0 && dg == 0)
    throw MathError("both forms constant in the elimination variable");
  BPoly A = ternary_to_bpoly(f, var), B = ternary_to_bpoly(g, var);
  APoly r = resultant_subres<APoly>(A, B);
  if (r.is_zero()) return TernaryForm();
  // homogeneous degree of the resultant form
  int D = dg * f.degree() + df * g.degree() - df * dg;
  BPoly wrap;
  wrap.set_coeff(0, r);
  return bpoly_to_ternary(wrap, var, D);
}

BinaryForm discriminant(const BinaryForm& p, const BinaryForm& q,
                        const BinaryForm& r) {
  return p * r - q * q;
}

// ---------------------------------------------------------------------------
// squarefree decomposition of ternary forms

namespace {

using Factors = std::vector<std::pair<TernaryForm, int>>;

Coefficient lead_coeff(const TernaryForm& f) {
  return f.terms().begin()->second;
}

// APoly in `sec` -> homogeneous form in (sec, one) of the poly's own degree
TernaryForm homogenize_apoly(const APoly& p, int sec, int one) {
  TernaryForm f;
  int d = p.degree();
  for (int s = 0; s <= d; ++s) {
    if (p.coeff(s).is_zero()) continue;
    TernaryForm::Exp e{};
    e[sec] = s;
    e[one] = d - s;
    f.set_coeff(e[0], e[1], e[2], p.coeff(s));
  }
  return f;
}

// Yun on the primitive (in the main variable) bivariate part.
void yun_bivariate(const BPoly& P, int var, Factors* out) {
  if (P.degree() < 1) return;
  BPoly f = P;
  BPoly fp = f.derivative();
  BPoly g = bp_gcd(f, fp);
  BPoly c = bp_exact_div(f, g);
  BPoly d = bp_exact_div(fp, g).sub(c.derivative());
  int mult = 1;
  while (c.degree() > 0) {
    BPoly a = bp_gcd(c, d);
    if (a.degree() > 0) {
      // minimal homogenization: total bivariate degree of a
      int deg = 0;
      for (int m = 0; m <= a.degree(); ++m)
        if (!a.coeff(m).is_zero())
          deg = std::max(deg, m + a.coeff(m).degree());
      Factors dummy;
      TernaryForm h;
      {
        int main, sec, one;
        main = var;
        sec = (var + 1) % 3;
        one = (var + 2) % 3;
        (void)main;
        for (int m = 0; m <= a.degree(); ++m) {
          const APoly& co = a.coeff(m);
          for (int s = 0; s <= co.degree(); ++s) {
            if (co.coeff(s).is_zero()) continue;
            TernaryForm::Exp e{};
            e[var] = m;
            e[sec] = s;
            e[one] = deg - m - s;
            if (e[one] < 0) throw MathError("inhomogeneous bivariate factor");
            h.set_coeff(e[0], e[1], e[2],
                        h.coeff(e[0], e[1], e[2]) + co.coeff(s));
          }
        }
      }
      out->push_back({h, mult});
    }
    c = bp_exact_div(c, a);
    d = bp_exact_div(d, a).sub(c.derivative());
    ++mult;
  }
}

}  // namespace

std::vector<std::pair<TernaryForm, int>> squarefree_decompose_ternary(
    const TernaryForm& f) {
  if (f.is_zero()) throw MathError("squarefree decomposition of zero form");
  Factors out;
  if (f.degree() == 0) {
    out.push_back({f, 1});
    return out;
  }
  // monomial content
  TernaryForm::Exp mn{f.degree(), f.degree(), f.degree()};
  for (const auto& [e, c] : f.terms())
    for (int v = 0; v < 3; ++v) mn[v] = std::min(mn[v], e[v]);
  TernaryForm h;
  for (const auto& [e, c] : f.terms())
    h.set_coeff(e[0] - mn[0], e[1] - mn[1], e[2] - mn[2], c);
  for (int v = 0; v < 3; ++v)
    if (mn[v] > 0) out.push_back({TernaryForm::variable(v), mn[v]});

  if (h.degree() > 0) {
    // pick a main variable h depends on
    int var = 0;
    while (h.degree_in(var) == 0) ++var;
    BPoly F = ternary_to_bpoly(h, var);
    APoly C = bp_content(F);
    BPoly P = bp_primitive(F);
    int sec = (var + 1) % 3, one = (var + 2) % 3;
    for (const auto& [fac, mult] : apoly_squarefree_decompose(C))
      out.push_back({homogenize_apoly(fac, sec, one), mult});
    yun_bivariate(P, var, &out);
  }

  // fix the overall constant
  TernaryForm prod = TernaryForm::monomial(0, 0, 0, Coefficient(1));
  for (const auto& [fac, mult] : out)
    for (int i = 0; i < mult; ++i) prod = prod * fac;
  Coefficient scale = lead_coeff(f) / lead_coeff(prod);
  if (!(scale - Coefficient(1)).is_zero()) {
    bool absorbed = false;
    for (auto& [fac, mult] : out)
      if (mult == 1 && fac.degree() > 0) {
        fac = fac * scale;
        absorbed = true;
        break;
      }
    if (!absorbed) out.push_back({TernaryForm::monomial(0, 0, 0, scale), 1});
  }
  // verify the product contract
  prod = TernaryForm::monomial(0, 0, 0, Coefficient(1));
  for (const auto& [fac, mult] : out)
    for (int i = 0; i < mult; ++i) prod = prod * fac;
  if (!(prod == f))
    throw MathError("squarefree decomposition failed to recompose");
  return out;
}

TernaryForm squarefree_part_ternary(const TernaryForm& f) {
  TernaryForm out = TernaryForm::monomial(0, 0, 0, Coefficient(1));
  for (const auto& [fac, mult] : squarefree_decompose_ternary(f))
    if (fac.degree() > 0) out = out * fac;
  return out;
}

// ---------------------------------------------------------------------------
// MPoly

MPoly::MPoly(const Rational& c) {
  if (sgn(c) != 0) c_[Exp{}] = c;
}

MPoly MPoly::variable(int var) {
  Exp e{};
  e[var] = 1;
  return monomial(e, Rational(1));
}

MPoly MPoly::monomial(const Exp& e, const Rational& c) {
  MPoly p;
  if (sgn(c) != 0) p.c_[e] = c;
  return p;
}

int MPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : c_) d = std::max(d, e[var]);
  return d;
}

void MPoly::prune() {
  for (auto it = c_.begin(); it != c_.end();)
    it = sgn(it->second) == 0 ? c_.erase(it) : std::next(it);
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r(*this);
  for (const auto& [e, c] : o.c_) r.c_[e] += c;
  r.prune();
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) {
      Exp e;
      for (int v = 0; v < kVars; ++v) e[v] = e1[v] + e2[v];
      r.c_[e] += c1 * c2;
    }
  r.prune();
  return r;
}

MPoly MPoly::operator*(const Rational& s) const {
  MPoly r(*this);
  for (auto& [e, c] : r.c_) c *= s;
  r.prune();
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r;
  for (const auto& [e, c] : c_) {
    if (e[var] == 0) continue;
    Exp d = e;
    d[var] -= 1;
    r.c_[d] = c * e[var];
  }
  return r;
}

MPoly MPoly::coeff_of(int var, int k) const {
  MPoly r;
  for (const auto& [e, c] : c_) {
    if (e[var] != k) continue;
    Exp d = e;
    d[var] = 0;
    r.c_[d] = c;
  }
  return r;
}

MPoly MPoly::primitive() const {
  if (c_.empty()) return *this;
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : c_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  if (sgn(c_.rbegin()->second) < 0) scale = -scale;
  return *this * scale;
}

UniPoly MPoly::to_unipoly(int var) const {
  UniPoly p;
  for (const auto& [e, c] : c_) {
    for (int v = 0; v < kVars; ++v)
      if (v != var && e[v] != 0)
        throw MathError("polynomial is not univariate in the requested var");
    p.set_coeff(e[var], p.coeff(e[var]) + c);
  }
  return p;
}

MPoly MPoly::from_ternary(const TernaryForm& f) {
  MPoly p;
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_rational())
      throw MathError("MPoly requires rational coefficients");
    Exp d{e[0], e[1], e[2], 0};
    p.c_[d] = c.rational_value();
  }
  p.prune();
  return p;
}

MPoly RingTraits<MPoly>::exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw MathError("MPoly division by zero");
  MPoly q, r = a;
  auto lt = [](const MPoly& p) { return *p.terms().rbegin(); };
  while (!r.is_zero()) {
    auto [re, rc] = lt(r);
    auto [be, bc] = lt(b);
    MPoly::Exp d;
    for (int v = 0; v < MPoly::kVars; ++v) {
      d[v] = re[v] - be[v];
      if (d[v] < 0) throw MathError("inexact MPoly division");
    }
    MPoly t = MPoly::monomial(d, rc / bc);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

MPoly resultant_mpoly(const MPoly& f, const MPoly& g, int var) {
  PolyOver<MPoly> A, B;
  for (int k = 0; k <= f.degree_in(var); ++k) A.set_coeff(k, f.coeff_of(var, k));
  for (int k = 0; k <= g.degree_in(var); ++k) B.set_coeff(k, g.coeff_of(var, k));
  return resultant_subres<MPoly>(A, B);
}

UniPoly eliminate_system(std::vector<MPoly> polys,
                         const std::vector<int>& order, int result_var) {
  for (int var : order) {
    std::vector<MPoly> with, without;
    for (auto& p : polys) {
      if (p.is_zero()) continue;
      (p.depends_on(var) ? with : without).push_back(p);
    }
    if (!with.empty()) {
      // pivot: smallest positive degree in var
      size_t pivot = 0;
      for (size_t i = 1; i < with.size(); ++i)
        if (with[i].degree_in(var) < with[pivot].degree_in(var)) pivot = i;
      for (size_t i = 0; i < with.size(); ++i) {
        if (i == pivot) continue;
        // the resultant is a Sylvester determinant of this dimension; past
        // the degree budget its roots could not be represented anyway
        if (with[i].degree_in(var) + with[pivot].degree_in(var) >
            degree_budget())
          throw BudgetError("elimination exceeded the degree budget");
        MPoly r = resultant_mpoly(with[i], with[pivot], var).primitive();
        if (!r.is_zero()) without.push_back(r);
      }
    }
    polys = std::move(without);
    if (polys.empty())
      throw MathError("elimination produced only zero polynomials");
  }
  // combine the survivors in the result variable via univariate gcd
  UniPoly acc;
  for (const auto& p : polys) {
    UniPoly u = p.to_unipoly(result_var);
    if (u.is_zero()) continue;
    acc = acc.is_zero() ? u : gcd(acc, u);
    if (acc.degree() == 0) break;
  }
  if (acc.is_zero()) throw MathError("eliminant identically zero");
  if (acc.degree() == 0)
    throw MathError("eliminant is constant (inconsistent system)");
  return primitive_part(acc);
}

}  // namespace sosq
