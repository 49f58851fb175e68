#include "sosq/realalg.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace sosq {

namespace {

std::atomic<int> g_degree_budget{64};
constexpr int kRefineCap = 20000;

[[noreturn]] void refine_exhausted() {
  throw BudgetError("refinement budget exhausted");
}

}  // namespace

int degree_budget() { return g_degree_budget.load(); }
void set_degree_budget(int budget) {
  if (budget <= 0) throw MathError("degree budget must be positive");
  g_degree_budget.store(budget);
}

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(UniPoly d, Rational lo, Rational hi)
    : defining_(std::move(d)), lo_(std::move(lo)), hi_(std::move(hi)) {}

FieldPtr NumberField::make(const UniPoly& defining, const Rational& lo,
                           const Rational& hi) {
  UniPoly d = primitive_part(squarefree_part(defining));
  if (d.degree() < 1) throw MathError("field defining polynomial is constant");
  if (d.degree() > degree_budget())
    throw BudgetError("defining polynomial degree " +
                      std::to_string(d.degree()) + " exceeds budget " +
                      std::to_string(degree_budget()));
  if (!(lo < hi)) throw MathError("field interval must be nonempty and open");
  if (sign(d.eval(lo)) == 0 || sign(d.eval(hi)) == 0 ||
      sign(d.eval(lo)) == sign(d.eval(hi)))
    throw MathError("field interval must bracket a sign change");
  SturmChain chain(d);
  if (chain.count_roots(lo, hi) != 1)
    throw MathError("field interval does not isolate a single root");
  return FieldPtr(new NumberField(d, lo, hi));
}

void NumberField::refine_interval() const {
  if (refined_) {
    refined_->refine_interval();
    return;
  }
  // Cut somewhere the polynomial does not vanish; the root keeps the side
  // with the sign change.
  Rational span = hi_ - lo_;
  for (int k = 1; k <= 16; ++k) {
    Rational cut = lo_ + span * Rational(k, 17);
    int s = sign(defining_.eval(cut));
    if (s == 0) continue;
    if (s == sign(defining_.eval(lo_)))
      lo_ = cut;
    else
      hi_ = cut;
    return;
  }
  throw MathError("cannot refine field interval");
}

FieldPtr NumberField::split(const UniPoly& divisor) const {
  auto nf = FieldPtr(new NumberField(primitive_part(divisor), lo_, hi_));
  refined_ = nf;
  return nf;
}

FieldPtr NumberField::latest() const {
  FieldPtr f = shared_from_this();
  while (f->refined_) f = f->refined_;
  return f;
}

// ---------------------------------------------------------------------------
// helpers

namespace {

UniPoly rem_mod(const UniPoly& p, const UniPoly& d) {
  if (p.degree() < d.degree()) return p;
  return divrem(p, d).second;
}

// s*a = g (mod b); g is the (non-normalized) gcd of a and b.
std::pair<UniPoly, UniPoly> egcd_mod(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = b, r1 = a;
  UniPoly s0, s1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    UniPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  return {r0, s0};
}

// res_y(da(y), db(x - y)): vanishes at every sum of a root of da and a root
// of db.
UniPoly sum_resultant(const UniPoly& da, const UniPoly& db) {
  PolyOver<UniPoly> A;
  {
    std::vector<UniPoly> c;
    for (const auto& q : da.coeffs()) c.push_back(UniPoly(q));
    A = PolyOver<UniPoly>(std::move(c));
  }
  // (x - y)^k, accumulated
  PolyOver<UniPoly> lin(
      std::vector<UniPoly>{UniPoly::variable(), UniPoly(Rational(-1))});
  PolyOver<UniPoly> pw(UniPoly(Rational(1)));
  PolyOver<UniPoly> B;
  for (int k = 0; k <= db.degree(); ++k) {
    B = B.add(pw.scale(UniPoly(db.coeff(k))));
    if (k < db.degree()) pw = pw.mul(lin);
  }
  return resultant_subres<UniPoly>(A, B);
}

// res_y(da(y), y^n db(x/y)): vanishes at every product of roots.
UniPoly product_resultant(const UniPoly& da, const UniPoly& db) {
  PolyOver<UniPoly> A;
  {
    std::vector<UniPoly> c;
    for (const auto& q : da.coeffs()) c.push_back(UniPoly(q));
    A = PolyOver<UniPoly>(std::move(c));
  }
  int n = db.degree();
  std::vector<UniPoly> bc(n + 1, UniPoly());
  for (int k = 0; k <= n; ++k)
    bc[n - k] = UniPoly::monomial(k, Rational(1)) * db.coeff(k);
  PolyOver<UniPoly> B{std::move(bc)};
  return resultant_subres<UniPoly>(A, B);
}

// res_t(d(t), x - rep(t)): vanishes at rep(theta) for every root theta of d.
UniPoly value_resultant(const UniPoly& d, const UniPoly& rep) {
  PolyOver<UniPoly> A;
  {
    std::vector<UniPoly> c;
    for (const auto& q : d.coeffs()) c.push_back(UniPoly(q));
    A = PolyOver<UniPoly>(std::move(c));
  }
  std::vector<UniPoly> bc(std::max(1, rep.degree() + 1), UniPoly());
  bc[0] = UniPoly::variable() - UniPoly(rep.coeff(0));
  for (int k = 1; k <= rep.degree(); ++k) bc[k] = UniPoly(-rep.coeff(k));
  PolyOver<UniPoly> B{std::move(bc)};
  return resultant_subres<UniPoly>(A, B);
}

}  // namespace

// ---------------------------------------------------------------------------
// RealAlgebraic

RealAlgebraic RealAlgebraic::make(FieldPtr field, UniPoly rep) {
  field = field->latest();
  rep = rem_mod(rep, field->defining());
  if (field->degree() == 1) {
    Rational theta = -field->defining().coeff(0) / field->defining().coeff(1);
    return RealAlgebraic(rep.eval(theta));
  }
  if (rep.is_constant()) return RealAlgebraic(rep.coeff(0));
  RealAlgebraic a;
  a.rational_ = false;
  a.field_ = std::move(field);
  a.rep_ = std::move(rep);
  a.rat_ = 0;
  return a;
}

RealAlgebraic RealAlgebraic::generator(FieldPtr field) {
  return make(std::move(field), UniPoly::variable());
}

const Rational& RealAlgebraic::rational_value() const {
  if (!rational_) throw MathError("value is not represented as a rational");
  return rat_;
}

void RealAlgebraic::normalize() const {
  if (rational_ || !field_) return;
  FieldPtr f = field_->latest();
  if (f != field_) {
    rep_ = rem_mod(rep_, f->defining());
    const_cast<RealAlgebraic*>(this)->field_ = f;
    if (f->degree() == 1) {
      Rational theta = -f->defining().coeff(0) / f->defining().coeff(1);
      const_cast<RealAlgebraic*>(this)->rat_ = rep_.eval(theta);
      const_cast<RealAlgebraic*>(this)->rational_ = true;
      const_cast<RealAlgebraic*>(this)->field_.reset();
      return;
    }
    if (rep_.is_constant()) {
      const_cast<RealAlgebraic*>(this)->rat_ = rep_.coeff(0);
      const_cast<RealAlgebraic*>(this)->rational_ = true;
      const_cast<RealAlgebraic*>(this)->field_.reset();
    }
  }
}

int RealAlgebraic::sign() const {
  if (rational_) return sgn(rat_);
  normalize();
  if (rational_) return sgn(rat_);
  auto [lo, hi] = field_->interval();
  bool zero_tested = false;
  for (int it = 0; it < kRefineCap; ++it) {
    auto [vlo, vhi] = rep_.eval_interval(lo, hi);
    if (sgn(vlo) > 0) return 1;
    if (sgn(vhi) < 0) return -1;
    if (!zero_tested) {
      zero_tested = true;
      UniPoly g = gcd(rep_, field_->defining());
      if (g.degree() > 0 &&
          sgn(g.eval(lo)) * sgn(g.eval(hi)) < 0)
        return 0;
    }
    field_->refine_interval();
    std::tie(lo, hi) = field_->interval();
  }
  refine_exhausted();
}

std::pair<Rational, Rational> RealAlgebraic::enclosure() const {
  if (rational_) return {rat_, rat_};
  normalize();
  if (rational_) return {rat_, rat_};
  auto [lo, hi] = field_->interval();
  return rep_.eval_interval(lo, hi);
}

void RealAlgebraic::refine(const Rational& width) const {
  if (rational_) return;
  normalize();
  if (rational_) return;
  for (int it = 0; it < kRefineCap; ++it) {
    auto [vlo, vhi] = enclosure();
    if (vhi - vlo <= width) return;
    field_->refine_interval();
  }
  refine_exhausted();
}

RealAlgebraic RealAlgebraic::operator-() const {
  if (rational_) return RealAlgebraic(-rat_);
  normalize();
  if (rational_) return RealAlgebraic(-rat_);
  return make(field_, -rep_);
}

namespace {

// Are a and b generators-compatible: same defining polynomial and the same
// root? If the intervals overlap, a single Sturm count over the union
// decides.
bool same_root(const FieldPtr& fa, const FieldPtr& fb) {
  if (fa == fb) return true;
  if (!(fa->defining() == fb->defining())) return false;
  auto [alo, ahi] = fa->interval();
  auto [blo, bhi] = fb->interval();
  if (ahi <= blo || bhi <= alo) return false;
  SturmChain chain(fa->defining());
  Rational lo = std::min(alo, blo), hi = std::max(ahi, bhi);
  return chain.count_roots(lo, hi) == 1;
}

}  // namespace

RealAlgebraic RealAlgebraic::operator+(const RealAlgebraic& o) const {
  if (rational_ && o.rational_) return RealAlgebraic(rat_ + o.rat_);
  normalize();
  o.normalize();
  if (rational_ && o.rational_) return RealAlgebraic(rat_ + o.rat_);
  if (rational_) return make(o.field_, o.rep_ + UniPoly(rat_));
  if (o.rational_) return make(field_, rep_ + UniPoly(o.rat_));
  if (same_root(field_, o.field_)) {
    if (field_ != o.field_) o.field_->refined_ = field_;
    return make(field_, rep_ + o.rep_);
  }
  // cross-field: flatten through composed resultants
  const UniPoly& da = defining_polynomial();
  const UniPoly& db = o.defining_polynomial();
  if (da.degree() * db.degree() > degree_budget())
    throw BudgetError("algebraic sum exceeds degree budget");
  UniPoly D = primitive_part(squarefree_part(sum_resultant(da, db)));
  SturmChain chain(D);
  for (int it = 0; it < kRefineCap; ++it) {
    auto [alo, ahi] = enclosure();
    auto [blo, bhi] = o.enclosure();
    Rational lo = alo + blo, hi = ahi + bhi;
    if (lo < hi && sgn(D.eval(lo)) != 0 && sgn(D.eval(hi)) != 0 &&
        chain.count_roots(lo, hi) == 1)
      return make(NumberField::make(D, lo, hi), UniPoly::variable());
    field_->refine_interval();
    o.field_->refine_interval();
  }
  refine_exhausted();
}

RealAlgebraic RealAlgebraic::operator-(const RealAlgebraic& o) const {
  return *this + (-o);
}

RealAlgebraic RealAlgebraic::operator*(const RealAlgebraic& o) const {
  if (rational_ && o.rational_) return RealAlgebraic(rat_ * o.rat_);
  normalize();
  o.normalize();
  if (rational_ && o.rational_) return RealAlgebraic(rat_ * o.rat_);
  if (rational_) {
    if (sgn(rat_) == 0) return RealAlgebraic();
    return make(o.field_, o.rep_ * rat_);
  }
  if (o.rational_) {
    if (sgn(o.rat_) == 0) return RealAlgebraic();
    return make(field_, rep_ * o.rat_);
  }
  if (same_root(field_, o.field_)) {
    if (field_ != o.field_) o.field_->refined_ = field_;
    return make(field_, rep_ * o.rep_);
  }
  const UniPoly& da = defining_polynomial();
  const UniPoly& db = o.defining_polynomial();
  if (da.degree() * db.degree() > degree_budget())
    throw BudgetError("algebraic product exceeds degree budget");
  UniPoly D = primitive_part(squarefree_part(product_resultant(da, db)));
  SturmChain chain(D);
  for (int it = 0; it < kRefineCap; ++it) {
    auto [alo, ahi] = enclosure();
    auto [blo, bhi] = o.enclosure();
    Rational p1 = alo * blo, p2 = alo * bhi, p3 = ahi * blo, p4 = ahi * bhi;
    Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
    if (lo < hi && sgn(D.eval(lo)) != 0 && sgn(D.eval(hi)) != 0 &&
        chain.count_roots(lo, hi) == 1)
      return make(NumberField::make(D, lo, hi), UniPoly::variable());
    field_->refine_interval();
    o.field_->refine_interval();
  }
  refine_exhausted();
}

RealAlgebraic RealAlgebraic::inv() const {
  if (rational_) {
    if (sgn(rat_) == 0) throw MathError("division by zero");
    return RealAlgebraic(Rational(1) / rat_);
  }
  normalize();
  if (rational_) return RealAlgebraic(*this).inv();
  auto [g, s] = egcd_mod(rep_, field_->defining());
  if (g.degree() == 0) return make(field_, s * (Rational(1) / g.coeff(0)));
  // g is a nontrivial common factor: decide whether theta is a root of g.
  auto [lo, hi] = field_->interval();
  if (sgn(g.eval(lo)) * sgn(g.eval(hi)) < 0)
    throw MathError("division by zero (algebraic)");
  FieldPtr f2 = field_->split(exact_div(field_->defining(), g * (Rational(1) / g.lc())));
  return make(f2, rem_mod(rep_, f2->defining())).inv();
}

RealAlgebraic RealAlgebraic::operator/(const RealAlgebraic& o) const {
  return *this * o.inv();
}

bool RealAlgebraic::operator==(const RealAlgebraic& o) const {
  return compare(*this, o) == 0;
}
bool RealAlgebraic::operator<(const RealAlgebraic& o) const {
  return compare(*this, o) < 0;
}
bool RealAlgebraic::operator<=(const RealAlgebraic& o) const {
  return compare(*this, o) <= 0;
}

const UniPoly& RealAlgebraic::defining_polynomial() const {
  normalize();
  if (rational_) {
    if (!minpoly_cache_) {
      UniPoly d;
      d.set_coeff(1, Rational(1));
      d.set_coeff(0, -rat_);
      minpoly_cache_ = std::make_shared<UniPoly>(d);
    }
    return *minpoly_cache_;
  }
  if (!minpoly_cache_) {
    UniPoly N;
    if (rep_ == UniPoly::variable()) {
      N = field_->defining();
    } else {
      N = primitive_part(
          squarefree_part(value_resultant(field_->defining(), rep_)));
    }
    minpoly_cache_ = std::make_shared<UniPoly>(N);
  }
  return *minpoly_cache_;
}

std::pair<Rational, Rational> RealAlgebraic::isolating_interval() const {
  normalize();
  if (rational_) return {rat_, rat_};
  if (isol_cache_) return *isol_cache_;
  const UniPoly& D = defining_polynomial();
  SturmChain chain(D);
  for (int it = 0; it < kRefineCap; ++it) {
    auto [lo, hi] = enclosure();
    if (lo < hi && sgn(D.eval(lo)) != 0 && sgn(D.eval(hi)) != 0 &&
        chain.count_roots(lo, hi) == 1) {
      isol_cache_ = std::make_shared<std::pair<Rational, Rational>>(lo, hi);
      return *isol_cache_;
    }
    field_->refine_interval();
  }
  refine_exhausted();
}

RealAlgebraic RealAlgebraic::sqrt() const {
  int s = sign();
  if (s < 0) throw MathError("square root of a negative value");
  if (s == 0) return RealAlgebraic();
  if (rational_) {
    // fast path for perfect squares
    Int n = rat_.get_num(), d = rat_.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) &&
        mpz_perfect_square_p(d.get_mpz_t())) {
      Int rn, rd;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      return RealAlgebraic(Rational(rn, rd));
    }
  }
  const UniPoly& da = defining_polynomial();
  if (2 * da.degree() > degree_budget())
    throw BudgetError("square root exceeds degree budget");
  UniPoly D = primitive_part(squarefree_part(da.compose_square()));
  SturmChain chain(D);
  auto sqrt_lower = [](const Rational& q) {
    // floor(sqrt(num*den)) / den <= sqrt(num/den)
    Int t = q.get_num() * q.get_den();
    Int r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    return Rational(r, q.get_den());
  };
  auto sqrt_upper = [](const Rational& q) {
    Int t = q.get_num() * q.get_den();
    Int r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    return Rational(r + 1, q.get_den());
  };
  for (int it = 0; it < kRefineCap; ++it) {
    auto [vlo, vhi] = enclosure();
    if (sgn(vlo) > 0) {
      Rational lo = sqrt_lower(vlo), hi = sqrt_upper(vhi);
      if (lo < hi && sgn(D.eval(lo)) != 0 && sgn(D.eval(hi)) != 0 &&
          chain.count_roots(lo, hi) == 1)
        return make(NumberField::make(D, lo, hi), UniPoly::variable());
    }
    if (rational_) {
      // enclosure is a point; widen artificially
      Rational lo = sqrt_lower(rat_), hi = sqrt_upper(rat_);
      while (!(lo < hi && sgn(D.eval(lo)) != 0 && sgn(D.eval(hi)) != 0 &&
               chain.count_roots(lo, hi) == 1)) {
        Rational mid = (lo + hi) / 2;
        // tighten around sqrt(rat_): compare mid^2 with rat_
        if (mid * mid < rat_)
          lo = mid;
        else if (mid * mid > rat_)
          hi = mid;
        else
          return RealAlgebraic(mid);
      }
      return make(NumberField::make(D, lo, hi), UniPoly::variable());
    }
    field_->refine_interval();
  }
  refine_exhausted();
}

double RealAlgebraic::to_double() const {
  if (rational_) return rat_.get_d();
  refine(Rational(Int(1), Int(1) << 62));
  auto [lo, hi] = enclosure();
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

std::string RealAlgebraic::to_string() const {
  normalize();
  if (rational_) return rat_.get_str();
  const UniPoly& D = defining_polynomial();
  auto [lo, hi] = isolating_interval();
  std::ostringstream os;
  os << "root(" << D.to_string("t") << ", [" << lo.get_str() << ", "
     << hi.get_str() << "])";
  return os.str();
}

// ---------------------------------------------------------------------------
// free functions

int compare(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (a.is_rational() && b.is_rational())
    return cmp(a.rational_value(), b.rational_value());
  // interval separation first
  for (int it = 0; it < 64; ++it) {
    auto [alo, ahi] = a.enclosure();
    auto [blo, bhi] = b.enclosure();
    if (ahi < blo) return -1;
    if (bhi < alo) return 1;
    if (!a.is_rational()) a.field()->refine_interval();
    if (!b.is_rational()) b.field()->refine_interval();
  }
  return (a - b).sign();
}

int sign_at(const UniPoly& p, const RealAlgebraic& a) {
  return eval_at(p, a).sign();
}

RealAlgebraic eval_at(const UniPoly& p, const RealAlgebraic& a) {
  if (a.is_rational()) return RealAlgebraic(p.eval(a.rational_value()));
  // Horner entirely inside a's field.
  UniPoly acc;
  const UniPoly& d = a.field()->defining();
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * a.rep() + UniPoly(p.coeff(i));
    acc = acc.degree() >= d.degree() ? divrem(acc, d).second : acc;
  }
  return RealAlgebraic::make(a.field(), acc);
}

RealAlgebraic alg_add(const RealAlgebraic& a, const RealAlgebraic& b) {
  return a + b;
}
RealAlgebraic alg_mul(const RealAlgebraic& a, const RealAlgebraic& b) {
  return a * b;
}
RealAlgebraic alg_neg(const RealAlgebraic& a) { return -a; }
RealAlgebraic alg_inv(const RealAlgebraic& a) { return a.inv(); }
RealAlgebraic alg_sqrt_nonneg(const RealAlgebraic& a) { return a.sqrt(); }

std::vector<RealAlgebraic> real_roots(const UniPoly& p) {
  std::vector<RealAlgebraic> out;
  if (p.is_zero()) throw MathError("real_roots of zero polynomial");
  UniPoly sf = primitive_part(squarefree_part(p));
  for (const auto& iv : isolate_roots_squarefree(sf)) {
    if (iv.lo == iv.hi)
      out.push_back(RealAlgebraic(iv.lo));
    else
      out.push_back(
          RealAlgebraic::generator(NumberField::make(sf, iv.lo, iv.hi)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// polynomials over a field

RealAlgebraic apoly_eval(const APoly& p, const RealAlgebraic& x) {
  RealAlgebraic acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i);
  return acc;
}

std::pair<APoly, APoly> apoly_divrem(const APoly& a, const APoly& b) {
  if (b.is_zero()) throw MathError("apoly division by zero");
  RealAlgebraic lbi = b.lc().inv();
  APoly q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    RealAlgebraic f = r.lc() * lbi;
    int d = r.degree() - b.degree();
    q.set_coeff(d, f);
    r = r.sub(b.shifted(d).scale(f));
    // guard: cancellation of the leading term must be exact
    if (r.degree() >= b.degree() + d && !r.coeff(b.degree() + d).is_zero())
      throw MathError("apoly division failed to cancel leading term");
    r = APoly(r.coeffs());  // re-trim with exact zero tests
  }
  return {q, r};
}

APoly apoly_gcd(const APoly& a, const APoly& b) {
  APoly u = a, v = b;
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    auto [q, r] = apoly_divrem(u, v);
    u = v;
    v = r;
  }
  if (u.is_zero()) return u;
  return u.scale(u.lc().inv());  // monic
}

std::vector<std::pair<APoly, int>> apoly_squarefree_decompose(const APoly& p) {
  std::vector<std::pair<APoly, int>> out;
  if (p.is_zero()) throw MathError("squarefree decomposition of zero");
  APoly f = p.scale(p.lc().inv());
  if (f.degree() < 1) return out;
  // Yun over a field of characteristic zero
  APoly fp = f.derivative();
  APoly g = apoly_gcd(f, fp);
  APoly c = apoly_divrem(f, g).first;
  APoly d = apoly_divrem(fp, g).first.sub(c.derivative());
  int mult = 1;
  while (c.degree() > 0) {
    APoly a = apoly_gcd(c, d);
    if (a.degree() > 0) out.push_back({a, mult});
    c = apoly_divrem(c, a).first;
    d = apoly_divrem(d, a).first.sub(c.derivative());
    ++mult;
  }
  return out;
}

APoly apoly_squarefree(const APoly& p) {
  if (p.degree() <= 1) return p;
  APoly g = apoly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return apoly_divrem(p, g).first;
}

namespace {

// All coefficients must live in a single field (or be rational); returns it.
FieldPtr common_field(const APoly& p) {
  FieldPtr f;
  for (const auto& c : p.coeffs()) {
    if (c.is_rational()) continue;
    FieldPtr cf = c.field()->latest();
    if (!f) {
      f = cf;
    } else if (f != cf) {
      if (!same_root(f, cf))
        throw MathError("roots_over_field: mixed coefficient fields");
    }
  }
  return f;
}

UniPoly apoly_to_upoly(const APoly& p) {
  UniPoly u;
  for (int i = 0; i <= p.degree(); ++i)
    u.set_coeff(i, p.coeff(i).is_rational() ? p.coeff(i).rational_value()
                                            : throw MathError("not rational"));
  return u;
}

// res_t(d(t), sum_i rep_i(t) x^i): a rational polynomial vanishing at every
// root (over any root of d) of the field polynomial.
UniPoly flatten_roots_poly(const UniPoly& d, const APoly& p) {
  PolyOver<UniPoly> A;
  {
    std::vector<UniPoly> c;
    for (const auto& q : d.coeffs()) c.push_back(UniPoly(q));
    A = PolyOver<UniPoly>(std::move(c));
  }
  int tdeg = 0;
  for (int i = 0; i <= p.degree(); ++i)
    if (!p.coeff(i).is_rational())
      tdeg = std::max(tdeg, p.coeff(i).rep().degree());
  std::vector<UniPoly> bc(tdeg + 1, UniPoly());
  for (int i = 0; i <= p.degree(); ++i) {
    const RealAlgebraic& c = p.coeff(i);
    UniPoly rep = c.is_rational() ? UniPoly(c.rational_value()) : c.rep();
    for (int j = 0; j <= rep.degree(); ++j)
      bc[j] = bc[j] + UniPoly::monomial(i, rep.coeff(j));
  }
  PolyOver<UniPoly> B{std::move(bc)};
  return resultant_subres<UniPoly>(A, B);
}

struct AChain {
  std::vector<APoly> seq;
  explicit AChain(const APoly& p) {
    seq.push_back(p);
    if (p.degree() == 0) return;
    seq.push_back(p.derivative());
    while (seq.back().degree() > 0) {
      auto [q, r] = apoly_divrem(seq[seq.size() - 2], seq.back());
      if (r.is_zero()) break;
      r = r.neg();
      // scale by the positive rational 1/|lc| if lc is rational; otherwise
      // by 1/|lc| in the field (positive scaling keeps Sturm signs valid)
      RealAlgebraic l = r.lc();
      RealAlgebraic scale = l.inv();
      if (l.sign() < 0) scale = -scale;
      seq.push_back(r.scale(scale));
    }
  }
  int variations_at(const Rational& x) const {
    int v = 0, prev = 0;
    for (const auto& p : seq) {
      RealAlgebraic val = apoly_eval(p, RealAlgebraic(x));
      int s = val.sign();
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }
  int count_roots(const Rational& lo, const Rational& hi) const {
    return variations_at(lo) - variations_at(hi);
  }
};

}  // namespace

std::vector<RealAlgebraic> roots_over_field(const APoly& p0) {
  std::vector<RealAlgebraic> out;
  APoly p = p0;
  if (p.is_zero()) throw MathError("roots_over_field of zero polynomial");
  if (p.degree() == 0) return out;

  bool all_rational = true;
  for (const auto& c : p.coeffs())
    if (!c.is_rational()) all_rational = false;
  if (all_rational) return real_roots(apoly_to_upoly(p));

  p = apoly_squarefree(p);
  if (p.degree() == 1) {
    out.push_back(-(p.coeff(0) / p.coeff(1)));
    return out;
  }
  FieldPtr F = common_field(p);

  // flattened rational polynomial containing all candidate roots
  if (F->degree() * p.degree() > degree_budget())
    throw BudgetError("roots_over_field exceeds degree budget");
  UniPoly N = flatten_roots_poly(F->defining(), p);
  if (N.is_zero())
    throw MathError("roots_over_field: degenerate flattening (zero norm)");
  N = primitive_part(squarefree_part(N));
  SturmChain nchain(N);

  // root bound from coefficient enclosures of the monic normalization
  APoly mp = p.scale(p.lc().inv());
  Rational bound(1);
  for (int i = 0; i < mp.degree(); ++i) {
    auto [lo, hi] = mp.coeff(i).enclosure();
    Rational m = std::max(abs(lo), abs(hi));
    if (m + 1 > bound) bound = m + 1;
  }

  AChain chain(mp);
  struct Seg {
    Rational lo, hi;
    int n;
  };
  std::vector<Seg> stack;
  std::vector<std::pair<Rational, Rational>> isolated;
  int n_all = chain.count_roots(-bound, bound);
  if (n_all > 0) stack.push_back({-bound, bound, n_all});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.n == 1) {
      isolated.push_back({s.lo, s.hi});
      continue;
    }
    Rational mid = (s.lo + s.hi) / 2;
    if (apoly_eval(mp, RealAlgebraic(mid)).is_zero()) {
      out.push_back(RealAlgebraic(mid));
      Rational eps = (s.hi - s.lo) / 4;
      Rational ml = mid - eps, mr = mid + eps;
      while (apoly_eval(mp, RealAlgebraic(ml)).is_zero()) ml = (s.lo + ml) / 2;
      while (apoly_eval(mp, RealAlgebraic(mr)).is_zero()) mr = (mr + s.hi) / 2;
      int nl = chain.count_roots(s.lo, ml);
      int nr = chain.count_roots(mr, s.hi);
      if (nl > 0) stack.push_back({s.lo, ml, nl});
      if (nr > 0) stack.push_back({mr, s.hi, nr});
      continue;
    }
    int nl = chain.count_roots(s.lo, mid);
    int nr = chain.count_roots(mid, s.hi);
    if (nl > 0) stack.push_back({s.lo, mid, nl});
    if (nr > 0) stack.push_back({mid, s.hi, nr});
  }

  for (auto [lo, hi] : isolated) {
    // narrow until the interval isolates within N as well
    for (int it = 0;; ++it) {
      if (it > kRefineCap) refine_exhausted();
      if (sgn(N.eval(lo)) != 0 && sgn(N.eval(hi)) != 0 &&
          nchain.count_roots(lo, hi) == 1)
        break;
      Rational mid = (lo + hi) / 2;
      int sm = apoly_eval(mp, RealAlgebraic(mid)).sign();
      if (sm == 0) {
        out.push_back(RealAlgebraic(mid));
        lo = hi;  // mark handled
        break;
      }
      if (chain.count_roots(lo, mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
    if (lo == hi) continue;
    out.push_back(RealAlgebraic::generator(NumberField::make(N, lo, hi)));
  }

  std::sort(out.begin(), out.end(),
            [](const RealAlgebraic& a, const RealAlgebraic& b) {
              return compare(a, b) < 0;
            });
  return out;
}

}  // namespace sosq
