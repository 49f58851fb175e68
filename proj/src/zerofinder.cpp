#include "sosq/zerofinder.hpp"

#include <algorithm>

#include "sosq/gram.hpp"
#include "sosq/realalg.hpp"

namespace sosq {

namespace {

Coefficient coeff_pow(const Coefficient& c, int e) {
  Coefficient acc(1);
  for (int i = 0; i < e; ++i) acc = acc * c;
  return acc;
}

// Chart order used throughout: main variable v, then (v+1)%3, (v+2)%3.
// Matches ternary_to_bpoly / resultant_ternary.
struct Chart {
  int main, sec, one;
};
Chart chart_of(int v) { return {v, (v + 1) % 3, (v + 2) % 3}; }

// Relabel a ternary form with no dependence on vars other than (vy, vz)
// into a BinaryForm (vy -> y slot, vz -> z slot).
BinaryForm binary_in(const TernaryForm& f, int vy, int vz) {
  BinaryForm b;
  for (const auto& [e, c] : f.terms()) {
    if (e[0] + e[1] + e[2] != e[vy] + e[vz])
      throw MathError("binary_in: extra variable present");
    b.set_coeff(e[vy], e[vz], b.coeff(e[vy], e[vz]) + c);
  }
  return b;
}

// g restricted to the fiber line {(t, s*u, s*w)} in chart coordinates:
// the univariate t -> g(t*e_main + u*e_sec + w*e_one).
APoly fiber_poly(const TernaryForm& g, const Chart& ch, const Coefficient& u,
                 const Coefficient& w) {
  APoly p;
  for (const auto& [e, c] : g.terms()) {
    Coefficient v = c * coeff_pow(u, e[ch.sec]) * coeff_pow(w, e[ch.one]);
    p.set_coeff(e[ch.main], p.coeff(e[ch.main]) + v);
  }
  return p;
}

std::array<Coefficient, 3> triple_in_chart(const Chart& ch,
                                           const Coefficient& t,
                                           const Coefficient& u,
                                           const Coefficient& w) {
  std::array<Coefficient, 3> p;
  p[ch.main] = t;
  p[ch.sec] = u;
  p[ch.one] = w;
  return p;
}

std::array<Coefficient, 3> linear_coeffs(const TernaryForm& l) {
  return {l.coeff(1, 0, 0), l.coeff(0, 1, 0), l.coeff(0, 0, 1)};
}

std::array<Coefficient, 3> cross(const std::array<Coefficient, 3>& a,
                                 const std::array<Coefficient, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Real zero locus of a nonzero quadratic form.
struct ConicZeros {
  enum class Kind { None, Point, Curve } kind = Kind::None;
  ProjectiveZero point;  // Kind::Point
};

ConicZeros classify_conic(const TernaryForm& q) {
  SosResult r = sos_from_quadratic(q);
  if (!r.ok) r = sos_from_quadratic(-q);
  ConicZeros out;
  if (!r.ok) {
    // indefinite: the real locus is a curve (conic or line pair)
    out.kind = ConicZeros::Kind::Curve;
    return out;
  }
  // semidefinite: zeros = common zeros of the square terms
  switch (r.terms.size()) {
    case 3:
      out.kind = ConicZeros::Kind::None;
      break;
    case 2: {
      auto p = cross(linear_coeffs(r.terms[0].form),
                     linear_coeffs(r.terms[1].form));
      out.kind = ConicZeros::Kind::Point;
      out.point = ProjectiveZero::from_triple(p[0], p[1], p[2]);
      break;
    }
    case 1:
      // rank 1 means q is a scalar times a square of a line: a whole line
      // of zeros (callers only reach this on non-square-free input)
      out.kind = ConicZeros::Kind::Curve;
      break;
    default:
      throw MathError("classify_conic: empty decomposition of nonzero form");
  }
  return out;
}

void sort_dedup(std::vector<ProjectiveZero>& pts) {
  std::sort(pts.begin(), pts.end(),
            [](const ProjectiveZero& a, const ProjectiveZero& b) {
              return compare(a, b) < 0;
            });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Zero set of a square-free factor g, handled per Lemma-5 elimination.
// kind here is Finite (possibly with no points) unless a whole line of
// zeros is discovered.
struct FactorZeros {
  bool infinite = false;
  TernaryForm line;  // witness when infinite
  std::vector<ProjectiveZero> points;
};

FactorZeros squarefree_factor_zeros(const TernaryForm& g) {
  FactorZeros out;

  // A factor free of one variable v: every binary root gives a whole line
  // of zeros through e_v; with no binary root, e_v is the only zero.
  for (int v = 0; v < 3; ++v) {
    if (g.degree_in(v) > 0) continue;
    Chart ch = chart_of(v);
    BinaryForm b = binary_in(g, ch.sec, ch.one);
    auto roots = binary_projective_roots(b);
    if (!roots.empty()) {
      const auto& r = roots.front();
      out.infinite = true;
      // line through e_main and (0, u, w): u*one - w*sec
      out.line = TernaryForm::variable(ch.one) * r.u -
                 TernaryForm::variable(ch.sec) * r.w;
      return out;
    }
    auto t = triple_in_chart(ch, Coefficient(1), Coefficient(0),
                             Coefficient(0));
    out.points.push_back(ProjectiveZero::from_triple(t[0], t[1], t[2]));
    return out;
  }

  // First variable whose resultant with the v-derivative survives.
  for (int v = 0; v < 3; ++v) {
    TernaryForm R = resultant_ternary(g, g.derivative(v), v);
    if (R.is_zero()) continue;
    Chart ch = chart_of(v);

    std::vector<LinePoint> fibers =
        binary_projective_roots(binary_in(R, ch.sec, ch.one));
    for (const auto& fib : fibers) {
      APoly gv = fiber_poly(g, ch, fib.u, fib.w);
      if (gv.is_zero()) {
        out.infinite = true;
        out.line = TernaryForm::variable(ch.one) * fib.u -
                   TernaryForm::variable(ch.sec) * fib.w;
        return out;
      }
      APoly gdv = fiber_poly(g.derivative(ch.main), ch, fib.u, fib.w);
      APoly h = gdv.is_zero() ? gv : apoly_gcd(gv, gdv);
      if (h.degree() < 1) continue;  // complex-only coincidence
      // every root of h is an exact root of gv: verify h | gv once
      auto [quo, rem] = apoly_divrem(gv, h);
      (void)quo;
      if (!rem.is_zero())
        throw MathError("zerofinder: gcd does not divide the fiber");
      for (const auto& t : roots_over_field(h)) {
        auto p = triple_in_chart(ch, t, fib.u, fib.w);
        out.points.push_back(ProjectiveZero::from_triple(p[0], p[1], p[2]));
      }
    }

    // e_main lies on every fiber but is parametrized by none of them
    if (g.evaluate(v == 0 ? Coefficient(1) : Coefficient(0),
                   v == 1 ? Coefficient(1) : Coefficient(0),
                   v == 2 ? Coefficient(1) : Coefficient(0))
            .is_zero()) {
      auto p = triple_in_chart(ch, Coefficient(1), Coefficient(0),
                               Coefficient(0));
      out.points.push_back(ProjectiveZero::from_triple(p[0], p[1], p[2]));
    }
    return out;
  }
  throw MathError(
      "internal: all three resultants vanish on a square-free form");
}

}  // namespace

ProjectiveZero ProjectiveZero::from_triple(const Coefficient& x,
                                           const Coefficient& y,
                                           const Coefficient& z) {
  ProjectiveZero p;
  if (!z.is_zero()) {
    p.chart = Chart::AffineZ;
    Coefficient zi = z.inv();
    p.coords = {x * zi, y * zi, Coefficient(1)};
  } else if (!y.is_zero()) {
    p.chart = Chart::LineAtInfinity;
    p.coords = {x * y.inv(), Coefficient(1), Coefficient(0)};
  } else if (!x.is_zero()) {
    p.chart = Chart::PointX;
    p.coords = {Coefficient(1), Coefficient(0), Coefficient(0)};
  } else {
    throw MathError("projective point from (0, 0, 0)");
  }
  return p;
}

bool ProjectiveZero::operator==(const ProjectiveZero& o) const {
  return compare(*this, o) == 0;
}

int compare(const ProjectiveZero& a, const ProjectiveZero& b) {
  if (a.chart != b.chart)
    return static_cast<int>(a.chart) < static_cast<int>(b.chart) ? -1 : 1;
  for (int i = 0; i < 3; ++i) {
    int c = compare(a.coords[i], b.coords[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::vector<LinePoint> binary_projective_roots(const BinaryForm& R) {
  if (R.is_zero()) throw MathError("binary_projective_roots of zero form");
  int D = R.degree();
  APoly p = R.dehomogenize(0);  // R(t, 1)
  std::vector<std::pair<RealAlgebraic, int>> finite;
  if (p.degree() >= 1) {
    for (const auto& [fac, m] : apoly_squarefree_decompose(p)) {
      if (fac.degree() < 1) continue;
      for (const auto& r : roots_over_field(fac)) finite.push_back({r, m});
    }
    std::sort(finite.begin(), finite.end(),
              [](const auto& a, const auto& b) {
                return compare(a.first, b.first) < 0;
              });
  }
  std::vector<LinePoint> out;
  for (auto& [r, m] : finite) out.push_back({r, Coefficient(1), m});
  int at_inf = D - std::max(p.degree(), 0);
  if (at_inf > 0) out.push_back({Coefficient(1), Coefficient(0), at_inf});
  return out;
}

bool is_strictly_positive_binary(const BinaryForm& h) {
  if (h.is_zero() || h.degree() % 2 != 0)
    throw MathError("is_strictly_positive_binary: need nonzero even degree");
  if (!binary_projective_roots(h).empty()) return false;
  // no projective zero, so the sign at any point is the global sign
  return h.evaluate(Coefficient(0), Coefficient(1)).sign() > 0;
}

ZeroSet projective_real_zeros(const TernaryForm& f, bool psd_assumed) {
  (void)psd_assumed;  // completeness relies on it; the algorithm does not
  if (f.is_zero() || f.degree() != 4)
    throw MathError("projective_real_zeros expects a nonzero quartic");

  auto factorization = squarefree_decompose_ternary(f);
  ZeroSet zs;
  std::vector<ProjectiveZero> points;

  for (const auto& fac : factorization) {
    const TernaryForm& h = fac.first;
    int d = h.degree();
    if (d < 1) continue;
    switch (d) {
      case 1:
        zs.lines.push_back(h);
        break;
      case 2: {
        ConicZeros cz = classify_conic(h);
        if (cz.kind == ConicZeros::Kind::Curve)
          zs.lines.push_back(h);
        else if (cz.kind == ConicZeros::Kind::Point)
          points.push_back(cz.point);
        break;
      }
      case 3:
        // odd degree: the real locus is a curve (impossible for PSD input)
        zs.lines.push_back(h);
        break;
      default: {
        FactorZeros fz = squarefree_factor_zeros(h);
        if (fz.infinite)
          zs.lines.push_back(fz.line);
        else
          points.insert(points.end(), fz.points.begin(), fz.points.end());
        break;
      }
    }
  }

  if (!zs.lines.empty()) {
    zs.kind = ZeroSet::Kind::Infinite;
    zs.factorization = std::move(factorization);
    return zs;
  }
  sort_dedup(points);
  zs.kind = points.empty() ? ZeroSet::Kind::Empty : ZeroSet::Kind::Finite;
  zs.points = std::move(points);
  return zs;
}

}  // namespace sosq
