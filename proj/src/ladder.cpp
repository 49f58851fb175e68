#include "sosq/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "sosq/elimination.hpp"
#include "sosq/gram.hpp"

namespace sosq {

namespace {

TernaryForm var(int v) { return TernaryForm::variable(v); }

TernaryForm sphere() {
  TernaryForm x = var(0), y = var(1), z = var(2);
  return x * x + y * y + z * z;
}

BinaryForm circle2() {
  BinaryForm c;
  c.set_coeff(2, 0, Coefficient(1));
  c.set_coeff(0, 2, Coefficient(1));
  return c;
}

std::array<Coefficient, 3> unit(int i) {
  std::array<Coefficient, 3> e = {Coefficient(0), Coefficient(0),
                                  Coefficient(0)};
  e[i] = Coefficient(1);
  return e;
}

bool rational_only(const TernaryForm& f) {
  for (const auto& [e, c] : f.terms())
    if (!c.is_rational()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// numeric helpers (double precision; used only to find candidates that are
// then checked exactly)

struct NumForm {
  std::vector<std::pair<std::array<int, 3>, double>> terms;

  explicit NumForm(const TernaryForm& f) {
    for (const auto& [e, c] : f.terms()) terms.push_back({e, c.to_double()});
  }

  double eval(const std::array<double, 3>& v) const {
    double s = 0;
    for (const auto& [e, c] : terms) {
      double m = c;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < e[i]; ++k) m *= v[i];
      s += m;
    }
    return s;
  }

  std::array<double, 3> grad(const std::array<double, 3>& v) const {
    std::array<double, 3> g = {0, 0, 0};
    for (const auto& [e, c] : terms)
      for (int i = 0; i < 3; ++i) {
        if (e[i] == 0) continue;
        double m = c * e[i];
        for (int j = 0; j < 3; ++j) {
          int pw = (j == i) ? e[j] - 1 : e[j];
          for (int k = 0; k < pw; ++k) m *= v[j];
        }
        g[i] += m;
      }
    return g;
  }
};

std::pair<std::array<double, 3>, double> numeric_sphere_min(
    const TernaryForm& f) {
  NumForm nf(f);
  std::mt19937 rng(9001);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::array<double, 3> best = {1, 0, 0};
  double bestv = nf.eval(best);
  for (int s = 0; s < 40; ++s) {
    std::array<double, 3> v = {U(rng), U(rng), U(rng)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n < 1e-6) continue;
    for (double& x : v) x /= n;
    double fv = nf.eval(v);
    double step = 0.2;
    for (int it = 0; it < 300 && step > 1e-14; ++it) {
      std::array<double, 3> g = nf.grad(v);
      double gv = g[0] * v[0] + g[1] * v[1] + g[2] * v[2];
      for (int i = 0; i < 3; ++i) g[i] -= gv * v[i];
      std::array<double, 3> w;
      for (int i = 0; i < 3; ++i) w[i] = v[i] - step * g[i];
      double n2 = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
      for (double& x : w) x /= n2;
      double fw = nf.eval(w);
      if (fw < fv) {
        v = w;
        fv = fw;
        step *= 1.2;
      } else {
        step *= 0.5;
      }
    }
    if (fv < bestv) {
      bestv = fv;
      best = v;
    }
  }
  return {best, bestv};
}

std::array<Coefficient, 3> rationalize(const std::array<double, 3>& v,
                                       long den) {
  std::array<Coefficient, 3> P;
  for (int i = 0; i < 3; ++i) {
    Rational q(static_cast<long>(std::llround(v[i] * den)),
               static_cast<unsigned long>(den));
    q.canonicalize();
    P[i] = Coefficient(q);
  }
  return P;
}

// exact negative sample: small grid first, then a numeric descent whose best
// point is rounded and re-checked exactly
std::optional<std::array<Coefficient, 3>> quick_negative_witness(
    const TernaryForm& f) {
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        std::array<Coefficient, 3> P = {Coefficient(a), Coefficient(b),
                                        Coefficient(c)};
        if (f.evaluate(P[0], P[1], P[2]).sign() < 0) return P;
      }
  auto [v, val] = numeric_sphere_min(f);
  if (val < -1e-9) {
    for (long den : {1L << 10, 1L << 18, 1L << 26}) {
      std::array<Coefficient, 3> P = rationalize(v, den);
      if (P[0].is_zero() && P[1].is_zero() && P[2].is_zero()) continue;
      if (f.evaluate(P[0], P[1], P[2]).sign() < 0) return P;
    }
  }
  return std::nullopt;
}

// exact search for a negative value close to the coordinate point e_axis
std::optional<std::array<Coefficient, 3>> local_negative_search(
    const TernaryForm& g, int axis) {
  int o1 = (axis + 1) % 3, o2 = (axis + 2) % 3;
  Rational eps(1, 2);
  for (int it = 0; it < 48; ++it, eps /= 2) {
    for (int s1 = -1; s1 <= 1; ++s1)
      for (int s2 = -1; s2 <= 1; ++s2) {
        if (s1 == 0 && s2 == 0) continue;
        for (const Rational& f2 : {eps, Rational(eps * eps)}) {
          std::array<Coefficient, 3> P;
          P[axis] = Coefficient(1);
          P[o1] = Coefficient(Rational(s1) * eps);
          P[o2] = Coefficient(Rational(s2) * f2);
          if (g.evaluate(P[0], P[1], P[2]).sign() < 0) return P;
        }
      }
  }
  return std::nullopt;
}

// rational t with g(t, u, w) < 0 along a fiber that is unbounded below
std::optional<std::array<Coefficient, 3>> descend_in_x(const TernaryForm& g,
                                                       const Coefficient& u,
                                                       const Coefficient& w) {
  Coefficient t(1);
  for (int it = 0; it < 80; ++it) {
    for (const Coefficient& s : {t, -t})
      if (g.evaluate(s, u, w).sign() < 0)
        return std::array<Coefficient, 3>{s, u, w};
    t = t * Coefficient(2);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// circle minima and points on curves

struct CircleMin {
  RealAlgebraic value;
  Coefficient u, w;  // argmin direction (u : w)
};

CircleMin circle_min(const BinaryForm& h, const BinaryForm& wgt) {
  if (h.is_zero()) return {RealAlgebraic(0), Coefficient(1), Coefficient(0)};
  int d = h.degree();
  if (wgt.is_zero() || wgt.degree() != d || d % 2 != 0)
    throw MathError("min_binary_on_circle: need equal even degrees");
  if (!is_strictly_positive_binary(wgt))
    throw MathError("min_binary_on_circle: weight must be positive on the circle");
  APoly hp = h.dehomogenize(0), wp = wgt.dehomogenize(0);
  // the point at infinity is always a candidate
  CircleMin best = {h.coeff(d, 0) / wgt.coeff(d, 0), Coefficient(1),
                    Coefficient(0)};
  APoly J = hp.derivative().mul(wp).sub(hp.mul(wp.derivative()));
  if (J.degree() >= 1) {
    for (const RealAlgebraic& t : roots_over_field(J)) {
      RealAlgebraic val = apoly_eval(hp, t) / apoly_eval(wp, t);
      if (compare(val, best.value) < 0) best = {val, t, Coefficient(1)};
    }
  }
  return best;
}

// direction (u : w) with p(u, w) < 0, when one exists
std::optional<std::pair<Coefficient, Coefficient>> binary_negative_direction(
    const BinaryForm& p) {
  if (p.is_zero()) return std::nullopt;
  if (p.evaluate(Coefficient(1), Coefficient(0)).sign() < 0)
    return std::make_pair(Coefficient(1), Coefficient(0));
  std::vector<RealAlgebraic> cand;
  cand.push_back(RealAlgebraic(0));
  APoly pp = p.dehomogenize(0);
  if (pp.degree() >= 1) {
    std::vector<RealAlgebraic> roots = roots_over_field(pp);
    std::sort(roots.begin(), roots.end(),
              [](const RealAlgebraic& a, const RealAlgebraic& b) {
                return compare(a, b) < 0;
              });
    RealAlgebraic half((Rational(1, 2)));
    for (size_t i = 0; i + 1 < roots.size(); ++i)
      cand.push_back((roots[i] + roots[i + 1]) * half);
    if (!roots.empty()) {
      cand.push_back(roots.front() - RealAlgebraic(1));
      cand.push_back(roots.back() + RealAlgebraic(1));
    }
  }
  for (const RealAlgebraic& t : cand)
    if (p.evaluate(t, Coefficient(1)).sign() < 0)
      return std::make_pair(Coefficient(t), Coefficient(1));
  return std::nullopt;
}

std::array<Coefficient, 3> point_off_form(const TernaryForm& Q) {
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        std::array<Coefficient, 3> P = {Coefficient(a), Coefficient(b),
                                        Coefficient(c)};
        if (!Q.evaluate(P[0], P[1], P[2]).is_zero()) return P;
      }
  throw MathError("internal: no sample point off the form");
}

std::array<Coefficient, 3> point_on_line(const TernaryForm& l) {
  Coefficient a = l.coeff(1, 0, 0), b = l.coeff(0, 1, 0);
  if (!a.is_zero() || !b.is_zero()) return {b, -a, Coefficient(0)};
  return {Coefficient(1), Coefficient(0), Coefficient(0)};
}

std::array<Coefficient, 3> point_on_conic(const TernaryForm& q) {
  std::optional<std::array<Coefficient, 3>> pos, neg;
  for (int n : {1, 2, 3, 5, 8}) {
    for (int a = -n; a <= n && !(pos && neg); ++a)
      for (int b = -n; b <= n && !(pos && neg); ++b)
        for (int c = -n; c <= n && !(pos && neg); ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          std::array<Coefficient, 3> P = {Coefficient(a), Coefficient(b),
                                          Coefficient(c)};
          int s = q.evaluate(P[0], P[1], P[2]).sign();
          if (s == 0) return P;
          (s > 0 ? pos : neg) = P;
        }
    if (pos && neg) break;
  }
  if (!pos || !neg) throw MathError("internal: expected an indefinite conic");
  // q restricted to the segment between the sign points changes sign, so it
  // has an exact root there
  APoly co[3];
  for (int i = 0; i < 3; ++i) {
    co[i].set_coeff(0, (*pos)[i]);
    co[i].set_coeff(1, (*neg)[i] - (*pos)[i]);
  }
  APoly rt;
  for (const auto& [e, c] : q.terms()) {
    APoly m{RealAlgebraic(c)};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) m = m.mul(co[i]);
    rt = rt.add(m);
  }
  std::vector<RealAlgebraic> roots = roots_over_field(rt);
  if (roots.empty()) throw MathError("internal: no real point on the conic");
  const RealAlgebraic& t = roots.front();
  std::array<Coefficient, 3> P;
  for (int i = 0; i < 3; ++i) P[i] = (*pos)[i] + t * ((*neg)[i] - (*pos)[i]);
  return P;
}

std::array<Coefficient, 3> point_on_curve(const TernaryForm& h) {
  if (h.degree() == 1) return point_on_line(h);
  if (h.degree() == 2) return point_on_conic(h);
  // odd degree: the restriction to a coordinate plane, when nonzero, is an
  // odd binary form and always has a real root
  for (int v = 2; v >= 0; --v) {
    int i0 = v == 0 ? 1 : 0, i1 = v == 2 ? 1 : 2;
    BinaryForm b;
    for (const auto& [e, c] : h.terms()) {
      if (e[v] != 0) continue;
      b.set_coeff(e[i0], e[i1], c);
    }
    if (b.is_zero()) continue;
    std::vector<LinePoint> roots = binary_projective_roots(b);
    if (roots.empty()) continue;
    std::array<Coefficient, 3> P;
    P[v] = Coefficient(0);
    P[i0] = roots.front().u;
    P[i1] = roots.front().w;
    return P;
  }
  return {Coefficient(1), Coefficient(0), Coefficient(0)};
}

ProjectiveZero witness_from(const ZeroSet& zs) {
  if (!zs.points.empty()) return zs.points.front();
  if (zs.lines.empty()) throw MathError("internal: empty witness set");
  std::array<Coefficient, 3> P = point_on_curve(zs.lines.front());
  return ProjectiveZero::from_triple(P[0], P[1], P[2]);
}

// ---------------------------------------------------------------------------
// binary quadratic analysis and exact division by a line

struct QuadInfo {
  int rank = 0;
  Coefficient scale;  // rank 1: p = scale * line^2
  BinaryForm line;
  Coefficient disc;  // b^2 - 4ac
};

QuadInfo analyze_quadratic(const BinaryForm& p) {
  QuadInfo info;
  if (p.is_zero()) {
    info.disc = Coefficient(0);
    return info;
  }
  Coefficient a = p.coeff(2, 0), b = p.coeff(1, 1), c = p.coeff(0, 2);
  info.disc = b * b - Coefficient(4) * a * c;
  if (!info.disc.is_zero()) {
    info.rank = 2;
    return info;
  }
  info.rank = 1;
  if (!a.is_zero()) {
    info.scale = a;
    info.line.set_coeff(1, 0, Coefficient(1));
    info.line.set_coeff(0, 1, b / (a * Coefficient(2)));
  } else {  // b^2 = 4ac forces b = 0 here
    info.scale = c;
    info.line.set_coeff(0, 1, Coefficient(1));
  }
  return info;
}

std::optional<BinaryForm> divide_by_line(const BinaryForm& q,
                                         const BinaryForm& l) {
  if (q.is_zero()) return BinaryForm();
  int dq = q.degree();
  BinaryForm q1;
  if (!l.coeff(1, 0).is_zero()) {
    auto [quo, rem] = apoly_divrem(q.dehomogenize(0), l.dehomogenize(0));
    if (!rem.is_zero()) return std::nullopt;
    q1 = BinaryForm::homogenize(quo, dq - 1);
  } else {
    Coefficient b = l.coeff(0, 1);
    for (const auto& [e, c] : q.terms()) {
      if (e[1] == 0) return std::nullopt;
      q1.set_coeff(e[0], e[1] - 1, c / b);
    }
  }
  if (!(l * q1 == q)) return std::nullopt;
  return q1;
}

// root direction of a real line a*y + b*z
std::pair<Coefficient, Coefficient> line_root(const BinaryForm& l) {
  return {-l.coeff(0, 1), l.coeff(1, 0)};
}

// direction with w = 1 where the binary form is nonzero
Coefficient direction_off(const BinaryForm& b) {
  for (int u = 0; u <= 6; ++u) {
    for (int s : {1, -1}) {
      Coefficient c(s * u);
      if (!b.evaluate(c, Coefficient(1)).is_zero()) return c;
      if (u == 0) break;
    }
  }
  throw MathError("internal: no direction off the form");
}

Matrix3 basis_with_column0(const std::array<Coefficient, 3>& P) {
  int k = 2;
  while (k >= 0 && P[k].is_zero()) --k;
  if (k < 0) throw MathError("internal: zero direction");
  std::array<std::array<Coefficient, 3>, 2> e;
  int n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) e[n++] = unit(i);
  return Matrix3::from_columns(P, e[0], e[1]);
}

// ---------------------------------------------------------------------------
// structural shortcuts

// f = c * Q^2 with Q quadratic; raises NotPsdError when c < 0
std::optional<CertTerm> try_perfect_square(const TernaryForm& f) {
  if (f.is_zero() || f.degree() != 4) return std::nullopt;
  Coefficient c(1);
  TernaryForm Q = TernaryForm::monomial(0, 0, 0, Coefficient(1));
  for (const auto& [h, m] : squarefree_decompose_ternary(f)) {
    if (h.degree() == 0) {
      for (int i = 0; i < m; ++i) c = c * h.coeff(0, 0, 0);
    } else {
      if (m % 2 != 0) return std::nullopt;
      Q = Q * pow(h, m / 2);
    }
  }
  if (Q.degree() != 2) return std::nullopt;
  if (c.sign() < 0) throw NotPsdError(point_off_form(Q));
  return CertTerm{c, Q};
}

// cyclic Jacobi eigendecomposition of a symmetric n x n, n <= 6 (doubles)
void jacobi_eigen(double a[6][6], double vec[6][6], double val[6], int n = 6) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vec[i][j] = (i == j) ? 1.0 : 0.0;
  for (int sweep = 0; sweep < 40; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-15) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double cth = 1 / std::sqrt(t * t + 1), sth = t * cth;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = cth * akp - sth * akq;
          a[k][q] = sth * akp + cth * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = cth * apk - sth * aqk;
          a[q][k] = sth * apk + cth * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = vec[k][p], vkq = vec[k][q];
          vec[k][p] = cth * vkp - sth * vkq;
          vec[k][q] = sth * vkp + cth * vkq;
        }
      }
  }
  for (int i = 0; i < n; ++i) val[i] = a[i][i];
}

// exact affine solution set of a linear system in six unknowns; each row is
// six coefficients followed by the right-hand side
struct AffineSet {
  bool consistent = false;
  std::array<Rational, 6> point;
  std::vector<std::array<Rational, 6>> basis;
};

AffineSet solve_affine(std::vector<std::array<Rational, 7>> rows) {
  AffineSet out;
  int lead[6] = {-1, -1, -1, -1, -1, -1};
  int r = 0;
  for (int col = 0; col < 6 && r < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (sgn(rows[i][col]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    Rational d = rows[r][col];
    for (int j = col; j < 7; ++j) rows[r][j] /= d;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || sgn(rows[i][col]) == 0) continue;
      Rational m = rows[i][col];
      for (int j = col; j < 7; ++j) rows[i][j] -= m * rows[r][j];
    }
    lead[col] = r;
    ++r;
  }
  for (int i = r; i < static_cast<int>(rows.size()); ++i)
    if (sgn(rows[i][6]) != 0) return out;  // inconsistent
  for (int col = 0; col < 6; ++col)
    out.point[col] = lead[col] >= 0 ? rows[lead[col]][6] : Rational(0);
  for (int col = 0; col < 6; ++col) {
    if (lead[col] >= 0) continue;
    std::array<Rational, 6> b{};
    b[col] = Rational(1);
    for (int c2 = 0; c2 < 6; ++c2)
      if (lead[c2] >= 0) b[c2] = -rows[lead[c2]][col];
    out.basis.push_back(b);
  }
  out.consistent = true;
  return out;
}

// searches the 6-parameter Gram family of g in the basis
// (x², y², z², xy, yz, zx) for an exactly PSD member: first a handful of
// exact candidates, then a Douglas-Rachford search in doubles whose limit
// is rounded and re-checked exactly. When zeros of g are supplied every
// Gram matrix must annihilate their monomial vectors, which restricts the
// family to an exact affine face searched the same way.
std::optional<std::vector<CertTerm>> direct_gram(
    const TernaryForm& g, const std::vector<ProjectiveZero>* zeros = nullptr) {
  if (g.degree() != 4 || !rational_only(g)) return std::nullopt;
  auto c = [&](int i, int j, int k) { return g.coeff(i, j, k); };
  Coefficient half{Rational(1, 2)};
  Coefficient cxxyy = c(2, 2, 0), cyyzz = c(0, 2, 2), cxxzz = c(2, 0, 2);
  Coefficient cxxyz = c(2, 1, 1), cxyyz = c(1, 2, 1), cxyzz = c(1, 1, 2);

  // t = (G01, G12, G02, G04, G15, G23); the other family entries follow
  auto make_matrix = [&](const std::array<Coefficient, 6>& t) {
    SymMatrix M(6);
    M.set(0, 0, c(4, 0, 0));
    M.set(1, 1, c(0, 4, 0));
    M.set(2, 2, c(0, 0, 4));
    M.set(0, 3, c(3, 1, 0) * half);
    M.set(0, 5, c(3, 0, 1) * half);
    M.set(1, 3, c(1, 3, 0) * half);
    M.set(1, 4, c(0, 3, 1) * half);
    M.set(2, 4, c(0, 1, 3) * half);
    M.set(2, 5, c(1, 0, 3) * half);
    M.set(0, 1, t[0]);
    M.set(3, 3, cxxyy - Coefficient(2) * t[0]);
    M.set(1, 2, t[1]);
    M.set(4, 4, cyyzz - Coefficient(2) * t[1]);
    M.set(0, 2, t[2]);
    M.set(5, 5, cxxzz - Coefficient(2) * t[2]);
    M.set(0, 4, t[3]);
    M.set(3, 5, cxxyz * half - t[3]);
    M.set(1, 5, t[4]);
    M.set(3, 4, cxyyz * half - t[4]);
    M.set(2, 3, t[5]);
    M.set(4, 5, cxyzz * half - t[5]);
    return M;
  };
  TernaryForm basis[6] = {
      TernaryForm::monomial(2, 0, 0, Coefficient(1)),
      TernaryForm::monomial(0, 2, 0, Coefficient(1)),
      TernaryForm::monomial(0, 0, 2, Coefficient(1)),
      TernaryForm::monomial(1, 1, 0, Coefficient(1)),
      TernaryForm::monomial(0, 1, 1, Coefficient(1)),
      TernaryForm::monomial(1, 0, 1, Coefficient(1)),
  };
  auto terms_of = [&](const LDLT& ld) {
    std::vector<CertTerm> terms;
    for (int k = 0; k < 6; ++k) {
      if (ld.D[k].is_zero()) continue;
      TernaryForm form;
      for (int i = 0; i < 6; ++i)
        if (!ld.L[i][k].is_zero()) form = form + basis[ld.perm[i]] * ld.L[i][k];
      terms.push_back({ld.D[k], form});
    }
    return terms;
  };

  if (zeros && !zeros->empty()) {
    // any PSD Gram matrix annihilates the monomial vector of each zero of
    // g, so cut the family down to that exact affine face first
    std::vector<std::array<Rational, 6>> kern;
    for (const ProjectiveZero& zp : *zeros) {
      std::array<Coefficient, 6> mv = {
          zp.coords[0] * zp.coords[0], zp.coords[1] * zp.coords[1],
          zp.coords[2] * zp.coords[2], zp.coords[0] * zp.coords[1],
          zp.coords[1] * zp.coords[2], zp.coords[2] * zp.coords[0]};
      FieldPtr fld;
      for (const Coefficient& e : mv) {
        if (e.is_rational()) continue;
        if (fld && fld != e.field()) return std::nullopt;
        if (!fld) fld = e.field();
      }
      if (!fld) {
        std::array<Rational, 6> row;
        for (int k = 0; k < 6; ++k) row[k] = mv[k].rational_value();
        kern.push_back(row);
        continue;
      }
      // an algebraic zero constrains every power-basis component of its
      // monomial vector separately, and those components are rational
      for (int j = 0; j < fld->degree(); ++j) {
        std::array<Rational, 6> row;
        bool nonzero = false;
        for (int k = 0; k < 6; ++k) {
          row[k] = mv[k].is_rational()
                       ? (j == 0 ? mv[k].rational_value() : Rational(0))
                       : mv[k].rep().coeff(j);
          nonzero = nonzero || sgn(row[k]) != 0;
        }
        if (nonzero) kern.push_back(row);
      }
    }
    std::array<Coefficient, 6> zero6;
    for (auto& e : zero6) e = Coefficient(0);
    SymMatrix F0m = make_matrix(zero6);
    std::vector<SymMatrix> Bmat;
    for (int i = 0; i < 6; ++i) {
      std::array<Coefficient, 6> e = zero6;
      e[i] = Coefficient(1);
      Bmat.push_back(make_matrix(e));
    }
    std::vector<std::array<Rational, 7>> rows;
    for (const auto& m : kern)
      for (int r = 0; r < 6; ++r) {
        std::array<Rational, 7> row{};
        for (int col = 0; col < 6; ++col) {
          row[6] -= F0m.at(r, col).rational_value() * m[col];
          for (int i = 0; i < 6; ++i)
            row[i] += (Bmat[i].at(r, col) - F0m.at(r, col)).rational_value() *
                      m[col];
        }
        rows.push_back(row);
      }
    AffineSet aff = solve_affine(std::move(rows));
    // an inconsistent system means no Gram matrix kills the zeros at all
    if (!aff.consistent) return std::nullopt;
    std::array<Coefficient, 6> tp;
    for (int i = 0; i < 6; ++i) tp[i] = Coefficient(aff.point[i]);
    {
      LDLT ld = ldlt_psd(make_matrix(tp));
      if (ld.psd) return terms_of(ld);
    }
    int p = static_cast<int>(aff.basis.size());
    if (p == 0) return std::nullopt;
    // the face only has interior in the orthogonal complement of the forced
    // kernel, so Douglas-Rachford runs in that reduced space
    std::vector<std::array<double, 6>> kb, cb;
    auto orth_push = [](std::vector<std::array<double, 6>>& bs,
                        std::array<double, 6> v, double tol) {
      for (const auto& u : bs) {
        double d = 0;
        for (int i = 0; i < 6; ++i) d += v[i] * u[i];
        for (int i = 0; i < 6; ++i) v[i] -= d * u[i];
      }
      double n2 = 0;
      for (int i = 0; i < 6; ++i) n2 += v[i] * v[i];
      if (n2 < tol) return;
      double nn = std::sqrt(n2);
      for (int i = 0; i < 6; ++i) v[i] /= nn;
      bs.push_back(v);
    };
    for (const auto& m : kern) {
      std::array<double, 6> v;
      for (int i = 0; i < 6; ++i) v[i] = m[i].get_d();
      orth_push(kb, v, 1e-18);
    }
    for (int e = 0; e < 6; ++e) {
      std::array<double, 6> v{};
      v[e] = 1;
      for (const auto& u : kb) {
        double d = u[e];
        for (int i = 0; i < 6; ++i) v[i] -= d * u[i];
      }
      orth_push(cb, v, 1e-12);
    }
    int q = static_cast<int>(cb.size());
    if (q == 0) return std::nullopt;
    auto reduce = [&](const SymMatrix& M, double H[6][6]) {
      double Md[6][6];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) Md[i][j] = M.at(i, j).to_double();
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          double s = 0;
          for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) s += cb[a][i] * Md[i][j] * cb[b][j];
          H[a][b] = s;
        }
    };
    double H0[6][6];
    reduce(make_matrix(tp), H0);
    std::vector<std::array<std::array<double, 6>, 6>> D(p);
    for (int a = 0; a < p; ++a) {
      std::array<Coefficient, 6> e;
      for (int i = 0; i < 6; ++i)
        e[i] = Coefficient(Rational(aff.point[i] + aff.basis[a][i]));
      double Ha[6][6];
      reduce(make_matrix(e), Ha);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) D[a][i][j] = Ha[i][j] - H0[i][j];
    }
    double N[6][6];
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        double s = 0;
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) s += D[a][i][j] * D[b][i][j];
        N[a][b] = s;
      }
    auto solve_s = [&](const double Hin[6][6], double s[6]) {
      double A[6][7];
      for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) A[a][b] = N[a][b];
        double y = 0;
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) y += (Hin[i][j] - H0[i][j]) * D[a][i][j];
        A[a][p] = y;
      }
      for (int col = 0; col < p; ++col) {
        int piv = col;
        for (int i = col + 1; i < p; ++i)
          if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
        std::swap(A[col], A[piv]);
        if (std::abs(A[col][col]) < 1e-300) {
          for (int i = 0; i < p; ++i) s[i] = 0;
          return;
        }
        for (int i = 0; i < p; ++i) {
          if (i == col) continue;
          double m = A[i][col] / A[col][col];
          for (int j = col; j <= p; ++j) A[i][j] -= m * A[col][j];
        }
      }
      for (int i = 0; i < p; ++i) s[i] = A[i][p] / A[i][i];
    };
    auto face_fill = [&](const double s[6], double H[6][6]) {
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          double v = H0[i][j];
          for (int a = 0; a < p; ++a) v += s[a] * D[a][i][j];
          H[i][j] = v;
        }
    };
    double fscale = 1;
    for (const auto& [e, co] : g.terms())
      fscale = std::max(fscale, std::abs(co.to_double()));
    for (double margin_rel : {1e-6, 1e-8, 1e-10}) {
      double margin = margin_rel * fscale;
      double Z[6][6], s[6] = {0, 0, 0, 0, 0, 0};
      face_fill(s, Z);
      bool feasible = false;
      for (int it = 0; it < 5000 && !feasible; ++it) {
        solve_s(Z, s);
        double Bm[6][6], R[6][6], tmp[6][6], vec[6][6], val[6];
        face_fill(s, Bm);
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) {
            R[i][j] = 2 * Bm[i][j] - Z[i][j];
            tmp[i][j] = Bm[i][j];
          }
        jacobi_eigen(tmp, vec, val, q);
        feasible = true;
        for (int k = 0; k < q; ++k)
          feasible = feasible && val[k] >= margin * 0.5;
        if (feasible) break;
        jacobi_eigen(R, vec, val, q);
        double A[6][6] = {};
        for (int k = 0; k < q; ++k) {
          double lk = std::max(val[k], margin);
          for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) A[i][j] += lk * vec[i][k] * vec[j][k];
        }
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) Z[i][j] += A[i][j] - Bm[i][j];
      }
      for (long den : {1L << 14, 1L << 26, 1L << 40}) {
        std::array<Coefficient, 6> tr;
        for (int i = 0; i < 6; ++i) {
          Rational v = aff.point[i];
          for (int a = 0; a < p; ++a) {
            Rational sr(Int(static_cast<long>(
                            std::llround(s[a] * static_cast<double>(den)))),
                        Int(den));
            sr.canonicalize();
            v += sr * aff.basis[a][i];
          }
          tr[i] = Coefficient(v);
        }
        LDLT ld = ldlt_psd(make_matrix(tr));
        if (ld.psd) return terms_of(ld);
      }
    }
    return std::nullopt;
  }

  auto choices = [&](const Coefficient& v) {
    std::vector<Coefficient> out = {v * Coefficient(Rational(1, 4))};
    for (const Coefficient& w : {Coefficient(0), v * half}) {
      bool dup = false;
      for (const Coefficient& o : out) dup = dup || (o - w).is_zero();
      if (!dup) out.push_back(w);
    }
    return out;
  };
  auto t1s = choices(cxxyy), t2s = choices(cyyzz), t3s = choices(cxxzz);
  auto u1s = choices(cxxyz * half), u2s = choices(cxyyz * half),
       u3s = choices(cxyzz * half);
  for (const Coefficient& t1 : t1s)
    for (const Coefficient& t2 : t2s)
      for (const Coefficient& t3 : t3s)
        for (const Coefficient& u1 : u1s)
          for (const Coefficient& u2 : u2s)
            for (const Coefficient& u3 : u3s) {
              LDLT ld = ldlt_psd(make_matrix({t1, t2, t3, u1, u2, u3}));
              if (ld.psd) return terms_of(ld);
            }

  // alternating projections between the PSD cone (with a positive margin)
  // and the affine Gram family; the parameter directions have disjoint
  // supports, so the affine projection is a plain inner product
  double F[6][6] = {};
  F[0][0] = c(4, 0, 0).to_double();
  F[1][1] = c(0, 4, 0).to_double();
  F[2][2] = c(0, 0, 4).to_double();
  F[0][3] = F[3][0] = c(3, 1, 0).to_double() / 2;
  F[0][5] = F[5][0] = c(3, 0, 1).to_double() / 2;
  F[1][3] = F[3][1] = c(1, 3, 0).to_double() / 2;
  F[1][4] = F[4][1] = c(0, 3, 1).to_double() / 2;
  F[2][4] = F[4][2] = c(0, 1, 3).to_double() / 2;
  F[2][5] = F[5][2] = c(1, 0, 3).to_double() / 2;
  double dxxyy = cxxyy.to_double(), dyyzz = cyyzz.to_double(),
         dxxzz = cxxzz.to_double();
  double dxxyz = cxxyz.to_double(), dxyyz = cxyyz.to_double(),
         dxyzz = cxyzz.to_double();
  double scale = 1;
  for (const auto& [e, co] : g.terms())
    scale = std::max(scale, std::abs(co.to_double()));
  double t[6] = {dxxyy / 4, dyyzz / 4, dxxzz / 4,
                 dxxyz / 8, dxyyz / 8, dxyzz / 8};
  auto fill = [&](double G[6][6]) {
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) G[i][j] = F[i][j];
    G[0][1] = G[1][0] = t[0];
    G[3][3] = dxxyy - 2 * t[0];
    G[1][2] = G[2][1] = t[1];
    G[4][4] = dyyzz - 2 * t[1];
    G[0][2] = G[2][0] = t[2];
    G[5][5] = dxxzz - 2 * t[2];
    G[0][4] = G[4][0] = t[3];
    G[3][5] = G[5][3] = dxxyz / 2 - t[3];
    G[1][5] = G[5][1] = t[4];
    G[3][4] = G[4][3] = dxyyz / 2 - t[4];
    G[2][3] = G[3][2] = t[5];
    G[4][5] = G[5][4] = dxyzz / 2 - t[5];
  };
  // affine projection: basis norms are 6 for the t-directions (two unit
  // off-diagonal entries plus a -2 diagonal) and 4 for the u-directions
  auto project_t = [&](const double M[6][6]) {
    t[0] = (2 * M[0][1] - 2 * (M[3][3] - dxxyy)) / 6;
    t[1] = (2 * M[1][2] - 2 * (M[4][4] - dyyzz)) / 6;
    t[2] = (2 * M[0][2] - 2 * (M[5][5] - dxxzz)) / 6;
    t[3] = (2 * M[0][4] - 2 * (M[3][5] - dxxyz / 2)) / 4;
    t[4] = (2 * M[1][5] - 2 * (M[3][4] - dxyyz / 2)) / 4;
    t[5] = (2 * M[2][3] - 2 * (M[4][5] - dxyzz / 2)) / 4;
  };
  // Douglas-Rachford between the shifted PSD cone and the affine Gram
  // family; plain alternating projections crawl when the feasible set is
  // thin, DR does not
  for (double margin_rel : {1e-6, 1e-8, 1e-10}) {
    double margin = margin_rel * scale;
    double Z[6][6];
    fill(Z);
    bool feasible = false;
    for (int it = 0; it < 5000 && !feasible; ++it) {
      project_t(Z);
      double B[6][6], vec[6][6], val[6];
      fill(B);
      double R[6][6];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) R[i][j] = 2 * B[i][j] - Z[i][j];
      jacobi_eigen(B, vec, val);  // B is destroyed; eigenvalues remain
      feasible = true;
      for (int k = 0; k < 6; ++k) feasible = feasible && val[k] >= margin * 0.5;
      if (feasible) break;
      jacobi_eigen(R, vec, val);
      double A[6][6] = {};
      for (int k = 0; k < 6; ++k) {
        double lk = std::max(val[k], margin);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) A[i][j] += lk * vec[i][k] * vec[j][k];
      }
      fill(B);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) Z[i][j] += A[i][j] - B[i][j];
    }
    for (long den : {1L << 14, 1L << 26, 1L << 40}) {
      std::array<Coefficient, 6> tr;
      for (int i = 0; i < 6; ++i) {
        Rational q(
            Int(static_cast<long>(std::llround(t[i] * static_cast<double>(den)))),
            Int(den));
        q.canonicalize();
        tr[i] = Coefficient(q);
      }
      LDLT ld = ldlt_psd(make_matrix(tr));
      if (ld.psd) return terms_of(ld);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// critical directions of f on the sphere: common projective zeros of the
// cross product grad f x (x, y, z)

struct FiberChart {
  int main, sec, one;
};

// g restricted to the line t -> t*e_main + u*e_sec + w*e_one
APoly chart_fiber(const TernaryForm& g, const FiberChart& ch,
                  const Coefficient& u, const Coefficient& w) {
  APoly p;
  for (const auto& [e, c] : g.terms()) {
    Coefficient v = c;
    for (int k = 0; k < e[ch.sec]; ++k) v = v * u;
    for (int k = 0; k < e[ch.one]; ++k) v = v * w;
    p.set_coeff(e[ch.main], p.coeff(e[ch.main]) + v);
  }
  return p;
}

BinaryForm chart_binary(const TernaryForm& f, int vy, int vz) {
  BinaryForm b;
  for (const auto& [e, c] : f.terms()) b.set_coeff(e[vy], e[vz], c);
  return b;
}

// representatives of every connected component of the critical set; empty
// optional when no combination pair separates (the caller falls back)
std::optional<std::vector<std::array<Coefficient, 3>>> critical_directions(
    const TernaryForm& f) {
  TernaryForm x = var(0), y = var(1), z = var(2);
  std::array<TernaryForm, 3> c = {
      f.derivative(1) * z - f.derivative(2) * y,
      f.derivative(2) * x - f.derivative(0) * z,
      f.derivative(0) * y - f.derivative(1) * x,
  };
  if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
    return std::nullopt;  // radial: every direction is critical
  // generic combinations avoid the common factors the raw components share
  static const int combos[4][2][3] = {
      {{1, 0, 0}, {0, 1, 0}},
      {{1, 1, 1}, {1, -1, 2}},
      {{2, 1, -1}, {1, -2, 1}},
      {{0, 1, 1}, {1, 1, 0}},
  };
  for (const auto& combo : combos) {
    TernaryForm A, B;
    for (int k = 0; k < 3; ++k) {
      A = A + c[k] * Coefficient(combo[0][k]);
      B = B + c[k] * Coefficient(combo[1][k]);
    }
    if (A.is_zero() || B.is_zero()) continue;
    for (int v = 0; v < 3; ++v) {
      if (A.degree_in(v) == 0 || B.degree_in(v) == 0) continue;
      TernaryForm R = resultant_ternary(A, B, v);
      if (R.is_zero()) continue;
      FiberChart ch = {v, (v + 1) % 3, (v + 2) % 3};
      std::vector<std::array<Coefficient, 3>> pts;
      for (const auto& fib :
           binary_projective_roots(chart_binary(R, ch.sec, ch.one))) {
        APoly h;
        bool all_zero = true;
        for (int k = 0; k < 3; ++k) {
          APoly fk = chart_fiber(c[k], ch, fib.u, fib.w);
          if (fk.is_zero()) continue;
          all_zero = false;
          h = h.is_zero() ? fk : apoly_gcd(h, fk);
        }
        auto put = [&](const Coefficient& t) {
          std::array<Coefficient, 3> P;
          P[ch.main] = t;
          P[ch.sec] = fib.u;
          P[ch.one] = fib.w;
          pts.push_back(P);
        };
        if (all_zero) {
          // the whole line is critical; the ratio f/s^2 is constant on a
          // connected critical component, so one representative suffices
          put(Coefficient(0));
          continue;
        }
        if (h.degree() < 1) continue;
        for (const RealAlgebraic& t : roots_over_field(h)) put(t);
      }
      std::array<Coefficient, 3> apex = unit(v);
      bool crit = true;
      for (int k = 0; k < 3; ++k)
        crit = crit && c[k].evaluate(apex[0], apex[1], apex[2]).is_zero();
      if (crit) pts.push_back(apex);
      return pts;
    }
  }
  return std::nullopt;
}

// strict order on possibly cross-field values without forcing a compositum:
// numeric separation first, then an exact equality test via the defining
// polynomial of one side
int value_cmp(const RealAlgebraic& a, const RealAlgebraic& b) {
  Rational w(1, 256);
  for (int it = 0; it < 48; ++it, w /= 2) {
    a.refine(w);
    b.refine(w);
    auto ea = a.enclosure(), eb = b.enclosure();
    if (ea.second < eb.first) return -1;
    if (eb.second < ea.first) return 1;
  }
  const UniPoly& pb = b.defining_polynomial();
  if (sign_at(pb, a) == 0) {
    // a is a root of pb; b is the only root of pb inside its isolating
    // interval, so containment proves equality
    std::pair<Rational, Rational> ib = b.isolating_interval();
    for (int it = 0; it < 256; ++it, w /= 2) {
      a.refine(w);
      auto ea = a.enclosure();
      if (ib.first < ea.first && ea.second < ib.second) return 0;
      auto eb = b.enclosure();
      if (ea.second < eb.first) return -1;
      if (eb.second < ea.first) return 1;
    }
  } else {
    for (int it = 0; it < 256; ++it, w /= 2) {
      a.refine(w);
      b.refine(w);
      auto ea = a.enclosure(), eb = b.enclosure();
      if (ea.second < eb.first) return -1;
      if (eb.second < ea.first) return 1;
    }
  }
  return compare(a, b);  // last resort; may exceed the degree budget
}

SphereMinimum sphere_fallback(const TernaryForm& f, const RealAlgebraic& cand,
                              UniPoly L) {
  SphereMinimum m;
  m.exact = false;
  m.eliminant = std::move(L);
  // every smaller candidate was screened out exactly, so the candidate's
  // lower endpoint bounds the minimum from below
  cand.refine(Rational(Int(1), Int(1) << 48));
  m.enclosure.first = cand.enclosure().first;
  auto [v, val] = numeric_sphere_min(f);
  (void)val;
  bool have = false;
  Rational up;
  for (long den : {1L << 16, 1L << 24}) {
    std::array<Coefficient, 3> P = rationalize(v, den);
    Rational s(0);
    for (int i = 0; i < 3; ++i) {
      Rational pi = P[i].is_rational() ? P[i].rational_value() : Rational(0);
      s += pi * pi;
    }
    if (sgn(s) == 0) continue;
    Rational value =
        f.evaluate(P[0], P[1], P[2]).rational_value() / (s * s);
    if (!have || value < up) {
      up = value;
      have = true;
    }
  }
  if (!have) up = f.coeff(4, 0, 0).rational_value();  // value at (1,0,0)
  m.enclosure.second = up;
  return m;
}

int count_of(const ZeroSet& zs) {
  switch (zs.kind) {
    case ZeroSet::Kind::Empty:
      return 0;
    case ZeroSet::Kind::Finite:
      return static_cast<int>(zs.points.size());
    default:
      return -1;
  }
}

// zeros of c * Q^2 for quadratic Q: none, one point, or a curve
int conic_zero_count(const TernaryForm& Q) {
  SosResult sr = sos_from_quadratic(Q);
  if (sr.ok) {
    if (sr.terms.size() == 3) return 0;
    if (sr.terms.size() == 2) return 1;
  }
  return -1;
}

}  // namespace

RealAlgebraic min_binary_on_circle(const BinaryForm& h,
                                   const BinaryForm& weight) {
  return circle_min(h, weight).value;
}

SphereMinimum min_on_sphere(const TernaryForm& f) {
  if (f.is_zero() || f.degree() != 4)
    throw MathError("min_on_sphere expects a nonzero quartic");
  if (!rational_only(f))
    throw MathError("min_on_sphere requires rational coefficients");
  TernaryForm s2 = sphere() * sphere();
  Coefficient lead = f.coeff(4, 0, 0);
  if (f == s2 * lead) {
    SphereMinimum m;
    m.exact = true;
    m.value = lead;
    m.witness = ProjectiveZero{};  // constant ratio: any direction works
    m.eliminant = UniPoly({-lead.rational_value(), Rational(1)});
    m.enclosure = {lead.rational_value(), lead.rational_value()};
    return m;
  }
  // critical directions come from the cross product grad f x (x, y, z):
  // one resultant of two quartics, degree at most 16, so the budget is
  // rarely an issue
  try {
    auto pts = critical_directions(f);
    if (pts && !pts->empty()) {
      struct Cand {
        RealAlgebraic lam;
        std::array<Coefficient, 3> P;
      };
      std::vector<Cand> cands;
      for (const auto& P : *pts) {
        Coefficient sv = P[0] * P[0] + P[1] * P[1] + P[2] * P[2];
        cands.push_back({f.evaluate(P[0], P[1], P[2]) / (sv * sv), P});
      }
      size_t best = 0;
      for (size_t i = 1; i < cands.size(); ++i)
        if (value_cmp(cands[i].lam, cands[best].lam) < 0) best = i;
      SphereMinimum m;
      m.exact = true;
      m.value = cands[best].lam;
      m.witness = ProjectiveZero::from_triple(
          cands[best].P[0], cands[best].P[1], cands[best].P[2]);
      UniPoly L(Rational(1));
      std::vector<UniPoly> seen;
      for (const auto& cd : cands) {
        const UniPoly& p = cd.lam.defining_polynomial();
        bool dup = false;
        for (const auto& q : seen) dup = dup || q == p;
        if (dup) continue;
        seen.push_back(p);
        L = L * p;
      }
      m.eliminant = L;
      m.value.refine(Rational(Int(1), Int(1) << 32));
      m.enclosure = m.value.enclosure();
      return m;
    }
  } catch (const BudgetError&) {
    // fall through to the elimination route below
  }
  // Lagrange system: grad f = 2 mu x on the unit sphere; by Euler's identity
  // the critical values are f = mu / 2
  std::vector<MPoly> sys;
  for (int v = 0; v < 3; ++v)
    sys.push_back(MPoly::from_ternary(f.derivative(v)) -
                  MPoly::variable(3) * MPoly::variable(v) * Rational(2));
  MPoly sph;
  for (int v = 0; v < 3; ++v)
    sph = sph + MPoly::variable(v) * MPoly::variable(v);
  sph = sph - MPoly(Rational(1));
  sys.push_back(sph);
  UniPoly E = eliminate_system(sys, {0, 1, 2}, 3);
  if (E.degree() < 1) throw MathError("degenerate sphere eliminant");
  UniPoly L = E.compose_scale(Rational(2));
  std::vector<RealAlgebraic> cand = real_roots(L);
  if (cand.empty()) throw MathError("internal: no real critical value");
  for (const RealAlgebraic& lam : cand) {
    TernaryForm g = f - s2 * Coefficient(lam);
    ZeroSet zs;
    try {
      zs = projective_real_zeros(g, false);
    } catch (const BudgetError&) {
      return sphere_fallback(f, lam, L);
    }
    if (zs.kind == ZeroSet::Kind::Empty) continue;
    SphereMinimum m;
    m.exact = true;
    m.value = lam;
    m.eliminant = L;
    lam.refine(Rational(Int(1), Int(1) << 32));
    m.enclosure = lam.enclosure();
    m.witness = witness_from(zs);
    return m;
  }
  throw MathError("internal: minimum not attained at any critical value");
}

bool is_psd(const TernaryForm& f) {
  if (f.is_zero()) return true;
  int d = f.degree();
  if (d % 2 != 0) return false;  // odd forms change sign with x -> -x
  if (d == 0) return f.coeff(0, 0, 0).sign() > 0;
  if (d == 2) return sos_from_quadratic(f).ok;
  if (d != 4) throw MathError("is_psd handles forms of degree at most 4");
  if (quick_negative_witness(f)) return false;
  try {
    if (try_perfect_square(f)) return true;
  } catch (const NotPsdError&) {
    return false;
  }
  if (direct_gram(f)) return true;
  if (!rational_only(f)) {
    try {
      decompose(f);
      return true;
    } catch (const NotPsdError&) {
      return false;
    } catch (const MathError&) {
      throw BudgetError(
          "positivity with irrational coefficients is limited to structured "
          "inputs");
    }
  }
  SphereMinimum m = min_on_sphere(f);
  if (m.exact) return m.value.sign() >= 0;
  if (sgn(m.enclosure.first) >= 0) return true;
  if (sgn(m.enclosure.second) < 0) return false;
  throw BudgetError("positivity undecided within the degree budget");
}

LadderStep lemma1_step(const TernaryForm& f) {
  if (f.is_zero() || f.degree() != 4)
    throw MathError("lemma1_step expects a quartic");
  SphereMinimum m = min_on_sphere(f);
  if (!m.exact)
    throw BudgetError("sphere minimum was only enclosed, not certified");
  if (m.value.sign() < 0) throw NotPsdError(m.witness.coords);
  LadderStep step;
  if (m.value.sign() == 0) {
    step.residual = f;  // nothing to peel: the form already has a zero
    return step;
  }
  TernaryForm s = sphere();
  step.terms.push_back({m.value, s});
  step.residual = f - s * s * Coefficient(m.value);
  return step;
}

LadderStep lemma2_step(const TernaryForm& f, const ProjectiveZero& zero) {
  if (f.is_zero() || f.degree() != 4)
    throw MathError("lemma2_step expects a quartic");
  Matrix3 A = basis_with_column0(zero.coords);
  Matrix3 Ainv = A.inverse();
  TernaryForm g = substitute_linear(f, A);
  if (!g.coeff(4, 0, 0).is_zero())
    throw MathError("internal: the zero was not moved to (1,0,0)");
  if (!g.coeff(3, 1, 0).is_zero() || !g.coeff(3, 0, 1).is_zero()) {
    if (auto w = local_negative_search(g, 0)) throw NotPsdError(A.apply(*w));
    throw MathError("a zero of a nonnegative form must be critical");
  }
  XDecomposition d = x_decomposition(g, XLayout::Lemma2);
  BinaryForm c2 = circle2();
  std::vector<CertTerm> terms;
  TernaryForm residual;

  if (d.p.is_zero()) {
    if (!d.q.is_zero()) {
      // linear in x wherever q != 0: unbounded below
      Coefficient u = direction_off(d.q);
      if (auto w = descend_in_x(g, u, Coefficient(1)))
        throw NotPsdError(A.apply(*w));
      throw MathError("a nonnegative form is linear along a fiber");
    }
    // g is the binary quartic r; peel its circle minimum when positive
    if (d.r.is_zero()) {
      residual = TernaryForm();
    } else {
      CircleMin cm = circle_min(d.r, c2 * c2);
      int sg = cm.value.sign();
      if (sg < 0) throw NotPsdError(A.apply({Coefficient(0), cm.u, cm.w}));
      if (sg > 0) {
        terms.push_back({cm.value, c2.to_ternary()});
        residual = (d.r - (c2 * c2) * cm.value).to_ternary();
      } else {
        residual = d.r.to_ternary();
      }
    }
  } else {
    QuadInfo qi = analyze_quadratic(d.p);
    if (qi.rank == 1) {
      if (qi.scale.sign() < 0) {
        Coefficient u = direction_off(qi.line);
        if (auto w = descend_in_x(g, u, Coefficient(1)))
          throw NotPsdError(A.apply(*w));
        throw MathError("negative leading coefficient along a fiber");
      }
      std::optional<BinaryForm> q1 = divide_by_line(d.q, qi.line);
      if (!q1) {
        auto [u0, w0] = line_root(qi.line);
        if (auto w = descend_in_x(g, u0, w0)) throw NotPsdError(A.apply(*w));
        if (auto w = quick_negative_witness(g)) throw NotPsdError(A.apply(*w));
        throw MathError("square completion fails at the zero");
      }
      Coefficient cinv = qi.scale.inv();
      TernaryForm sq =
          var(0) * qi.line.to_ternary() + ((*q1) * cinv).to_ternary();
      terms.push_back({qi.scale, sq});
      BinaryForm h = d.r - (*q1) * (*q1) * cinv;
      if (h.is_zero()) {
        residual = TernaryForm();
      } else {
        CircleMin cm = circle_min(h, c2 * c2);
        int sg = cm.value.sign();
        if (sg < 0) {
          Coefficient lv = qi.line.evaluate(cm.u, cm.w);
          if (!lv.is_zero()) {
            Coefficient x0 = -(q1->evaluate(cm.u, cm.w)) * cinv / lv;
            throw NotPsdError(A.apply({x0, cm.u, cm.w}));
          }
          if (auto w = quick_negative_witness(g))
            throw NotPsdError(A.apply(*w));
          throw MathError("a nonnegative form has a negative fiber");
        }
        if (sg > 0) {
          terms.push_back({cm.value, c2.to_ternary()});
          residual = (h - (c2 * c2) * cm.value).to_ternary();
        } else {
          residual = h.to_ternary();
        }
      }
    } else {  // rank 2
      Coefficient a = d.p.coeff(2, 0);
      bool posdef = qi.disc.sign() < 0 && a.sign() > 0;
      if (!posdef) {
        if (auto nd = binary_negative_direction(d.p))
          if (auto w = descend_in_x(g, nd->first, nd->second))
            throw NotPsdError(A.apply(*w));
        throw MathError("indefinite leading coefficient at an isolated zero");
      }
      BinaryForm delta = discriminant(d.p, d.q, d.r);
      CircleMin cm = circle_min(delta, d.p * d.p * d.p);
      int sg = cm.value.sign();
      if (sg < 0) {
        Coefficient pv = d.p.evaluate(cm.u, cm.w);
        Coefficient x0 = -(d.q.evaluate(cm.u, cm.w)) / pv;
        throw NotPsdError(A.apply({x0, cm.u, cm.w}));
      }
      if (sg == 0)
        throw MathError("internal: a second zero escaped the classification");
      TernaryForm pt = d.p.to_ternary();
      terms.push_back({cm.value, pt});
      residual = g - pt * pt * Coefficient(cm.value);
    }
  }

  LadderStep step;
  for (const CertTerm& t : terms)
    step.terms.push_back({t.weight, substitute_linear(t.form, Ainv)});
  step.residual = substitute_linear(residual, Ainv);
  return step;
}

namespace {

struct CoreOut {
  std::vector<CertTerm> terms;
  TernaryForm residual;
};

TernaryForm assemble_lemma3(const BinaryForm& p, const BinaryForm& q,
                            const BinaryForm& r) {
  TernaryForm x = var(0), z = var(2);
  return x * x * p.to_ternary() +
         x * z * q.to_ternary() * Coefficient(2) +
         z * z * r.to_ternary();
}

// works on forms with zeros at (1,0,0) and (0,1,0); throws NotPsdError with
// the witness in the *current* frame (callers translate it back)
CoreOut lemma3_core(const TernaryForm& g, int depth) {
  if (depth > 4)
    throw MathError("internal: degenerate-case recursion failed to stop");
  XDecomposition d = x_decomposition(g, XLayout::Lemma3);
  const BinaryForm &p = d.p, &q = d.q, &r = d.r;
  CoreOut out;

  if (r.is_zero()) {
    if (!q.is_zero()) {
      Coefficient u = direction_off(q);
      Coefficient pv = p.evaluate(u, Coefficient(1));
      if (pv.sign() > 0) {
        Coefficient t0 = -(q.evaluate(u, Coefficient(1))) / pv;
        throw NotPsdError({t0, u, Coefficient(1)});
      }
      if (pv.sign() == 0) {
        int sq = q.evaluate(u, Coefficient(1)).sign();
        throw NotPsdError({Coefficient(-sq), u, Coefficient(1)});
      }
      if (auto w = descend_in_x(g, u, Coefficient(1))) throw NotPsdError(*w);
      throw MathError("a nonnegative form is linear along a fiber");
    }
    out.residual = g;  // x^2 * p: a full line of zeros, the next rung finishes
    return out;
  }
  if (p.is_zero()) {
    if (!q.is_zero()) {
      Coefficient u = direction_off(q);
      Coefficient qv = q.evaluate(u, Coefficient(1));
      Coefficient rv = r.evaluate(u, Coefficient(1));
      Coefficient t0 = (-rv - Coefficient(1)) / (qv * Coefficient(2));
      throw NotPsdError({t0, u, Coefficient(1)});
    }
    out.residual = g;  // z^2 * r
    return out;
  }

  QuadInfo ri = analyze_quadratic(r);
  if (ri.rank == 1) {
    if (ri.scale.sign() < 0) {
      Coefficient u = direction_off(ri.line);
      throw NotPsdError({Coefficient(0), u, Coefficient(1)});
    }
    std::optional<BinaryForm> q1 = divide_by_line(q, ri.line);
    if (!q1) {
      auto [u0, w0] = line_root(ri.line);
      Coefficient pv = p.evaluate(u0, w0);
      Coefficient qv = q.evaluate(u0, w0);
      if (!w0.is_zero() && !qv.is_zero()) {
        if (pv.sign() > 0)
          throw NotPsdError({-(w0 * qv) / pv, u0, w0});
        if (pv.sign() == 0)
          throw NotPsdError({Coefficient(-(w0 * qv).sign()), u0, w0});
        if (auto w = descend_in_x(g, u0, w0)) throw NotPsdError(*w);
      }
      if (auto w = quick_negative_witness(g)) throw NotPsdError(*w);
      throw MathError("square completion fails at a repeated root");
    }
    Coefficient cinv = ri.scale.inv();
    TernaryForm sq =
        var(2) * ri.line.to_ternary() + var(0) * ((*q1) * cinv).to_ternary();
    out.terms.push_back({ri.scale, sq});
    BinaryForm h = p - (*q1) * (*q1) * cinv;
    out.residual = var(0) * var(0) * h.to_ternary();
    return out;
  }
  QuadInfo pi = analyze_quadratic(p);
  if (pi.rank == 1) {
    if (pi.scale.sign() < 0) {
      Coefficient u = direction_off(pi.line);
      if (auto w = descend_in_x(g, u, Coefficient(1))) throw NotPsdError(*w);
      throw MathError("negative leading coefficient along a fiber");
    }
    std::optional<BinaryForm> q1 = divide_by_line(q, pi.line);
    if (!q1) {
      auto [u0, w0] = line_root(pi.line);
      Coefficient qv = q.evaluate(u0, w0);
      if (!w0.is_zero() && !qv.is_zero()) {
        Coefficient rv = r.evaluate(u0, w0);
        Coefficient t0 =
            (-(w0 * w0 * rv) - Coefficient(1)) / (w0 * qv * Coefficient(2));
        throw NotPsdError({t0, u0, w0});
      }
      if (auto w = quick_negative_witness(g)) throw NotPsdError(*w);
      throw MathError("square completion fails at a repeated root");
    }
    Coefficient cinv = pi.scale.inv();
    TernaryForm sq =
        var(0) * pi.line.to_ternary() + var(2) * ((*q1) * cinv).to_ternary();
    out.terms.push_back({pi.scale, sq});
    BinaryForm h = r - (*q1) * (*q1) * cinv;
    out.residual = var(2) * var(2) * h.to_ternary();
    return out;
  }

  // both quadratics have full rank; nonnegativity makes them positive definite
  if (!(pi.disc.sign() < 0 && p.coeff(2, 0).sign() > 0)) {
    if (auto nd = binary_negative_direction(p))
      if (auto w = descend_in_x(g, nd->first, nd->second))
        throw NotPsdError(*w);
    throw MathError("indefinite leading coefficient between two zeros");
  }
  if (!(ri.disc.sign() < 0 && r.coeff(2, 0).sign() > 0)) {
    if (auto nd = binary_negative_direction(r)) {
      if (!nd->second.is_zero())
        throw NotPsdError({Coefficient(0), nd->first, nd->second});
      Rational eps(1, 2);
      for (int it = 0; it < 64; ++it, eps /= 2) {
        Coefficient e{eps};
        if (r.evaluate(Coefficient(1), e).sign() < 0)
          throw NotPsdError({Coefficient(0), Coefficient(1), e});
      }
    }
    throw MathError("indefinite trailing coefficient between two zeros");
  }
  BinaryForm delta = discriminant(p, q, r);
  CircleMin cm = circle_min(delta, p * circle2());
  int sg = cm.value.sign();
  if (sg < 0) {
    Coefficient u = cm.u, w = cm.w;
    if (w.is_zero()) {
      // slide off the point at infinity while keeping delta negative
      Rational eps(1, 2);
      bool found = false;
      for (int it = 0; it < 64 && !found; ++it, eps /= 2) {
        Coefficient e{eps};
        if (delta.evaluate(Coefficient(1), e).sign() < 0) {
          u = Coefficient(1);
          w = e;
          found = true;
        }
      }
      if (!found)
        throw MathError("internal: negative discriminant without a direction");
    }
    Coefficient x0 = -(w * q.evaluate(u, w)) / p.evaluate(u, w);
    throw NotPsdError({x0, u, w});
  }
  if (sg == 0) {
    // shear x -> x + t z so the trailing quadratic vanishes at the argmin
    Coefficient th = -(q.evaluate(cm.u, cm.w)) / p.evaluate(cm.u, cm.w);
    BinaryForm q2 = q + p * th;
    BinaryForm r2 = r + q * (th * Coefficient(2)) + p * (th * th);
    TernaryForm g2 = assemble_lemma3(p, q2, r2);
    CoreOut sub;
    try {
      sub = lemma3_core(g2, depth + 1);
    } catch (const NotPsdError& e) {
      const auto& w = e.witness();
      throw NotPsdError({w[0] + th * w[2], w[1], w[2]});
    }
    Matrix3 Sinv;  // x -> x - t z
    Sinv.at(0, 2) = -th;
    for (const CertTerm& t : sub.terms)
      out.terms.push_back({t.weight, substitute_linear(t.form, Sinv)});
    out.residual = substitute_linear(sub.residual, Sinv);
    return out;
  }
  // strictly positive discriminant ratio: peel lambda * z^2 (y^2 + z^2) as
  // two squares, which forces a circle zero on the next level
  out.terms.push_back({cm.value, var(1) * var(2)});
  out.terms.push_back({cm.value, var(2) * var(2)});
  BinaryForm r2 = r - circle2() * cm.value;
  CoreOut sub = lemma3_core(assemble_lemma3(p, q, r2), depth + 1);
  for (const CertTerm& t : sub.terms) out.terms.push_back(t);
  out.residual = sub.residual;
  return out;
}

}  // namespace

LadderStep lemma3_step(const TernaryForm& f, const ProjectiveZero& z1,
                       const ProjectiveZero& z2) {
  if (f.is_zero() || f.degree() != 4)
    throw MathError("lemma3_step expects a quartic");
  Matrix3 A;
  bool ok = false;
  for (int k = 0; k < 3 && !ok; ++k) {
    Matrix3 cand = Matrix3::from_columns(z1.coords, z2.coords, unit(k));
    if (!cand.det().is_zero()) {
      A = cand;
      ok = true;
    }
  }
  if (!ok) throw MathError("lemma3_step expects two distinct zeros");
  Matrix3 Ainv = A.inverse();
  TernaryForm g = substitute_linear(f, A);
  static const int bad[6][3] = {{4, 0, 0}, {3, 1, 0}, {3, 0, 1},
                                {1, 3, 0}, {0, 4, 0}, {0, 3, 1}};
  for (const auto& e : bad)
    if (!g.coeff(e[0], e[1], e[2]).is_zero()) {
      for (int axis : {0, 1})
        if (auto w = local_negative_search(g, axis))
          throw NotPsdError(A.apply(*w));
      throw MathError("a zero of a nonnegative form must be critical");
    }
  CoreOut core;
  try {
    core = lemma3_core(g, 0);
  } catch (const NotPsdError& e) {
    throw NotPsdError(A.apply(e.witness()));
  }
  LadderStep step;
  for (const CertTerm& t : core.terms)
    step.terms.push_back({t.weight, substitute_linear(t.form, Ainv)});
  step.residual = substitute_linear(core.residual, Ainv);
  return step;
}

std::vector<CertTerm> lemma4_decompose(const TernaryForm& f,
                                       const ZeroSet& zeros) {
  if (f.is_zero() || f.degree() != 4)
    throw MathError("lemma4_decompose expects a quartic");
  if (zeros.kind == ZeroSet::Kind::Finite) {
    const auto& pts = zeros.points;
    if (pts.size() < 3)
      throw MathError("lemma4_decompose expects at least three zeros");
    Matrix3 A;
    bool ok = false;
    for (size_t i = 0; i < pts.size() && !ok; ++i)
      for (size_t j = i + 1; j < pts.size() && !ok; ++j)
        for (size_t k = j + 1; k < pts.size() && !ok; ++k) {
          Matrix3 cand = Matrix3::from_columns(pts[i].coords, pts[j].coords,
                                               pts[k].coords);
          if (!cand.det().is_zero()) {
            A = cand;
            ok = true;
          }
        }
    if (!ok) throw MathError("internal: all zeros collinear in the last rung");
    Matrix3 Ainv = A.inverse();
    TernaryForm g = substitute_linear(f, A);
    for (int v = 0; v < 3; ++v)
      if (g.degree_in(v) > 2) {
        if (auto w = local_negative_search(g, v)) throw NotPsdError(A.apply(*w));
        throw MathError("a zero of a nonnegative form must be critical");
      }
    // quadratic in the products X = xy, Y = yz, Z = zx
    Coefficient half{Rational(1, 2)};
    SymMatrix M(3);
    M.set(0, 0, g.coeff(2, 2, 0));
    M.set(1, 1, g.coeff(0, 2, 2));
    M.set(2, 2, g.coeff(2, 0, 2));
    M.set(0, 1, g.coeff(1, 2, 1) * half);
    M.set(1, 2, g.coeff(1, 1, 2) * half);
    M.set(0, 2, g.coeff(2, 1, 1) * half);
    LDLT ld = ldlt_psd(M);
    if (!ld.psd)
      throw MathError("final Gram matrix is not positive semidefinite");
    TernaryForm basis[3] = {TernaryForm::monomial(1, 1, 0, Coefficient(1)),
                            TernaryForm::monomial(0, 1, 1, Coefficient(1)),
                            TernaryForm::monomial(1, 0, 1, Coefficient(1))};
    std::vector<CertTerm> terms;
    for (int k = 0; k < 3; ++k) {
      if (ld.D[k].is_zero()) continue;
      TernaryForm form;
      for (int i = 0; i < 3; ++i)
        if (!ld.L[i][k].is_zero()) form = form + basis[ld.perm[i]] * ld.L[i][k];
      terms.push_back({ld.D[k], substitute_linear(form, Ainv)});
    }
    return terms;
  }
  if (zeros.kind != ZeroSet::Kind::Infinite)
    throw MathError("lemma4_decompose expects zeros");
  // a one-dimensional zero set: read the shape off the factorization
  Coefficient c(1);
  std::vector<std::pair<TernaryForm, int>> parts;
  TernaryForm prod = TernaryForm::monomial(0, 0, 0, Coefficient(1));
  for (const auto& [h, m] : zeros.factorization) {
    if (h.degree() == 0) {
      for (int i = 0; i < m; ++i) c = c * h.coeff(0, 0, 0);
    } else {
      parts.push_back({h, m});
      prod = prod * pow(h, m);
    }
  }
  if (!(prod * c == f)) throw MathError("internal: factorization mismatch");
  bool all_even = true;
  for (const auto& [h, m] : parts) all_even = all_even && (m % 2 == 0);
  if (all_even) {
    TernaryForm Q = TernaryForm::monomial(0, 0, 0, Coefficient(1));
    for (const auto& [h, m] : parts) Q = Q * pow(h, m / 2);
    if (Q.degree() != 2) throw MathError("internal: unexpected square shape");
    if (c.sign() < 0) throw NotPsdError(point_off_form(Q));
    return {{c, Q}};
  }
  const TernaryForm* line = nullptr;
  const TernaryForm* conic = nullptr;
  if (parts.size() == 2) {
    for (const auto& [h, m] : parts) {
      if (h.degree() == 1 && m == 2) line = &h;
      if (h.degree() == 2 && m == 1) conic = &h;
    }
  }
  if (line && conic) {
    SosResult sr = sos_from_quadratic((*conic) * c);
    if (!sr.ok) {
      std::array<Coefficient, 3> w = {sr.witness[0], sr.witness[1],
                                      sr.witness[2]};
      if (!line->evaluate(w[0], w[1], w[2]).is_zero()) throw NotPsdError(w);
      // nudge off the repeated line while staying in the negative region
      Rational eps(1, 2);
      for (int it = 0; it < 64; ++it, eps /= 2)
        for (int v = 0; v < 3; ++v)
          for (int s : {1, -1}) {
            std::array<Coefficient, 3> w2 = w;
            w2[v] = w2[v] + Coefficient(Rational(s) * eps);
            if (f.evaluate(w2[0], w2[1], w2[2]).sign() < 0)
              throw NotPsdError(w2);
          }
      throw MathError("sign change across a repeated line");
    }
    std::vector<CertTerm> terms;
    for (const auto& t : sr.terms) terms.push_back({t.weight, (*line) * t.form});
    return terms;
  }
  throw MathError("zero set shape inconsistent with nonnegativity");
}

Certificate decompose(const TernaryForm& f) {
  Certificate cert;
  cert.input = f;
  if (f.is_zero()) {
    cert.verified = true;
    return cert;
  }
  if (f.degree() != 4) throw MathError("decompose expects a homogeneous quartic");
  if (auto w = quick_negative_witness(f)) throw NotPsdError(*w);
  TernaryForm g = f;
  int pending = -1;  // trace entry still waiting for its zeros_after
  auto patch = [&](int count) {
    if (pending >= 0) cert.trace[pending].zeros_after = count;
    pending = -1;
  };
  for (int guard = 0; !g.is_zero(); ++guard) {
    if (guard > 8) throw MathError("internal: the ladder did not terminate");
    if (std::optional<CertTerm> sq = try_perfect_square(g)) {
      int before = conic_zero_count(sq->form);
      patch(before);
      cert.terms.push_back(*sq);
      cert.trace.push_back({"direct", before, -1, 1});
      g = TernaryForm();
      break;
    }
    ZeroSet zs;
    bool classified = true;
    try {
      zs = projective_real_zeros(g);
    } catch (const BudgetError&) {
      classified = false;
    }
    int count = classified ? count_of(zs) : -2;
    patch(count);
    if (!classified || count == 0) {
      if (std::optional<std::vector<CertTerm>> terms = direct_gram(g)) {
        for (const CertTerm& t : *terms) cert.terms.push_back(t);
        cert.trace.push_back(
            {"direct", count, -1, static_cast<int>(terms->size())});
        g = TernaryForm();
        break;
      }
    }
    LadderStep st;
    std::string label;
    // a lemma step over an algebraic zero can leave a residual whose later
    // classification is hopeless within the degree budget; the Gram face
    // pinned down by the known zeros is an exact all-rational way out
    auto face_rescue = [&]() -> bool {
      if (zs.points.empty()) return false;
      std::optional<std::vector<CertTerm>> terms = direct_gram(g, &zs.points);
      if (!terms) return false;
      for (const CertTerm& t : *terms) cert.terms.push_back(t);
      cert.trace.push_back(
          {"direct", count, -1, static_cast<int>(terms->size())});
      g = TernaryForm();
      return true;
    };
    bool algebraic_zero = false;
    for (const ProjectiveZero& zp : zs.points)
      for (int i = 0; i < 3; ++i)
        algebraic_zero = algebraic_zero || !zp.coords[i].is_rational();
    if (classified && count >= 1 && algebraic_zero && rational_only(g) &&
        face_rescue())
      break;
    if (!classified || count == 0) {
      // with no zeros (or no zero information) the sphere minimum is the
      // only handle; a zero minimum means the classification was essential
      st = lemma1_step(g);
      if (st.terms.empty())
        throw BudgetError("zero classification exceeded the degree budget");
      label = "L1";
    } else if (count == 1 || count == 2) {
      try {
        if (count == 1) {
          st = lemma2_step(g, zs.points[0]);
          label = "L2";
        } else {
          st = lemma3_step(g, zs.points[0], zs.points[1]);
          label = "L3";
        }
      } catch (const BudgetError&) {
        if (face_rescue()) break;
        throw;
      }
      if (!st.residual.is_zero() && rational_only(g) &&
          !rational_only(st.residual) && face_rescue())
        break;
    } else {
      std::vector<CertTerm> terms;
      try {
        terms = lemma4_decompose(g, zs);
      } catch (const BudgetError&) {
        if (face_rescue()) break;
        throw;
      }
      for (const CertTerm& t : terms) cert.terms.push_back(t);
      cert.trace.push_back({"L4", count, -1, static_cast<int>(terms.size())});
      g = TernaryForm();
      break;
    }
    for (const CertTerm& t : st.terms) cert.terms.push_back(t);
    cert.trace.push_back({label, classified ? count : -2, 0,
                          static_cast<int>(st.terms.size())});
    pending = static_cast<int>(cert.trace.size()) - 1;
    if (st.residual.is_zero()) patch(-1);
    g = st.residual;
  }
  VerifyReport rep = verify(cert);
  if (!rep.pass)
    throw MathError("internal: certificate verification failed: " + rep.reason);
  cert.verified = true;
  return cert;
}

}  // namespace sosq
