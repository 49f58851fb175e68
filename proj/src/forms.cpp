#include "sosq/forms.hpp"

#include <sstream>

namespace sosq {

namespace {

template <class Map>
int map_degree(const Map& m) {
  if (m.empty()) return -1;
  int d = 0;
  for (int v : m.begin()->first) d += v;  // all keys share the total degree
  return d;
}

template <class Map>
void check_homogeneous(const Map& m) {
  int d = -1;
  for (const auto& [e, c] : m) {
    int t = 0;
    for (int v : e) t += v;
    if (d < 0) d = t;
    if (t != d) throw MathError("form is not homogeneous");
  }
}

std::string render_term(const Coefficient& c, const std::string& mono,
                        bool first, std::string* out) {
  std::string cs;
  bool negative = false;
  if (c.is_rational()) {
    Rational q = c.rational_value();
    if (sgn(q) < 0) {
      negative = true;
      q = -q;
    }
    if (q != 1 || mono.empty()) cs = q.get_str();
  } else {
    cs = c.to_string();
  }
  std::string t;
  if (!cs.empty()) {
    t = cs;
    if (!mono.empty()) t += "*" + mono;
  } else {
    t = mono;
  }
  if (first)
    *out += (negative ? "-" : "") + t;
  else
    *out += (negative ? " - " : " + ") + t;
  return t;
}

std::string mono_string(const std::vector<std::pair<std::string, int>>& ve) {
  std::string m;
  for (const auto& [v, e] : ve) {
    if (e == 0) continue;
    if (!m.empty()) m += "*";
    m += v;
    if (e > 1) m += "^" + std::to_string(e);
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// TernaryForm

TernaryForm TernaryForm::monomial(int i, int j, int k, const Coefficient& c) {
  TernaryForm f;
  if (i < 0 || j < 0 || k < 0) throw MathError("negative exponent");
  if (!c.is_zero()) f.c_[{i, j, k}] = c;
  return f;
}

TernaryForm TernaryForm::variable(int var) {
  return monomial(var == 0, var == 1, var == 2, Coefficient(1));
}

int TernaryForm::degree() const { return map_degree(c_); }

Coefficient TernaryForm::coeff(int i, int j, int k) const {
  auto it = c_.find({i, j, k});
  return it == c_.end() ? Coefficient() : it->second;
}

void TernaryForm::set_coeff(int i, int j, int k, const Coefficient& c) {
  if (c.is_zero())
    c_.erase({i, j, k});
  else
    c_[{i, j, k}] = c;
  check_homogeneous(c_);
}

int TernaryForm::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : c_) d = std::max(d, e[var]);
  return d;
}

void TernaryForm::normalize() {
  for (auto it = c_.begin(); it != c_.end();)
    it = it->second.is_zero() ? c_.erase(it) : std::next(it);
  check_homogeneous(c_);
}

TernaryForm TernaryForm::operator-() const {
  TernaryForm r(*this);
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree() != o.degree()) throw MathError("degree mismatch in form sum");
  TernaryForm r(*this);
  for (const auto& [e, c] : o.c_) {
    auto it = r.c_.find(e);
    if (it == r.c_.end())
      r.c_[e] = c;
    else
      it->second = it->second + c;
  }
  r.normalize();
  return r;
}

TernaryForm TernaryForm::operator-(const TernaryForm& o) const {
  return *this + (-o);
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
  TernaryForm r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) {
      Exp e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
      auto it = r.c_.find(e);
      if (it == r.c_.end())
        r.c_[e] = c1 * c2;
      else
        it->second = it->second + c1 * c2;
    }
  r.normalize();
  return r;
}

TernaryForm TernaryForm::operator*(const Coefficient& s) const {
  if (s.is_zero()) return TernaryForm();
  TernaryForm r(*this);
  for (auto& [e, c] : r.c_) c = c * s;
  r.normalize();
  return r;
}

bool TernaryForm::operator==(const TernaryForm& o) const {
  return (*this - o).is_zero();
}

TernaryForm TernaryForm::derivative(int var) const {
  TernaryForm r;
  for (const auto& [e, c] : c_) {
    if (e[var] == 0) continue;
    Exp d = e;
    d[var] -= 1;
    r.c_[d] = c * Coefficient(e[var]);
  }
  r.normalize();
  return r;
}

Coefficient TernaryForm::evaluate(const Coefficient& x, const Coefficient& y,
                                  const Coefficient& z) const {
  Coefficient acc;
  for (const auto& [e, c] : c_) {
    Coefficient t = c;
    for (int n = 0; n < e[0]; ++n) t = t * x;
    for (int n = 0; n < e[1]; ++n) t = t * y;
    for (int n = 0; n < e[2]; ++n) t = t * z;
    acc = acc + t;
  }
  return acc;
}

std::string TernaryForm::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : c_) {
    render_term(c, mono_string({{"x", e[0]}, {"y", e[1]}, {"z", e[2]}}),
                first, &out);
    first = false;
  }
  return out;
}

TernaryForm operator*(const Coefficient& s, const TernaryForm& f) {
  return f * s;
}

TernaryForm pow(const TernaryForm& f, int e) {
  TernaryForm r = TernaryForm::monomial(0, 0, 0, Coefficient(1));
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

// ---------------------------------------------------------------------------
// BinaryForm

BinaryForm BinaryForm::monomial(int j, int k, const Coefficient& c) {
  BinaryForm f;
  if (j < 0 || k < 0) throw MathError("negative exponent");
  if (!c.is_zero()) f.c_[{j, k}] = c;
  return f;
}

int BinaryForm::degree() const { return map_degree(c_); }

Coefficient BinaryForm::coeff(int j, int k) const {
  auto it = c_.find({j, k});
  return it == c_.end() ? Coefficient() : it->second;
}

void BinaryForm::set_coeff(int j, int k, const Coefficient& c) {
  if (c.is_zero())
    c_.erase({j, k});
  else
    c_[{j, k}] = c;
  check_homogeneous(c_);
}

void BinaryForm::normalize() {
  for (auto it = c_.begin(); it != c_.end();)
    it = it->second.is_zero() ? c_.erase(it) : std::next(it);
  check_homogeneous(c_);
}

BinaryForm BinaryForm::operator-() const {
  BinaryForm r(*this);
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree() != o.degree()) throw MathError("degree mismatch in form sum");
  BinaryForm r(*this);
  for (const auto& [e, c] : o.c_) {
    auto it = r.c_.find(e);
    if (it == r.c_.end())
      r.c_[e] = c;
    else
      it->second = it->second + c;
  }
  r.normalize();
  return r;
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const {
  return *this + (-o);
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  BinaryForm r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) {
      Exp e{e1[0] + e2[0], e1[1] + e2[1]};
      auto it = r.c_.find(e);
      if (it == r.c_.end())
        r.c_[e] = c1 * c2;
      else
        it->second = it->second + c1 * c2;
    }
  r.normalize();
  return r;
}

BinaryForm BinaryForm::operator*(const Coefficient& s) const {
  if (s.is_zero()) return BinaryForm();
  BinaryForm r(*this);
  for (auto& [e, c] : r.c_) c = c * s;
  r.normalize();
  return r;
}

bool BinaryForm::operator==(const BinaryForm& o) const {
  return (*this - o).is_zero();
}

BinaryForm BinaryForm::derivative(int var) const {
  BinaryForm r;
  for (const auto& [e, c] : c_) {
    if (e[var] == 0) continue;
    Exp d = e;
    d[var] -= 1;
    r.c_[d] = c * Coefficient(e[var]);
  }
  r.normalize();
  return r;
}

Coefficient BinaryForm::evaluate(const Coefficient& y,
                                 const Coefficient& z) const {
  Coefficient acc;
  for (const auto& [e, c] : c_) {
    Coefficient t = c;
    for (int n = 0; n < e[0]; ++n) t = t * y;
    for (int n = 0; n < e[1]; ++n) t = t * z;
    acc = acc + t;
  }
  return acc;
}

APoly BinaryForm::dehomogenize(int var) const {
  APoly p;
  for (const auto& [e, c] : c_) {
    int d = var == 0 ? e[0] : e[1];
    p.set_coeff(d, p.coeff(d) + c);
  }
  return p;
}

BinaryForm BinaryForm::homogenize(const APoly& p, int degree) {
  BinaryForm f;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    if (i > degree) throw MathError("homogenize: degree too small");
    f.c_[{i, degree - i}] = p.coeff(i);
  }
  return f;
}

TernaryForm BinaryForm::to_ternary() const {
  TernaryForm f;
  for (const auto& [e, c] : c_) f.set_coeff(0, e[0], e[1], c);
  return f;
}

BinaryForm BinaryForm::from_ternary(const TernaryForm& f) {
  BinaryForm b;
  for (const auto& [e, c] : f.terms()) {
    if (e[0] != 0) throw MathError("form depends on x");
    b.c_[{e[1], e[2]}] = c;
  }
  return b;
}

std::string BinaryForm::to_string(const std::string& vy,
                                  const std::string& vz) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : c_) {
    render_term(c, mono_string({{vy, e[0]}, {vz, e[1]}}), first, &out);
    first = false;
  }
  return out;
}

BinaryForm operator*(const Coefficient& s, const BinaryForm& f) {
  return f * s;
}

// ---------------------------------------------------------------------------
// Matrix3

Matrix3::Matrix3() {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e_[r][c] = Coefficient(r == c ? 1 : 0);
}

Matrix3 Matrix3::from_columns(const std::array<Coefficient, 3>& c0,
                              const std::array<Coefficient, 3>& c1,
                              const std::array<Coefficient, 3>& c2) {
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    m.e_[r][0] = c0[r];
    m.e_[r][1] = c1[r];
    m.e_[r][2] = c2[r];
  }
  return m;
}

Matrix3 Matrix3::from_rows(
    const std::array<std::array<Coefficient, 3>, 3>& rows) {
  Matrix3 m;
  m.e_ = rows;
  return m;
}

Coefficient Matrix3::det() const {
  const auto& e = e_;
  return e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
         e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
         e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
}

Matrix3 Matrix3::inverse() const {
  Coefficient d = det();
  if (d.is_zero()) throw MathError("singular matrix");
  Coefficient di = d.inv();
  const auto& e = e_;
  Matrix3 r;
  // adjugate / det
  r.e_[0][0] = (e[1][1] * e[2][2] - e[1][2] * e[2][1]) * di;
  r.e_[0][1] = (e[0][2] * e[2][1] - e[0][1] * e[2][2]) * di;
  r.e_[0][2] = (e[0][1] * e[1][2] - e[0][2] * e[1][1]) * di;
  r.e_[1][0] = (e[1][2] * e[2][0] - e[1][0] * e[2][2]) * di;
  r.e_[1][1] = (e[0][0] * e[2][2] - e[0][2] * e[2][0]) * di;
  r.e_[1][2] = (e[0][2] * e[1][0] - e[0][0] * e[1][2]) * di;
  r.e_[2][0] = (e[1][0] * e[2][1] - e[1][1] * e[2][0]) * di;
  r.e_[2][1] = (e[0][1] * e[2][0] - e[0][0] * e[2][1]) * di;
  r.e_[2][2] = (e[0][0] * e[1][1] - e[0][1] * e[1][0]) * di;
  return r;
}

Matrix3 Matrix3::operator*(const Matrix3& o) const {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Coefficient s;
      for (int k = 0; k < 3; ++k) s = s + e_[i][k] * o.e_[k][j];
      r.e_[i][j] = s;
    }
  return r;
}

std::array<Coefficient, 3> Matrix3::apply(
    const std::array<Coefficient, 3>& v) const {
  std::array<Coefficient, 3> r;
  for (int i = 0; i < 3; ++i)
    r[i] = e_[i][0] * v[0] + e_[i][1] * v[1] + e_[i][2] * v[2];
  return r;
}

// ---------------------------------------------------------------------------
// substitutions and layouts

TernaryForm substitute_linear(const TernaryForm& f, const Matrix3& A) {
  if (A.det().is_zero()) throw MathError("singular coordinate change");
  std::array<TernaryForm, 3> img;
  for (int v = 0; v < 3; ++v) {
    TernaryForm l;
    for (int c = 0; c < 3; ++c)
      l = l + TernaryForm::monomial(c == 0, c == 1, c == 2, A.at(v, c));
    img[v] = l;
  }
  TernaryForm out;
  for (const auto& [e, c] : f.terms()) {
    TernaryForm t = TernaryForm::monomial(0, 0, 0, c);
    for (int v = 0; v < 3; ++v)
      for (int n = 0; n < e[v]; ++n) t = t * img[v];
    out = out.is_zero() ? t : out + t;
  }
  return out;
}

XDecomposition x_decomposition(const TernaryForm& f, XLayout layout) {
  if (!f.is_zero() && f.degree() != 4)
    throw MathError("x_decomposition expects a quartic");
  XDecomposition d;
  for (const auto& [e, c] : f.terms()) {
    int i = e[0], j = e[1], k = e[2];
    switch (i) {
      case 2:
        if (layout == XLayout::Lemma3 || layout == XLayout::Lemma2)
          d.p.set_coeff(j, k, d.p.coeff(j, k) + c);
        break;
      case 1:
        if (layout == XLayout::Lemma2) {
          d.q.set_coeff(j, k, d.q.coeff(j, k) + c / Coefficient(2));
        } else {
          if (k < 1) throw MathError("layout violation: x-term without z");
          d.q.set_coeff(j, k - 1, d.q.coeff(j, k - 1) + c / Coefficient(2));
        }
        break;
      case 0:
        if (layout == XLayout::Lemma2) {
          d.r.set_coeff(j, k, d.r.coeff(j, k) + c);
        } else {
          if (k < 2)
            throw MathError("layout violation: constant-in-x term without z^2");
          d.r.set_coeff(j, k - 2, d.r.coeff(j, k - 2) + c);
        }
        break;
      default:
        throw MathError("layout violation: x-degree exceeds 2");
    }
  }
  return d;
}

}  // namespace sosq
