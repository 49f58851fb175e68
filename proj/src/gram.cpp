#include "sosq/gram.hpp"

#include <algorithm>

namespace sosq {

namespace {

// Solve L^T w = (free, v_S): entries >= k are v_S, earlier ones make the
// product vanish; returns the witness in original coordinates.
std::vector<Coefficient> lift_witness(
    const std::vector<std::vector<Coefficient>>& L,
    const std::vector<int>& perm, int k,
    const std::vector<Coefficient>& v_schur) {
  int n = static_cast<int>(perm.size());
  std::vector<Coefficient> w(n);
  for (int i = k; i < n; ++i) w[i] = v_schur[i - k];
  for (int i = k - 1; i >= 0; --i) {
    Coefficient s;
    for (int j = i + 1; j < n; ++j) s = s + L[j][i] * w[j];
    w[i] = -s;
  }
  std::vector<Coefficient> orig(n);
  for (int i = 0; i < n; ++i) orig[perm[i]] = w[i];
  return orig;
}

}  // namespace

LDLT ldlt_psd(const SymMatrix& M) {
  int n = M.size();
  LDLT out;
  out.perm.resize(n);
  for (int i = 0; i < n; ++i) out.perm[i] = i;
  out.L.assign(n, std::vector<Coefficient>(n));
  for (int i = 0; i < n; ++i) out.L[i][i] = Coefficient(1);
  out.D.assign(n, Coefficient());

  // working copy, permuted in place
  std::vector<std::vector<Coefficient>> A(n, std::vector<Coefficient>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = M.at(i, j);

  for (int k = 0; k < n; ++k) {
    // largest remaining diagonal, ties by lowest index
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (compare(A[i][i], A[p][p]) > 0) p = i;
    if (p != k) {
      std::swap(out.perm[k], out.perm[p]);
      std::swap(A[k], A[p]);
      for (int i = 0; i < n; ++i) std::swap(A[i][k], A[i][p]);
      for (int j = 0; j < k; ++j) std::swap(out.L[k][j], out.L[p][j]);
    }
    int sd = A[k][k].sign();
    if (sd < 0) {
      std::vector<Coefficient> v(n - k);
      v[0] = Coefficient(1);
      out.witness = lift_witness(out.L, out.perm, k, v);
      return out;
    }
    if (sd == 0) {
      // the largest remaining diagonal is zero: a strictly negative diagonal
      // or any nonzero off-diagonal in the trailing block disproves PSD
      for (int i = k; i < n; ++i) {
        if (A[i][i].sign() < 0) {
          std::vector<Coefficient> v(n - k);
          v[i - k] = Coefficient(1);
          out.witness = lift_witness(out.L, out.perm, k, v);
          return out;
        }
      }
      for (int i = k; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int so = A[i][j].sign();
          if (so == 0) continue;
          // diagonals are all zero here: (e_i - sgn*e_j) gives -2|A[i][j]|
          std::vector<Coefficient> v(n - k);
          v[i - k] = Coefficient(1);
          v[j - k] = Coefficient(-so);
          out.witness = lift_witness(out.L, out.perm, k, v);
          return out;
        }
      break;  // trailing block identically zero: done, PSD
    }
    out.D[k] = A[k][k];
    Coefficient dinv = A[k][k].inv();
    for (int i = k + 1; i < n; ++i) out.L[i][k] = A[i][k] * dinv;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        A[i][j] = A[i][j] - A[i][k] * A[k][j] * dinv;
  }
  out.psd = true;
  return out;
}

std::vector<std::vector<Coefficient>> ldlt_kernel(const LDLT& f) {
  if (!f.psd) throw MathError("ldlt_kernel requires a PSD factorization");
  int n = static_cast<int>(f.perm.size());
  std::vector<std::vector<Coefficient>> out;
  for (int k = 0; k < n; ++k) {
    if (!f.D[k].is_zero()) continue;
    // solve L^T w = e_k (w vanishes above k), then undo the permutation
    std::vector<Coefficient> w(n);
    w[k] = Coefficient(1);
    for (int i = k - 1; i >= 0; --i) {
      Coefficient s;
      for (int j = i + 1; j < n; ++j) s = s + f.L[j][i] * w[j];
      w[i] = -s;
    }
    std::vector<Coefficient> v(n);
    for (int i = 0; i < n; ++i) v[f.perm[i]] = w[i];
    out.push_back(std::move(v));
  }
  return out;
}

SosResult sos_from_quadratic(const TernaryForm& q) {
  SosResult res;
  SymMatrix M(3);
  if (!q.is_zero()) {
    if (q.degree() != 2) throw MathError("sos_from_quadratic expects degree 2");
    Coefficient half = Coefficient(Rational(1, 2));
    M.set(0, 0, q.coeff(2, 0, 0));
    M.set(1, 1, q.coeff(0, 2, 0));
    M.set(2, 2, q.coeff(0, 0, 2));
    M.set(0, 1, q.coeff(1, 1, 0) * half);
    M.set(0, 2, q.coeff(1, 0, 1) * half);
    M.set(1, 2, q.coeff(0, 1, 1) * half);
  }
  LDLT f = ldlt_psd(M);
  if (!f.psd) {
    res.witness = f.witness;
    return res;
  }
  res.ok = true;
  for (int k = 0; k < 3; ++k) {
    if (f.D[k].is_zero()) continue;
    TernaryForm l;
    for (int i = 0; i < 3; ++i)
      l = l + TernaryForm::variable(f.perm[i]) * f.L[i][k];
    res.terms.push_back({f.D[k], l});
  }
  return res;
}

BinarySosResult sos_binary_quartic(const BinaryForm& h) {
  BinarySosResult res;
  if (h.is_zero()) {
    res.ok = true;
    return res;
  }
  if (h.degree() != 4) throw MathError("sos_binary_quartic expects degree 4");
  Coefficient a4 = h.coeff(4, 0), a3 = h.coeff(3, 1), a2 = h.coeff(2, 2),
              a1 = h.coeff(1, 3), a0 = h.coeff(0, 4);
  Coefficient half = Coefficient(Rational(1, 2));

  // Gram family in the basis (y^2, yz, z^2), parametrized by s = G[0][2]:
  //   [[a4, a3/2, s], [a3/2, a2-2s, a1/2], [s, a1/2, a0]]
  // Feasibility boundaries are roots of the principal minors; testing all
  // minor roots, gap midpoints and outer points finds a PSD member whenever
  // one exists.
  auto lin = [](const Coefficient& c0, const Coefficient& c1) {
    APoly p;
    p.set_coeff(0, c0);
    p.set_coeff(1, c1);
    return p;
  };
  APoly g00 = lin(a4, Coefficient(0));
  APoly g01 = lin(a3 * half, Coefficient(0));
  APoly g02 = lin(Coefficient(0), Coefficient(1));
  APoly g11 = lin(a2, Coefficient(-2));
  APoly g12 = lin(a1 * half, Coefficient(0));
  APoly g22 = lin(a0, Coefficient(0));
  std::vector<APoly> minors = {
      g11,                                           // diagonal
      g00.mul(g11).sub(g01.mul(g01)),                // 2x2 leading
      g00.mul(g22).sub(g02.mul(g02)),                // 2x2 corner
      g11.mul(g22).sub(g12.mul(g12)),                // 2x2 trailing
      g00.mul(g11.mul(g22).sub(g12.mul(g12)))
          .sub(g01.mul(g01.mul(g22).sub(g12.mul(g02))))
          .add(g02.mul(g01.mul(g12).sub(g11.mul(g02))))  // determinant
  };
  std::vector<RealAlgebraic> roots;
  for (const auto& m : minors) {
    if (m.degree() < 1) continue;
    for (auto& r : roots_over_field(m)) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(),
            [](const RealAlgebraic& a, const RealAlgebraic& b) {
              return compare(a, b) < 0;
            });
  std::vector<Coefficient> candidates;
  candidates.push_back(Coefficient(0));
  Coefficient two_inv = Coefficient(Rational(1, 2));
  for (size_t i = 0; i < roots.size(); ++i) {
    candidates.push_back(roots[i]);
    if (i + 1 < roots.size())
      candidates.push_back((roots[i] + roots[i + 1]) * two_inv);
  }
  if (!roots.empty()) {
    candidates.push_back(roots.front() - Coefficient(1));
    candidates.push_back(roots.back() + Coefficient(1));
  }

  for (const auto& s : candidates) {
    SymMatrix M(3);
    M.set(0, 0, a4);
    M.set(0, 1, a3 * half);
    M.set(0, 2, s);
    M.set(1, 1, a2 - Coefficient(2) * s);
    M.set(1, 2, a1 * half);
    M.set(2, 2, a0);
    LDLT f = ldlt_psd(M);
    if (!f.psd) continue;
    res.ok = true;
    for (int k = 0; k < 3; ++k) {
      if (f.D[k].is_zero()) continue;
      // basis vectors: 0 -> y^2, 1 -> yz, 2 -> z^2
      BinaryForm l;
      for (int i = 0; i < 3; ++i) {
        if (f.L[i][k].is_zero()) continue;
        int b = f.perm[i];
        int j = b == 0 ? 2 : (b == 1 ? 1 : 0);
        l.set_coeff(j, 2 - j, l.coeff(j, 2 - j) + f.L[i][k]);
      }
      res.terms.push_back({f.D[k], l});
    }
    return res;
  }
  return res;  // no PSD Gram member: h is not PSD
}

}  // namespace sosq
