#ifndef SOSQ_GRAM_HPP
#define SOSQ_GRAM_HPP

#include <vector>

#include "sosq/forms.hpp"

namespace sosq {

/// Dense symmetric matrix of coefficients (dimension small: <= 6).
class SymMatrix {
 public:
  explicit SymMatrix(int n) : n_(n), e_(n, std::vector<Coefficient>(n)) {}
  int size() const { return n_; }
  const Coefficient& at(int r, int c) const { return e_[r][c]; }
  void set(int r, int c, const Coefficient& v) {
    e_[r][c] = v;
    e_[c][r] = v;
  }

 private:
  int n_;
  std::vector<std::vector<Coefficient>> e_;
};

/// Result of semidefinite LDL^T with diagonal pivoting: on success,
/// M = P L D L^T P^T with L unit lower-triangular, D >= 0 diagonal and P the
/// permutation sending row i to perm[i]. On failure, `witness` satisfies
/// witness^T M witness < 0 exactly.
struct LDLT {
  bool psd = false;
  std::vector<int> perm;                      // column i of P is e_{perm[i]}
  std::vector<std::vector<Coefficient>> L;    // unit lower-triangular
  std::vector<Coefficient> D;
  std::vector<Coefficient> witness;           // nonempty iff !psd
};

/// Pivot rule: largest remaining diagonal first, ties by lowest index.
LDLT ldlt_psd(const SymMatrix& M);

/// Null-space basis of a successfully factored PSD matrix (one vector per
/// zero entry of D), in original coordinates.
std::vector<std::vector<Coefficient>> ldlt_kernel(const LDLT& f);

/// q = sum w_i * l_i^2 for a PSD quadratic ternary form; throws nothing,
/// returns empty optional-like failure through LDLT witness.
struct SosTerm {
  Coefficient weight;
  TernaryForm form;
};
struct SosResult {
  bool ok = false;
  std::vector<SosTerm> terms;
  std::vector<Coefficient> witness;  // direction with q < 0 when !ok
};
SosResult sos_from_quadratic(const TernaryForm& q);

/// SOS of a PSD binary quartic via its one-parameter Gram family in the
/// basis (y^2, yz, z^2); terms are quadratic binary forms. Fails (ok=false)
/// only if the input is not PSD.
struct BinarySosTerm {
  Coefficient weight;
  BinaryForm form;
};
struct BinarySosResult {
  bool ok = false;
  std::vector<BinarySosTerm> terms;
};
BinarySosResult sos_binary_quartic(const BinaryForm& h);

}  // namespace sosq

#endif
