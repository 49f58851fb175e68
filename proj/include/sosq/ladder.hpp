#ifndef SOSQ_LADDER_HPP
#define SOSQ_LADDER_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "sosq/certify.hpp"
#include "sosq/zerofinder.hpp"

namespace sosq {

/// Raised when an input that must be nonnegative is provably negative; the
/// witness direction satisfies f(witness) < 0 exactly.
class NotPsdError : public MathError {
 public:
  explicit NotPsdError(std::array<Coefficient, 3> w)
      : MathError("form is negative at an exact witness direction"),
        witness_(std::move(w)) {}
  const std::array<Coefficient, 3>& witness() const { return witness_; }

 private:
  std::array<Coefficient, 3> witness_;
};

/// Minimum of a quartic form over the unit sphere. `value` and `witness` are
/// meaningful only when `exact`; the enclosure always brackets the minimum.
struct SphereMinimum {
  bool exact = false;
  RealAlgebraic value;
  ProjectiveZero witness;
  UniPoly eliminant;  // vanishes at every critical value of f on the sphere
  std::pair<Rational, Rational> enclosure;
};

/// Exact when every candidate below the minimum can be screened within the
/// degree budget; otherwise falls back to a rigorous enclosure. Requires
/// rational coefficients.
SphereMinimum min_on_sphere(const TernaryForm& f);

/// Exact minimum of h / weight over the circle. Both forms binary of the
/// same even degree; weight must be strictly positive on the circle.
RealAlgebraic min_binary_on_circle(const BinaryForm& h,
                                   const BinaryForm& weight);

/// Exact nonnegativity for an even form of degree <= 4. May raise
/// BudgetError when positivity cannot be decided within the degree budget.
bool is_psd(const TernaryForm& f);

/// One rung of the ladder: subtracted weighted squares plus the remainder,
/// all in the caller's coordinates. f = sum w_i t_i^2 + residual exactly.
struct LadderStep {
  std::vector<CertTerm> terms;
  TernaryForm residual;
};

/// No real zeros: peel off (min f/s^2) * s^2 with s = x^2+y^2+z^2.
LadderStep lemma1_step(const TernaryForm& f);
/// One real zero: move it to (1,0,0) and branch on the rank of the x^2
/// coefficient.
LadderStep lemma2_step(const TernaryForm& f, const ProjectiveZero& zero);
/// Two real zeros: move them to (1,0,0) and (0,1,0), then complete squares
/// until the remainder degenerates.
LadderStep lemma3_step(const TernaryForm& f, const ProjectiveZero& z1,
                       const ProjectiveZero& z2);
/// At least three (or infinitely many) real zeros: finish the decomposition
/// outright.
std::vector<CertTerm> lemma4_decompose(const TernaryForm& f,
                                       const ZeroSet& zeros);

/// Full pipeline: reject provably negative inputs with a witness, then
/// descend the ladder until the residual vanishes. The result is verified
/// before it is returned.
Certificate decompose(const TernaryForm& f);

}  // namespace sosq

#endif
