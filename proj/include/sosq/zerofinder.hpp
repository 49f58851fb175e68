#ifndef SOSQ_ZEROFINDER_HPP
#define SOSQ_ZEROFINDER_HPP

#include <array>
#include <utility>
#include <vector>

#include "sosq/elimination.hpp"
#include "sosq/forms.hpp"

namespace sosq {

/// Point of P²(ℝ) with exact coordinates, normalized to one of three charts:
/// z = 1, or z = 0 and y = 1, or the single point (1, 0, 0).
struct ProjectiveZero {
  enum class Chart { AffineZ, LineAtInfinity, PointX };
  Chart chart = Chart::PointX;
  std::array<Coefficient, 3> coords = {Coefficient(1), Coefficient(0),
                                       Coefficient(0)};

  /// Normalize an arbitrary nonzero triple; throws MathError on (0,0,0).
  static ProjectiveZero from_triple(const Coefficient& x, const Coefficient& y,
                                    const Coefficient& z);

  /// Exact projective equality (both sides are normalized).
  bool operator==(const ProjectiveZero& o) const;
};

/// Deterministic strict order on normalized points (chart, then coords).
int compare(const ProjectiveZero& a, const ProjectiveZero& b);

/// The real projective zero set of a ternary quartic.
struct ZeroSet {
  enum class Kind { Empty, Finite, Infinite };
  Kind kind = Kind::Empty;
  /// Finite: duplicate-free, sorted by compare().
  std::vector<ProjectiveZero> points;
  /// Infinite: witnessing forms with a one-dimensional real zero locus
  /// (real linear factors, or indefinite quadratics).
  std::vector<TernaryForm> lines;
  /// Infinite: the square-free factorization of the input.
  std::vector<std::pair<TernaryForm, int>> factorization;
};

/// Point (u : w) of P¹(ℝ), normalized to w = 1 or (u, w) = (1, 0).
struct LinePoint {
  Coefficient u, w;
  int multiplicity = 1;
};

/// All real projective roots of a nonzero binary form, finite roots
/// ascending in u, the point at infinity (if a root) last. Multiplicities
/// are exact.
std::vector<LinePoint> binary_projective_roots(const BinaryForm& R);

/// True iff a nonzero even-degree binary form has no real projective zero
/// and is positive at a sample point.
bool is_strictly_positive_binary(const BinaryForm& h);

/// Z(f) for a nonzero ternary quartic. Strategy: square-free factorization
/// first (repeated real lines / indefinite quadratics give an infinite zero
/// set); on a square-free quartic factor, eliminate the first variable v
/// with res(g, g'_v, v) not identically zero, take the real projective
/// roots of the resultant and back-substitute along each fiber line via a
/// gcd with g'_v over the root's field. With psd_assumed unset the result
/// is still sound (every reported zero is exact) but may be incomplete for
/// indefinite inputs.
ZeroSet projective_real_zeros(const TernaryForm& f, bool psd_assumed = true);

}  // namespace sosq

#endif
