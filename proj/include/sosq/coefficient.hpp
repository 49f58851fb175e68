#ifndef SOSQ_COEFFICIENT_HPP
#define SOSQ_COEFFICIENT_HPP

#include "sosq/realalg.hpp"

namespace sosq {

/// Form coefficients are rational-or-algebraic. RealAlgebraic already stores
/// rationals in a dedicated fast path and promotes on mixed arithmetic, so it
/// serves as the tagged union directly.
using Coefficient = RealAlgebraic;

}  // namespace sosq

#endif
