#ifndef SOSQ_CERTIFY_HPP
#define SOSQ_CERTIFY_HPP

#include <string>
#include <vector>

#include "sosq/forms.hpp"

namespace sosq {

/// One weighted square of the certificate identity.
struct CertTerm {
  Coefficient weight;
  TernaryForm form;  // homogeneous quadratic
};

/// Summary of one reduction step, kept for diagnostics and JSON output.
/// Zero counts use -1 for "infinite".
struct TraceEntry {
  std::string lemma;
  int zeros_before = 0;
  int zeros_after = 0;
  int term_count = 0;
};

/// input = sum weight_i * form_i^2, exactly, once verified.
struct Certificate {
  TernaryForm input;
  std::vector<CertTerm> terms;
  std::vector<TraceEntry> trace;
  bool verified = false;
};

/// Sum of the weighted squares with exact arithmetic.
TernaryForm expand(const Certificate& cert);

struct VerifyReport {
  bool pass = false;
  TernaryForm residual;  // input - expansion (zero iff identity holds)
  std::string reason;    // empty on pass
};

/// Pass iff the residual is exactly zero and every weight is >= 0.
VerifyReport verify(const Certificate& cert);

/// Deterministic JSON rendering. Rationals are "num/den" strings; algebraic
/// numbers are {"minpoly": [...], "interval": [lo, hi]} with the value's own
/// squarefree defining polynomial. Top-level keys: input, field, terms,
/// verified, trace.
std::string to_json(const Certificate& cert);

/// Inverse of to_json. Algebraic coefficients with identical minpoly and
/// interval are rebuilt over one shared field. Throws MathError on malformed
/// input.
Certificate certificate_from_json(const std::string& text);

}  // namespace sosq

#endif
