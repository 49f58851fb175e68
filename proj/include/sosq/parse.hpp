#ifndef SOSQ_PARSE_HPP
#define SOSQ_PARSE_HPP

#include <stdexcept>
#include <string>

#include "sosq/forms.hpp"

namespace sosq {

/// Rejected input text. `position` is the byte offset of the offending
/// character for syntax errors, or std::string::npos for semantic errors
/// (non-homogeneous input).
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t position);
  size_t position;
};

/// Parse a polynomial in x, y, z with integer or rational (`a/b`) literals,
/// operators + - * ^ and parentheses; expand exactly and require the result
/// to be homogeneous. Rendered forms parse back to the same value.
TernaryForm parse_polynomial(const std::string& text);

}  // namespace sosq

#endif
