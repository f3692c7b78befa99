#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "darboux/poly/polynomial.hpp"

namespace darboux::io {

/// Byte offsets [start, end) into the parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct ParseError {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;

  /// "col 5-7: unknown variable 'w' (expected one of: ...)"
  std::string describe() const;
};

/// Grammar (whitespace-insensitive, multiplication explicit):
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := rational | variable ('^' uint)? | '(' expr ')' | '-' factor
///   rational := int ('/' uint)?
Outcome<Polynomial, ParseError> parse_polynomial(std::string_view text, const ContextPtr& ctx);

/// Throwing convenience wrapper for trusted literals.
Polynomial parse_or_throw(std::string_view text, const ContextPtr& ctx = standard_context());

/// Canonical rendering: descending graded-lex term order, exact a/b
/// coefficients, variables inside a monomial in alphabetical order.
std::string print_polynomial(const Polynomial& f);

}  // namespace darboux::io
