#include "darboux/io/expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>

namespace darboux::io {

namespace {

constexpr unsigned kMaxExponent = 4096;

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  Outcome<Polynomial, ParseError> run() {
    skip_ws();
    if (at_end()) return fail(pos_, pos_, "empty expression", {"expression"});
    auto e = expr();
    if (!e) return *error_;
    skip_ws();
    if (!at_end()) return fail(pos_, pos_ + 1, "unexpected character", {"'+'", "'-'", "'*'", "end of input"});
    return std::move(*e);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ParseError fail(std::size_t start, std::size_t end, std::string message, std::vector<std::string> expected) {
    end = std::min(std::max(end, start), text_.size());
    ParseError err{SourceSpan{std::min(start, text_.size()), end}, std::move(message), std::move(expected)};
    error_ = err;
    return err;
  }

  std::optional<Polynomial> expr() {
    auto lhs = term();
    if (!lhs) return std::nullopt;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      auto rhs = term();
      if (!rhs) return std::nullopt;
      if (c == '+') {
        *lhs += *rhs;
      } else {
        *lhs -= *rhs;
      }
    }
  }

  std::optional<Polynomial> term() {
    auto lhs = factor();
    if (!lhs) return std::nullopt;
    for (;;) {
      skip_ws();
      if (peek() != '*') return lhs;
      ++pos_;
      auto rhs = factor();
      if (!rhs) return std::nullopt;
      *lhs *= *rhs;
    }
  }

  std::optional<Integer> digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) return std::nullopt;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::optional<Polynomial> factor() {
    skip_ws();
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '-') {
      ++pos_;
      auto f = factor();
      if (!f) return std::nullopt;
      return -*f;
    }
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!e) return std::nullopt;
      skip_ws();
      if (peek() != ')') {
        fail(pos_, pos_ + 1, "unbalanced parenthesis", {"')'"});
        return std::nullopt;
      }
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = *digits();
      Integer den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t dstart = pos_;
        auto d = digits();
        if (!d) {
          fail(dstart, dstart + 1, "expected denominator", {"unsigned integer"});
          return std::nullopt;
        }
        if (*d == 0) {
          fail(dstart, pos_, "zero denominator", {"nonzero unsigned integer"});
          return std::nullopt;
        }
        den = *d;
      }
      Rational r(num, den);
      r.canonicalize();
      return Polynomial(ctx_, r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto index = ctx_->index_of(name);
      if (!index) {
        fail(start, pos_, "unknown variable '" + std::string(name) + "'", ctx_->names());
        return std::nullopt;
      }
      Polynomial v = Polynomial::variable(ctx_, *index);
      skip_ws();
      if (peek() != '^') return v;
      ++pos_;
      skip_ws();
      const std::size_t estart = pos_;
      auto e = digits();
      if (!e) {
        fail(estart, estart + 1, "expected exponent", {"unsigned integer"});
        return std::nullopt;
      }
      if (*e > kMaxExponent) {
        fail(estart, pos_, "exponent too large", {"unsigned integer <= 4096"});
        return std::nullopt;
      }
      return v.pow(static_cast<unsigned>(e->get_ui()));
    }
    if (at_end()) {
      fail(pos_, pos_, "unexpected end of input", {"number", "variable", "'('", "'-'"});
    } else {
      fail(pos_, pos_ + 1, "unexpected character", {"number", "variable", "'('", "'-'"});
    }
    return std::nullopt;
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
  std::optional<ParseError> error_;
};

}  // namespace

std::string ParseError::describe() const {
  std::string out = "bytes " + std::to_string(span.start) + "-" + std::to_string(span.end) + ": " + message;
  if (!expected.empty()) {
    out += " (expected one of: ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

Outcome<Polynomial, ParseError> parse_polynomial(std::string_view text, const ContextPtr& ctx) {
  return Parser(text, ctx).run();
}

Polynomial parse_or_throw(std::string_view text, const ContextPtr& ctx) {
  auto r = parse_polynomial(text, ctx);
  if (!r) throw Error("cannot parse '" + std::string(text) + "': " + r.error().describe());
  return std::move(r).value();
}

std::string print_polynomial(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const auto& ctx = *f.context();
  std::vector<std::size_t> order(ctx.arity());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ctx.name(a) < ctx.name(b); });

  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coeff);
    std::string body;
    for (auto v : order) {
      const unsigned e = t.monomial[v];
      if (e == 0) continue;
      if (!body.empty()) body += "*";
      body += ctx.name(v);
      if (e > 1) body += "^" + std::to_string(e);
    }
    if (body.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += body;
    } else {
      out += mag.get_str() + "*" + body;
    }
  }
  return out;
}

}  // namespace darboux::io
