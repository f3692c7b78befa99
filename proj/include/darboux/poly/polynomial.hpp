#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "darboux/poly/context.hpp"
#include "darboux/poly/errors.hpp"
#include "darboux/poly/monomial.hpp"
#include "darboux/poly/rational.hpp"

namespace darboux {

struct Term {
  Monomial monomial;
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept sorted
/// in descending graded-lex order and no stored coefficient is zero, so two
/// polynomials are equal iff their term vectors are equal.
class Polynomial {
 public:
  /// Zero polynomial in the standard context.
  Polynomial();
  explicit Polynomial(ContextPtr ctx);
  Polynomial(ContextPtr ctx, const Rational& constant);

  static Polynomial variable(ContextPtr ctx, std::size_t index);
  static Polynomial variable(ContextPtr ctx, std::string_view name);
  static Polynomial monomial(ContextPtr ctx, const Monomial& m, const Rational& c = 1);
  /// Sorts, merges duplicates and drops zero coefficients.
  static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const { return ctx_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Total degree, -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  /// Highest total degree restricted to the listed variables.
  int degree_in(std::span<const std::size_t> vars) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  Rational coefficient(const Monomial& m) const;
  const Term& leading_term() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  bool operator==(const Polynomial& other) const;

  Polynomial pow(unsigned e) const;

  /// Collects the coefficient polynomials of powers of `var`:
  /// result[k] is the coefficient of var^k.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;

 private:
  friend class PolynomialBuilder;
  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Accumulates terms with repeated monomials; build() canonicalizes.
class PolynomialBuilder {
 public:
  explicit PolynomialBuilder(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  void add(const Monomial& m, const Rational& c);
  void add(const Polynomial& p, const Rational& scale = 1);
  Polynomial build();

 private:
  ContextPtr ctx_;
  std::map<Monomial, Rational, std::greater<>> acc_;
};

Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial mul(const Polynomial& f, const Polynomial& g);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);
Polynomial partial_derivative(const Polynomial& f, std::string_view var);

struct NotDivisible {
  /// First term of the running remainder that the divisor's leading term
  /// does not divide.
  Term obstruction;
};

/// f / d when d divides f exactly; otherwise reports the obstructing term.
/// Throws std::domain_error for d = 0.
Outcome<Polynomial, NotDivisible> exact_divide(const Polynomial& f, const Polynomial& d);

/// Simultaneous substitution; unbound variables are left alone.
Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& bindings);
Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Rational>& bindings);

Rational evaluate(const Polynomial& f, std::span<const Rational> point);

struct NotHomogeneous {
  long first_weight;
  long conflicting_weight;
};

/// Common weighted degree of all terms. Throws std::domain_error on zero.
Outcome<long, NotHomogeneous> quasi_weight(const Polynomial& f, std::span<const long> weights);
long monomial_weight(const Monomial& m, std::span<const long> weights);

}  // namespace darboux
