#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "darboux/poly/polynomial.hpp"

namespace darboux::field {

/// ds1/dt = P, ds2/dt = Q for a designated pair of state variables; every
/// other variable of the context is a parameter.
class PolyVectorField {
 public:
  PolyVectorField(Polynomial P, Polynomial Q, std::size_t first, std::size_t second);

  const Polynomial& P() const { return P_; }
  const Polynomial& Q() const { return Q_; }
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const ContextPtr& context() const { return P_.context(); }

  /// Degree in the state variables (max over P and Q).
  int degree() const;
  /// Non-state variables occurring in P or Q, in context order.
  std::vector<std::size_t> parameters() const;
  bool is_state(std::size_t var) const { return var == first_ || var == second_; }

  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

 private:
  Polynomial P_, Q_;
  std::size_t first_, second_;
};

/// z' = z*y + 1, y' = 3*y^2 + beta*z*y + gamma*z^2 + delta with beta,
/// gamma, delta free of z and y.
struct QuadraticNormalForm {
  Polynomial beta, gamma, delta;

  /// beta = b*s, gamma = c*s^2, delta = s for the parameter s (q by default).
  static QuadraticNormalForm pure(const Rational& b, const Rational& c, std::string_view param = "q");
  PolyVectorField expand() const;
};

/// Throws Error when the field's degree exceeds two.
void require_quadratic(const PolyVectorField& X);

Polynomial lie_derivative(const PolyVectorField& X, const Polynomial& g);

struct NotInvariant {
  Polynomial lie;
  Term obstruction;
};

struct CofactorDegreeViolation {
  Polynomial cofactor;
  int degree;
};

using CofactorFailure = std::variant<NotInvariant, CofactorDegreeViolation>;

/// X(g)/g, required to have state degree at most deg X − 1.
Outcome<Polynomial, CofactorFailure> cofactor_of(const PolyVectorField& X, const Polynomial& g);

struct CurveCertificate {
  PolyVectorField system;
  Polynomial g;
  Polynomial K;
  int degree;  // state degree of g
};

CurveCertificate make_certificate(const PolyVectorField& X, const Polynomial& g, const Polynomial& K);

struct Verdict {
  bool pass = false;
  Polynomial residual;
  std::size_t residual_terms = 0;
  double elapsed_seconds = 0;
  /// Set when gcd(g, dg/ds1, dg/ds2) is nonconstant at a generic parameter value.
  bool squarefree_warning = false;
};

Verdict verify_certificate(const CurveCertificate& c);

/// True when g has a repeated factor in the state variables, judged at a
/// fixed generic rational specialization of the parameters.
bool has_repeated_factor(const Polynomial& g, std::size_t first, std::size_t second);

struct ProbeVerdict {
  bool all_zero = true;
  std::size_t trials_run = 0;
  std::optional<std::vector<Rational>> witness;  // first point with nonzero residual
  Rational value;
};

/// Evaluates X(g) − K·g at pseudo-random rational points with numerators and
/// denominators bounded by 10^6.
ProbeVerdict probe(const PolyVectorField& X, const Polynomial& g, const Polynomial& K, unsigned trials,
                   std::uint64_t seed);

}  // namespace darboux::field
