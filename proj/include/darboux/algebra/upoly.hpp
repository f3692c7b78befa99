#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "darboux/poly/rational.hpp"

namespace darboux::algebra {

/// Dense univariate polynomial over Q; coeffs()[i] multiplies x^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  explicit UPoly(const Rational& constant);

  static UPoly x();
  static UPoly monomial(unsigned k, const Rational& c = 1);
  /// Integer coefficient vector, low degree first.
  static UPoly from_integers(std::span<const Integer> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lc() const;

  Rational operator()(const Rational& at) const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Rational& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
  friend bool operator==(const UPoly&, const UPoly&) = default;

  UPoly derivative() const;
  UPoly monic() const;
  UPoly pow(unsigned e) const;
  /// self(g(x)).
  UPoly compose(const UPoly& g) const;
  /// self(x + a).
  UPoly shift(const Rational& a) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; b nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
/// a / b when exact, otherwise false.
bool divides_exactly(const UPoly& a, const UPoly& b, UPoly* quotient = nullptr);

/// Monic gcd (multi-modular); gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

struct ExtendedGcd {
  UPoly g, s, t;  // s·a + t·b = g, g monic
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);

Rational resultant(const UPoly& a, const UPoly& b);
Rational discriminant(const UPoly& f);

/// Yun decomposition: f = lc · Π factors[i].first^factors[i].second, each
/// factor monic, square-free and pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);
UPoly squarefree_part(const UPoly& f);
bool is_squarefree(const UPoly& f);

/// Newton interpolation through distinct abscissae.
UPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Integer polynomial with content 1 and positive leading coefficient
/// proportional to f (f nonzero).
std::vector<Integer> primitive_integer(const UPoly& f);
Integer content(std::span<const Integer> f);

}  // namespace darboux::algebra
