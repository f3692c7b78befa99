#pragma once

#include <optional>
#include <vector>

#include "darboux/algebra/upoly.hpp"
#include "darboux/poly/polynomial.hpp"

namespace darboux::algebra {

/// Dense polynomial in (x, y) over Q stored as coefficients of y^j, each a
/// UPoly in x.
class BPoly {
 public:
  BPoly() = default;
  explicit BPoly(std::vector<UPoly> by_y);

  /// Reads f as a polynomial in the two given context variables; every other
  /// variable must be absent.
  static BPoly from_polynomial(const Polynomial& f, std::size_t var_x, std::size_t var_y);
  Polynomial to_polynomial(const ContextPtr& ctx, std::size_t var_x, std::size_t var_y) const;

  bool is_zero() const { return c_.empty(); }
  int degree_y() const { return static_cast<int>(c_.size()) - 1; }
  int degree_x() const;
  int total_degree() const;
  const std::vector<UPoly>& by_y() const { return c_; }
  UPoly coeff_y(std::size_t j) const { return j < c_.size() ? c_[j] : UPoly(); }
  Rational coeff(std::size_t i, std::size_t j) const { return coeff_y(j).coeff(i); }

  UPoly eval_x(const Rational& x0) const;  // a polynomial in y
  UPoly eval_y(const Rational& y0) const;  // a polynomial in x
  Rational operator()(const Rational& x0, const Rational& y0) const;

  BPoly derivative_x() const;
  BPoly derivative_y() const;
  /// Exchanges the roles of x and y.
  BPoly swapped() const;

  BPoly operator-() const;
  friend BPoly operator+(const BPoly& a, const BPoly& b);
  friend BPoly operator-(const BPoly& a, const BPoly& b);
  friend BPoly operator*(const BPoly& a, const BPoly& b);
  friend BPoly operator*(const BPoly& a, const Rational& s);
  friend bool operator==(const BPoly&, const BPoly&) = default;

  /// Content with respect to y (gcd of the x-coefficients, monic).
  UPoly content_y() const;
  /// Scales to a monic leading coefficient (leading in y, then in x).
  BPoly normalized() const;

 private:
  void trim();
  std::vector<UPoly> c_;
};

/// a / b when b divides a exactly.
std::optional<BPoly> exact_quotient(const BPoly& a, const BPoly& b);
BPoly divide_by_x_poly(const BPoly& a, const UPoly& d);

/// Res_y(f, g) as a polynomial in x, by evaluation and interpolation.
UPoly resultant_y(const BPoly& f, const BPoly& g);

/// Normalized gcd over Q.
BPoly gcd(const BPoly& f, const BPoly& g);

}  // namespace darboux::algebra
