#pragma once

#include <memory>
#include <string>
#include <vector>

#include "darboux/algebra/upoly.hpp"

namespace darboux::algebra {

/// Q[t]/(m) for a monic irreducible m. Elements are UPoly representatives
/// of degree < deg m; a degree-one modulus gives a copy of Q.
class NumberField {
 public:
  static std::shared_ptr<const NumberField> rationals();
  /// m is made monic; irreducibility is the caller's responsibility.
  static std::shared_ptr<const NumberField> make(const UPoly& minpoly);

  int degree() const { return m_.degree(); }
  bool is_rational() const { return m_.degree() == 1; }
  const UPoly& minpoly() const { return m_; }

  UPoly reduce(const UPoly& a) const;
  UPoly mul(const UPoly& a, const UPoly& b) const;
  UPoly inv(const UPoly& a) const;
  UPoly generator() const { return reduce(UPoly::x()); }
  /// Field norm down to Q.
  Rational norm(const UPoly& a) const;

 private:
  explicit NumberField(UPoly m) : m_(std::move(m)) {}
  UPoly m_;
};

using FieldPtr = std::shared_ptr<const NumberField>;
using FElem = UPoly;
/// Polynomial over a number field, index = exponent, no trailing zeros.
using FPoly = std::vector<FElem>;

namespace fpoly {

void trim(FPoly& f);
int degree(const FPoly& f);
FPoly add(const FPoly& a, const FPoly& b);
FPoly sub(const FPoly& a, const FPoly& b);
FPoly mul(const NumberField& F, const FPoly& a, const FPoly& b);
FPoly scale(const NumberField& F, const FPoly& a, const FElem& c);
void divmod(const NumberField& F, const FPoly& a, const FPoly& b, FPoly& q, FPoly& r);
FPoly monic(const NumberField& F, const FPoly& a);
FPoly gcd(const NumberField& F, FPoly a, FPoly b);
FPoly derivative(const FPoly& a);
FElem eval(const NumberField& F, const FPoly& a, const FElem& at);
FPoly squarefree_part(const NumberField& F, const FPoly& a);
/// a(s + c).
FPoly shift(const NumberField& F, const FPoly& a, const FElem& c);
FPoly from_rational(const UPoly& a);

}  // namespace fpoly

/// One Galois orbit of roots of a square-free polynomial over F.
struct AdjoinedRoot {
  FieldPtr field;        // F itself when the root already lies in F
  FElem root;            // the root, as an element of `field`
  FElem generator_image; // image of F's generator in `field`
};

/// Splits the roots of h (square-free, degree ≥ 1, over F) into orbits, one
/// per irreducible factor of h over F, adjoining a primitive element when the
/// factor is not linear.
std::vector<AdjoinedRoot> adjoin_roots(const FieldPtr& F, const FPoly& h);

/// Image of a ∈ F in a field where F's generator maps to `generator_image`.
FElem embed(const NumberField& target, const FElem& a, const FElem& generator_image);

}  // namespace darboux::algebra
