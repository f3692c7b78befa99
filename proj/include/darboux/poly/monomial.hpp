#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "darboux/poly/context.hpp"

namespace darboux {

/// Exponent vector. Unused trailing slots stay zero, so monomials from the
/// same context compare correctly regardless of arity.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const unsigned> exponents);

  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t var) const { return exps_[var]; }
  void set(std::size_t var, unsigned e);

  /// Sum of exponents over the listed variables only.
  unsigned degree_in(std::span<const std::size_t> vars) const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient(const Monomial& divisor) const;

  /// Graded lexicographic: total degree first, then the first variable in
  /// context order is the most significant.
  friend std::strong_ordering operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::uint32_t degree_ = 0;  // must stay first: drives the graded order
  std::array<std::uint16_t, kMaxVariables> exps_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace darboux
