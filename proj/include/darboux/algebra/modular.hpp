#pragma once

#include <cstdint>
#include <vector>

#include "darboux/poly/rational.hpp"

namespace darboux::algebra {

/// Word-sized prime field helpers. Primes stay below 2^31 so products fit
/// comfortably in 64 bits.
struct Zp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  /// Reduction of an integer; rationals need a denominator prime to p.
  std::uint64_t of(const Integer& v) const;
  std::uint64_t of(const Rational& v) const;
};

/// Largest prime strictly below `bound`.
std::uint32_t prime_below(std::uint32_t bound);

/// Deterministic sequence of large word primes: 2^31-1, then descending.
class PrimeSequence {
 public:
  std::uint32_t next();

 private:
  std::uint32_t last_ = 0;
};

/// Dense polynomial over Z/p, index = exponent, trimmed (no trailing zeros).
using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& f);
int degree(const ModPoly& f);
ModPoly mod_add(const Zp& F, const ModPoly& a, const ModPoly& b);
ModPoly mod_sub(const Zp& F, const ModPoly& a, const ModPoly& b);
ModPoly mod_mul(const Zp& F, const ModPoly& a, const ModPoly& b);
ModPoly mod_scale(const Zp& F, const ModPoly& a, std::uint64_t c);
/// Quotient and remainder; b must be nonzero.
void mod_divmod(const Zp& F, const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r);
ModPoly mod_rem(const Zp& F, const ModPoly& a, const ModPoly& b);
ModPoly mod_monic(const Zp& F, const ModPoly& a);
/// Monic gcd; gcd(0, 0) = 0.
ModPoly mod_gcd(const Zp& F, ModPoly a, ModPoly b);
ModPoly mod_derivative(const Zp& F, const ModPoly& a);
/// base^e mod m.
ModPoly mod_powmod(const Zp& F, const ModPoly& base, const Integer& e, const ModPoly& m);
std::uint64_t mod_eval(const Zp& F, const ModPoly& a, std::uint64_t x);
std::uint64_t mod_resultant(const Zp& F, ModPoly a, ModPoly b);

/// Reduction of an integer coefficient vector.
ModPoly reduce(const Zp& F, const std::vector<Integer>& a);

/// Integer u/v with u ≡ v·r (mod m), |u| ≤ num_bound, 0 < v ≤ den_bound.
/// Returns false when no such pair exists.
bool rational_reconstruct(const Integer& r, const Integer& m, const Integer& num_bound,
                          const Integer& den_bound, Rational& out);

}  // namespace darboux::algebra
