#include "darboux/poly/monomial.hpp"

#include <limits>

#include "darboux/poly/errors.hpp"

namespace darboux {

namespace {

std::uint16_t checked_exponent(unsigned long e) {
  if (e > std::numeric_limits<std::uint16_t>::max()) throw Error("exponent overflow");
  return static_cast<std::uint16_t>(e);
}

}  // namespace

Monomial::Monomial(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxVariables) throw ArityMismatch(kMaxVariables, exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    exps_[i] = checked_exponent(exponents[i]);
    degree_ += exps_[i];
  }
}

void Monomial::set(std::size_t var, unsigned e) {
  degree_ -= exps_.at(var);
  exps_[var] = checked_exponent(e);
  degree_ += exps_[var];
}

unsigned Monomial::degree_in(std::span<const std::size_t> vars) const {
  unsigned d = 0;
  for (auto v : vars) d += exps_.at(v);
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    r.exps_[i] = checked_exponent(static_cast<unsigned long>(exps_[i]) + other.exps_[i]);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (divisor.exps_[i] > exps_[i]) throw Error("monomial quotient is not a monomial");
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - divisor.exps_[i]);
  }
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace darboux
