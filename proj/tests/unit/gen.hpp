#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <span>
#include <vector>

#include "darboux/poly/polynomial.hpp"

namespace testgen {

using darboux::ContextPtr;
using darboux::Monomial;
using darboux::Polynomial;
using darboux::Rational;
using darboux::Term;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  Rational rational(long num = 20, long den = 9) {
    Rational r(integer(-num, num), integer(1, den));
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(long num = 20, long den = 9) {
    for (;;) {
      Rational r = rational(num, den);
      if (r != 0) return r;
    }
  }

  Monomial monomial(std::size_t arity, unsigned max_total) {
    std::array<unsigned, darboux::kMaxVariables> e{};
    unsigned left = static_cast<unsigned>(integer(0, max_total));
    for (std::size_t v = 0; v < arity && left > 0; ++v) {
      const unsigned k = static_cast<unsigned>(integer(0, left));
      e[v] = k;
      left -= k;
    }
    std::shuffle(e.begin(), e.begin() + static_cast<long>(arity), rng);
    return Monomial(std::span<const unsigned>(e.data(), arity));
  }

  /// Up to max_terms terms over the first `vars` variables of ctx.
  Polynomial poly(const ContextPtr& ctx, std::size_t vars, unsigned max_degree, int max_terms) {
    std::vector<Term> t;
    const int n = static_cast<int>(integer(0, max_terms));
    for (int i = 0; i < n; ++i) t.push_back(Term{monomial(vars, max_degree), rational()});
    return Polynomial::from_terms(ctx, std::move(t));
  }

  Polynomial nonzero_poly(const ContextPtr& ctx, std::size_t vars, unsigned max_degree, int max_terms) {
    for (;;) {
      Polynomial p = poly(ctx, vars, max_degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }
};

}  // namespace testgen
