#pragma once

#include <utility>
#include <vector>

#include "darboux/algebra/upoly.hpp"

namespace darboux::algebra {

/// Distinct rational roots in increasing order (p-adic lifting plus
/// rational reconstruction, each root checked exactly).
std::vector<Rational> rational_roots(const UPoly& f);

/// Monic irreducible factors over Q of a square-free polynomial, sorted by
/// degree and then by coefficients. Zassenhaus: factor modulo a small prime,
/// Hensel-lift, recombine.
std::vector<UPoly> factor_squarefree(const UPoly& f);

/// Full factorization over Q: monic irreducible factors with multiplicity.
std::vector<std::pair<UPoly, int>> factor(const UPoly& f);

bool is_irreducible(const UPoly& f);

}  // namespace darboux::algebra
