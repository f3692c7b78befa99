#include "darboux/algebra/factor.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "darboux/algebra/modular.hpp"

namespace darboux::algebra {

namespace {

using ZPoly = std::vector<Integer>;

Integer mod_pos(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

Integer symmetric(const Integer& v, const Integer& m) {
  Integer r = mod_pos(v, m);
  if (2 * r > m) r -= m;
  return r;
}

Integer eval_mod(const ZPoly& f, const Integer& x, const Integer& m) {
  Integer r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = mod_pos(r * x + f[i], m);
  return r;
}

ZPoly zderivative(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

bool squarefree_mod(const Zp& F, const ZPoly& f) {
  const ModPoly fp = reduce(F, f);
  if (degree(fp) != static_cast<int>(f.size()) - 1) return false;
  return degree(mod_gcd(F, fp, mod_derivative(F, fp))) == 0;
}

UPoly to_upoly(const ZPoly& f) { return UPoly::from_integers(f); }

// Integer polynomial arithmetic modulo m (coefficients kept in [0, m)).
ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c = mod_pos(c, m);
  return r;
}

ZPoly from_mod(const ModPoly& f) { return ZPoly(f.begin(), f.end()); }

// Distinct-degree factorization of a monic square-free f mod p.
std::vector<std::pair<ModPoly, int>> distinct_degree(const Zp& F, ModPoly f) {
  std::vector<std::pair<ModPoly, int>> out;
  const ModPoly x{0, 1};
  ModPoly h = x;
  int i = 1;
  while (degree(f) >= 2 * i) {
    h = mod_powmod(F, h, Integer(static_cast<unsigned long>(F.p)), f);
    ModPoly g = mod_gcd(F, mod_sub(F, h, x), f);
    if (degree(g) > 0) {
      ModPoly q, r;
      mod_divmod(F, f, g, q, r);
      f = std::move(q);
      h = mod_rem(F, h, f);
      out.emplace_back(std::move(g), i);
    }
    ++i;
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

void equal_degree(const Zp& F, const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  while (true) {
    ModPoly a(static_cast<std::size_t>(degree(g)));
    for (auto& c : a) c = rng() % F.p;
    trim(a);
    if (degree(a) < 1) continue;
    ModPoly b = mod_powmod(F, a, e, g);
    b = mod_sub(F, b, ModPoly{1});
    ModPoly c = mod_gcd(F, b, g);
    if (degree(c) > 0 && degree(c) < degree(g)) {
      ModPoly q, r;
      mod_divmod(F, g, c, q, r);
      equal_degree(F, c, d, rng, out);
      equal_degree(F, mod_monic(F, q), d, rng, out);
      return;
    }
  }
}

std::vector<ModPoly> factor_mod(const Zp& F, const ModPoly& f) {
  std::mt19937_64 rng(0x5eed);
  std::vector<ModPoly> out;
  for (auto& [g, d] : distinct_degree(F, mod_monic(F, f))) equal_degree(F, g, d, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_factors_mod(const Zp& F, const ModPoly& f) {
  std::size_t n = 0;
  for (auto& [g, d] : distinct_degree(F, mod_monic(F, f))) n += static_cast<std::size_t>(degree(g) / d);
  return n;
}

// One-prime-digit-at-a-time Hensel lift of G ≡ g·h (mod p) to modulus p^k.
// G is monic modulo p^k; g, h monic modulo p.
void hensel_pair(const Zp& F, const ZPoly& G, ModPoly g0, ModPoly h0, unsigned k, ZPoly& g, ZPoly& h) {
  const Integer p = static_cast<unsigned long>(F.p);
  // s·g + t·h ≡ 1 (mod p).
  ModPoly s, t;
  {
    ModPoly r0 = g0, r1 = h0, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      ModPoly q, r;
      mod_divmod(F, r0, r1, q, r);
      r0 = std::move(r1);
      r1 = std::move(r);
      ModPoly s2 = mod_sub(F, s0, mod_mul(F, q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      ModPoly t2 = mod_sub(F, t0, mod_mul(F, q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    const std::uint64_t inv = F.inv(r0.at(0));
    s = mod_scale(F, s0, inv);
    t = mod_scale(F, t0, inv);
  }
  g = from_mod(g0);
  h = from_mod(h0);
  Integer pj = p;
  for (unsigned j = 1; j < k; ++j) {
    const Integer next = pj * p;
    ZPoly prod = zmul_mod(g, h, next);
    ZPoly e(std::max(prod.size(), G.size()), Integer(0));
    for (std::size_t i = 0; i < e.size(); ++i) {
      Integer v = (i < G.size() ? mod_pos(G[i], next) : Integer(0)) - (i < prod.size() ? prod[i] : Integer(0));
      v = mod_pos(v, next);
      if (v % pj != 0) throw std::logic_error("hensel: inconsistent lift");
      e[i] = v / pj;
    }
    ModPoly em(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) em[i] = F.of(e[i]);
    trim(em);
    if (em.empty()) {
      pj = next;
      continue;
    }
    ModPoly q, dg;
    mod_divmod(F, mod_mul(F, em, t), g0, q, dg);
    ModPoly dh = mod_add(F, mod_mul(F, q, h0), mod_mul(F, em, s));
    for (std::size_t i = 0; i < dg.size(); ++i) {
      if (i >= g.size()) g.resize(i + 1, Integer(0));
      g[i] = mod_pos(g[i] + pj * static_cast<unsigned long>(dg[i]), next);
    }
    for (std::size_t i = 0; i < dh.size(); ++i) {
      if (i >= h.size()) h.resize(i + 1, Integer(0));
      h[i] = mod_pos(h[i] + pj * static_cast<unsigned long>(dh[i]), next);
    }
    pj = next;
  }
}

void hensel_multi(const Zp& F, const ZPoly& G, const std::vector<ModPoly>& parts, unsigned k,
                  std::vector<ZPoly>& out) {
  if (parts.size() == 1) {
    out.push_back(G);
    return;
  }
  const std::size_t mid = parts.size() / 2;
  ModPoly g0{1}, h0{1};
  for (std::size_t i = 0; i < mid; ++i) g0 = mod_mul(F, g0, parts[i]);
  for (std::size_t i = mid; i < parts.size(); ++i) h0 = mod_mul(F, h0, parts[i]);
  ZPoly g, h;
  hensel_pair(F, G, g0, h0, k, g, h);
  hensel_multi(F, g, std::vector<ModPoly>(parts.begin(), parts.begin() + static_cast<long>(mid)), k, out);
  hensel_multi(F, h, std::vector<ModPoly>(parts.begin() + static_cast<long>(mid), parts.end()), k, out);
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t s = idx.size();
  for (std::size_t i = s; i-- > 0;) {
    if (idx[i] < n - s + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool upoly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

// Zassenhaus on a primitive square-free integer polynomial with F(0) ≠ 0.
std::vector<UPoly> zassenhaus(ZPoly f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {to_upoly(f).monic()};

  // Choose the prime giving the fewest modular factors among a few tries.
  std::uint32_t best_p = 0;
  std::size_t best_count = 0;
  int tried = 0;
  Integer cand = 101;
  while (tried < 6) {
    mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
    const Zp F{static_cast<std::uint64_t>(cand.get_ui())};
    if (F.of(f.back()) == 0 || !squarefree_mod(F, f)) continue;
    ++tried;
    const std::size_t c = count_factors_mod(F, reduce(F, f));
    if (best_p == 0 || c < best_count) {
      best_p = static_cast<std::uint32_t>(F.p);
      best_count = c;
    }
    if (c == 1) return {to_upoly(f).monic()};
  }
  const Zp F{best_p};
  const std::vector<ModPoly> parts = factor_mod(F, reduce(F, f));

  // Coefficient bound for factors, scaled by the leading coefficient.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = abs(f.back()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  bound *= 2;
  const Integer p = static_cast<unsigned long>(best_p);
  Integer pk = p;
  unsigned k = 1;
  while (pk <= bound) {
    pk *= p;
    ++k;
  }

  // Monic image of f modulo p^k.
  Integer lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), pk.get_mpz_t());
  ZPoly G(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) G[i] = mod_pos(f[i] * lc_inv, pk);
  std::vector<ZPoly> lifted;
  hensel_multi(F, G, parts, k, lifted);

  std::vector<UPoly> found;
  UPoly rest = to_upoly(f);
  std::vector<ZPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    bool hit = false;
    do {
      const auto rest_int = primitive_integer(rest);
      ZPoly prod{mod_pos(rest_int.back(), pk)};
      for (std::size_t i : idx) prod = zmul_mod(prod, pool[i], pk);
      for (auto& c : prod) c = symmetric(c, pk);
      while (!prod.empty() && prod.back() == 0) prod.pop_back();
      if (prod.empty()) continue;
      const UPoly candidate = to_upoly(prod);
      UPoly quotient;
      if (candidate.degree() > 0 && divides_exactly(rest, candidate, &quotient)) {
        found.push_back(candidate.monic());
        rest = quotient;
        std::vector<ZPoly> kept;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) kept.push_back(pool[i]);
        }
        pool = std::move(kept);
        hit = true;
        break;
      }
    } while (next_subset(idx, pool.size()));
    if (!hit) ++s;
  }
  if (rest.degree() > 0) found.push_back(rest.monic());
  return found;
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& f) {
  std::vector<Rational> roots;
  if (f.degree() < 1) return roots;
  ZPoly F = primitive_integer(squarefree_part(f));
  if (F[0] == 0) {
    roots.push_back(0);
    F.erase(F.begin());
  }
  if (F.size() <= 1) return roots;
  if (F.size() == 2) {
    Rational r(Integer(-F[0]), F[1]);
    r.canonicalize();
    roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  Integer cand = 10007;
  Zp Fp{0};
  while (true) {
    mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
    Fp = Zp{static_cast<std::uint64_t>(cand.get_ui())};
    if (Fp.of(F.back()) != 0 && squarefree_mod(Fp, F)) break;
  }
  const ModPoly fm = reduce(Fp, F);
  // Roots modulo p via gcd with x^p − x, then splitting.
  ModPoly xp = mod_powmod(Fp, ModPoly{0, 1}, Integer(static_cast<unsigned long>(Fp.p)), fm);
  ModPoly lin = mod_gcd(Fp, mod_sub(Fp, xp, ModPoly{0, 1}), fm);
  std::vector<ModPoly> linear;
  if (degree(lin) > 0) {
    std::mt19937_64 rng(0x600d);
    equal_degree(Fp, lin, 1, rng, linear);
  }
  const Integer N = abs(F.front());
  const Integer D = abs(F.back());
  const Integer need = 2 * N * D;
  const Integer p = static_cast<unsigned long>(Fp.p);
  const ZPoly dF = zderivative(F);
  const UPoly fq = to_upoly(F);
  for (const auto& l : linear) {
    Integer r = static_cast<unsigned long>(Fp.neg(l[0]));
    Integer m = p;
    while (m <= need) {
      m *= m;
      Integer inv;
      const Integer d = eval_mod(dF, r, m);
      if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0) break;
      r = mod_pos(r - eval_mod(F, r, m) * inv, m);
    }
    Rational q;
    if (rational_reconstruct(r, m, N, D, q) && fq(q) == 0) roots.push_back(q);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<UPoly> factor_squarefree(const UPoly& f) {
  if (f.degree() < 1) return {};
  ZPoly F = primitive_integer(f);
  std::vector<UPoly> out;
  if (F[0] == 0) {
    out.push_back(UPoly::x());
    std::size_t shift = 0;
    while (F[shift] == 0) ++shift;
    if (shift > 1) throw std::invalid_argument("factor_squarefree: input has a repeated factor x");
    F.erase(F.begin(), F.begin() + static_cast<long>(shift));
  }
  if (F.size() > 1) {
    for (auto& g : zassenhaus(F)) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), upoly_less);
  return out;
}

std::vector<std::pair<UPoly, int>> factor(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  for (auto& [g, m] : squarefree_decomposition(f)) {
    for (auto& h : factor_squarefree(g)) out.emplace_back(std::move(h), m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return upoly_less(a.first, b.first);
  });
  return out;
}

bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  if (!is_squarefree(f)) return false;
  return factor_squarefree(f).size() == 1;
}

}  // namespace darboux::algebra
