#include "darboux/algebra/modular.hpp"

#include <stdexcept>

namespace darboux::algebra {

std::uint64_t Zp::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1u;
  }
  return r;
}

std::uint64_t Zp::inv(std::uint64_t a) const {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  return pow(a, p - 2);
}

std::uint64_t Zp::of(const Integer& v) const {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
}

std::uint64_t Zp::of(const Rational& v) const {
  const std::uint64_t d = of(Integer(v.get_den()));
  return mul(of(Integer(v.get_num())), inv(d));
}

std::uint32_t prime_below(std::uint32_t bound) {
  Integer n = bound - 1;
  while (n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) --n;
  return static_cast<std::uint32_t>(n.get_ui());
}

std::uint32_t PrimeSequence::next() {
  last_ = last_ == 0 ? 2147483647u : prime_below(last_);
  return last_;
}

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly mod_add(const Zp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

ModPoly mod_sub(const Zp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

ModPoly mod_mul(const Zp& F, const ModPoly& a, const ModPoly& b) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
  }
  trim(r);
  return r;
}

ModPoly mod_scale(const Zp& F, const ModPoly& a, std::uint64_t c) {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void mod_divmod(const Zp& F, const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
  if (b.empty()) throw std::domain_error("polynomial division by zero mod p");
  r = a;
  trim(r);
  const int db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(r) - db + 1), 0);
  const std::uint64_t inv_lc = F.inv(b.back());
  for (int k = degree(r); k >= db; --k) {
    const std::uint64_t c = F.mul(r[static_cast<std::size_t>(k)], inv_lc);
    q[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(k - db + j)];
      slot = F.sub(slot, F.mul(c, b[static_cast<std::size_t>(j)]));
    }
  }
  trim(r);
  trim(q);
}

ModPoly mod_rem(const Zp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly q, r;
  mod_divmod(F, a, b, q, r);
  return r;
}

ModPoly mod_monic(const Zp& F, const ModPoly& a) {
  if (a.empty()) return a;
  return mod_scale(F, a, F.inv(a.back()));
}

ModPoly mod_gcd(const Zp& F, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return mod_monic(F, a);
}

ModPoly mod_derivative(const Zp& F, const ModPoly& a) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  trim(r);
  return r;
}

ModPoly mod_powmod(const Zp& F, const ModPoly& base, const Integer& e, const ModPoly& m) {
  ModPoly result{1 % F.p};
  result = mod_rem(F, result, m);
  ModPoly b = mod_rem(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod_rem(F, mod_mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod_rem(F, mod_mul(F, result, b), m);
  }
  return result;
}

std::uint64_t mod_eval(const Zp& F, const ModPoly& a, std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

std::uint64_t mod_resultant(const Zp& F, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  std::uint64_t acc = 1;
  while (true) {
    const int m = degree(a);
    const int n = degree(b);
    if (n == 0) return F.mul(acc, F.pow(b[0], static_cast<std::uint64_t>(m)));
    if (m == 0) return F.mul(acc, F.pow(a[0], static_cast<std::uint64_t>(n)));
    ModPoly r = mod_rem(F, a, b);
    if (r.empty()) return 0;
    const int k = degree(r);
    if ((m % 2 == 1) && (n % 2 == 1)) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(b.back(), static_cast<std::uint64_t>(m - k)));
    a = std::move(b);
    b = std::move(r);
  }
}

ModPoly reduce(const Zp& F, const std::vector<Integer>& a) {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.of(a[i]);
  trim(r);
  return r;
}

bool rational_reconstruct(const Integer& r, const Integer& m, const Integer& num_bound,
                          const Integer& den_bound, Rational& out) {
  Integer r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  while (r1 > num_bound) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > den_bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(t1 < 0 ? Integer(-r1) : r1, abs(t1));
  out.canonicalize();
  return true;
}

}  // namespace darboux::algebra
