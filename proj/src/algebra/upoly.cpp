#include "darboux/algebra/upoly.hpp"

#include <climits>
#include <sstream>
#include <stdexcept>

#include "darboux/algebra/modular.hpp"

namespace darboux::algebra {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

UPoly UPoly::x() { return monomial(1); }

UPoly UPoly::monomial(unsigned k, const Rational& c) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::from_integers(std::span<const Integer> coeffs) {
  std::vector<Rational> v(coeffs.begin(), coeffs.end());
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UPoly::lc() const {
  if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return c_.back();
}

Rational UPoly::operator()(const Rational& at) const {
  Rational r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    r *= at;
    r += c_[i];
  }
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
  } else {
    for (auto& c : c_) c *= s;
  }
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / lc());
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r(Rational(1)), b = *this;
  while (e > 0) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e > 0) b = b * b;
  }
  return r;
}

UPoly UPoly::compose(const UPoly& g) const {
  UPoly r;
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = r * g;
    r += UPoly(c_[i]);
  }
  return r;
}

UPoly UPoly::shift(const Rational& a) const {
  // Taylor shift by repeated synthetic division.
  std::vector<Rational> c = c_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  }
  return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && i > 0;
    if (!unit) os << mag.get_str() << (i > 0 ? "*" : "");
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv_lc = 1 / b.lc();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = r[static_cast<std::size_t>(k)] * inv_lc;
    if (c != 0) {
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(k - db)] = std::move(c);
  }
  r.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

bool divides_exactly(const UPoly& a, const UPoly& b, UPoly* quotient) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

Integer content(std::span<const Integer> f) {
  Integer g = 0;
  for (const auto& c : f) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::vector<Integer> primitive_integer(const UPoly& f) {
  if (f.is_zero()) throw std::domain_error("primitive part of zero");
  Integer l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(Integer(c.get_num()) * (l / c.get_den()));
  Integer g = content(out);
  if (out.back() < 0) g = -g;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

namespace {

Integer symmetric(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return UPoly(Rational(1));
  const auto A = primitive_integer(a);
  const auto B = primitive_integer(b);
  Integer g;
  mpz_gcd(g.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());
  PrimeSequence primes;
  int best = INT_MAX;
  std::vector<Integer> H;
  Integer M = 0;
  while (true) {
    const std::uint32_t p = primes.next();
    const Zp F{p};
    if (F.of(A.back()) == 0 || F.of(B.back()) == 0) continue;
    ModPoly G = mod_gcd(F, reduce(F, A), reduce(F, B));
    const int d = degree(G);
    if (d == 0) return UPoly(Rational(1));
    if (d > best) continue;
    G = mod_scale(F, G, F.of(g));
    bool stable = false;
    if (d < best) {
      best = d;
      M = p;
      H.clear();
      for (auto c : G) H.push_back(symmetric(Integer(static_cast<unsigned long>(c)), M));
    } else {
      // H is kept in the symmetric range, so a converged image stops moving.
      stable = true;
      const std::uint64_t Minv = F.inv(F.of(M));
      const Integer next = M * p;
      for (std::size_t i = 0; i < H.size(); ++i) {
        const std::uint64_t h = F.of(H[i]);
        const std::uint64_t t = F.mul(F.sub(G[i], h), Minv);
        if (t != 0) {
          stable = false;
          H[i] = symmetric(H[i] + M * static_cast<unsigned long>(t), next);
        }
      }
      M = next;
    }
    if (!stable) continue;
    const UPoly c = UPoly::from_integers(H);
    if (divides_exactly(a, c) && divides_exactly(b, c)) return c.monic();
  }
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0(Rational(1)), s1, t0, t1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {UPoly(), UPoly(), UPoly()};
  const Rational inv = 1 / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

Rational resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (m == 0) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= a.lc();
    return r;
  }
  if (n == 0) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r *= b.lc();
    return r;
  }
  const auto A = primitive_integer(a);
  const auto B = primitive_integer(b);
  // a = sa·A, b = sb·B.
  const Rational sa = a.lc() / Rational(A.back());
  const Rational sb = b.lc() / Rational(B.back());
  auto norm_bits = [](const std::vector<Integer>& v) {
    Integer s = 0;
    for (const auto& c : v) s += c * c;
    return (mpz_sizeinbase(s.get_mpz_t(), 2) + 1) / 2 + 1;
  };
  const std::size_t bound_bits =
      static_cast<std::size_t>(n) * norm_bits(A) + static_cast<std::size_t>(m) * norm_bits(B) + 2;
  PrimeSequence primes;
  Integer H = 0, M = 1;
  while (mpz_sizeinbase(M.get_mpz_t(), 2) <= bound_bits) {
    const std::uint32_t p = primes.next();
    const Zp F{p};
    if (F.of(A.back()) == 0 || F.of(B.back()) == 0) continue;
    const std::uint64_t r = mod_resultant(F, reduce(F, A), reduce(F, B));
    const std::uint64_t t = F.mul(F.sub(r, F.of(H)), F.inv(F.of(M)));
    H += M * static_cast<unsigned long>(t);
    M *= p;
  }
  Rational res(symmetric(H, M));
  Rational scale = 1;
  for (int i = 0; i < n; ++i) scale *= sa;
  for (int i = 0; i < m; ++i) scale *= sb;
  return res * scale;
}

Rational discriminant(const UPoly& f) {
  const int n = f.degree();
  if (n < 1) throw std::domain_error("discriminant of a constant");
  Rational r = resultant(f, f.derivative()) / f.lc();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() < 1) return out;
  const UPoly fm = f.monic();
  const UPoly fp = fm.derivative();
  const UPoly g = gcd(fm, fp);
  UPoly c = divmod(fm, g).first;
  UPoly d = divmod(fp, g).first - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    const UPoly a = gcd(c, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    c = divmod(c, a).first;
    d = divmod(d, a).first - c.derivative();
    ++i;
  }
  return out;
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() < 1) return f.is_zero() ? UPoly() : UPoly(Rational(1));
  const UPoly fm = f.monic();
  return divmod(fm, gcd(fm, fm.derivative())).first;
}

bool is_squarefree(const UPoly& f) {
  if (f.degree() < 1) return !f.is_zero();
  return gcd(f, f.derivative()).degree() == 0;
}

UPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const Rational den = xs[i] - xs[i - j];
      if (den == 0) throw std::invalid_argument("interpolate: repeated abscissa");
      dd[i] = (dd[i] - dd[i - 1]) / den;
      if (i == j) break;
    }
  }
  // Horner on the Newton form.
  std::vector<Rational> acc;
  for (std::size_t k = n; k-- > 0;) {
    // acc = acc·(x − xs[k]) + dd[k]
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= acc[i] * xs[k];
    }
    next[0] += dd[k];
    acc = std::move(next);
  }
  return UPoly(std::move(acc));
}

}  // namespace darboux::algebra
