#include "darboux/algebra/number_field.hpp"

#include <stdexcept>

#include "darboux/algebra/factor.hpp"

namespace darboux::algebra {

FieldPtr NumberField::rationals() {
  static const FieldPtr q(new NumberField(UPoly::x()));
  return q;
}

FieldPtr NumberField::make(const UPoly& minpoly) {
  if (minpoly.degree() < 1) throw std::invalid_argument("number field modulus must be nonconstant");
  return FieldPtr(new NumberField(minpoly.monic()));
}

UPoly NumberField::reduce(const UPoly& a) const {
  if (a.degree() < m_.degree()) return a;
  return a % m_;
}

UPoly NumberField::mul(const UPoly& a, const UPoly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  if (is_rational()) return UPoly(a.coeff(0) * b.coeff(0));
  return reduce(a * b);
}

UPoly NumberField::inv(const UPoly& a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero in a number field");
  if (a.degree() == 0) return UPoly(Rational(1 / a.lc()));
  const ExtendedGcd e = extended_gcd(a, m_);
  if (e.g.degree() != 0) throw std::domain_error("element not invertible: modulus is reducible");
  return reduce(e.s);
}

Rational NumberField::norm(const UPoly& a) const {
  if (is_rational()) return a.coeff(0);
  return resultant(m_, a);
}

namespace fpoly {

void trim(FPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int degree(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

FPoly add(const FPoly& a, const FPoly& b) {
  FPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

FPoly sub(const FPoly& a, const FPoly& b) {
  FPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

FPoly mul(const NumberField& F, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  // Accumulate unreduced products, reduce once per output slot.
  FPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  for (auto& c : r) c = F.reduce(c);
  trim(r);
  return r;
}

FPoly scale(const NumberField& F, const FPoly& a, const FElem& c) {
  FPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void divmod(const NumberField& F, const FPoly& a, const FPoly& b, FPoly& q, FPoly& r) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial over a number field");
  r = a;
  trim(r);
  const int db = degree(b);
  q.clear();
  if (degree(r) < db) return;
  q.assign(static_cast<std::size_t>(degree(r) - db + 1), FElem());
  const FElem inv_lc = F.inv(b.back());
  for (int k = degree(r); k >= db; --k) {
    const FElem c = F.mul(r[static_cast<std::size_t>(k)], inv_lc);
    q[static_cast<std::size_t>(k - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(k - db + j)];
      slot = slot - F.mul(c, b[static_cast<std::size_t>(j)]);
    }
  }
  trim(r);
  trim(q);
}

FPoly monic(const NumberField& F, const FPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

FPoly gcd(const NumberField& F, FPoly a, FPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FPoly q, r;
    divmod(F, a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

FPoly derivative(const FPoly& a) {
  FPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rational(static_cast<unsigned long>(i)));
  trim(r);
  return r;
}

FElem eval(const NumberField& F, const FPoly& a, const FElem& at) {
  FElem r;
  for (std::size_t i = a.size(); i-- > 0;) r = F.mul(r, at) + a[i];
  return r;
}

FPoly squarefree_part(const NumberField& F, const FPoly& a) {
  if (degree(a) < 1) return monic(F, a);
  const FPoly g = gcd(F, a, derivative(a));
  FPoly q, r;
  divmod(F, a, g, q, r);
  return monic(F, q);
}

FPoly shift(const NumberField& F, const FPoly& a, const FElem& c) {
  FPoly r = a;
  const std::size_t n = r.size();
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) r[j - 1] = r[j - 1] + F.mul(c, r[j]);
  }
  trim(r);
  return r;
}

FPoly from_rational(const UPoly& a) {
  FPoly r;
  for (const auto& c : a.coeffs()) r.push_back(UPoly(c));
  trim(r);
  return r;
}

}  // namespace fpoly

FElem embed(const NumberField& target, const FElem& a, const FElem& generator_image) {
  FElem r;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) r = target.mul(r, generator_image) + UPoly(a.coeffs()[i]);
  return r;
}

namespace {

// Binomial coefficients C(n, k) for small n.
Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

std::vector<AdjoinedRoot> adjoin_roots(const FieldPtr& F, const FPoly& h_in) {
  FPoly h = fpoly::monic(*F, h_in);
  const int dh = fpoly::degree(h);
  if (dh < 1) throw std::invalid_argument("adjoin_roots: constant polynomial");
  const FElem gen = F->generator();
  if (dh == 1) return {AdjoinedRoot{F, -h[0], gen}};

  std::vector<AdjoinedRoot> out;
  if (F->is_rational()) {
    UPoly hq;
    {
      std::vector<Rational> c;
      for (const auto& e : h) c.push_back(e.coeff(0));
      hq = UPoly(std::move(c));
    }
    for (const auto& phi : factor_squarefree(hq)) {
      if (phi.degree() == 1) {
        out.push_back(AdjoinedRoot{F, UPoly(Rational(-phi.coeff(0))), gen});
      } else {
        const FieldPtr B = NumberField::make(phi);
        out.push_back(AdjoinedRoot{B, B->generator(), UPoly(gen.coeff(0))});
      }
    }
    return out;
  }

  const int dF = F->degree();
  const int D = dh * dF;
  for (int attempt = 0;; ++attempt) {
    const long k = attempt == 0 ? 0 : ((attempt % 2 == 1) ? (attempt + 1) / 2 : -(attempt / 2));
    // N(u) = Res_t(m(t), h(u − k·t)).
    std::vector<Rational> xs, ys;
    for (int i = 0; i <= D; ++i) {
      const Rational u = i;
      const UPoly lin = UPoly(std::vector<Rational>{u, Rational(-k)});
      UPoly acc;
      UPoly power(Rational(1));
      for (int j = 0; j <= dh; ++j) {
        acc += F->reduce(h[static_cast<std::size_t>(j)] * power);
        power = F->reduce(power * lin);
      }
      xs.push_back(u);
      ys.push_back(resultant(F->minpoly(), acc));
    }
    const UPoly N = interpolate(xs, ys);
    if (N.degree() != D || !is_squarefree(N)) continue;

    for (const auto& phi : factor_squarefree(N)) {
      if (phi.degree() == dF) {
        // Linear factor of h over F: gcd(h(s), phi(s + k·alpha)).
        FPoly phis = fpoly::from_rational(phi);
        phis = fpoly::shift(*F, phis, F->mul(UPoly(Rational(k)), gen));
        const FPoly g = fpoly::gcd(*F, h, phis);
        if (fpoly::degree(g) != 1) throw std::logic_error("adjoin_roots: expected a linear factor");
        out.push_back(AdjoinedRoot{F, -g[0], gen});
        continue;
      }
      const FieldPtr B = NumberField::make(phi);
      const FElem u = B->generator();
      std::vector<FElem> upow{UPoly(Rational(1))};
      for (int j = 1; j <= dh; ++j) upow.push_back(B->mul(upow.back(), u));
      // H(t) = h(u − k·t) with F's generator written as t.
      FPoly H;
      for (int j = 0; j <= dh; ++j) {
        const UPoly& hj = h[static_cast<std::size_t>(j)];
        for (int i = 0; i <= j; ++i) {
          Rational coef(binomial(static_cast<unsigned>(j), static_cast<unsigned>(i)));
          for (int r = 0; r < i; ++r) coef *= -k;
          if (coef == 0) continue;
          const FElem ub = upow[static_cast<std::size_t>(j - i)] * coef;
          for (std::size_t c = 0; c < hj.coeffs().size(); ++c) {
            const std::size_t l = c + static_cast<std::size_t>(i);
            if (H.size() <= l) H.resize(l + 1);
            H[l] += ub * hj.coeffs()[c];
          }
        }
      }
      for (auto& c : H) c = B->reduce(c);
      fpoly::trim(H);
      const FPoly g = fpoly::gcd(*B, fpoly::from_rational(F->minpoly()), H);
      if (fpoly::degree(g) != 1) throw std::logic_error("adjoin_roots: primitive element recovery failed");
      const FElem alpha = -g[0];
      const FElem root = u - B->mul(UPoly(Rational(k)), alpha);
      out.push_back(AdjoinedRoot{B, B->reduce(root), alpha});
    }
    return out;
  }
}

}  // namespace darboux::algebra
