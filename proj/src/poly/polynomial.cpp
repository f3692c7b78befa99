#include "darboux/poly/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace darboux {

namespace {

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_context(a.context(), b.context())) throw ContextMismatch();
}

bool term_greater(const Term& a, const Term& b) { return a.monomial > b.monomial; }

// Sorts descending and merges equal monomials in place, dropping zeros.
void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = terms[i].coeff;
    while (j < terms.size() && terms[j].monomial == terms[i].monomial) {
      c += terms[j].coeff;
      ++j;
    }
    if (c != 0) {
      terms[out].monomial = terms[i].monomial;
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// Merge of two canonical term lists with b scaled by `sign`.
std::vector<Term> merge(std::span<const Term> a, std::span<const Term> b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].monomial > b[j].monomial)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].monomial > a[i].monomial) {
      out.push_back(Term{b[j].monomial, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back(Term{a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial() : ctx_(standard_context()) {}

Polynomial::Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw Error("null variable context");
}

Polynomial::Polynomial(ContextPtr ctx, const Rational& constant) : Polynomial(std::move(ctx)) {
  if (constant != 0) terms_.push_back(Term{Monomial{}, constant});
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->arity()) throw ArityMismatch(ctx->arity(), index + 1);
  Monomial m;
  m.set(index, 1);
  return monomial(std::move(ctx), m, 1);
}

Polynomial Polynomial::variable(ContextPtr ctx, std::string_view name) {
  const auto index = ctx->require(name);
  return variable(std::move(ctx), index);
}

Polynomial Polynomial::monomial(ContextPtr ctx, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ctx));
  if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  Polynomial p(std::move(ctx));
  canonicalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.degree() == 0);
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.front().monomial.degree());
}

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial[var]));
  return d;
}

int Polynomial::degree_in(std::span<const std::size_t> vars) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial.degree_in(vars)));
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial > key; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.front();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(*this, other);
  terms_ = merge(terms_, other.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same(*this, other);
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prod.push_back(Term{s.monomial * t.monomial, s.coeff * t.coeff});
  }
  return Polynomial::from_terms(a.ctx_, std::move(prod));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return same_context(ctx_, other.ctx_) && terms_ == other.terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ctx_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  const int d = degree_in(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(d, 0)) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.monomial;
    const unsigned e = m[var];
    m.set(var, 0);
    buckets[e].push_back(Term{m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(ctx_, std::move(b)));
  return out;
}

void PolynomialBuilder::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolynomialBuilder::add(const Polynomial& p, const Rational& scale) {
  if (!same_context(ctx_, p.context())) throw ContextMismatch();
  for (const auto& t : p.terms()) add(t.monomial, t.coeff * scale);
}

Polynomial PolynomialBuilder::build() {
  Polynomial p(ctx_);
  for (auto& [m, c] : acc_) {
    if (c != 0) p.terms_.push_back(Term{m, std::move(c)});
  }
  acc_.clear();
  return p;
}

Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }

Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  if (var >= f.context()->arity()) throw ArityMismatch(f.context()->arity(), var + 1);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const unsigned e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back(Term{m, t.coeff * e});
  }
  return Polynomial::from_terms(f.context(), std::move(out));
}

Polynomial partial_derivative(const Polynomial& f, std::string_view var) {
  return partial_derivative(f, f.context()->require(var));
}

Outcome<Polynomial, NotDivisible> exact_divide(const Polynomial& f, const Polynomial& d) {
  require_same(f, d);
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  const Term& lead = d.leading_term();
  Polynomial remainder = f;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    const Term& top = remainder.leading_term();
    if (!lead.monomial.divides(top.monomial)) return NotDivisible{top};
    Term q{top.monomial.quotient(lead.monomial), top.coeff / lead.coeff};
    remainder -= Polynomial::monomial(f.context(), q.monomial, q.coeff) * d;
    quotient.push_back(std::move(q));
  }
  return Polynomial::from_terms(f.context(), std::move(quotient));
}

Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& bindings) {
  const auto& ctx = f.context();
  for (const auto& [v, p] : bindings) {
    if (v >= ctx->arity()) throw ArityMismatch(ctx->arity(), v + 1);
    if (!same_context(ctx, p.context())) throw ContextMismatch();
  }
  // powers[v][e] caches the e-th power of the bound polynomial.
  std::map<std::size_t, std::vector<Polynomial>> powers;
  for (const auto& [v, p] : bindings) powers[v].push_back(Polynomial(ctx, 1));
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto& cache = powers[v];
    while (cache.size() <= e) cache.push_back(cache.back() * bindings.at(v));
    return cache[e];
  };
  PolynomialBuilder out(ctx);
  for (const auto& t : f.terms()) {
    Monomial rest = t.monomial;
    Polynomial factor(ctx, t.coeff);
    for (const auto& [v, p] : bindings) {
      const unsigned e = rest[v];
      if (e == 0) continue;
      rest.set(v, 0);
      factor *= power(v, e);
    }
    for (const auto& s : factor.terms()) out.add(s.monomial * rest, s.coeff);
  }
  return out.build();
}

Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Rational>& bindings) {
  std::map<std::size_t, Polynomial> polys;
  for (const auto& [v, r] : bindings) polys.emplace(v, Polynomial(f.context(), r));
  return substitute(f, polys);
}

Rational evaluate(const Polynomial& f, std::span<const Rational> point) {
  const std::size_t n = f.context()->arity();
  if (point.size() != n) throw ArityMismatch(n, point.size());
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = t.monomial[i];
      if (e == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e);
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

long monomial_weight(const Monomial& m, std::span<const long> weights) {
  long w = 0;
  for (std::size_t i = 0; i < weights.size() && i < kMaxVariables; ++i) {
    w += weights[i] * static_cast<long>(m[i]);
  }
  return w;
}

Outcome<long, NotHomogeneous> quasi_weight(const Polynomial& f, std::span<const long> weights) {
  if (f.is_zero()) throw std::domain_error("quasi-weight of the zero polynomial");
  if (weights.size() != f.context()->arity()) throw ArityMismatch(f.context()->arity(), weights.size());
  const long first = monomial_weight(f.terms()[0].monomial, weights);
  for (const auto& t : f.terms()) {
    const long w = monomial_weight(t.monomial, weights);
    if (w != first) return NotHomogeneous{first, w};
  }
  return first;
}

}  // namespace darboux
