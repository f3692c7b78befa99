#include "darboux/algebra/bivariate.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace darboux::algebra {

BPoly::BPoly(std::vector<UPoly> by_y) : c_(std::move(by_y)) { trim(); }

void BPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BPoly BPoly::from_polynomial(const Polynomial& f, std::size_t var_x, std::size_t var_y) {
  std::vector<std::vector<Rational>> grid;
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < f.context()->arity(); ++v) {
      if (v != var_x && v != var_y && t.monomial[v] != 0) {
        throw Error("bivariate view: polynomial involves '" + f.context()->name(v) + "'");
      }
    }
    const std::size_t i = t.monomial[var_x];
    const std::size_t j = t.monomial[var_y];
    if (grid.size() <= j) grid.resize(j + 1);
    if (grid[j].size() <= i) grid[j].resize(i + 1, Rational(0));
    grid[j][i] = t.coeff;
  }
  std::vector<UPoly> c;
  for (auto& row : grid) c.emplace_back(std::move(row));
  return BPoly(std::move(c));
}

Polynomial BPoly::to_polynomial(const ContextPtr& ctx, std::size_t var_x, std::size_t var_y) const {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    for (std::size_t i = 0; i < c_[j].coeffs().size(); ++i) {
      if (c_[j].coeffs()[i] == 0) continue;
      Monomial m;
      m.set(var_x, static_cast<unsigned>(i));
      m.set(var_y, static_cast<unsigned>(j));
      terms.push_back(Term{m, c_[j].coeffs()[i]});
    }
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

int BPoly::degree_x() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

int BPoly::total_degree() const {
  int d = -1;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (!c_[j].is_zero()) d = std::max(d, c_[j].degree() + static_cast<int>(j));
  }
  return d;
}

UPoly BPoly::eval_x(const Rational& x0) const {
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c(x0));
  return UPoly(std::move(v));
}

UPoly BPoly::eval_y(const Rational& y0) const {
  UPoly r;
  for (std::size_t j = c_.size(); j-- > 0;) r = r * y0 + c_[j];
  return r;
}

Rational BPoly::operator()(const Rational& x0, const Rational& y0) const { return eval_x(x0)(y0); }

BPoly BPoly::derivative_x() const {
  std::vector<UPoly> c;
  for (const auto& u : c_) c.push_back(u.derivative());
  return BPoly(std::move(c));
}

BPoly BPoly::derivative_y() const {
  std::vector<UPoly> c;
  for (std::size_t j = 1; j < c_.size(); ++j) c.push_back(c_[j] * Rational(static_cast<unsigned long>(j)));
  return BPoly(std::move(c));
}

BPoly BPoly::swapped() const {
  const int dx = degree_x();
  std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(std::max(dx, -1) + 1));
  for (std::size_t j = 0; j < c_.size(); ++j) {
    for (std::size_t i = 0; i < c_[j].coeffs().size(); ++i) {
      auto& row = grid[i];
      if (row.size() <= j) row.resize(j + 1, Rational(0));
      row[j] = c_[j].coeffs()[i];
    }
  }
  std::vector<UPoly> c;
  for (auto& row : grid) c.emplace_back(std::move(row));
  return BPoly(std::move(c));
}

BPoly BPoly::operator-() const {
  std::vector<UPoly> c;
  for (const auto& u : c_) c.push_back(-u);
  return BPoly(std::move(c));
}

BPoly operator+(const BPoly& a, const BPoly& b) {
  std::vector<UPoly> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff_y(j) + b.coeff_y(j);
  return BPoly(std::move(c));
}

BPoly operator-(const BPoly& a, const BPoly& b) {
  std::vector<UPoly> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff_y(j) - b.coeff_y(j);
  return BPoly(std::move(c));
}

BPoly operator*(const BPoly& a, const BPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<UPoly> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return BPoly(std::move(c));
}

BPoly operator*(const BPoly& a, const Rational& s) {
  std::vector<UPoly> c;
  for (const auto& u : a.c_) c.push_back(u * s);
  return BPoly(std::move(c));
}

UPoly BPoly::content_y() const {
  UPoly g;
  for (const auto& c : c_) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

BPoly BPoly::normalized() const {
  if (is_zero()) return {};
  return *this * Rational(1 / c_.back().lc());
}

BPoly divide_by_x_poly(const BPoly& a, const UPoly& d) {
  std::vector<UPoly> c;
  for (const auto& u : a.by_y()) {
    UPoly q;
    if (!divides_exactly(u, d, &q)) throw std::logic_error("divide_by_x_poly: not exact");
    c.push_back(std::move(q));
  }
  return BPoly(std::move(c));
}

std::optional<BPoly> exact_quotient(const BPoly& a, const BPoly& b) {
  if (b.is_zero()) throw std::domain_error("bivariate division by zero");
  if (a.is_zero()) return BPoly();
  const int db = b.degree_y();
  if (a.degree_y() < db) return std::nullopt;
  std::vector<UPoly> r = a.by_y();
  std::vector<UPoly> q(static_cast<std::size_t>(a.degree_y() - db + 1));
  const UPoly& lb = b.by_y().back();
  for (int k = a.degree_y(); k >= db; --k) {
    UPoly c;
    if (!divides_exactly(r[static_cast<std::size_t>(k)], lb, &c)) return std::nullopt;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b.by_y()[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(k - db)] = std::move(c);
  }
  for (const auto& u : r) {
    if (!u.is_zero()) return std::nullopt;
  }
  return BPoly(std::move(q));
}

namespace {

// 0, 1, -1, 2, -2, ...
Rational sample(std::size_t i) {
  const long k = static_cast<long>((i + 1) / 2);
  return Rational(i % 2 == 1 ? k : -k);
}

}  // namespace

UPoly resultant_y(const BPoly& f, const BPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  if (f.degree_y() == 0 && g.degree_y() == 0) return UPoly(Rational(1));
  const int bound = f.total_degree() * g.total_degree();
  const UPoly& lf = f.by_y().back();
  const UPoly& lg = g.by_y().back();
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; static_cast<int>(xs.size()) <= bound; ++i) {
    const Rational x0 = sample(i);
    if (lf(x0) == 0 || lg(x0) == 0) continue;
    xs.push_back(x0);
    ys.push_back(resultant(f.eval_x(x0), g.eval_x(x0)));
  }
  return interpolate(xs, ys);
}

BPoly gcd(const BPoly& f, const BPoly& g) {
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  const UPoly cf = f.content_y();
  const UPoly cg = g.content_y();
  const UPoly cont = gcd(cf, cg);
  const BPoly pf = divide_by_x_poly(f, cf);
  const BPoly pg = divide_by_x_poly(g, cg);
  const BPoly cont_b(std::vector<UPoly>{cont});
  if (pf.degree_y() == 0 || pg.degree_y() == 0) return cont_b.normalized();
  const UPoly gamma = gcd(pf.by_y().back(), pg.by_y().back());
  const int need = gamma.degree() + std::min(pf.degree_x(), pg.degree_x()) + 1;
  int best = INT_MAX;
  std::vector<Rational> xs;
  std::vector<UPoly> images;
  for (std::size_t i = 0;; ++i) {
    const Rational x0 = sample(i);
    if (pf.by_y().back()(x0) == 0 || pg.by_y().back()(x0) == 0) continue;
    UPoly h = gcd(pf.eval_x(x0), pg.eval_x(x0));
    if (h.degree() == 0) return cont_b.normalized();
    if (h.degree() > best) continue;
    if (h.degree() < best) {
      best = h.degree();
      xs.clear();
      images.clear();
    }
    xs.push_back(x0);
    images.push_back(h * gamma(x0));
    if (static_cast<int>(xs.size()) < need) continue;
    std::vector<UPoly> coeffs;
    for (int j = 0; j <= best; ++j) {
      std::vector<Rational> ys;
      for (const auto& im : images) ys.push_back(im.coeff(static_cast<std::size_t>(j)));
      coeffs.push_back(interpolate(xs, ys));
    }
    BPoly cand(std::move(coeffs));
    cand = divide_by_x_poly(cand, cand.content_y());
    if (exact_quotient(pf, cand) && exact_quotient(pg, cand)) return (cand * cont_b).normalized();
  }
}

}  // namespace darboux::algebra
