#include "darboux/discovery/discover.hpp"

#include <stdexcept>

#include "darboux/algebra/factor.hpp"

namespace darboux::discovery {

namespace {

// Reduced row echelon form of an augmented rational system; returns the
// solution with free unknowns set to 0, or nothing when inconsistent.
std::optional<std::vector<Rational>> solve_affine(std::vector<std::vector<Rational>> A, std::size_t unknowns) {
  std::size_t row = 0;
  std::vector<long> pivot_of(unknowns, -1);
  for (std::size_t c = 0; c < unknowns && row < A.size(); ++c) {
    std::size_t r = row;
    while (r < A.size() && A[r][c] == 0) ++r;
    if (r == A.size()) continue;
    std::swap(A[r], A[row]);
    const Rational inv = 1 / A[row][c];
    for (auto& x : A[row]) x *= inv;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == row || A[i][c] == 0) continue;
      const Rational f = A[i][c];
      for (std::size_t k = 0; k <= unknowns; ++k) A[i][k] -= f * A[row][k];
    }
    pivot_of[c] = static_cast<long>(row);
    ++row;
  }
  for (std::size_t r = row; r < A.size(); ++r) {
    if (A[r][unknowns] != 0) return std::nullopt;
  }
  std::vector<Rational> x(unknowns, Rational(0));
  for (std::size_t c = 0; c < unknowns; ++c) {
    if (pivot_of[c] >= 0) x[c] = A[static_cast<std::size_t>(pivot_of[c])][unknowns];
  }
  return x;
}

int default_cap(const std::string& name, int n) {
  if (name == "q" || name == "p") return (2 * n + 2) / 3;
  return n;
}

}  // namespace

std::optional<std::vector<long>> detect_weights(const field::PolyVectorField& X) {
  const auto& ctx = X.context();
  const std::vector<std::size_t> params = X.parameters();
  std::vector<std::vector<Rational>> eqs;
  const auto add = [&](const Polynomial& f, long target) {
    for (const auto& t : f.terms()) {
      std::vector<Rational> row(params.size() + 1, Rational(0));
      for (std::size_t k = 0; k < params.size(); ++k) row[k] = t.monomial[params[k]];
      const long state = -static_cast<long>(t.monomial[X.first()]) + static_cast<long>(t.monomial[X.second()]);
      row.back() = target - state;
      eqs.push_back(std::move(row));
    }
  };
  add(X.P(), 0);
  add(X.Q(), 2);
  auto sol = solve_affine(std::move(eqs), params.size());
  if (!sol) return std::nullopt;
  std::vector<long> w(ctx->arity(), 0);
  w[X.first()] = -1;
  w[X.second()] = 1;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if ((*sol)[k].get_den() != 1) return std::nullopt;
    w[params[k]] = (*sol)[k].get_num().get_si();
  }
  return w;
}

Polynomial normalize_curve(const Polynomial& g, std::size_t second) {
  if (g.is_zero()) return g;
  const Term* best = nullptr;
  for (const auto& t : g.terms()) {
    if (t.monomial[second] == 0 || t.monomial.degree() != t.monomial[second]) continue;
    if (!best || t.monomial[second] > best->monomial[second]) best = &t;
  }
  const Rational s = 1 / (best ? best->coeff : g.leading_term().coeff);
  return g * s;
}

AnsatzSpec default_ansatz(const field::PolyVectorField& X, int n, const Polynomial& K, const DiscoveryOptions& opt) {
  if (n < 1) throw std::invalid_argument("curve degree must be positive");
  const auto& ctx = X.context();
  AnsatzSpec spec;
  spec.max_state_degree = n;
  spec.first = X.first();
  spec.second = X.second();
  for (std::size_t v = 0; v < ctx->arity(); ++v) {
    if (X.is_state(v)) continue;
    const bool used = X.P().involves(v) || X.Q().involves(v) || K.involves(v);
    auto it = opt.parameter_caps.find(ctx->name(v));
    if (it != opt.parameter_caps.end()) {
      spec.parameter_caps[v] = it->second;
    } else if (used) {
      spec.parameter_caps[v] = default_cap(ctx->name(v), n);
    }
  }
  for (const auto& [name, cap] : opt.parameter_caps) {
    const std::size_t v = ctx->require(name);
    if (X.is_state(v)) throw Error("cannot cap the state variable '" + name + "'");
    (void)cap;
  }
  if (!opt.quasi_homogeneous) return spec;
  auto w = detect_weights(X);
  if (!w) return spec;
  if (!K.is_zero()) {
    auto kw = quasi_weight(K, *w);
    if (!kw || kw.value() != 1) return spec;
  }
  QhFilter f;
  f.weights = std::move(*w);
  if (opt.target_weight) {
    f.target = opt.target_weight;
  } else if (!opt.all_weights && n % 3 == 0) {
    f.target = n / 3;
  }
  spec.qh = std::move(f);
  return spec;
}

namespace {

// Homogeneous linear forms L with X_top(L) = L * k_L for a parameter-free
// field, as (L, k_L) pairs.
std::vector<std::pair<Polynomial, Polynomial>> top_invariant_lines(const field::PolyVectorField& X) {
  std::vector<std::pair<Polynomial, Polynomial>> out;
  if (!X.parameters().empty()) return out;
  const auto& ctx = X.context();
  const std::array<std::size_t, 2> st{X.first(), X.second()};
  PolynomialBuilder p2(ctx), q2(ctx);
  for (const auto& t : X.P().terms()) {
    if (t.monomial.degree_in(st) == 2) p2.add(t.monomial, t.coeff);
  }
  for (const auto& t : X.Q().terms()) {
    if (t.monomial.degree_in(st) == 2) q2.add(t.monomial, t.coeff);
  }
  const Polynomial P2 = p2.build(), Q2 = q2.build();
  const Polynomial s1 = Polynomial::variable(ctx, X.first());
  const Polynomial s2 = Polynomial::variable(ctx, X.second());
  const field::PolyVectorField top(P2, Q2, X.first(), X.second());
  std::vector<Polynomial> lines;
  // Candidates: s1, and s2 − t*s1 for rational roots t of C(1, t).
  const Polynomial C = s1 * Q2 - s2 * P2;
  if (C.is_zero()) return out;
  lines.push_back(s1);
  std::vector<Rational> ct(4, Rational(0));
  for (const auto& t : C.terms()) ct[t.monomial[X.second()]] += t.coeff;
  for (const auto& r : algebra::rational_roots(algebra::UPoly(ct))) lines.push_back(s2 - s1 * r);
  for (const auto& L : lines) {
    auto k = exact_divide(field::lie_derivative(top, L), L);
    if (k) out.emplace_back(L, std::move(k).value());
  }
  return out;
}

void certify(DiscoveryResult& res, const field::PolyVectorField& X) {
  for (const auto& v : res.kernel) {
    const Polynomial g = normalize_curve(combine(X.context(), res.support, v), X.second());
    field::CurveCertificate cert = field::make_certificate(X, g, res.cofactor);
    const field::Verdict verdict = field::verify_certificate(cert);
    if (!verdict.pass) throw std::logic_error("kernel vector failed re-verification");
    res.squarefree_warnings.push_back(verdict.squarefree_warning);
    res.certificates.push_back(std::move(cert));
  }
}

DiscoveryResult run(const field::PolyVectorField& X, int n, const Polynomial& K, const DiscoveryOptions& opt) {
  DiscoveryResult res;
  res.spec = default_ansatz(X, n, K, opt);
  res.cofactor = K;
  const ExactMatrix M = build_linear_system(X, K, res.spec);
  res.rows = M.rows();
  res.cols = M.cols();
  res.support = M.col_labels();
  res.kernel = kernel_basis(M);
  certify(res, X);
  return res;
}

}  // namespace

DiscoveryResult find_invariant_curves(const field::PolyVectorField& X, int n, const DiscoveryOptions& opt) {
  field::require_quadratic(X);
  const auto& ctx = X.context();
  const Polynomial K = opt.cofactor ? *opt.cofactor : Polynomial::variable(ctx, X.second()) * Rational(n);
  DiscoveryResult res = run(X, n, K, opt);
  if (!res.kernel.empty() || !opt.affine_cofactor_search || opt.cofactor) return res;

  const auto lines = top_invariant_lines(X);
  if (lines.empty()) return res;
  std::vector<int> mult(lines.size(), 0);
  // Multiplicity vectors summing to n, in lexicographic order.
  std::function<bool(std::size_t, int)> walk = [&](std::size_t k, int left) -> bool {
    if (k + 1 == lines.size()) {
      mult[k] = left;
      Polynomial k1(ctx);
      for (std::size_t i = 0; i < lines.size(); ++i) k1 += lines[i].second * Rational(mult[i]);
      for (int k0 = -4 * n; k0 <= 4 * n; ++k0) {
        DiscoveryOptions o = opt;
        o.cofactor = k1 + Polynomial(ctx, Rational(k0));
        DiscoveryResult r = run(X, n, *o.cofactor, o);
        if (!r.kernel.empty()) {
          res = std::move(r);
          return true;
        }
      }
      return false;
    }
    for (int m = left; m >= 0; --m) {
      mult[k] = m;
      if (walk(k + 1, left - m)) return true;
    }
    return false;
  };
  walk(0, n);
  return res;
}

}  // namespace darboux::discovery
