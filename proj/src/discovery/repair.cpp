#include "darboux/discovery/repair.hpp"

#include <map>
#include <set>

#include "darboux/io/expr.hpp"

namespace darboux::discovery {

field::PolyVectorField system_of(const io::CatalogEntry& entry) {
  const auto& ctx = standard_context();
  if (entry.state.size() != 2) throw Error("entry '" + entry.id + "' must name two state variables");
  auto P = io::parse_polynomial(entry.system_p, ctx);
  if (!P) throw Error("entry '" + entry.id + "': P does not parse: " + P.error().describe());
  auto Q = io::parse_polynomial(entry.system_q, ctx);
  if (!Q) throw Error("entry '" + entry.id + "': Q does not parse: " + Q.error().describe());
  return field::PolyVectorField(std::move(P).value(), std::move(Q).value(), ctx->require(entry.state[0]),
                                ctx->require(entry.state[1]));
}

Polynomial cofactor_estimate(const field::PolyVectorField& X, const Polynomial& g) {
  const auto& ctx = X.context();
  if (g.is_zero()) return Polynomial(ctx);
  Polynomial f = field::lie_derivative(X, g);
  const Term lead = g.leading_term();
  PolynomialBuilder q(ctx);
  while (!f.is_zero()) {
    const Term t = f.leading_term();
    if (lead.monomial.divides(t.monomial)) {
      const Polynomial step = Polynomial::monomial(ctx, t.monomial.quotient(lead.monomial), t.coeff / lead.coeff);
      q.add(step);
      f -= step * g;
    } else {
      f -= Polynomial::monomial(ctx, t.monomial, t.coeff);
    }
  }
  const std::array<std::size_t, 2> st{X.first(), X.second()};
  PolynomialBuilder k(ctx);
  const Polynomial quotient = q.build();
  for (const auto& t : quotient.terms()) {
    if (t.monomial.degree_in(st) <= 1) k.add(t.monomial, t.coeff);
  }
  return k.build();
}

std::optional<std::size_t> normal_form_parameter(const field::PolyVectorField& X) {
  const auto& ctx = X.context();
  const Polynomial z = Polynomial::variable(ctx, X.first());
  const Polynomial y = Polynomial::variable(ctx, X.second());
  if (X.P() != z * y + Polynomial(ctx, 1)) return std::nullopt;
  const Polynomial rest = X.Q() - y * y * Rational(3);
  std::optional<std::size_t> s;
  for (const auto& t : rest.terms()) {
    const unsigned a = t.monomial[X.first()], b = t.monomial[X.second()];
    if (a == 0 && b == 0) {
      if (t.coeff != 1 || t.monomial.degree() != 1) return std::nullopt;
      for (std::size_t v = 0; v < ctx->arity(); ++v) {
        if (t.monomial[v] == 1) s = v;
      }
    } else if (!((a == 1 && b == 1) || (a == 2 && b == 0))) {
      return std::nullopt;
    }
  }
  return s;
}

bool RepairReport::clean() const {
  if (!verbatim_verified) return false;
  for (const auto& c : comparisons) {
    if (!c.in_span) return false;
  }
  return true;
}

std::optional<Polynomial> RepairReport::corrected_curve() const {
  if (comparisons.empty() || !system) return std::nullopt;
  Polynomial g(system->context());
  for (const auto& c : comparisons) {
    if (!c.replacement || !c.replacement_verified) return std::nullopt;
    g += Polynomial::monomial(system->context(), c.key) * *c.replacement;
  }
  return g;
}

namespace {

std::vector<CoefficientDiff> term_diff(const Polynomial& verbatim, const Polynomial& certified, std::size_t* compared) {
  std::set<Monomial, std::greater<>> support;
  for (const auto& t : verbatim.terms()) support.insert(t.monomial);
  for (const auto& t : certified.terms()) support.insert(t.monomial);
  std::vector<CoefficientDiff> out;
  for (const auto& m : support) {
    const Rational a = verbatim.coefficient(m), b = certified.coefficient(m);
    if (a != b) out.push_back(CoefficientDiff{m, a, b});
  }
  *compared = support.size();
  return out;
}

// λ with Σ λ_i basis_i = target, when it exists.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<Polynomial>& basis, const Polynomial& target) {
  std::set<Monomial, std::greater<>> support;
  for (const auto& b : basis) {
    for (const auto& t : b.terms()) support.insert(t.monomial);
  }
  for (const auto& t : target.terms()) support.insert(t.monomial);
  std::vector<Monomial> rows(support.begin(), support.end());
  ExactMatrix M(rows, std::vector<Monomial>(basis.size() + 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < basis.size(); ++j) M.set(r, j, basis[j].coefficient(rows[r]));
    M.set(r, basis.size(), target.coefficient(rows[r]));
  }
  for (const auto& v : kernel_basis(M)) {
    const Rational last = v.back();
    if (last == 0) continue;
    std::vector<Rational> lambda;
    for (std::size_t j = 0; j < basis.size(); ++j) lambda.push_back(-v[j] / last);
    return lambda;
  }
  return std::nullopt;
}

// Scalar multiple of g agreeing with the most coefficients of target; ties
// go to the larger monomial.
Polynomial best_scaling(const Polynomial& g, const Polynomial& target) {
  std::map<Rational, std::size_t> votes;
  for (const auto& t : target.terms()) {
    const Rational c = g.coefficient(t.monomial);
    if (c != 0) ++votes[t.coeff / c];
  }
  if (votes.empty()) return g;
  Rational best;
  std::size_t count = 0;
  for (const auto& t : target.terms()) {
    const Rational c = g.coefficient(t.monomial);
    if (c == 0) continue;
    const Rational r = t.coeff / c;
    if (votes[r] > count) {
      count = votes[r];
      best = r;
    }
  }
  return g * best;
}

struct Slice {
  std::string label;
  Monomial key;
  Polynomial verbatim;  // extra variables removed
};

// Splits g by the monomials in the variables it uses beyond the system and
// cofactor: a printed pencil g0 + p*g1 becomes the slices g0 and g1.
std::vector<Slice> pencil_slices(const field::PolyVectorField& X, const Polynomial& K, const Polynomial& g) {
  const auto& ctx = X.context();
  std::vector<std::size_t> extra;
  for (std::size_t v = 0; v < ctx->arity(); ++v) {
    if (X.is_state(v) || X.P().involves(v) || X.Q().involves(v) || K.involves(v)) continue;
    if (g.involves(v)) extra.push_back(v);
  }
  if (extra.empty()) return {Slice{"", Monomial(), g}};
  std::map<Monomial, PolynomialBuilder> parts;
  for (const auto& t : g.terms()) {
    Monomial key, rest = t.monomial;
    for (std::size_t v : extra) {
      key.set(v, t.monomial[v]);
      rest.set(v, 0);
    }
    parts.try_emplace(key, ctx).first->second.add(rest, t.coeff);
  }
  std::vector<Slice> out;
  for (auto& [key, b] : parts) {
    std::string label;
    for (std::size_t v : extra) {
      if (!label.empty()) label += "*";
      label += ctx->name(v) + "^" + std::to_string(key[v]);
    }
    out.push_back(Slice{label, key, b.build()});
  }
  return out;
}

class KernelCache {
 public:
  KernelCache(const field::PolyVectorField& X, int n, const Polynomial& K, const DiscoveryOptions& base)
      : X_(X), n_(n), K_(K), base_(base), weights_(detect_weights(X)) {}

  // Kernel for the weight block (or whole box) containing `target`.
  const DiscoveryResult& for_target(const Polynomial& target) {
    DiscoveryOptions o = base_;
    o.cofactor = K_;
    o.affine_cofactor_search = false;
    for (std::size_t v = 0; v < X_.context()->arity(); ++v) {
      if (X_.is_state(v) || !target.involves(v)) continue;
      const std::string& name = X_.context()->name(v);
      const int d = target.degree_in(v);
      auto it = o.parameter_caps.find(name);
      const int have = it != o.parameter_caps.end() ? it->second : -1;
      if (have < d) {
        const int dflt = (name == "q" || name == "p") ? (2 * n_ + 2) / 3 : n_;
        o.parameter_caps[name] = std::max(d, std::max(have, dflt));
      }
    }
    std::string key = "box";
    if (o.quasi_homogeneous && weights_ && !o.target_weight && !target.is_zero()) {
      auto w = quasi_weight(target, *weights_);
      if (w) {
        o.target_weight = w.value();
        key = "w" + std::to_string(w.value());
      } else {
        o.all_weights = true;
        key = "all";
      }
    }
    for (const auto& [name, cap] : o.parameter_caps) key += ";" + name + "=" + std::to_string(cap);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, find_invariant_curves(X_, n_, o)).first;
    return it->second;
  }

 private:
  field::PolyVectorField X_;
  int n_;
  Polynomial K_;
  DiscoveryOptions base_;
  std::optional<std::vector<long>> weights_;
  std::map<std::string, DiscoveryResult> cache_;
};

GeneratorComparison compare_slice(const field::PolyVectorField& X, const Polynomial& K, const Slice& s,
                                  const DiscoveryResult& res) {
  GeneratorComparison c;
  c.label = s.label;
  c.key = s.key;
  c.verbatim = s.verbatim;
  c.kernel_dimension = res.kernel.size();
  if (res.kernel.empty() || s.verbatim.is_zero()) return c;
  const auto& ctx = s.verbatim.context();
  std::vector<Polynomial> basis;
  for (const auto& v : res.kernel) basis.push_back(combine(ctx, res.support, v));
  if (auto lambda = solve_in_span(basis, s.verbatim)) {
    c.in_span = true;
    c.replacement = s.verbatim;
    c.replacement_verified = field::verify_certificate(field::make_certificate(X, s.verbatim, K)).pass;
    c.compared = s.verbatim.size();
    return c;
  }
  Polynomial r(ctx);
  if (basis.size() == 1) {
    r = best_scaling(basis[0], s.verbatim);
  } else {
    // A raw kernel vector's last nonzero entry sits on its free column,
    // where every other vector vanishes.
    for (std::size_t i = 0; i < res.kernel.size(); ++i) {
      std::size_t f = res.support.size();
      while (res.kernel[i][f - 1] == 0) --f;
      --f;
      r += basis[i] * (s.verbatim.coefficient(res.support[f]) / res.kernel[i][f]);
    }
    if (r.is_zero()) r = best_scaling(basis[0], s.verbatim);
  }
  c.replacement = r;
  c.diffs = term_diff(s.verbatim, r, &c.compared);
  c.replacement_verified = !r.is_zero() && field::verify_certificate(field::make_certificate(X, r, K)).pass;
  return c;
}

void collect(RepairReport& rep, KernelCache& cache, const std::vector<Slice>& slices) {
  rep.comparisons.clear();
  rep.certificates.clear();
  rep.squarefree_warnings.clear();
  std::set<std::string> seen;
  for (const auto& s : slices) {
    const DiscoveryResult& res = cache.for_target(s.verbatim);
    rep.comparisons.push_back(compare_slice(*rep.system, rep.cofactor, s, res));
    for (std::size_t i = 0; i < res.certificates.size(); ++i) {
      const std::string key = io::print_polynomial(res.certificates[i].g);
      if (!seen.insert(key).second) continue;
      rep.certificates.push_back(res.certificates[i]);
      rep.squarefree_warnings.push_back(res.squarefree_warnings[i]);
    }
  }
}

// (b, c) with the printed curve invariant for beta = b*s, gamma = c*s^2.
std::optional<std::pair<Rational, Rational>> recover_bc(const field::PolyVectorField& X, std::size_t s,
                                                        const Polynomial& K, const Polynomial& g) {
  const auto& ctx = X.context();
  const Polynomial z = Polynomial::variable(ctx, X.first());
  const Polynomial y = Polynomial::variable(ctx, X.second());
  const Polynomial sp = Polynomial::variable(ctx, s);
  const Polynomial gy = partial_derivative(g, X.second());
  const Polynomial A0 = field::lie_derivative(field::PolyVectorField(z * y + Polynomial(ctx, 1), y * y * Rational(3) + sp,
                                                                     X.first(), X.second()),
                                              g) -
                        K * g;
  const Polynomial A1 = sp * z * y * gy;
  const Polynomial A2 = sp * sp * z * z * gy;
  auto lambda = solve_in_span({A1, A2}, -A0);
  if (!lambda) return std::nullopt;
  return std::make_pair((*lambda)[0], (*lambda)[1]);
}

}  // namespace

Outcome<RepairReport, NoCurveFound> repair(const io::CatalogEntry& entry, const DiscoveryOptions& base) {
  const auto& ctx = standard_context();
  RepairReport rep;
  rep.id = entry.id;
  rep.degree = entry.stated_degree;
  if (rep.degree < 1) return NoCurveFound{entry.id, "entry has no stated degree"};
  field::PolyVectorField X = system_of(entry);
  rep.system = X;

  auto parsed = io::parse_polynomial(entry.curve, ctx);
  rep.verbatim_parsed = parsed.ok();
  Polynomial g(ctx);
  if (parsed) {
    g = std::move(parsed).value();
  } else {
    rep.parse_error = parsed.error().describe();
  }

  if (!entry.stated_cofactor.empty()) {
    rep.cofactor = io::parse_or_throw(entry.stated_cofactor, ctx);
    rep.cofactor_source = "stated";
  } else if (rep.verbatim_parsed && !g.is_zero()) {
    rep.cofactor = cofactor_estimate(X, g);
    rep.cofactor_source = "division";
  } else {
    rep.cofactor = Polynomial::variable(ctx, X.second()) * Rational(rep.degree);
    rep.cofactor_source = "default";
  }

  if (rep.verbatim_parsed && !g.is_zero()) {
    rep.verbatim_verified = field::verify_certificate(field::make_certificate(X, g, rep.cofactor)).pass;
  }

  const std::vector<Slice> slices =
      rep.verbatim_parsed && !g.is_zero() ? pencil_slices(X, rep.cofactor, g) : std::vector<Slice>{Slice{"", Monomial(), g}};
  KernelCache cache(X, rep.degree, rep.cofactor, base);
  collect(rep, cache, slices);
  if (!rep.certificates.empty()) return rep;

  const auto s = normal_form_parameter(X);
  if (s && rep.verbatim_parsed && !g.is_zero()) {
    if (auto bc = recover_bc(X, *s, rep.cofactor, g)) {
      const field::QuadraticNormalForm nf{Polynomial::variable(ctx, *s) * bc->first,
                                          Polynomial::variable(ctx, *s).pow(2) * bc->second,
                                          Polynomial::variable(ctx, *s)};
      X = nf.expand();
      rep.system = X;
      rep.recovered_bc = bc;
      rep.notes.push_back("printed system admits no curve of this degree; (b, c) solved from the printed curve");
      KernelCache cache2(X, rep.degree, rep.cofactor, base);
      collect(rep, cache2, slices);
      if (!rep.certificates.empty()) return rep;
    }
  }
  return NoCurveFound{entry.id, "kernel is empty for the printed system at degree " + std::to_string(rep.degree) +
                                    " with cofactor " + io::print_polynomial(rep.cofactor)};
}

}  // namespace darboux::discovery
