#include "darboux/field/vector_field.hpp"

#include <chrono>
#include <random>

#include "darboux/algebra/bivariate.hpp"

namespace darboux::field {

PolyVectorField::PolyVectorField(Polynomial P, Polynomial Q, std::size_t first, std::size_t second)
    : P_(std::move(P)), Q_(std::move(Q)), first_(first), second_(second) {
  if (!same_context(P_.context(), Q_.context())) throw ContextMismatch();
  const std::size_t n = P_.context()->arity();
  if (first_ >= n || second_ >= n) throw ArityMismatch(n, std::max(first_, second_) + 1);
  if (first_ == second_) throw Error("state variables must be distinct");
}

int PolyVectorField::degree() const {
  const std::array<std::size_t, 2> s{first_, second_};
  return std::max(P_.degree_in(s), Q_.degree_in(s));
}

std::vector<std::size_t> PolyVectorField::parameters() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < context()->arity(); ++v) {
    if (is_state(v)) continue;
    if (P_.involves(v) || Q_.involves(v)) out.push_back(v);
  }
  return out;
}

QuadraticNormalForm QuadraticNormalForm::pure(const Rational& b, const Rational& c, std::string_view param) {
  const auto& ctx = standard_context();
  const Polynomial s = Polynomial::variable(ctx, param);
  return {s * b, s * s * c, s};
}

PolyVectorField QuadraticNormalForm::expand() const {
  const auto& ctx = beta.context();
  const std::size_t zi = ctx->require("z");
  const std::size_t yi = ctx->require("y");
  for (const Polynomial* f : {&beta, &gamma, &delta}) {
    if (f->involves(zi) || f->involves(yi)) throw Error("normal-form coefficients must not involve z or y");
  }
  const Polynomial z = Polynomial::variable(ctx, zi);
  const Polynomial y = Polynomial::variable(ctx, yi);
  Polynomial P = z * y + Polynomial(ctx, 1);
  Polynomial Q = y * y * Rational(3) + beta * z * y + gamma * z * z + delta;
  return PolyVectorField(std::move(P), std::move(Q), zi, yi);
}

void require_quadratic(const PolyVectorField& X) {
  if (X.degree() > 2) throw Error("vector field has degree " + std::to_string(X.degree()) + ", expected at most 2");
}

Polynomial lie_derivative(const PolyVectorField& X, const Polynomial& g) {
  if (!same_context(X.context(), g.context())) throw ContextMismatch();
  return X.P() * partial_derivative(g, X.first()) + X.Q() * partial_derivative(g, X.second());
}

Outcome<Polynomial, CofactorFailure> cofactor_of(const PolyVectorField& X, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("cofactor of the zero polynomial");
  Polynomial lie = lie_derivative(X, g);
  auto q = exact_divide(lie, g);
  if (!q) return CofactorFailure{NotInvariant{std::move(lie), q.error().obstruction}};
  Polynomial K = std::move(q).value();
  const std::array<std::size_t, 2> s{X.first(), X.second()};
  const int dk = K.degree_in(s);
  const int bound = std::max(X.degree() - 1, 0);
  if (dk > bound) return CofactorFailure{CofactorDegreeViolation{std::move(K), dk}};
  return K;
}

CurveCertificate make_certificate(const PolyVectorField& X, const Polynomial& g, const Polynomial& K) {
  const std::array<std::size_t, 2> s{X.first(), X.second()};
  return CurveCertificate{X, g, K, g.degree_in(s)};
}

bool has_repeated_factor(const Polynomial& g, std::size_t first, std::size_t second) {
  if (g.is_zero()) return false;
  const auto& ctx = g.context();
  // Fixed, unremarkable rationals for the parameters.
  static const long kNum[] = {7, 11, 13, 17, 19, 23, 29, 31};
  static const long kDen[] = {3, 5, 7, 11, 13, 17, 19, 23};
  std::map<std::size_t, Rational> bind;
  for (std::size_t v = 0, k = 0; v < ctx->arity(); ++v) {
    if (v == first || v == second) continue;
    if (g.involves(v)) bind.emplace(v, Rational(kNum[k % 8], kDen[k % 8]));
    ++k;
  }
  const Polynomial h = bind.empty() ? g : substitute(g, bind);
  using algebra::BPoly;
  const BPoly f = BPoly::from_polynomial(h, first, second);
  BPoly d = algebra::gcd(f, f.derivative_x());
  d = algebra::gcd(d, f.derivative_y());
  return d.total_degree() > 0;
}

Verdict verify_certificate(const CurveCertificate& c) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  v.residual = lie_derivative(c.system, c.g) - c.K * c.g;
  v.residual_terms = v.residual.size();
  v.pass = v.residual.is_zero() && !c.g.is_zero();
  if (v.pass) v.squarefree_warning = has_repeated_factor(c.g, c.system.first(), c.system.second());
  v.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

ProbeVerdict probe(const PolyVectorField& X, const Polynomial& g, const Polynomial& K, unsigned trials,
                   std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("probe needs at least one trial");
  const auto& ctx = X.context();
  const Polynomial P = X.P(), Q = X.Q();
  const Polynomial gs1 = partial_derivative(g, X.first());
  const Polynomial gs2 = partial_derivative(g, X.second());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  ProbeVerdict out;
  std::vector<Rational> point(ctx->arity());
  for (unsigned t = 0; t < trials; ++t) {
    for (auto& r : point) {
      r = Rational(num(rng), den(rng));
      r.canonicalize();
    }
    ++out.trials_run;
    const Rational value =
        evaluate(P, point) * evaluate(gs1, point) + evaluate(Q, point) * evaluate(gs2, point) -
        evaluate(K, point) * evaluate(g, point);
    if (value != 0) {
      out.all_zero = false;
      out.witness = point;
      out.value = value;
      break;
    }
  }
  return out;
}

}  // namespace darboux::field
