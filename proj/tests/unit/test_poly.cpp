#include <map>

#include "darboux/io/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace darboux;

namespace {

const ContextPtr& ctx() { return standard_context(); }
Polynomial P(std::string_view s) { return io::parse_or_throw(s); }

// Independent oracle: plain double loop into an ordered map.
std::map<Monomial, Rational> naive_product(const Polynomial& f, const Polynomial& g) {
  std::map<Monomial, Rational> acc;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) acc[a.monomial * b.monomial] += a.coeff * b.coeff;
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

std::vector<Rational> point(testgen::Gen& gen) {
  std::vector<Rational> x;
  for (std::size_t i = 0; i < ctx()->arity(); ++i) x.push_back(gen.rational(7, 5));
  return x;
}

}  // namespace

TEST_CASE("coefficients are stored in lowest terms") {
  const Polynomial f = P("6/4*y - 0*z - 4/2");
  CHECK(io::print_polynomial(f) == "3/2*y - 2");
  for (const auto& t : f.terms()) CHECK(t.coeff.get_den() > 0);
  CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
  Rational r(-22, 4);
  r.canonicalize();
  CHECK(to_string(r) == "-11/2");
  CHECK(to_string(P("-22/4").leading_term().coeff) == "-11/2");
}

TEST_CASE("add, mul and derivative examples") {
  CHECK(add(P("y^3"), P("-y^3")).is_zero());
  CHECK(add(P("z*y + 1"), P("z*y")) == P("2*z*y + 1"));
  CHECK(mul(P("z - q"), P("z + q")) == P("z^2 - q^2"));
  CHECK(mul(P("9*y"), P("y^3")) == P("9*y^4"));
  CHECK(partial_derivative(P("y^3"), "y") == P("3*y^2"));
  CHECK(partial_derivative(P("q^2*z"), "y").is_zero());
  CHECK_THROWS_AS(partial_derivative(P("y"), "w"), UnknownVariable);
  CHECK(P("x^2*y + a").degree() == 3);
  CHECK(Polynomial(ctx()).degree() == -1);
}

TEST_CASE("context mismatch is an error") {
  const auto other = make_context({"u", "v"});
  CHECK_THROWS_AS(add(P("y"), Polynomial::variable(other, "u")), ContextMismatch);
  CHECK_THROWS_AS(mul(P("y"), Polynomial::variable(other, "u")), ContextMismatch);
}

TEST_CASE("exact division examples") {
  auto q = exact_divide(P("z^2 - q^2"), P("z - q"));
  REQUIRE(q.ok());
  CHECK(q.value() == P("z + q"));
  auto bad = exact_divide(P("z*y + 1"), P("y"));
  REQUIRE(!bad.ok());
  CHECK(bad.error().obstruction.monomial == P("1").leading_term().monomial);
  CHECK_THROWS_AS(exact_divide(P("y"), Polynomial(ctx())), std::domain_error);
}

TEST_CASE("substitution and evaluation examples") {
  const std::size_t z = ctx()->require("z"), y = ctx()->require("y"), q = ctx()->require("q");
  CHECK(substitute(P("q^2*z"), std::map<std::size_t, Rational>{{q, 1}}) == P("z"));
  std::map<std::size_t, Polynomial> id;
  for (std::size_t v = 0; v < ctx()->arity(); ++v) id.emplace(v, Polynomial::variable(ctx(), v));
  const Polynomial g = P("y^3 - 9/26*q^2*z + 3*y^2*q*z - 12/13*q^6*z^9");
  CHECK(substitute(g, id) == g);
  const Polynomial g3 = substitute(g, std::map<std::size_t, Rational>{{q, 3}});
  std::vector<Rational> pt(ctx()->arity(), Rational(0));
  pt[z] = 1;
  pt[y] = 1;
  const Rational via_sub = evaluate(g3, pt);
  pt[q] = 3;
  CHECK(via_sub == evaluate(g, pt));
  std::vector<Rational> x(ctx()->arity(), Rational(0));
  x[z] = 2;
  x[y] = 3;
  CHECK(evaluate(P("z*y + 1"), x) == 7);
  CHECK(evaluate(Polynomial(ctx()), x) == 0);
  CHECK_THROWS_AS(evaluate(P("y"), std::vector<Rational>{1, 2}), ArityMismatch);
}

TEST_CASE("quasi-weight examples") {
  const std::vector<long> w{-1, 1, 2, 0, 0, 0};
  auto a = quasi_weight(P("y^3 + q^2*z - 12/13*y^2*q*z"), w);
  REQUIRE(a.ok());
  CHECK(a.value() == 3);
  CHECK(!quasi_weight(P("y + z"), w).ok());
  CHECK(quasi_weight(P("7/3"), w).value() == 0);
  CHECK_THROWS_AS(quasi_weight(Polynomial(ctx()), w), std::domain_error);
}

TEST_CASE("property: product matches the naive expander") {
  testgen::Gen gen(101);
  for (int i = 0; i < 1000; ++i) {
    const Polynomial f = gen.poly(ctx(), 6, 4, 8), g = gen.poly(ctx(), 6, 4, 8);
    const auto oracle = naive_product(f, g);
    const Polynomial fg = f * g;
    REQUIRE(fg.size() == oracle.size());
    for (const auto& [m, c] : oracle) REQUIRE(fg.coefficient(m) == c);
    if (!f.is_zero() && !g.is_zero()) REQUIRE(fg.degree() == f.degree() + g.degree());
  }
}

TEST_CASE("property: ring axioms") {
  testgen::Gen gen(102);
  const Polynomial zero(ctx()), one(ctx(), 1);
  for (int i = 0; i < 1000; ++i) {
    const Polynomial a = gen.poly(ctx(), 4, 3, 5), b = gen.poly(ctx(), 4, 3, 5), c = gen.poly(ctx(), 4, 3, 5);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a + b == b + a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + zero == a);
    REQUIRE(a * one == a);
    REQUIRE((a - a).is_zero());
    for (const auto& t : (a + zero).terms()) REQUIRE(t.coeff != 0);
    REQUIRE(io::print_polynomial(a + b) == io::print_polynomial(b + a));
  }
}

TEST_CASE("property: partial derivatives are derivations") {
  testgen::Gen gen(103);
  for (int i = 0; i < 1000; ++i) {
    const Polynomial f = gen.poly(ctx(), 6, 4, 6), g = gen.poly(ctx(), 6, 4, 6);
    const Rational s = gen.rational();
    const std::size_t v = static_cast<std::size_t>(gen.integer(0, 5));
    REQUIRE(partial_derivative(f + s * g, v) == partial_derivative(f, v) + s * partial_derivative(g, v));
    REQUIRE(partial_derivative(f * g, v) == f * partial_derivative(g, v) + g * partial_derivative(f, v));
  }
}

TEST_CASE("property: exact division undoes multiplication") {
  testgen::Gen gen(104);
  for (int i = 0; i < 1000; ++i) {
    const Polynomial f = gen.nonzero_poly(ctx(), 5, 4, 6), g = gen.nonzero_poly(ctx(), 5, 3, 5);
    auto q = exact_divide(f * g, g);
    REQUIRE(q.ok());
    REQUIRE(q.value() == f);
    // Adding a term of degree below g's leading term spoils divisibility
    // unless it is a multiple of g.
    const Polynomial spoiled = f * g + Polynomial(ctx(), 1);
    if (g.degree() > 0) REQUIRE(!exact_divide(spoiled, g).ok());
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  testgen::Gen gen(105);
  for (int i = 0; i < 1000; ++i) {
    const Polynomial f = gen.poly(ctx(), 6, 4, 6), g = gen.poly(ctx(), 6, 4, 6);
    const auto x = point(gen);
    REQUIRE(evaluate(f + g, x) == evaluate(f, x) + evaluate(g, x));
    REQUIRE(evaluate(f * g, x) == evaluate(f, x) * evaluate(g, x));
  }
}

TEST_CASE("property: substitution commutes with evaluation") {
  testgen::Gen gen(106);
  for (int i = 0; i < 1000; ++i) {
    const Polynomial f = gen.poly(ctx(), 6, 4, 6);
    auto x = point(gen);
    std::map<std::size_t, Rational> b;
    for (std::size_t v = 2; v < 6; ++v) {
      if (gen.integer(0, 1)) b[v] = x[v];
    }
    REQUIRE(evaluate(substitute(f, b), x) == evaluate(f, x));
  }
}

TEST_CASE("property: quasi-weight is additive") {
  testgen::Gen gen(107);
  const std::vector<long> w{-1, 1, 2, 0, 0, 0};
  for (int i = 0; i < 1000; ++i) {
    // Homogeneous pieces: keep only the terms of one random weight.
    auto homogeneous = [&] {
      const Polynomial f = gen.nonzero_poly(ctx(), 3, 6, 10);
      const long target = monomial_weight(f.terms()[0].monomial, w);
      std::vector<Term> keep;
      for (const auto& t : f.terms()) {
        if (monomial_weight(t.monomial, w) == target) keep.push_back(t);
      }
      return Polynomial::from_terms(ctx(), keep);
    };
    const Polynomial f = homogeneous(), g = homogeneous();
    REQUIRE(quasi_weight(f * g, w).value() == quasi_weight(f, w).value() + quasi_weight(g, w).value());
  }
}
