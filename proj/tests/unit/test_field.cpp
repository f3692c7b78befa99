#include "darboux/catalog/catalog.hpp"
#include "darboux/discovery/repair.hpp"
#include "darboux/field/vector_field.hpp"
#include "darboux/io/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace darboux;

namespace {

const ContextPtr& ctx() { return standard_context(); }
Polynomial P(std::string_view s) { return io::parse_or_throw(s); }
const std::size_t kZ = 0, kY = 1;

field::PolyVectorField random_quadratic(testgen::Gen& gen) {
  // State degree at most two, parameter q allowed in the coefficients.
  auto part = [&] {
    Polynomial s(ctx());
    for (int i = 0; i < 6; ++i) {
      const Monomial m = gen.monomial(2, 2);
      s += Polynomial::monomial(ctx(), m, gen.rational()) * Polynomial::variable(ctx(), "q").pow(static_cast<unsigned>(gen.integer(0, 2)));
    }
    return s;
  };
  return field::PolyVectorField(part(), part(), kZ, kY);
}

}  // namespace

TEST_CASE("normal form expansion and Lie derivative examples") {
  const auto X = field::QuadraticNormalForm::pure(Rational(-8, 13), Rational(-24, 169)).expand();
  CHECK(X.P() == P("z*y + 1"));
  CHECK(X.Q() == P("3*y^2 - 8/13*q*z*y - 24/169*q^2*z^2 + q"));
  CHECK(X.degree() == 2);
  CHECK(X.parameters() == std::vector<std::size_t>{ctx()->require("q")});
  CHECK(field::lie_derivative(X, P("y")) == X.Q());
  CHECK(field::lie_derivative(X, P("q")).is_zero());
  const field::PolyVectorField cubic(P("y^3"), P("z"), kZ, kY);
  CHECK_THROWS_AS(field::require_quadratic(cubic), Error);
}

TEST_CASE("cofactor extraction") {
  // The line z = 0 is not invariant for z' = zy + 1.
  const auto X = field::QuadraticNormalForm::pure(0, 0).expand();
  auto none = field::cofactor_of(X, P("z"));
  REQUIRE(!none.ok());
  CHECK(std::holds_alternative<field::NotInvariant>(none.error()));
  // z' = z, y' = y^2 has the invariant lines z = 0 and y = 0.
  const field::PolyVectorField lin(P("z"), P("y^2"), kZ, kY);
  auto k = field::cofactor_of(lin, P("z"));
  REQUIRE(k.ok());
  CHECK(k.value() == P("1"));
  auto k2 = field::cofactor_of(lin, P("y"));
  REQUIRE(k2.ok());
  CHECK(k2.value() == P("y"));
}

TEST_CASE("printed degree-nine curve verifies with cofactor 9y") {
  const auto* e = catalog::find(catalog::builtin(), "2-i");
  REQUIRE(e != nullptr);
  const auto X = discovery::system_of(*e);
  const Polynomial g = P(e->curve);
  const auto v = field::verify_certificate(field::make_certificate(X, g, P("9*y")));
  CHECK(v.pass);
  CHECK(v.residual.is_zero());
  CHECK(!v.squarefree_warning);
  CHECK(field::cofactor_of(X, g).value() == P("9*y"));
  const auto wrong = field::verify_certificate(field::make_certificate(X, g, P("8*y")));
  CHECK(!wrong.pass);
  CHECK(wrong.residual_terms > 0);
  const auto pr = field::probe(X, g, P("9*y"), 20, 1);
  CHECK(pr.all_zero);
  CHECK(pr.trials_run == 20);
  const auto bad = field::probe(X, g + P("1"), P("9*y"), 20, 1);
  CHECK(!bad.all_zero);
  CHECK(bad.witness.has_value());
}

TEST_CASE("repeated factors are flagged") {
  CHECK(field::has_repeated_factor(P("(y - z)*(y - z)*(y + 1)"), kZ, kY));
  CHECK(!field::has_repeated_factor(P("y^2 - z^3 + q"), kZ, kY));
}

TEST_CASE("property: the Lie derivative is a derivation") {
  testgen::Gen gen(301);
  for (int i = 0; i < 1000; ++i) {
    const auto X = random_quadratic(gen);
    const Polynomial f = gen.poly(ctx(), 3, 4, 5), g = gen.poly(ctx(), 3, 4, 5);
    const Rational s = gen.rational();
    REQUIRE(field::lie_derivative(X, f + s * g) == field::lie_derivative(X, f) + s * field::lie_derivative(X, g));
    REQUIRE(field::lie_derivative(X, f * g) == f * field::lie_derivative(X, g) + g * field::lie_derivative(X, f));
    // Constants in the state variables are first integrals.
    REQUIRE(field::lie_derivative(X, Polynomial::variable(ctx(), "q").pow(static_cast<unsigned>(gen.integer(0, 3)))).is_zero());
  }
}

TEST_CASE("property: pure-q normal forms raise quasi-weight by one") {
  testgen::Gen gen(302);
  const std::vector<long> w{-1, 1, 2, 0, 0, 0};
  int nonzero = 0;
  while (nonzero < 1000) {
    const auto X = field::QuadraticNormalForm::pure(gen.rational(), gen.rational()).expand();
    const long W = gen.integer(-3, 6);
    // Random terms z^i y^j q^k with -i + j + 2k = W.
    Polynomial g(ctx());
    for (int t = 0; t < 6; ++t) {
      const long k = gen.integer(0, 4), iz = gen.integer(0, 6);
      const long jy = W + iz - 2 * k;
      if (jy < 0) continue;
      const std::array<unsigned, 3> e{static_cast<unsigned>(iz), static_cast<unsigned>(jy), static_cast<unsigned>(k)};
      g += Polynomial::monomial(ctx(), Monomial(e), gen.nonzero_rational());
    }
    if (g.is_zero()) continue;
    REQUIRE(quasi_weight(g, w).value() == W);
    const Polynomial Xg = field::lie_derivative(X, g);
    if (Xg.is_zero()) continue;
    ++nonzero;
    auto lifted = quasi_weight(Xg, w);
    REQUIRE(lifted.ok());
    REQUIRE(lifted.value() == W + 1);
  }
}
