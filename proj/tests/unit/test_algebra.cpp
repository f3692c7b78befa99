#include <random>

#include "darboux/algebra/bivariate.hpp"
#include "darboux/algebra/factor.hpp"
#include "darboux/algebra/number_field.hpp"
#include "doctest.h"

using namespace darboux;
using namespace darboux::algebra;

namespace {

UPoly P(std::vector<long> low_first) {
  std::vector<Rational> c;
  for (long v : low_first) c.emplace_back(v);
  return UPoly(std::move(c));
}

UPoly product(const std::vector<UPoly>& fs) {
  UPoly r(Rational(1));
  for (const auto& f : fs) r = r * f;
  return r;
}

}  // namespace

TEST_CASE("upoly arithmetic and division") {
  const UPoly a = P({1, 2, 3});
  const UPoly b = P({-1, 1});
  auto [q, r] = divmod(a * b + P({5}), b);
  CHECK(q == a);
  CHECK(r == P({5}));
  CHECK(a.shift(Rational(2)) == a.compose(P({2, 1})));
  CHECK(a(Rational(2)) == 17);
}

TEST_CASE("gcd of products with a planted common factor") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 60; ++t) {
    auto rnd = [&](int deg) {
      std::vector<long> c(static_cast<std::size_t>(deg) + 1);
      for (auto& v : c) v = d(rng);
      c.back() = c.back() == 0 ? 1 : c.back();
      return P(c);
    };
    const UPoly g = rnd(1 + t % 4);
    const UPoly a = rnd(3) * g;
    const UPoly b = rnd(4) * g;
    const UPoly h = gcd(a, b);
    CHECK(divides_exactly(h, g.monic()));
    CHECK(divides_exactly(a, h));
    CHECK(divides_exactly(b, h));
  }
}

TEST_CASE("resultant agrees with the root product formula") {
  // Res((x-1)(x-2), (x-3)) = (1-3)(2-3) = 2
  CHECK(resultant(P({2, -3, 1}), P({-3, 1})) == 2);
  // Res(x^2+1, x^2-2): roots ±i ⇒ (i²-2)((-i)²-2) = 9
  CHECK(resultant(P({1, 0, 1}), P({-2, 0, 1})) == 9);
  CHECK(resultant(P({1, 0, 1}), P({0, 0, 1}) * P({1, 0, 1})) == 0);
  const UPoly a = P({3, 0, 2, 1});
  const UPoly b = P({-1, 5, 0, 0, 2});
  const Rational r1 = resultant(a, b);
  const Rational r2 = resultant(b, a);
  CHECK(r1 == r2 * ((a.degree() * b.degree()) % 2 ? -1 : 1));
}

TEST_CASE("square-free decomposition recovers multiplicities") {
  const UPoly f = P({1, 1}).pow(3) * P({-2, 0, 1}).pow(2) * P({5, 1});
  auto dec = squarefree_decomposition(f * Rational(7));
  REQUIRE(dec.size() == 3);
  CHECK(dec[0].first == P({5, 1}));
  CHECK(dec[1].first == P({-2, 0, 1}));
  CHECK(dec[2].second == 3);
  CHECK(dec[0].second == 1);
}

TEST_CASE("rational roots from planted linear factors") {
  const UPoly f = (P({8, 13}) * P({14, 25}) * P({88, 53}) * P({1, 0, 1}) * P({-7, 0, 0, 2})).pow(1);
  const auto roots = rational_roots(f);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == Rational(-88, 53));
  CHECK(roots[1] == Rational(-8, 13));
  CHECK(roots[2] == Rational(-14, 25));
  CHECK(rational_roots(P({1, 0, 1})).empty());
  CHECK(rational_roots(P({0, 0, 1})) == std::vector<Rational>{0});
}

TEST_CASE("factorization over Q reassembles and finds the planted count") {
  const std::vector<UPoly> parts{P({1, 0, 1}), P({-2, 0, 1}), P({1, 1, 1, 1, 1}), P({-3, 1}), P({2, 0, 0, 5})};
  const UPoly f = product(parts) * Rational(3, 2);
  const auto fs = factor_squarefree(f);
  CHECK(fs.size() == parts.size());
  CHECK(product(fs) == f.monic());
  // x^4 + 1 is irreducible over Q but splits modulo every prime.
  CHECK(is_irreducible(P({1, 0, 0, 0, 1})));
  CHECK_FALSE(is_irreducible(P({-4, 0, 0, 0, 1})));
  // Swinnerton-Dyer style: (x^2-2)(x^2-3) product reassembly.
  const auto g = factor(P({-2, 0, 1}).pow(2) * P({-3, 0, 1}));
  REQUIRE(g.size() == 2);
}

TEST_CASE("number field arithmetic in Q(sqrt 2)") {
  const FieldPtr K = NumberField::make(P({-2, 0, 1}));
  const FElem s = K->generator();
  CHECK(K->mul(s, s) == P({2}));
  const FElem a = P({1, 1});
  CHECK(K->mul(a, K->inv(a)) == P({1}));
  CHECK(K->norm(a) == -1);
}

TEST_CASE("adjoining roots over Q and over an extension") {
  const FieldPtr Q = NumberField::rationals();
  const auto orbits = adjoin_roots(Q, fpoly::from_rational(P({-2, 0, 1}) * P({-1, 1})));
  REQUIRE(orbits.size() == 2);
  for (const auto& o : orbits) {
    const FPoly h = fpoly::from_rational(P({-2, 0, 1}) * P({-1, 1}));
    CHECK(fpoly::eval(*o.field, h, o.root).is_zero());
  }
  // Over Q(sqrt 2): s^2 - 3 stays irreducible, s^2 - 8 splits.
  const FieldPtr K = NumberField::make(P({-2, 0, 1}));
  for (long c : {3L, 8L}) {
    const FPoly h = fpoly::from_rational(P({-c, 0, 1}));
    const auto os = adjoin_roots(K, h);
    CHECK(os.size() == (c == 8 ? 2u : 1u));
    for (const auto& o : os) {
      CHECK(fpoly::eval(*o.field, h, o.root).is_zero());
      // The image of sqrt 2 still squares to 2.
      CHECK(o.field->mul(o.generator_image, o.generator_image) == P({2}));
      CHECK(o.field->degree() == (c == 8 ? 2 : 4));
    }
  }
}

TEST_CASE("bivariate resultant and gcd") {
  // f = y^2 - x, g = y - x: Res_y = x^2 - x.
  const BPoly f(std::vector<UPoly>{P({0, -1}), UPoly(), P({1})});
  const BPoly g(std::vector<UPoly>{P({0, -1}), P({1})});
  CHECK(resultant_y(f, g) == P({0, -1, 1}));
  const BPoly h(std::vector<UPoly>{P({1, 1}), P({2}), P({0, 1})});
  const BPoly G = gcd(f * h, g * h);
  CHECK(G == h.normalized());
  CHECK(gcd(f, g).total_degree() == 0);
}
