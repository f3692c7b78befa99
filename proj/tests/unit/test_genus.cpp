#include "darboux/catalog/catalog.hpp"
#include "darboux/genus/genus.hpp"
#include "darboux/io/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace darboux;
using namespace darboux::genus;

namespace {

const ContextPtr& ctx() { return standard_context(); }
const std::size_t kX = 5, kY = 1;

ProjectiveCurve curve(std::string_view text, std::map<std::size_t, Rational> b = {}) {
  auto c = ProjectiveCurve::from_polynomial(io::parse_or_throw(text), kX, kY, b);
  REQUIRE(c.ok());
  return c.value();
}

long genus_of(const ProjectiveCurve& C) {
  auto r = genus::genus(C);
  REQUIRE(r.ok());
  return r.value().genus;
}

void check_delta_bookkeeping(const GenusReport& r) {
  long total = 0;
  for (const auto& o : r.orbits) {
    long per_point = 0;
    for (int m : o.multiplicity_sequence) {
      CHECK(m >= 2);
      per_point += static_cast<long>(m) * (m - 1) / 2;
    }
    CHECK(per_point == o.delta_per_point);
    total += o.delta();
  }
  CHECK(total == r.delta_total);
  CHECK(r.genus == static_cast<long>(r.degree - 1) * (r.degree - 2) / 2 - r.delta_total);
  CHECK(r.oval_bound == r.genus + 1);
  CHECK(r.irreducibility == "asserted-by-caller");
}

std::array<std::array<long, 3>, 3> random_invertible(testgen::Gen& gen) {
  for (;;) {
    std::array<std::array<long, 3>, 3> A{};
    for (auto& row : A) {
      for (auto& x : row) x = gen.integer(-2, 2);
    }
    const long det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                     A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                     A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    if (det != 0) return A;
  }
}

}  // namespace

TEST_CASE("oval bound") {
  CHECK(oval_bound(0) == 1);
  CHECK(oval_bound(1) == 2);
  CHECK(oval_bound(2) == 3);
}

TEST_CASE("classical singular curves") {
  CHECK(genus_of(curve("y^2 - x^3 + x")) == 1);
  CHECK(genus_of(curve("y^2 - x^3 - x^2")) == 0);
  CHECK(genus_of(curve("y^2 - x^3")) == 0);
  CHECK(genus_of(curve("y^2 - x^5")) == 0);
  CHECK(genus_of(curve("y^3 - x^7")) == 0);
  CHECK(genus_of(curve("x^2 + y^2 - 1")) == 0);
  CHECK(genus_of(curve("y - x^4")) == 0);
  // Quadrifolium (x^2 + y^2)^3 = 4 x^2 y^2: rational.
  CHECK(genus_of(curve("x^6 + 3*x^4*y^2 + 3*x^2*y^4 + y^6 - 4*x^2*y^2")) == 0);

  auto node = genus::genus(curve("y^2 - x^3 - x^2"));
  REQUIRE(node.ok());
  REQUIRE(node.value().orbits.size() == 1);
  CHECK(node.value().orbits[0].multiplicity_sequence == std::vector<int>{2});
  check_delta_bookkeeping(node.value());

  auto tac = genus::genus(curve("y^2 - x^4 - y^3"));
  REQUIRE(tac.ok());
  CHECK(tac.value().genus == 1);
  bool saw_tacnode = false;
  for (const auto& o : tac.value().orbits) saw_tacnode |= o.multiplicity_sequence == std::vector<int>{2, 2};
  CHECK(saw_tacnode);
  check_delta_bookkeeping(tac.value());
}

TEST_CASE("failures are typed") {
  auto sq = ProjectiveCurve::from_polynomial(io::parse_or_throw("(y - x)*(y - x)*(y + 1)"), kX, kY, {});
  CHECK(!sq.ok());
  auto red = genus::genus(curve("y^2 - x^4"));
  REQUIRE(!red.ok());
  CHECK(std::holds_alternative<ReducibleSuspected>(red.error()));
  CHECK(!describe(red.error()).empty());
  CHECK_THROWS(ProjectiveCurve::from_polynomial(io::parse_or_throw("y - q"), kX, kY, {}));
}

TEST_CASE("property: random smooth curves have the Pluecker genus") {
  testgen::Gen gen(501);
  int tested[5] = {0, 0, 0, 0, 0};
  while (tested[2] < 40 || tested[3] < 40 || tested[4] < 40) {
    const int d = static_cast<int>(gen.integer(2, 4));
    Polynomial f(ctx());
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; i + j <= d; ++j) {
        std::array<unsigned, 6> e{};
        e[kX] = static_cast<unsigned>(i);
        e[kY] = static_cast<unsigned>(j);
        f += Polynomial::monomial(ctx(), Monomial(e), gen.integer(-5, 5));
      }
    }
    auto C = ProjectiveCurve::from_polynomial(f, kX, kY, {});
    if (!C.ok() || C.value().degree() != d) continue;
    auto pts = singular_points(C.value());
    REQUIRE(pts.ok());
    if (!pts.value().empty()) continue;
    ++tested[d];
    auto r = genus::genus(C.value());
    REQUIRE(r.ok());
    REQUIRE(r.value().genus == (d - 1) * (d - 2) / 2);
    REQUIRE(r.value().delta_total == 0);
  }
}

TEST_CASE("genus is invariant under projective changes of coordinates") {
  testgen::Gen gen(502);
  const std::vector<ProjectiveCurve> curves = {
      curve("y^2 - x^3 - x^2"),
      curve("y^2 - x^4 - y^3"),
      curve("y^2 - x^3 + x"),
      curve("y^2 - x^5"),
      curve("x^6 + 3*x^4*y^2 + 3*x^2*y^4 + y^6 - 4*x^2*y^2"),
      curve("y^3 + 1/4*(3*(1+a)-6*(1+a)*x)*y^2 + 3/4*(1+a)*a*x^2*y + 3/4*(1+a)*a^2*x^4", {{4, Rational(1, 2)}}),
  };
  for (const auto& C : curves) {
    const long g0 = genus_of(C);
    for (int k = 0; k < 6; ++k) {
      auto T = C.transformed(random_invertible(gen));
      REQUIRE(T.ok());
      auto r = genus::genus(T.value());
      REQUIRE(r.ok());
      CHECK(r.value().genus == g0);
      check_delta_bookkeeping(r.value());
    }
  }
}

TEST_CASE("catalog genus claims at sample parameters") {
  const auto& entries = catalog::builtin();
  auto run = [&](std::string_view id, std::map<std::size_t, Rational> b) {
    const auto* e = catalog::find(entries, id);
    REQUIRE(e != nullptr);
    const std::size_t first = ctx()->require(e->state[0]), second = ctx()->require(e->state[1]);
    auto C = ProjectiveCurve::from_polynomial(io::parse_or_throw(e->curve), first, second, b);
    REQUIRE(C.ok());
    auto r = genus::genus(C.value());
    REQUIRE(r.ok());
    check_delta_bookkeeping(r.value());
    return r.value().genus;
  };
  const std::size_t q = ctx()->require("q"), a = ctx()->require("a");
  CHECK(run("1-filipstov", {{a, Rational(1, 2)}}) == 1);
  CHECK(run("2-i", {{q, 1}}) == 1);
  CHECK(run("2-ii", {{q, 1}}) == 1);
  CHECK(run("2-iii", {{q, 1}}) == 1);
  CHECK(run("4-i", {{q, 1}}) == 2);
}
