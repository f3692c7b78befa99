#include "darboux/io/catalog.hpp"
#include "darboux/io/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace darboux;

TEST_CASE("parse examples") {
  const auto& ctx = standard_context();
  auto f = io::parse_polynomial("y^3 - 9/26*q^2*z", ctx);
  REQUIRE(f.ok());
  CHECK(f.value().size() == 2);
  CHECK(f.value() == Polynomial::variable(ctx, "y").pow(3) -
                         Rational(9, 26) * Polynomial::variable(ctx, "q").pow(2) * Polynomial::variable(ctx, "z"));
  CHECK(io::parse_polynomial("0", ctx).value().is_zero());
  CHECK(io::parse_polynomial(" ( 2 * y ) - - 3 ", ctx).value() == io::parse_or_throw("2*y + 3"));
  CHECK(io::print_polynomial(Polynomial(ctx)) == "0");
}

TEST_CASE("parse errors carry spans and expectations") {
  const auto& ctx = standard_context();
  auto unknown = io::parse_polynomial("y + w", ctx);
  REQUIRE(!unknown.ok());
  CHECK(unknown.error().span.start == 4);
  CHECK(unknown.error().span.end == 5);
  CHECK(unknown.error().message.find("unknown variable") != std::string::npos);
  auto dangling = io::parse_polynomial("y +", ctx);
  REQUIRE(!dangling.ok());
  CHECK(!dangling.error().expected.empty());
  auto implicit = io::parse_polynomial("2y", ctx);
  REQUIRE(!implicit.ok());
  CHECK(implicit.error().span.start == 1);
  CHECK(!io::parse_polynomial("y^", ctx).ok());
  CHECK(!io::parse_polynomial("1/0", ctx).ok());
  CHECK(!io::parse_polynomial("(y", ctx).ok());
  CHECK_THROWS_AS(io::parse_or_throw("y +"), Error);
}

TEST_CASE("printing is canonical") {
  CHECK(io::print_polynomial(io::parse_or_throw("1 + z*y")) == "y*z + 1");
  CHECK(io::print_polynomial(io::parse_or_throw("-y^2 + 1/2*y*q - 3")) == "-y^2 + 1/2*q*y - 3");
}

TEST_CASE("property: print then parse is the identity") {
  testgen::Gen gen(201);
  const auto& ctx = standard_context();
  for (int i = 0; i < 1000; ++i) {
    const Polynomial f = gen.poly(ctx, ctx->arity(), 6, 10);
    const std::string text = io::print_polynomial(f);
    auto back = io::parse_polynomial(text, ctx);
    REQUIRE(back.ok());
    REQUIRE(back.value() == f);
    REQUIRE(io::print_polynomial(back.value()) == text);
  }
}

TEST_CASE("catalog documents round-trip and report schema paths") {
  io::CatalogEntry e;
  e.id = "t";
  e.section = "test";
  e.system_p = "y*z + 1";
  e.system_q = "3*y^2 + q";
  e.curve = "y";
  e.stated_degree = 1;
  e.bindings = {{"q", "1"}};
  io::CatalogEntry e2 = e;
  e2.id = "u";
  e2.stated_cofactor = "y";
  e2.stated_genus = 0;
  e2.trust = io::Trust::kVerbatimUntrusted;
  const std::string text = io::serialize_catalog({e, e2});
  auto back = io::parse_catalog(text);
  REQUIRE(back.ok());
  REQUIRE(back.value().size() == 2);
  CHECK(back.value()[0] == e);
  CHECK(back.value()[1] == e2);
  CHECK(!io::parse_catalog(io::serialize_catalog({e, e})).ok());
  CHECK(io::serialize_catalog(back.value()) == text);

  auto bad = io::parse_catalog(R"({"schema_version": 1, "entries": [{"id": "x", "stated_degree": "nine"}]})");
  REQUIRE(!bad.ok());
  CHECK(bad.error().path.rfind("entries[0]", 0) == 0);
  CHECK(!io::parse_catalog(R"({"schema_version": 2, "entries": []})").ok());
  CHECK(!io::parse_catalog("{").ok());
}
