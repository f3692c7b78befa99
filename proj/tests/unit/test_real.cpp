#include <cmath>
#include <numbers>

#include "darboux/catalog/catalog.hpp"
#include "darboux/discovery/repair.hpp"
#include "darboux/io/expr.hpp"
#include "darboux/real/real_curve.hpp"
#include "doctest.h"

using namespace darboux;
using namespace darboux::real;

namespace {

const ContextPtr& ctx() { return standard_context(); }
Polynomial P(std::string_view s) { return io::parse_or_throw(s); }
const std::size_t kZ = 0, kY = 1, kX = 5;

Window window(long lo, long hi, int res = 512) { return Window{lo, hi, lo, hi, res}; }

std::size_t count(std::string_view s, std::string_view needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string_view::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("window validation") {
  CHECK(!check_window(Window{}).has_value());
  CHECK(check_window(Window{1, 1, 0, 1, 64}).has_value());
  CHECK(check_window(Window{0, 1, 2, 1, 64}).has_value());
  CHECK(check_window(Window{0, 1, 0, 1, 8}).has_value());
  const RealCurve C(P("x^2 + y^2 - 1"), kX, kY, {});
  CHECK(!count_ovals(C, Window{0, 1, 0, 1, 8}).ok());
}

TEST_CASE("evaluation uses correctly rounded coefficients") {
  const RealCurve C(P("1/3*x^2*y - 2*q"), kX, kY, {{2, Rational(1, 7)}});
  CHECK(C(3.0, 2.0) == doctest::Approx(6.0 - 2.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("circle and hyperbola") {
  const RealCurve circle(P("x^2 + y^2 - 1"), kX, kY, {});
  auto r = count_ovals(circle, window(-2, 2));
  REQUIRE(r.ok());
  CHECK(r.value().bounded == 1);
  CHECK(r.value().open == 0);
  CHECK(r.value().stable);
  REQUIRE(r.value().bounded_boxes.size() == 1);
  CHECK(r.value().bounded_boxes[0].xmax == doctest::Approx(1.0).epsilon(0.02));

  const RealCurve hyperbola(P("z*y - 1"), kZ, kY, {});
  auto h = count_ovals(hyperbola, window(-3, 3));
  REQUIRE(h.ok());
  CHECK(h.value().bounded == 0);
  CHECK(h.value().open == 2);
  CHECK(h.value().stable);

  const RealCurve two(P("(x^2 + y^2 - 1)*(x^2 - 8*x + 15 + y^2)"), kX, kY, {});
  auto t = count_ovals(two, window(-8, 8));
  REQUIRE(t.ok());
  CHECK(t.value().bounded == 2);
}

TEST_CASE("oval counts do not depend on the thread count") {
  const RealCurve C(P("x^4 + y^4 - 3*x^2 + y - 1"), kX, kY, {});
  auto a = count_ovals(C, window(-4, 4), 1);
  auto b = count_ovals(C, window(-4, 4), 4);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(a.value().bounded == b.value().bounded);
  CHECK(a.value().open == b.value().open);
  CHECK(a.value().stable == b.value().stable);
}

TEST_CASE("harmonic oscillator returns after one period") {
  const field::PolyVectorField X(P("-y"), P("z"), kZ, kY);
  const RealField F(X, {});
  IntegrationOptions opt;
  opt.t_end = 2 * std::numbers::pi;
  const Trajectory tr = integrate(F, {1.0, 0.0}, opt);
  REQUIRE(!tr.points.empty());
  CHECK(!tr.escaped);
  CHECK(!tr.step_limit);
  CHECK(tr.t.back() == doctest::Approx(opt.t_end));
  const auto& end = tr.points.back();
  CHECK(std::hypot(end[0] - 1.0, end[1]) < 1e-6);
  opt.t_end = -2 * std::numbers::pi;
  const Trajectory back = integrate(F, {1.0, 0.0}, opt);
  CHECK(std::hypot(back.points.back()[0] - 1.0, back.points.back()[1]) < 1e-6);
  opt.t_end = 100;
  opt.escape = Box{-0.5, 0.5, -2, 2};
  CHECK(integrate(F, {1.0, 0.0}, opt).escaped);
}

TEST_CASE("svg output") {
  PlotRequest req;
  req.window = window(-2, 2, 128);
  auto svg = render_svg(P("x^2 + y^2 - 1"), kX, kY, {}, req);
  REQUIRE(svg.ok());
  CHECK(svg.value().rfind("<?xml", 0) == 0);
  CHECK(count(svg.value(), "<path class=\"curve\"") == 1);
  CHECK(count(svg.value(), "trajector") == 0);
  CHECK(render_svg(P("x^2 + y^2 - 1"), kX, kY, {}, req).value() == svg.value());

  const auto* e = catalog::find(catalog::builtin(), "2-i");
  PlotRequest with_field;
  with_field.window = window(-6, 6, 256);
  with_field.field = discovery::system_of(*e);
  with_field.seeds = {{Rational(1), Rational(1)}};
  const std::map<std::size_t, Rational> b{{2, 1}};
  auto s1 = render_svg(P(e->curve), kZ, kY, b, with_field);
  auto s2 = render_svg(P(e->curve), kZ, kY, b, with_field);
  REQUIRE(s1.ok());
  CHECK(s1.value() == s2.value());
  CHECK(count(s1.value(), "trajector") > 0);
  req.window.resolution = 4;
  CHECK(!render_svg(P("x"), kX, kY, {}, req).ok());
}

TEST_CASE("stable genus-one catalog counts agree with a 4x oracle and stay within the bound") {
  const auto& ctx_ = ctx();
  for (const auto& e : catalog::builtin()) {
    if (e.stated_genus != 1) continue;
    auto g = io::parse_polynomial(e.curve, ctx_);
    if (!g) continue;
    std::map<std::size_t, Rational> b{{2, 1}, {3, 1}, {4, Rational(1, 2)}};
    for (const auto& [k, v] : e.bindings) b[ctx_->require(k)] = Rational(v);
    const RealCurve C(g.value(), ctx_->require(e.state[0]), ctx_->require(e.state[1]), b);
    auto r = count_ovals(C, Window{}, 4);
    REQUIRE(r.ok());
    if (!r.value().stable) {
      MESSAGE(e.id << ": unstable (" << r.value().bounded << " -> " << r.value().bounded_doubled << ")");
      continue;
    }
    Window dense;
    dense.resolution = 2048;
    auto oracle = count_ovals(C, dense, 4);
    REQUIRE(oracle.ok());
    MESSAGE(e.id << ": " << r.value().bounded << " bounded, oracle " << oracle.value().bounded);
    CHECK(r.value().bounded <= oracle.value().bounded);
    CHECK(r.value().bounded <= 2);
  }
}
