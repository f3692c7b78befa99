#include "darboux/catalog/catalog.hpp"
#include "darboux/discovery/discover.hpp"
#include "darboux/discovery/family.hpp"
#include "darboux/discovery/repair.hpp"
#include "darboux/io/expr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace darboux;
using namespace darboux::discovery;

namespace {

const ContextPtr& ctx() { return standard_context(); }
Polynomial P(std::string_view s) { return io::parse_or_throw(s); }
using Vec = std::vector<Rational>;

// Independent oracle: reduced row echelon form over Q with plain division,
// then one basis vector per free column, scaled to integers with content 1
// and a positive first nonzero entry.
std::vector<Vec> naive_kernel(std::vector<Vec> A, std::size_t cols) {
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
    std::size_t p = r;
    while (p < A.size() && A[p][c] == 0) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[r]);
    const Rational inv = 1 / A[r][c];
    for (auto& x : A[r]) x *= inv;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == r || A[i][c] == 0) continue;
      const Rational f = A[i][c];
      for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    Vec v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -A[static_cast<std::size_t>(pivot_of_col[c])][f];
    }
    Integer l = 1, g = 0;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    for (auto& x : v) {
      x *= l;
      g = gcd(g, Integer(x.get_num()));
    }
    Rational s(1, g);
    s.canonicalize();
    for (const auto& x : v) {
      if (x != 0) {
        if (x < 0) s = -s;
        break;
      }
    }
    for (auto& x : v) x *= s;
    basis.push_back(v);
  }
  return basis;
}

ExactMatrix to_matrix(const std::vector<Vec>& A, std::size_t cols) {
  ExactMatrix M(A.size(), cols);
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (A[i][j] != 0) M.set(i, j, A[i][j]);
    }
  }
  return M;
}

std::vector<Vec> random_matrix(testgen::Gen& gen, std::size_t rows, std::size_t cols) {
  std::vector<Vec> A(rows, Vec(cols, Rational(0)));
  // Low rank often enough to exercise the kernel: rows mixed from a few seeds.
  const std::size_t seeds = static_cast<std::size_t>(gen.integer(1, static_cast<long>(rows)));
  std::vector<Vec> base(seeds, Vec(cols, Rational(0)));
  for (auto& b : base) {
    for (auto& x : b) x = gen.integer(0, 2) ? Rational(0) : gen.rational(9, 4);
  }
  for (auto& row : A) {
    for (const auto& b : base) {
      const Rational s = gen.integer(0, 1) ? gen.rational(5, 3) : Rational(0);
      for (std::size_t j = 0; j < cols; ++j) row[j] += s * b[j];
    }
  }
  return A;
}

}  // namespace

TEST_CASE("property: fraction-free kernel agrees with naive rational elimination") {
  testgen::Gen gen(401);
  for (int i = 0; i < 200; ++i) {
    const auto rows = static_cast<std::size_t>(gen.integer(1, 12));
    const auto cols = static_cast<std::size_t>(gen.integer(1, 12));
    const auto A = random_matrix(gen, rows, cols);
    const auto oracle = naive_kernel(A, cols);
    const ExactMatrix M = to_matrix(A, cols);
    const auto K = kernel_basis(M);
    REQUIRE(K == oracle);
    REQUIRE(rank(M) + K.size() == cols);
    for (const auto& v : K) {
      for (const auto& row : A) {
        Rational dot = 0;
        for (std::size_t j = 0; j < cols; ++j) dot += row[j] * v[j];
        REQUIRE(dot == 0);
      }
    }
  }
}

TEST_CASE("property: kernel is invariant under row scaling") {
  testgen::Gen gen(402);
  for (int i = 0; i < 1000; ++i) {
    const auto rows = static_cast<std::size_t>(gen.integer(1, 8));
    const auto cols = static_cast<std::size_t>(gen.integer(1, 8));
    auto A = random_matrix(gen, rows, cols);
    const auto K = kernel_basis(to_matrix(A, cols));
    for (auto& row : A) {
      const Rational s = gen.nonzero_rational();
      for (auto& x : row) x *= s;
    }
    REQUIRE(kernel_basis(to_matrix(A, cols)) == K);
  }
}

TEST_CASE("support enumeration respects the degree box and weight filter") {
  AnsatzSpec spec;
  spec.max_state_degree = 3;
  spec.parameter_caps[2] = 2;
  const auto all = enumerate_support(spec, ctx());
  CHECK(all.size() == 10 * 3);
  CHECK(std::is_sorted(all.begin(), all.end(), std::greater<>()));
  spec.qh = QhFilter{{-1, 1, 2, 0, 0, 0}, 1};
  for (const auto& m : enumerate_support(spec, ctx())) {
    CHECK(monomial_weight(m, std::vector<long>{-1, 1, 2, 0, 0, 0}) == 1);
  }
}

TEST_CASE("normalization makes the top pure power of y monic") {
  CHECK(normalize_curve(P("2*y^3 - 4*z + 6*q^2*z^5"), 1) == P("y^3 - 2*z + 3*q^2*z^5"));
  CHECK(normalize_curve(P("-3*z^2 + 6"), 1) == P("z^2 - 2"));
}

TEST_CASE("degree-nine kernel reproduces the printed curve") {
  const auto* e = catalog::find(catalog::builtin(), "2-i");
  REQUIRE(e != nullptr);
  const auto X = system_of(*e);
  REQUIRE(detect_weights(X) == std::vector<long>{-1, 1, 2, 0, 0, 0});
  const auto res = find_invariant_curves(X, 9);
  REQUIRE(res.kernel.size() == 1);
  REQUIRE(res.certificates.size() == 1);
  const Polynomial g = P(e->curve);
  CHECK(res.certificates[0].g == g);
  CHECK(res.cofactor == P("9*y"));
  // Completeness: the printed curve lies in the span of the kernel.
  std::vector<Rational> coords;
  for (const auto& m : res.support) coords.push_back(g.coefficient(m));
  CHECK(combine(ctx(), res.support, coords) == g);
  CHECK(g.size() == 12);
  CHECK(res.support.size() == 24);
}

TEST_CASE("property: discovery output re-verifies and contains planted lines") {
  testgen::Gen gen(403);
  const Polynomial z = P("z"), y = P("y");
  for (int i = 0; i < 1000; ++i) {
    // The line L = y - alpha z - beta is invariant with cofactor K when
    // Q = K L + alpha P.
    const Rational alpha = gen.rational(), beta = gen.rational();
    const Polynomial L = y - alpha * z - Polynomial(ctx(), beta);
    const Polynomial K = Polynomial(ctx(), gen.rational()) + gen.rational() * z + gen.rational() * y;
    Polynomial Pz(ctx());
    for (int t = 0; t < 4; ++t) Pz += Polynomial::monomial(ctx(), gen.monomial(2, 2), gen.rational());
    const field::PolyVectorField X(Pz, K * L + alpha * Pz, 0, 1);
    const int n = static_cast<int>(gen.integer(1, 2));
    DiscoveryOptions opt;
    opt.cofactor = Rational(n) * K;
    opt.quasi_homogeneous = false;
    const auto res = find_invariant_curves(X, n, opt);
    REQUIRE(!res.certificates.empty());
    for (const auto& c : res.certificates) REQUIRE(field::verify_certificate(c).pass);
    // L^n has coordinates in the kernel span: check by rank.
    const Polynomial target = L.pow(static_cast<unsigned>(n));
    ExactMatrix M(res.support.size(), res.kernel.size() + 1);
    for (std::size_t r = 0; r < res.support.size(); ++r) {
      for (std::size_t k = 0; k < res.kernel.size(); ++k) M.set(r, k, res.kernel[k][r]);
      M.set(r, res.kernel.size(), target.coefficient(res.support[r]));
    }
    REQUIRE(rank(M) == res.kernel.size());
  }
}

TEST_CASE("family scans") {
  FamilySpec spec;
  spec.degree = 9;
  CHECK(scan_family(spec, {}).empty());
  const auto hits = scan_family(spec, {{Rational(-8, 13), Rational(-24, 169)}, {0, 0}}, 2);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].kernel_dimension == 1);
  CHECK(hits[0].has_squarefree_curve());
  CHECK(hits[1].kernel_dimension == 0);
}

TEST_CASE("repair of a clean entry changes nothing") {
  const auto* e = catalog::find(catalog::builtin(), "2-i");
  auto rep = repair(*e);
  REQUIRE(rep.ok());
  CHECK(rep.value().verbatim_verified);
  CHECK(rep.value().clean());
  REQUIRE(rep.value().corrected_curve().has_value());
  CHECK(*rep.value().corrected_curve() == P(e->curve));
}

TEST_CASE("repair of a wrong system reports no curve") {
  io::CatalogEntry e = *catalog::find(catalog::builtin(), "2-i");
  e.system_q = "3*y^2 + 5*q*z*y + q + y";
  auto rep = repair(e);
  CHECK(!rep.ok());
}
