#include "darboux/genus/genus.hpp"

#include <stdexcept>

#include "darboux/algebra/factor.hpp"

namespace darboux::genus {

using algebra::BPoly;
using algebra::FElem;
using algebra::FieldPtr;
using algebra::FPoly;
using algebra::NumberField;
using algebra::UPoly;

std::string describe(const GenusFailure& f) {
  struct V {
    std::string operator()(const NotSquareFree& e) const { return "curve is not square-free: " + e.detail; }
    std::string operator()(const DepthExceeded& e) const {
      return "resolution did not finish within " + std::to_string(e.cap) + " blow-ups";
    }
    std::string operator()(const ReducibleSuspected& e) const {
      return "delta " + std::to_string(e.delta_total) + " exceeds the arithmetic genus " +
             std::to_string(e.arithmetic_genus) + "; the curve is probably reducible";
    }
  };
  return std::visit(V{}, f);
}

// ---------------------------------------------------------------- curve

Outcome<ProjectiveCurve, NotSquareFree> ProjectiveCurve::from_affine(const BPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("the zero polynomial defines no curve");
  const int d = f.total_degree();
  if (d < 1) throw std::invalid_argument("a constant defines no curve");
  const BPoly g = algebra::gcd(algebra::gcd(f, f.derivative_x()), f.derivative_y());
  if (g.total_degree() > 0) return NotSquareFree{"repeated factor of degree " + std::to_string(g.total_degree())};
  return ProjectiveCurve(f, d);
}

Outcome<ProjectiveCurve, NotSquareFree> ProjectiveCurve::from_polynomial(
    const Polynomial& g, std::size_t first, std::size_t second, const std::map<std::size_t, Rational>& bindings) {
  const Polynomial h = substitute(g, bindings);
  for (std::size_t v = 0; v < h.context()->arity(); ++v) {
    if (v != first && v != second && h.involves(v)) {
      throw Error("no value bound for '" + h.context()->name(v) + "'");
    }
  }
  return from_affine(BPoly::from_polynomial(h, first, second));
}

Rational ProjectiveCurve::coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i + j > d_) return 0;
  return f_.coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

namespace {

const ContextPtr& homogeneous_context() {
  static const ContextPtr ctx = make_context({"X0", "X1", "X2"});
  return ctx;
}

}  // namespace

Polynomial ProjectiveCurve::homogeneous() const {
  const ContextPtr& ctx = homogeneous_context();
  PolynomialBuilder b(ctx);
  for (int j = 0; j <= f_.degree_y(); ++j) {
    const UPoly& cj = f_.by_y()[static_cast<std::size_t>(j)];
    for (int i = 0; i <= cj.degree(); ++i) {
      const Rational c = cj.coeff(static_cast<std::size_t>(i));
      if (c == 0) continue;
      const std::array<unsigned, 3> e{static_cast<unsigned>(d_ - i - j), static_cast<unsigned>(i),
                                      static_cast<unsigned>(j)};
      b.add(Monomial(e), c);
    }
  }
  return b.build();
}

Outcome<ProjectiveCurve, NotSquareFree> ProjectiveCurve::transformed(
    const std::array<std::array<long, 3>, 3>& A) const {
  const ContextPtr& ctx = homogeneous_context();
  std::map<std::size_t, Polynomial> sub;
  for (std::size_t r = 0; r < 3; ++r) {
    Polynomial row(ctx);
    for (std::size_t c = 0; c < 3; ++c) row += Polynomial::variable(ctx, c) * Rational(A[r][c]);
    sub.emplace(r, std::move(row));
  }
  const Polynomial G = substitute(homogeneous(), sub);
  if (G.is_zero()) throw std::invalid_argument("singular transformation");
  const Polynomial g = substitute(G, std::map<std::size_t, Rational>{{0, Rational(1)}});
  const BPoly f = BPoly::from_polynomial(g, 1, 2);
  if (f.total_degree() != d_) throw std::invalid_argument("singular transformation");
  return from_affine(f);
}

// ---------------------------------------------------------------- local model

namespace {

// Polynomial in (u, v) over a number field; c[i][j] multiplies u^i v^j.
struct Local {
  FieldPtr K;
  std::vector<std::vector<FElem>> c;

  const FElem& at(std::size_t i, std::size_t j) const {
    static const FElem zero;
    if (i >= c.size() || j >= c[i].size()) return zero;
    return c[i][j];
  }
  void add(std::size_t i, std::size_t j, const FElem& x) {
    if (x.is_zero()) return;
    if (c.size() <= i) c.resize(i + 1);
    if (c[i].size() <= j) c[i].resize(j + 1);
    c[i][j] = c[i][j] + x;
  }
  int multiplicity() const {
    int m = -1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c[i].size(); ++j) {
        if (c[i][j].is_zero()) continue;
        const int s = static_cast<int>(i + j);
        if (m < 0 || s < m) m = s;
      }
    }
    return m;
  }
};

// L(u, v + a).
Local shift_v(const Local& L, const FElem& a) {
  if (a.is_zero()) return L;
  Local out{L.K, {}};
  for (std::size_t i = 0; i < L.c.size(); ++i) {
    FPoly row = L.c[i];
    algebra::fpoly::trim(row);
    row = algebra::fpoly::shift(*L.K, row, a);
    for (std::size_t j = 0; j < row.size(); ++j) out.add(i, j, row[j]);
  }
  return out;
}

// L(u + a, v).
Local shift_u(const Local& L, const FElem& a) {
  if (a.is_zero()) return L;
  std::size_t cols = 0;
  for (const auto& r : L.c) cols = std::max(cols, r.size());
  Local out{L.K, {}};
  for (std::size_t j = 0; j < cols; ++j) {
    FPoly col(L.c.size());
    for (std::size_t i = 0; i < L.c.size(); ++i) col[i] = L.at(i, j);
    algebra::fpoly::trim(col);
    col = algebra::fpoly::shift(*L.K, col, a);
    for (std::size_t i = 0; i < col.size(); ++i) out.add(i, j, col[i]);
  }
  return out;
}

Local embed_local(const Local& L, const FieldPtr& K2, const FElem& generator_image) {
  Local out{K2, {}};
  for (std::size_t i = 0; i < L.c.size(); ++i) {
    for (std::size_t j = 0; j < L.c[i].size(); ++j) {
      if (!L.c[i][j].is_zero()) out.add(i, j, algebra::embed(*K2, L.c[i][j], generator_image));
    }
  }
  return out;
}

// Sum of m(m-1)/2 over the singular infinitely near points of the origin,
// appending their multiplicities to seq.
Outcome<long, GenusFailure> resolve(const Local& L, int depth, int cap, std::vector<int>& seq) {
  const int m = L.multiplicity();
  if (m <= 1) return 0L;
  if (depth >= cap) return GenusFailure{DepthExceeded{cap}};
  const auto um = static_cast<std::size_t>(m);
  seq.push_back(m);
  long delta = static_cast<long>(m) * (m - 1) / 2;

  // u = u, v = t*u: strict transform sum c[i][j] u^(i+j-m) t^j.
  Local L1{L.K, {}};
  for (std::size_t i = 0; i < L.c.size(); ++i) {
    for (std::size_t j = 0; j < L.c[i].size(); ++j) {
      if (!L.c[i][j].is_zero()) L1.add(i + j - um, j, L.c[i][j]);
    }
  }
  FPoly T(um + 1);
  for (std::size_t j = 0; j <= um; ++j) T[j] = L.at(um - j, j);
  algebra::fpoly::trim(T);
  if (algebra::fpoly::degree(T) >= 1) {
    const FPoly h = algebra::fpoly::squarefree_part(*L.K, T);
    for (const auto& ar : algebra::adjoin_roots(L.K, h)) {
      Local child = ar.field == L.K ? L1 : embed_local(L1, ar.field, ar.generator_image);
      child = shift_v(child, ar.root);
      const long e = ar.field->degree() / L.K->degree();
      std::vector<int> sub;
      auto r = resolve(child, depth + 1, cap, sub);
      if (!r) return r;
      delta += e * r.value();
      for (long k = 0; k < e; ++k) seq.insert(seq.end(), sub.begin(), sub.end());
    }
  }
  // u = s*v, v = v: only the direction u = 0 is new, present when c[0][m] = 0.
  if (L.at(0, um).is_zero()) {
    Local L2{L.K, {}};
    for (std::size_t i = 0; i < L.c.size(); ++i) {
      for (std::size_t j = 0; j < L.c[i].size(); ++j) {
        if (!L.c[i][j].is_zero()) L2.add(i, i + j - um, L.c[i][j]);
      }
    }
    std::vector<int> sub;
    auto r = resolve(L2, depth + 1, cap, sub);
    if (!r) return r;
    delta += r.value();
    seq.insert(seq.end(), sub.begin(), sub.end());
  }
  return delta;
}

FElem constant(const Rational& r) { return FElem(r); }

Local local_at(const SingularOrbit& o, const ProjectiveCurve& C) {
  const int d = C.degree();
  Local L{o.field, {}};
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; i + j <= d; ++j) {
      const Rational c = C.coefficient(i, j);
      if (c == 0) continue;
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const auto rest = static_cast<std::size_t>(d - i - j);
      switch (o.chart) {
        case Chart::kAffine: L.add(ui, uj, constant(c)); break;
        case Chart::kInfinity: L.add(rest, uj, constant(c)); break;
        case Chart::kPole: L.add(rest, ui, constant(c)); break;
      }
    }
  }
  switch (o.chart) {
    case Chart::kAffine: return shift_v(shift_u(L, o.point[1]), o.point[2]);
    case Chart::kInfinity: return shift_v(L, o.point[2]);
    case Chart::kPole: return L;
  }
  return L;
}

FPoly specialize(const NumberField& A, const BPoly& f, const FElem& x0) {
  FPoly out;
  for (const auto& cj : f.by_y()) out.push_back(algebra::fpoly::eval(A, algebra::fpoly::from_rational(cj), x0));
  algebra::fpoly::trim(out);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- search

Outcome<std::vector<SingularOrbit>, GenusFailure> singular_points(const ProjectiveCurve& C) {
  std::vector<SingularOrbit> out;
  const int d = C.degree();
  if (d < 2) return out;
  const BPoly& f = C.affine();
  const FElem one = constant(1);

  // Affine chart.
  if (f.content_y().degree() > 0) {
    // A vertical line splits off a curve of degree at least two.
    return GenusFailure{ReducibleSuspected{static_cast<long>(d - 1) * (d - 2) / 2, -1}};
  }
  const BPoly fx = f.derivative_x(), fy = f.derivative_y();
  const UPoly r1 = algebra::resultant_y(f, fy);
  UPoly r2 = fx.is_zero() ? UPoly() : algebra::resultant_y(f, fx);
  const UPoly G = r2.is_zero() ? r1 : algebra::gcd(r1, r2);
  if (G.degree() >= 1) {
    for (const UPoly& phi : algebra::factor_squarefree(algebra::squarefree_part(G))) {
      const FieldPtr A = NumberField::make(phi);
      const FElem x0 = A->generator();
      FPoly h = algebra::fpoly::gcd(*A, specialize(*A, f, x0), specialize(*A, fy, x0));
      if (algebra::fpoly::degree(h) >= 1) h = algebra::fpoly::gcd(*A, h, specialize(*A, fx, x0));
      if (algebra::fpoly::degree(h) < 1) continue;
      h = algebra::fpoly::squarefree_part(*A, h);
      for (const auto& ar : algebra::adjoin_roots(A, h)) {
        SingularOrbit o;
        o.chart = Chart::kAffine;
        o.field = ar.field;
        const FElem xb = ar.field == A ? x0 : algebra::embed(*ar.field, x0, ar.generator_image);
        o.point = {one, xb, ar.root};
        out.push_back(std::move(o));
      }
    }
  }

  // Line at infinity away from [0:0:1]: f~(u, v) at u = 0.
  std::vector<Rational> e0(static_cast<std::size_t>(d) + 1), e1(static_cast<std::size_t>(d));
  for (int j = 0; j <= d; ++j) e0[static_cast<std::size_t>(j)] = C.coefficient(d - j, j);
  for (int j = 0; j < d; ++j) e1[static_cast<std::size_t>(j)] = C.coefficient(d - 1 - j, j);
  const UPoly E0(e0), E1(e1);
  const UPoly H = algebra::gcd(algebra::gcd(E0, E1), E0.derivative());
  if (H.degree() >= 1) {
    const FieldPtr Q = NumberField::rationals();
    for (const auto& ar : algebra::adjoin_roots(Q, algebra::fpoly::from_rational(algebra::squarefree_part(H)))) {
      SingularOrbit o;
      o.chart = Chart::kInfinity;
      o.field = ar.field;
      o.point = {FElem(), one, ar.root};
      out.push_back(std::move(o));
    }
  }

  // The point [0:0:1].
  if (C.coefficient(0, d) == 0 && C.coefficient(0, d - 1) == 0 && C.coefficient(1, d - 1) == 0) {
    SingularOrbit o;
    o.chart = Chart::kPole;
    o.field = NumberField::rationals();
    o.point = {FElem(), FElem(), one};
    out.push_back(std::move(o));
  }
  return out;
}

Outcome<std::vector<int>, GenusFailure> multiplicity_sequence(const SingularOrbit& orbit, const ProjectiveCurve& C,
                                                              int depth_cap) {
  std::vector<int> seq;
  auto r = resolve(local_at(orbit, C), 0, depth_cap, seq);
  if (!r) return r.error();
  return seq;
}

Outcome<GenusReport, GenusFailure> genus(const ProjectiveCurve& C, int depth_cap) {
  GenusReport rep;
  rep.degree = C.degree();
  auto pts = singular_points(C);
  if (!pts) return pts.error();
  rep.orbits = std::move(pts).value();
  for (auto& o : rep.orbits) {
    std::vector<int> seq;
    auto r = resolve(local_at(o, C), 0, depth_cap, seq);
    if (!r) return r.error();
    o.multiplicity_sequence = std::move(seq);
    o.delta_per_point = r.value();
    rep.delta_total += o.delta();
  }
  const long d = rep.degree;
  const long pa = (d - 1) * (d - 2) / 2;
  rep.genus = pa - rep.delta_total;
  if (rep.genus < 0) return GenusFailure{ReducibleSuspected{pa, rep.delta_total}};
  rep.oval_bound = oval_bound(rep.genus);
  return rep;
}

long oval_bound(long G) {
  if (G < 0) throw std::invalid_argument("genus must be non-negative");
  return G + 1;
}

}  // namespace darboux::genus
