#include "darboux/discovery/family.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include "darboux/algebra/factor.hpp"
#include "darboux/io/expr.hpp"

namespace darboux::discovery {

using algebra::BPoly;
using algebra::UPoly;

field::PolyVectorField family_system(const FamilySpec& spec, const Rational& b, const Rational& c) {
  return field::QuadraticNormalForm::pure(b, c, spec.parameter).expand();
}

DiscoveryOptions family_options(const FamilySpec& spec) {
  DiscoveryOptions o;
  o.target_weight = spec.target_weight;
  o.all_weights = spec.all_weights;
  o.parameter_caps = spec.parameter_caps;
  return o;
}

AnsatzSpec family_ansatz(const FamilySpec& spec) {
  // Weights do not depend on (b, c); any point with b, c nonzero will do.
  const auto X = family_system(spec, Rational(1), Rational(1));
  const Polynomial K = Polynomial::variable(X.context(), X.second()) * Rational(spec.degree);
  return default_ansatz(X, spec.degree, K, family_options(spec));
}

namespace {

Rational power(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

Rational eval_coeffs(const FamilyMatrix::Coeffs& k, const Rational& b, const Rational& c) {
  Rational r = 0;
  for (unsigned i = 0; i < 3; ++i) {
    for (unsigned j = 0; j < 3; ++j) {
      if (k[3 * i + j] != 0) r += k[3 * i + j] * power(b, i) * power(c, j);
    }
  }
  return r;
}

// Values at t = 0, 1, −1 to coefficients of 1, t, t^2.
std::array<Rational, 3> fit3(const Rational& f0, const Rational& f1, const Rational& fm) {
  return {f0, (f1 - fm) / 2, (f1 + fm) / 2 - f0};
}

ExactMatrix direct_matrix(const FamilySpec& spec, const AnsatzSpec& ansatz, const Rational& b, const Rational& c) {
  const auto X = family_system(spec, b, c);
  const Polynomial K = Polynomial::variable(X.context(), X.second()) * Rational(spec.degree);
  return build_linear_system(X, K, ansatz);
}

}  // namespace

ExactMatrix FamilyMatrix::at(const Rational& b, const Rational& c) const {
  ExactMatrix M(rows, cols);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    for (const auto& [col, k] : entries[r]) M.set(r, col, eval_coeffs(k, b, c));
  }
  return M;
}

Outcome<FamilyMatrix, InterpolationGridTooSmall> interpolate_family_matrix(const FamilySpec& spec) {
  const AnsatzSpec ansatz = family_ansatz(spec);
  static const long kGrid[3] = {0, 1, -1};
  std::map<Monomial, std::map<std::size_t, std::array<Rational, 9>>, std::greater<>> values;
  std::vector<Monomial> cols;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const ExactMatrix M = direct_matrix(spec, ansatz, Rational(kGrid[i]), Rational(kGrid[j]));
      cols = M.col_labels();
      for (std::size_t r = 0; r < M.rows(); ++r) {
        for (const auto& [c, v] : M.row(r)) values[M.row_labels()[r]][c][3 * i + j] = v;
      }
    }
  }
  FamilyMatrix F;
  F.cols = std::move(cols);
  for (auto& [mono, by_col] : values) {
    F.rows.push_back(mono);
    auto& row = F.entries.emplace_back();
    for (auto& [col, v] : by_col) {
      // Fit in b for each grid c, then in c.
      std::array<std::array<Rational, 3>, 3> in_b;  // [j][i]
      for (int j = 0; j < 3; ++j) in_b[j] = fit3(v[0 * 3 + j], v[1 * 3 + j], v[2 * 3 + j]);
      FamilyMatrix::Coeffs k;
      for (int i = 0; i < 3; ++i) {
        const auto t = fit3(in_b[0][i], in_b[1][i], in_b[2][i]);
        for (int j = 0; j < 3; ++j) k[3 * i + j] = t[j];
      }
      row.emplace_back(col, k);
    }
  }
  const Rational cb(2), cc(3);
  const ExactMatrix direct = direct_matrix(spec, ansatz, cb, cc);
  const ExactMatrix fitted = F.at(cb, cc);
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t r = 0; r < F.rows.size(); ++r) row_of[F.rows[r]] = r;
  for (std::size_t r = 0; r < direct.rows(); ++r) {
    auto it = row_of.find(direct.row_labels()[r]);
    for (const auto& [c, v] : direct.row(r)) {
      if (it == row_of.end() || fitted.at(it->second, c) != v) {
        return InterpolationGridTooSmall{cb, cc, r, c};
      }
    }
  }
  for (std::size_t r = 0; r < fitted.rows(); ++r) {
    for (const auto& [c, v] : fitted.row(r)) {
      const auto& label = fitted.row_labels()[r];
      auto pos = std::find(direct.row_labels().begin(), direct.row_labels().end(), label);
      const Rational dv =
          pos == direct.row_labels().end() ? Rational(0) : direct.at(static_cast<std::size_t>(pos - direct.row_labels().begin()), c);
      if (dv != v) return InterpolationGridTooSmall{cb, cc, r, c};
    }
  }
  return F;
}

namespace {

// Bareiss determinant of a dense integer matrix (destroyed).
Integer bareiss(std::vector<std::vector<Integer>>& A) {
  const std::size_t n = A.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && A[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(A[k], A[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        A[i][j] = A[i][j] * A[k][k] - A[i][k] * A[k][j];
        mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = A[k][k];
  }
  return n == 0 ? Integer(1) : Integer(sign * A[n - 1][n - 1]);
}

Rational minor_at(const FamilyMatrix& F, const std::vector<std::size_t>& rows, const Rational& b, const Rational& c) {
  const std::size_t n = F.cols.size();
  std::vector<std::vector<Integer>> A;
  Integer scale = 1;
  for (std::size_t r : rows) {
    std::vector<Rational> vals(n, Rational(0));
    Integer l = 1;
    for (const auto& [col, k] : F.entries[r]) {
      vals[col] = eval_coeffs(k, b, c);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), vals[col].get_den_mpz_t());
    }
    auto& row = A.emplace_back(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = Integer(vals[j].get_num() * (l / vals[j].get_den()));
    scale *= l;
  }
  Rational d(bareiss(A), scale);
  d.canonicalize();
  return d;
}

Rational sample(std::size_t i) {
  const long k = static_cast<long>((i + 1) / 2);
  return Rational(i % 2 == 1 ? k : -k);
}

BPoly minor_polynomial(const FamilyMatrix& F, const std::vector<std::size_t>& rows) {
  int db = 0, dc = 0;
  for (std::size_t r : rows) {
    int rb = 0, rc = 0;
    for (const auto& [_, k] : F.entries[r]) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (k[3 * i + j] != 0) {
            rb = std::max(rb, i);
            rc = std::max(rc, j);
          }
        }
      }
    }
    db += rb;
    dc += rc;
  }
  std::vector<Rational> bs, cs;
  for (int i = 0; i <= db; ++i) bs.push_back(sample(static_cast<std::size_t>(i)));
  for (int j = 0; j <= dc; ++j) cs.push_back(sample(static_cast<std::size_t>(j)));
  // in_c[i] is the minor at b = bs[i] as a polynomial in c.
  std::vector<UPoly> in_c;
  for (const auto& b : bs) {
    std::vector<Rational> ys;
    for (const auto& c : cs) ys.push_back(minor_at(F, rows, b, c));
    in_c.push_back(algebra::interpolate(cs, ys));
  }
  std::vector<UPoly> by_c;
  for (int j = 0; j <= dc; ++j) {
    std::vector<Rational> ys;
    for (const auto& u : in_c) ys.push_back(u.coeff(static_cast<std::size_t>(j)));
    by_c.push_back(algebra::interpolate(bs, ys));
  }
  return BPoly(std::move(by_c));
}

// Greedy row choice: rows that raise the rank at a generic point, scanning
// cyclically from `offset`.
std::vector<std::size_t> independent_rows(const ExactMatrix& G, std::size_t offset) {
  const std::size_t R = G.rows(), C = G.cols();
  std::vector<std::vector<Rational>> basis;  // reduced rows
  std::vector<std::size_t> pivots, chosen;
  for (std::size_t s = 0; s < R && chosen.size() < C; ++s) {
    const std::size_t r = (offset + s) % R;
    std::vector<Rational> v(C, Rational(0));
    for (const auto& [c, x] : G.row(r)) v[c] = x;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Rational f = v[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < C; ++j) {
        if (basis[k][j] != 0) v[j] -= f * basis[k][j];
      }
    }
    std::size_t p = 0;
    while (p < C && v[p] == 0) ++p;
    if (p == C) continue;
    const Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Rational f = basis[k][p];
      if (f == 0) continue;
      for (std::size_t j = 0; j < C; ++j) basis[k][j] -= f * v[j];
    }
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(r);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

FamilyPoint check_point(const FamilySpec& spec, const Rational& b, const Rational& c) {
  FamilyPoint pt{b, c, 0, {}};
  const auto X = family_system(spec, b, c);
  DiscoveryResult r = find_invariant_curves(X, spec.degree, family_options(spec));
  pt.kernel_dimension = r.kernel.size();
  pt.certificates = std::move(r.certificates);
  pt.squarefree_warnings = std::move(r.squarefree_warnings);
  return pt;
}

}  // namespace

bool FamilyPoint::has_squarefree_curve() const {
  for (bool w : squarefree_warnings) {
    if (!w) return true;
  }
  return false;
}

std::string bc_to_string(const BPoly& f) {
  static const ContextPtr ctx = make_context({"b", "c"});
  return io::print_polynomial(f.to_polynomial(ctx, 0, 1));
}

Outcome<EliminationResult, InterpolationGridTooSmall> eliminate_family(const FamilySpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  auto fitted = interpolate_family_matrix(spec);
  if (!fitted) return fitted.error();
  const FamilyMatrix& F = fitted.value();
  EliminationResult res;
  res.rows = F.rows.size();
  res.cols = F.cols.size();
  const auto finish = [&] {
    res.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  };
  if (res.cols == 0) return finish();

  const ExactMatrix generic = F.at(Rational(3, 7), Rational(-5, 11));
  std::set<std::vector<std::size_t>> subsets;
  for (std::size_t k = 0; k < 3; ++k) {
    auto rows = independent_rows(generic, k * res.rows / 3);
    if (rows.size() < res.cols) {
      res.generic_kernel = true;
      return finish();
    }
    subsets.insert(std::move(rows));
  }
  std::vector<BPoly> minors;
  for (const auto& s : subsets) {
    res.minor_rows.push_back(s);
    minors.push_back(minor_polynomial(F, s));
  }

  BPoly common = minors[0];
  for (std::size_t i = 1; i < minors.size(); ++i) common = algebra::gcd(common, minors[i]);
  if (common.total_degree() > 0) {
    for (auto& m : minors) m = *algebra::exact_quotient(m, common);
    // Lines b = r, lines c = r, and whatever is left.
    const UPoly in_b = common.content_y();
    BPoly rest = algebra::divide_by_x_poly(common, in_b);
    const UPoly in_c = rest.swapped().content_y();
    rest = algebra::divide_by_x_poly(rest.swapped(), in_c).swapped();
    for (int axis = 0; axis < 2; ++axis) {
      const UPoly& u = axis == 0 ? in_b : in_c;
      if (u.degree() < 1) continue;
      for (const auto& [f, mult] : algebra::factor(u)) {
        BPoly eq = axis == 0 ? BPoly(std::vector<UPoly>{f}) : BPoly(std::vector<UPoly>{f}).swapped();
        FamilyComponent comp{eq, bc_to_string(eq), {}, false};
        if (f.degree() == 1) {
          const Rational r = -f.coeff(0) / f.coeff(1);
          for (long s : {1, 2}) {
            comp.samples.push_back(axis == 0 ? check_point(spec, r, Rational(s)) : check_point(spec, Rational(s), r));
          }
        }
        for (const auto& pt : comp.samples) comp.confirmed = comp.confirmed || pt.kernel_dimension > 0;
        res.components.push_back(std::move(comp));
      }
    }
    if (rest.total_degree() > 0) {
      FamilyComponent comp{rest, bc_to_string(rest), {}, false};
      if (rest.degree_y() == 1) {
        // c = −r0(b)/r1(b) at a few b.
        for (long s : {1, 2, 3}) {
          const Rational d = rest.coeff_y(1)(Rational(s));
          if (d == 0) continue;
          comp.samples.push_back(check_point(spec, Rational(s), -rest.coeff_y(0)(Rational(s)) / d));
        }
      }
      for (const auto& pt : comp.samples) comp.confirmed = comp.confirmed || pt.kernel_dimension > 0;
      res.components.push_back(std::move(comp));
    }
  }

  UPoly R;
  for (std::size_t i = 0; i < minors.size(); ++i) {
    if (minors[i].degree_y() == 0) {
      R = algebra::gcd(R, minors[i].coeff_y(0));
      continue;
    }
    for (std::size_t j = i + 1; j < minors.size(); ++j) {
      if (minors[j].degree_y() == 0) continue;
      const UPoly r = algebra::resultant_y(minors[i], minors[j]);
      if (!r.is_zero()) R = algebra::gcd(R, r);
    }
  }
  res.eliminant = R;
  if (R.is_zero()) return finish();

  for (const auto& b0 : algebra::rational_roots(R)) {
    UPoly h;
    for (const auto& m : minors) h = algebra::gcd(h, m.eval_x(b0));
    if (h.is_zero()) continue;
    for (const auto& c0 : algebra::rational_roots(h)) {
      FamilyPoint pt = check_point(spec, b0, c0);
      if (pt.kernel_dimension > 0) {
        res.verified.push_back(std::move(pt));
      } else {
        res.rejected.emplace_back(b0, c0);
      }
    }
  }
  return finish();
}

std::vector<FamilyPoint> scan_family(const FamilySpec& spec, const std::vector<std::pair<Rational, Rational>>& grid,
                                     unsigned threads) {
  std::vector<FamilyPoint> out(grid.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
      out[i] = check_point(spec, grid[i].first, grid[i].second);
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace darboux::discovery
