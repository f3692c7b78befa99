#include "darboux/discovery/linear_system.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace darboux::discovery {

std::vector<Monomial> enumerate_support(const AnsatzSpec& spec, const ContextPtr& ctx) {
  if (spec.max_state_degree < 0) throw std::invalid_argument("negative ansatz degree");
  const std::size_t n = ctx->arity();
  if (spec.first >= n || spec.second >= n) throw ArityMismatch(n, std::max(spec.first, spec.second) + 1);
  if (spec.qh && spec.qh->weights.size() != n) throw ArityMismatch(n, spec.qh->weights.size());
  std::vector<std::pair<std::size_t, int>> params;
  for (const auto& [v, cap] : spec.parameter_caps) {
    if (v >= n) throw ArityMismatch(n, v + 1);
    if (v == spec.first || v == spec.second) throw Error("state variable given a parameter cap");
    if (cap < 0) throw std::invalid_argument("negative parameter cap");
    params.emplace_back(v, cap);
  }
  std::vector<Monomial> out;
  Monomial m;
  const auto emit = [&] {
    if (spec.qh && spec.qh->target && monomial_weight(m, spec.qh->weights) != *spec.qh->target) return;
    out.push_back(m);
  };
  // Odometer over the parameter exponents.
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == params.size()) {
      emit();
      return;
    }
    for (int e = 0; e <= params[k].second; ++e) {
      m.set(params[k].first, static_cast<unsigned>(e));
      walk(k + 1);
    }
    m.set(params[k].first, 0);
  };
  for (int a = 0; a <= spec.max_state_degree; ++a) {
    for (int b = 0; a + b <= spec.max_state_degree; ++b) {
      m = Monomial();
      m.set(spec.first, static_cast<unsigned>(a));
      m.set(spec.second, static_cast<unsigned>(b));
      walk(0);
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

ExactMatrix::ExactMatrix(std::vector<Monomial> row_labels, std::vector<Monomial> col_labels)
    : cols_(col_labels.size()), rows_(row_labels.size()), row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {}

Rational ExactMatrix::at(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("column index");
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.first < k; });
  return it != row.end() && it->first == c ? it->second : Rational(0);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (c >= cols_) throw std::out_of_range("column index");
  auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == c) {
    if (v == 0) {
      row.erase(it);
    } else {
      it->second = v;
    }
  } else if (v != 0) {
    row.insert(it, Entry{c, v});
  }
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

ExactMatrix build_linear_system(const field::PolyVectorField& X, const Polynomial& K, const AnsatzSpec& spec) {
  if (!same_context(X.context(), K.context())) throw ContextMismatch();
  if (spec.first != X.first() || spec.second != X.second()) throw Error("ansatz and system disagree on the state variables");
  const auto& ctx = X.context();
  std::vector<Monomial> cols = enumerate_support(spec, ctx);
  std::map<Monomial, std::vector<ExactMatrix::Entry>, std::greater<>> acc;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Polynomial m = Polynomial::monomial(ctx, cols[j]);
    const Polynomial image = field::lie_derivative(X, m) - K * m;
    for (const auto& t : image.terms()) acc[t.monomial].emplace_back(j, t.coeff);
  }
  std::vector<Monomial> rows;
  rows.reserve(acc.size());
  for (const auto& [mono, _] : acc) rows.push_back(mono);
  ExactMatrix M(std::move(rows), std::move(cols));
  std::size_t r = 0;
  for (auto& [mono, entries] : acc) {
    for (auto& [c, v] : entries) M.set(r, c, v);
    ++r;
  }
  return M;
}

namespace {

using IRow = std::vector<std::pair<std::size_t, Integer>>;

Integer entry(const IRow& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
  return it != row.end() && it->first == c ? it->second : Integer(0);
}

void make_primitive(IRow& row) {
  Integer g = 0;
  for (const auto& [_, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [_, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

// a*x − b*y on sparse rows.
IRow combine_rows(const Integer& a, const IRow& x, const Integer& b, const IRow& y) {
  IRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

IRow to_integer_row(const std::vector<ExactMatrix::Entry>& row) {
  Integer l = 1;
  for (const auto& [_, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, Integer(v.get_num() * (l / v.get_den())));
  make_primitive(out);
  return out;
}

struct Elimination {
  std::vector<IRow> rows;
  std::vector<long> pivot_col;    // per row, −1 when not a pivot row
  std::vector<bool> is_pivot_col;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Gauss-Jordan on each connected component of the row/column incidence graph.
// Components never interact, so the pivot choice matches a global sweep.
Elimination eliminate(const ExactMatrix& M) {
  const std::size_t R = M.rows(), C = M.cols();
  Elimination E;
  E.rows.resize(R);
  E.pivot_col.assign(R, -1);
  E.is_pivot_col.assign(C, false);
  std::vector<std::size_t> parent(C);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t r = 0; r < R; ++r) {
    const auto& row = M.row(r);
    for (std::size_t k = 1; k < row.size(); ++k) {
      const std::size_t a = find_root(parent, row[0].first), b = find_root(parent, row[k].first);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> comp_rows, comp_cols;
  for (std::size_t c = 0; c < C; ++c) comp_cols[find_root(parent, c)].push_back(c);
  for (std::size_t r = 0; r < R; ++r) {
    if (M.row(r).empty()) continue;
    comp_rows[find_root(parent, M.row(r)[0].first)].push_back(r);
    E.rows[r] = to_integer_row(M.row(r));
  }
  for (const auto& [root, cols] : comp_cols) {
    auto it = comp_rows.find(root);
    if (it == comp_rows.end()) continue;
    const auto& rows = it->second;
    for (std::size_t c : cols) {
      long piv = -1;
      for (std::size_t r : rows) {
        if (E.pivot_col[r] < 0 && entry(E.rows[r], c) != 0) {
          piv = static_cast<long>(r);
          break;
        }
      }
      if (piv < 0) continue;
      const std::size_t pr = static_cast<std::size_t>(piv);
      E.pivot_col[pr] = static_cast<long>(c);
      E.is_pivot_col[c] = true;
      const Integer a = entry(E.rows[pr], c);
      for (std::size_t r : rows) {
        if (r == pr) continue;
        const Integer b = entry(E.rows[r], c);
        if (b == 0) continue;
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        E.rows[r] = combine_rows(Integer(a / g), E.rows[r], Integer(b / g), E.rows[pr]);
        make_primitive(E.rows[r]);
      }
    }
  }
  return E;
}

}  // namespace

std::vector<std::vector<Rational>> kernel_basis(const ExactMatrix& M) {
  const Elimination E = eliminate(M);
  const std::size_t C = M.cols();
  // For each free column, the pivot rows that mention it.
  std::vector<std::vector<std::size_t>> users(C);
  for (std::size_t r = 0; r < E.rows.size(); ++r) {
    if (E.pivot_col[r] < 0) continue;
    for (const auto& [c, _] : E.rows[r]) {
      if (!E.is_pivot_col[c]) users[c].push_back(r);
    }
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < C; ++f) {
    if (E.is_pivot_col[f]) continue;
    std::vector<Rational> v(C, Rational(0));
    v[f] = 1;
    for (std::size_t r : users[f]) {
      const std::size_t pc = static_cast<std::size_t>(E.pivot_col[r]);
      v[pc] = Rational(-entry(E.rows[r], f), entry(E.rows[r], pc));
      v[pc].canonicalize();
    }
    Integer l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : v) {
      x *= l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
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
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const ExactMatrix& M) {
  const Elimination E = eliminate(M);
  return static_cast<std::size_t>(std::count(E.is_pivot_col.begin(), E.is_pivot_col.end(), true));
}

Polynomial combine(const ContextPtr& ctx, const std::vector<Monomial>& labels, const std::vector<Rational>& v) {
  if (labels.size() != v.size()) throw ArityMismatch(labels.size(), v.size());
  PolynomialBuilder b(ctx);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) b.add(labels[i], v[i]);
  }
  return b.build();
}

}  // namespace darboux::discovery
