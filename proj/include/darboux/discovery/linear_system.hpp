#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "darboux/field/vector_field.hpp"
#include "darboux/poly/polynomial.hpp"

namespace darboux::discovery {

struct QhFilter {
  std::vector<long> weights;  // one per context variable
  std::optional<long> target; // unset: every weight
};

/// Degree box for the unknown curve: a + b ≤ n in the state variables and
/// per-parameter exponent caps; parameters without a cap are excluded.
struct AnsatzSpec {
  int max_state_degree = 1;
  std::size_t first = 0, second = 1;
  std::map<std::size_t, int> parameter_caps;
  std::optional<QhFilter> qh;
};

/// All monomials in the box (and weight filter), descending graded-lex.
std::vector<Monomial> enumerate_support(const AnsatzSpec& spec, const ContextPtr& ctx);

/// Sparse exact matrix with monomial row/column labels.
class ExactMatrix {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::vector<Monomial> row_labels, std::vector<Monomial> col_labels);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<Monomial>& row_labels() const { return row_labels_; }
  const std::vector<Monomial>& col_labels() const { return col_labels_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  /// Nonzero entries of row r in increasing column order.
  const std::vector<Entry>& row(std::size_t r) const { return rows_.at(r); }
  std::size_t nonzeros() const;

 private:
  std::size_t cols_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<Monomial> row_labels_, col_labels_;
};

/// Columns: ansatz monomials m; column m holds the coefficients of
/// X(m) − K·m, rows labelled by the monomials that occur (descending order).
ExactMatrix build_linear_system(const field::PolyVectorField& X, const Polynomial& K, const AnsatzSpec& spec);

/// Right nullspace by fraction-free elimination. Pivot: first row (in row
/// order) with a nonzero entry in the current column; columns left to right.
/// Each vector has integer entries, content 1 and a positive first nonzero
/// entry; vectors are ordered by their free column.
std::vector<std::vector<Rational>> kernel_basis(const ExactMatrix& M);

/// Rank via the same elimination.
std::size_t rank(const ExactMatrix& M);

/// Σ v_i · labels_i.
Polynomial combine(const ContextPtr& ctx, const std::vector<Monomial>& labels, const std::vector<Rational>& v);

}  // namespace darboux::discovery
