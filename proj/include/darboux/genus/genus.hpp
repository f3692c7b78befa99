#pragma once

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "darboux/algebra/bivariate.hpp"
#include "darboux/algebra/number_field.hpp"
#include "darboux/poly/polynomial.hpp"

namespace darboux::genus {

struct NotSquareFree {
  std::string detail;
};
struct DepthExceeded {
  int cap;
};
/// The resolution produced more delta than a degree-d irreducible curve
/// allows, so the curve is (most likely) reducible.
struct ReducibleSuspected {
  long arithmetic_genus;
  long delta_total;
};
using GenusFailure = std::variant<NotSquareFree, DepthExceeded, ReducibleSuspected>;

std::string describe(const GenusFailure& f);

/// F(X0, X1, X2) = X0^d f(X1/X0, X2/X0) for a square-free f of degree d.
class ProjectiveCurve {
 public:
  static Outcome<ProjectiveCurve, NotSquareFree> from_affine(const algebra::BPoly& f);
  /// Specializes every variable except the two state variables, then
  /// homogenizes. Missing bindings are an error.
  static Outcome<ProjectiveCurve, NotSquareFree> from_polynomial(const Polynomial& g, std::size_t first,
                                                                 std::size_t second,
                                                                 const std::map<std::size_t, Rational>& bindings);

  const algebra::BPoly& affine() const { return f_; }
  int degree() const { return d_; }
  /// Coefficient of X0^(d-i-j) X1^i X2^j.
  Rational coefficient(int i, int j) const;
  /// The curve F(A X) for an invertible integer matrix A.
  Outcome<ProjectiveCurve, NotSquareFree> transformed(const std::array<std::array<long, 3>, 3>& A) const;
  /// F in the context (X0, X1, X2).
  Polynomial homogeneous() const;

 private:
  ProjectiveCurve(algebra::BPoly f, int d) : f_(std::move(f)), d_(d) {}
  algebra::BPoly f_;
  int d_;
};

enum class Chart { kAffine, kInfinity, kPole };  // X0 != 0; X0 = 0, X1 != 0; the point [0:0:1]

/// A Galois orbit of singular points: one point over the field Q[t]/(m),
/// standing for its deg m conjugates.
struct SingularOrbit {
  Chart chart = Chart::kAffine;
  algebra::FieldPtr field;
  std::array<algebra::FElem, 3> point;  // homogeneous coordinates over `field`
  std::vector<int> multiplicity_sequence;
  long delta_per_point = 0;

  int size() const { return field->degree(); }
  long delta() const { return delta_per_point * size(); }
  const algebra::UPoly& minpoly() const { return field->minpoly(); }
};

/// Positions only; multiplicity data is left empty.
Outcome<std::vector<SingularOrbit>, GenusFailure> singular_points(const ProjectiveCurve& C);

/// Multiplicities (each at least 2) of the singular infinitely near points
/// over one point of the orbit, in resolution order; conjugate branches are
/// repeated. delta = sum m(m-1)/2 over the sequence.
Outcome<std::vector<int>, GenusFailure> multiplicity_sequence(const SingularOrbit& orbit, const ProjectiveCurve& C,
                                                              int depth_cap = 24);

struct GenusReport {
  int degree = 0;
  std::vector<SingularOrbit> orbits;
  long delta_total = 0;
  long genus = 0;
  long oval_bound = 1;
  std::string irreducibility = "asserted-by-caller";
};

Outcome<GenusReport, GenusFailure> genus(const ProjectiveCurve& C, int depth_cap = 24);

/// G + 1; G must be non-negative.
long oval_bound(long G);

}  // namespace darboux::genus
