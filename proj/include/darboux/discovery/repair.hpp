#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "darboux/discovery/discover.hpp"
#include "darboux/io/catalog.hpp"

namespace darboux::discovery {

/// The entry's system in the standard context.
field::PolyVectorField system_of(const io::CatalogEntry& entry);

/// Quotient of the multivariate division X(g) / g, keeping terms of state
/// degree at most one. Equals the cofactor whenever g is invariant.
Polynomial cofactor_estimate(const field::PolyVectorField& X, const Polynomial& g);

/// For z' = z*y + 1, y' = 3*y^2 + beta*z*y + gamma*z^2 + s with s a single
/// parameter: the parameter s. Empty for any other shape.
std::optional<std::size_t> normal_form_parameter(const field::PolyVectorField& X);

struct CoefficientDiff {
  Monomial monomial;
  Rational verbatim, certified;
};

struct GeneratorComparison {
  /// Which slice of the printed curve, e.g. "p^1"; empty for the whole curve.
  std::string label;
  /// The slice's monomial in those extra variables; 1 for the whole curve.
  Monomial key;
  Polynomial verbatim;
  /// Best match inside the kernel span, monic like the printed slice.
  std::optional<Polynomial> replacement;
  /// The replacement passed verify_certificate on its own.
  bool replacement_verified = false;
  std::size_t kernel_dimension = 0;
  std::size_t compared = 0;
  std::vector<CoefficientDiff> diffs;
  bool in_span = false;
};

struct RepairReport {
  std::string id;
  int degree = 0;
  bool verbatim_parsed = false;
  std::string parse_error;
  bool verbatim_verified = false;
  Polynomial cofactor;
  std::string cofactor_source;  // "stated", "default", "division"
  std::optional<field::PolyVectorField> system;
  /// Set when the printed system admits no curve and (b, c) was solved for.
  std::optional<std::pair<Rational, Rational>> recovered_bc;
  std::vector<field::CurveCertificate> certificates;
  std::vector<bool> squarefree_warnings;
  std::vector<GeneratorComparison> comparisons;
  std::vector<std::string> notes;

  bool clean() const;
  /// Sum of key * replacement over the slices when every slice has a
  /// verified replacement; this is the printed curve when nothing changed.
  std::optional<Polynomial> corrected_curve() const;
};

struct NoCurveFound {
  std::string id;
  std::string reason;
};

Outcome<RepairReport, NoCurveFound> repair(const io::CatalogEntry& entry, const DiscoveryOptions& base = {});

}  // namespace darboux::discovery
