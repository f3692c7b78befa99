#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "darboux/algebra/bivariate.hpp"
#include "darboux/discovery/discover.hpp"

namespace darboux::discovery {

/// The two-parameter normal-form family beta = b*s, gamma = c*s^2, delta = s
/// with cofactor n*y, restricted to one weight block.
struct FamilySpec {
  int degree = 9;
  std::string parameter = "q";
  std::optional<long> target_weight;  // default n/3 when 3 divides n
  bool all_weights = false;
  std::map<std::string, int> parameter_caps;
};

field::PolyVectorField family_system(const FamilySpec& spec, const Rational& b, const Rational& c);
DiscoveryOptions family_options(const FamilySpec& spec);
AnsatzSpec family_ansatz(const FamilySpec& spec);

/// Matrix entries as polynomials in (b, c) of degree at most 2 in each.
struct FamilyMatrix {
  using Coeffs = std::array<Rational, 9>;  // index 3*i + j multiplies b^i c^j
  std::vector<Monomial> rows, cols;
  std::vector<std::vector<std::pair<std::size_t, Coeffs>>> entries;

  ExactMatrix at(const Rational& b, const Rational& c) const;
};

struct InterpolationGridTooSmall {
  Rational b, c;       // the check point that disagreed
  std::size_t row, col;
};

/// Fits every entry on the grid {0, 1, −1}^2 and checks the fit at an
/// extra point.
Outcome<FamilyMatrix, InterpolationGridTooSmall> interpolate_family_matrix(const FamilySpec& spec);

struct FamilyPoint {
  Rational b, c;
  std::size_t kernel_dimension = 0;
  std::vector<field::CurveCertificate> certificates;
  /// Per certificate: the curve has a repeated factor, e.g. it is a power
  /// of a curve of lower degree.
  std::vector<bool> squarefree_warnings;

  /// Some certificate is square-free.
  bool has_squarefree_curve() const;
};

struct FamilyComponent {
  algebra::BPoly equation;  // x = b, y = c
  std::string text;
  /// Kernel dimensions at sample points when the component is a line.
  std::vector<FamilyPoint> samples;
  /// Some sample has a nonzero kernel. A line whose samples all have an
  /// empty kernel is an artifact of the chosen minors.
  bool confirmed = false;
};

struct EliminationResult {
  std::size_t rows = 0, cols = 0;
  bool generic_kernel = false;
  std::vector<std::vector<std::size_t>> minor_rows;
  std::vector<FamilyComponent> components;
  algebra::UPoly eliminant;  // in b
  std::vector<FamilyPoint> verified;
  std::vector<std::pair<Rational, Rational>> rejected;
  double elapsed_seconds = 0;
};

/// Parameter values (b, c) where the weight block has a nonzero kernel:
/// exact minors, their common factor (reported as components), resultants
/// in c, rational roots, and an exact kernel check of every candidate.
Outcome<EliminationResult, InterpolationGridTooSmall> eliminate_family(const FamilySpec& spec);

/// Kernel dimension at each grid point, computed on `threads` workers.
std::vector<FamilyPoint> scan_family(const FamilySpec& spec, const std::vector<std::pair<Rational, Rational>>& grid,
                                     unsigned threads = 1);

/// Renders a polynomial in (b, c).
std::string bc_to_string(const algebra::BPoly& f);

}  // namespace darboux::discovery
