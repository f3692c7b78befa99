#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "darboux/discovery/linear_system.hpp"
#include "darboux/field/vector_field.hpp"

namespace darboux::discovery {

/// Integer weights making P weight-homogeneous of weight w(s1)+1 and Q of
/// weight w(s2)+1, with w(s1) = −1 and w(s2) = 1. Variables absent from the
/// system get weight 0. Empty when no such integer weights exist.
std::optional<std::vector<long>> detect_weights(const field::PolyVectorField& X);

struct DiscoveryOptions {
  /// Defaults to n times the second state variable.
  std::optional<Polynomial> cofactor;
  bool quasi_homogeneous = true;
  /// Defaults to n/3 when 3 divides n; otherwise every weight is allowed.
  std::optional<long> target_weight;
  bool all_weights = false;
  /// Exponent caps by parameter name; missing names use the defaults
  /// (q and p: ceil(2n/3), anything else: n).
  std::map<std::string, int> parameter_caps;
  /// When the kernel is empty, also try cofactors k0 + k1*s1 + k2*s2 built
  /// from invariant lines of the top-degree part, k0 in [−4n, 4n].
  bool affine_cofactor_search = false;
};

struct DiscoveryResult {
  AnsatzSpec spec;
  Polynomial cofactor;
  std::size_t rows = 0, cols = 0;
  std::vector<Monomial> support;
  std::vector<std::vector<Rational>> kernel;
  std::vector<field::CurveCertificate> certificates;
  std::vector<bool> squarefree_warnings;
};

AnsatzSpec default_ansatz(const field::PolyVectorField& X, int n, const Polynomial& K, const DiscoveryOptions& opt);

/// Every kernel vector is turned into a curve and re-verified; a failed
/// verification is an internal error and throws.
DiscoveryResult find_invariant_curves(const field::PolyVectorField& X, int n, const DiscoveryOptions& opt = {});

/// Scales g so that the coefficient of the highest pure power of the second
/// state variable is 1; falls back to the leading term when g has no such term.
Polynomial normalize_curve(const Polynomial& g, std::size_t second);

}  // namespace darboux::discovery
