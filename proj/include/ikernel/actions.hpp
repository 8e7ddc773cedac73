#pragma once

#include "ikernel/algebra.hpp"
#include "ikernel/derivation.hpp"
#include "ikernel/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace ikernel {

/// Algebra endomorphism of k[coords] depending polynomially on formal group
/// parameters. Images live in the extended system coords ∪ params; a
/// coordinate without an explicit image is fixed.
class ParametricSubstitution {
 public:
  ParametricSubstitution(VarSystemPtr coords, std::vector<std::string> params,
                         std::map<std::string, Rational> identity_values,
                         const std::map<std::string, std::string>& images);

  const VarSystemPtr& coords() const { return coords_; }
  const VarSystemPtr& extended() const { return extended_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::map<std::string, Rational>& identity_values() const { return identity_; }
  /// Image of every coordinate, in the extended system.
  const SubstitutionMap& images() const { return images_; }

  /// f∘σ, a polynomial in coordinates and parameters.
  Polynomial apply(const Polynomial& f) const;
  /// Lifts a coordinate polynomial into the extended system.
  Polynomial lift(const Polynomial& f) const { return embed(f, extended_); }

 private:
  VarSystemPtr coords_;
  VarSystemPtr extended_;
  std::vector<std::string> params_;
  std::map<std::string, Rational> identity_;
  SubstitutionMap images_;
};

/// f∘σ - f vanishes identically in coordinates and parameters.
bool is_invariant(const Polynomial& f, const ParametricSubstitution& s);

/// Composed parameters as polynomials in two parameter copies: the names of
/// σ's parameters (the left factor p) and the same names suffixed "_q".
using CompositionRule = std::map<std::string, std::string>;

/// Checks σ_p ∘ σ_q = σ_{rule(p, q)} as ring endomorphisms, where
/// (σ_p ∘ σ_q)(f) = σ_p(σ_q(f)).
bool check_group_law(const ParametricSubstitution& s, const CompositionRule& rule);

/// Coordinates ∪ params ∪ params_q.
VarSystemPtr composition_system(const ParametricSubstitution& s);
/// The images of σ_p ∘ σ_q, in composition_system(s).
SubstitutionMap compose_with_itself(const ParametricSubstitution& s);

/// v ↦ ∂σ(v)/∂param at the identity parameters.
Derivation infinitesimal(const ParametricSubstitution& s, const std::string& param);

/// σ-images of every generator, split by parameter monomial; each
/// coefficient must be an element of A.
struct StabilityEntry {
  std::string generator;
  std::string parameter_monomial;
  Polynomial coefficient;
  std::optional<MembershipCertificate> certificate;
};

struct StabilityReport {
  bool stable = true;
  std::vector<StabilityEntry> entries;
};

StabilityReport check_stability(const ParametricSubstitution& s, const GradedBasis& a);

/// The ring B = k[x1..xn, y1..ym, z], the subalgebra A_{n,m}, the two actions
/// and their infinitesimal generators.
struct StandardInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  VarSystemPtr coords;
  std::vector<std::size_t> x_vars;
  std::vector<std::size_t> y_vars;
  std::size_t z_var = 0;
  /// Count of the listed generator families before removing repeats.
  std::size_t raw_generator_count = 0;
  SubalgebraSpec anm;
  ParametricSubstitution phi;   // z ↦ z + t*y1
  ParametricSubstitution psi;   // y_j ↦ a*y_j, z ↦ z + b*y1
  CompositionRule phi_rule;
  CompositionRule psi_rule;
  Derivation d1;                // y1 ∂/∂z
  Derivation d2;                // Σ y_j ∂/∂y_j
  MonomialAlgebra monomial;     // k[x^I y^J : |J| > 0]
};

StandardInstance build_standard_instance(std::size_t n, std::size_t m);

/// Action by tag: "ga" for φ, "aut" for ψ.
const ParametricSubstitution& action_by_tag(const StandardInstance& inst, const std::string& tag);

}  // namespace ikernel
