#pragma once

#include "ikernel/algebra.hpp"
#include "ikernel/exactlin.hpp"
#include "ikernel/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ikernel {

/// k-derivation of a polynomial ring, determined by the images of the
/// coordinate variables (unlisted variables map to zero).
class Derivation {
 public:
  explicit Derivation(VarSystemPtr vs);
  Derivation(VarSystemPtr vs, const std::map<std::string, Polynomial>& images);

  /// d/d(name).
  static Derivation partial(const VarSystemPtr& vs, std::string_view name);

  const VarSystemPtr& varsys() const { return vs_; }
  const Polynomial& image(std::size_t var) const { return images_.at(var); }
  /// Nonzero images keyed by variable name.
  std::map<std::string, Polynomial> images() const;

  /// Common value of deg(image(v)) - 1 over nonzero images, if there is one.
  /// A derivation with such a shift maps B_d into B_{d+shift}.
  std::optional<int> degree_shift() const;

 private:
  VarSystemPtr vs_;
  std::vector<Polynomial> images_;
};

/// sum_v image(v) * df/dv.
Polynomial apply(const Derivation& d, const Polynomial& f);

/// Smallest N <= max_steps with d^N(f) = 0.
std::optional<std::size_t> nilpotency_index(const Derivation& d, const Polynomial& f,
                                            std::size_t max_steps);

struct PreservationReport {
  bool preserved = true;
  /// (generator label, certificate that d(generator) lies in the algebra)
  std::vector<std::pair<std::string, MembershipCertificate>> certificates;
  std::optional<std::string> failing_generator;
  std::optional<Polynomial> failing_image;
  /// Generators above check_degree that were not examined.
  std::vector<std::string> skipped;
};

/// Decides d(g) ∈ A for every generator g of degree <= check_degree.
PreservationReport preserves_subalgebra(const Derivation& d, const GradedBasis& a,
                                        std::uint32_t check_degree);

class UnsupportedDerivation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Joint kernel of `ds` on B_d, the full degree-d piece of the ring.
SpanBasis kernel_graded_basis(const std::vector<Derivation>& ds, const VarSystemPtr& vs,
                              std::uint32_t d);
/// Joint kernel of `ds` on A_d, as ker(ds | B_d) ∩ A_d.
SpanBasis kernel_graded_basis(const std::vector<Derivation>& ds, const GradedBasis& a,
                              std::uint32_t d);

}  // namespace ikernel
