#pragma once

#include "ikernel/exactlin.hpp"
#include "ikernel/poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace ikernel {

struct Generator {
  std::string label;
  Polynomial poly;
};

/// Finitely generated subalgebra of a polynomial ring, given by labeled
/// generators. With the homogeneous flag set every generator must be
/// homogeneous of positive degree; this is checked on construction.
///
/// `exact_through` marks a spec that only describes the intended algebra up
/// to some degree (a truncated generating set of an infinitely generated
/// algebra); graded pieces above it are refused.
class SubalgebraSpec {
 public:
  SubalgebraSpec(VarSystemPtr vs, std::vector<Generator> generators, bool homogeneous = true,
                 std::optional<std::uint32_t> exact_through = std::nullopt);

  const VarSystemPtr& varsys() const { return vs_; }
  const std::vector<Generator>& generators() const { return generators_; }
  bool homogeneous() const { return homogeneous_; }
  std::optional<std::uint32_t> exact_through() const { return exact_through_; }
  /// One variable per generator label; certificates are polynomials here.
  const VarSystemPtr& label_system() const { return labels_; }

  /// label -> generator polynomial, for evaluating certificates.
  SubstitutionMap label_images() const;

 private:
  VarSystemPtr vs_;
  std::vector<Generator> generators_;
  bool homogeneous_;
  std::optional<std::uint32_t> exact_through_;
  VarSystemPtr labels_;
};

/// Drops generators whose polynomial repeats an earlier one.
std::vector<Generator> deduplicate(std::vector<Generator> generators);

/// Formal polynomial in generator labels.
struct MembershipCertificate {
  Polynomial expression;

  /// Value of the expression with labels replaced by generators.
  Polynomial evaluate(const SubalgebraSpec& spec) const;
  bool verifies(const SubalgebraSpec& spec, const Polynomial& target) const {
    return evaluate(spec) == target;
  }
};

/// Degree-d piece of a subalgebra. `basis` is in the frame of all coordinate
/// monomials of degree d. `products` lists linearly independent generator
/// products (as monomials in the label system) spanning the piece, and
/// basis rows = transform * values of `products`.
struct GradedPiece {
  std::uint32_t degree = 0;
  SpanBasis basis;
  std::vector<Monomial> products;
  std::vector<Polynomial> product_values;
  RationalMatrix transform;
};

/// Memoized graded structure of a homogeneous subalgebra. Pieces are built
/// on demand, bottom-up; concurrent callers are serialized on one mutex.
class GradedBasis {
 public:
  explicit GradedBasis(SubalgebraSpec spec);

  const SubalgebraSpec& spec() const { return spec_; }
  const VarSystemPtr& varsys() const { return spec_.varsys(); }
  const GradedPiece& piece(std::uint32_t d) const;
  std::vector<Index> dimensions(std::uint32_t through) const;

 private:
  void build_through(std::uint32_t d) const;

  SubalgebraSpec spec_;
  std::vector<std::size_t> coordinates_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, std::unique_ptr<const GradedPiece>> pieces_;
};

/// All coordinate monomials of degree d, leading first: the frame of B_d.
std::vector<Monomial> degree_frame(const VarSystemPtr& vs, std::uint32_t d);
/// The full degree-d piece of the polynomial ring.
SpanBasis full_piece(const VarSystemPtr& vs, std::uint32_t d);

SpanBasis graded_piece(const GradedBasis& a, std::uint32_t d);

std::optional<MembershipCertificate> membership(const GradedBasis& a, const Polynomial& f);

/// (A ∩ k[vars])_d.
SpanBasis intersect_with_subring(const GradedBasis& a, const std::vector<std::size_t>& vars,
                                 std::uint32_t d);

/// (A_+ · A_+)_d, the decomposable part of the degree-d piece.
SpanBasis decomposable_piece(const GradedBasis& a, std::uint32_t d);
/// Basis of a complement of (A_+ · A_+)_d in A_d.
SpanBasis indecomposable_generators(const GradedBasis& a, std::uint32_t d);

/// k[x^I y^J : |J| > 0] over chosen x and y coordinates of a system.
struct MonomialAlgebra {
  VarSystemPtr vs;
  std::vector<std::size_t> x_vars;
  std::vector<std::size_t> y_vars;
};

/// Closed form: constant, or only x/y variables with positive total y-degree.
bool monomial_membership(const MonomialAlgebra& a, const Monomial& mono);
/// Closed-form degree-d piece: the span of the member monomials.
SpanBasis monomial_algebra_piece(const MonomialAlgebra& a, std::uint32_t d);
/// Generators x^I y_j with |I| + 1 <= through_degree, exact through that degree.
SubalgebraSpec monomial_algebra_spec(const MonomialAlgebra& a, std::uint32_t through_degree);

}  // namespace ikernel
