#pragma once

#include "ikernel/algebra.hpp"
#include "ikernel/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ikernel {

struct RelationCoefficient {
  std::size_t index = 0;
  Polynomial value;
  MembershipCertificate certificate;
};

/// sum_i a_i x^i = 0 with every a_i in A. When `monic` is set the leading
/// coefficient is 1 and is not listed.
struct RelationCertificate {
  Polynomial element;
  std::size_t degree = 0;
  bool monic = false;
  std::vector<RelationCoefficient> coefficients;

  /// The left-hand side, evaluated with plain polynomial arithmetic.
  Polynomial evaluate() const;
  /// Left-hand side is zero and every coefficient certificate checks out.
  bool verifies(const SubalgebraSpec& spec) const;
  /// The relation as a polynomial in a fresh variable `x`.
  std::string to_string() const;
};

struct RelationSearchResult {
  std::optional<RelationCertificate> relation;
  std::size_t max_degree = 0;
  std::size_t max_coeff_degree = 0;
  /// Set when the negative answer holds for every degree, not just the bound.
  bool conclusive = false;
  std::string reason;
};

/// Least n <= max_degree with a monic x^n + a_{n-1}x^{n-1} + ... + a_0 = 0,
/// a_i ∈ A homogeneous of degree e(n - i) for x of degree e.
RelationSearchResult integral_relation_search(const Polynomial& x, const GradedBasis& a,
                                              std::size_t max_degree);

/// Nonzero sum b_i x^i = 0 with b_i ∈ A and b_n != 0, minimizing n and then
/// deg b_n. The leading coefficient of b_n is normalized to 1.
RelationSearchResult algebraic_relation_search(const Polynomial& x, const GradedBasis& a,
                                               std::size_t max_degree,
                                               std::size_t max_coeff_degree);

/// True when every listed generator of A vanishes under vars ↦ 0 while x does
/// not. Then a monic relation of any degree would specialize to x̄^n = 0.
bool specialization_forbids_monic(const Polynomial& x, const SubalgebraSpec& spec,
                                  const std::vector<std::size_t>& zero_vars);

struct LocalizationResult {
  std::optional<std::size_t> power;
  std::optional<MembershipCertificate> certificate;  // for f * g^power
  std::size_t max_power = 0;
};

/// Least k <= max_power with f * g^k ∈ A, i.e. f ∈ A[1/g].
LocalizationResult localization_contains(const Polynomial& f, const GradedBasis& a,
                                         const Polynomial& g, std::size_t max_power);

}  // namespace ikernel
