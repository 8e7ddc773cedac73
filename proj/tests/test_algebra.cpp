#include "ikernel/actions.hpp"
#include "ikernel/algebra.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace ikernel;
using testsupport::P;

namespace {

SpanBasis span(const VarSystemPtr& vs, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> polys;
  for (const auto* t : texts) polys.push_back(P(vs, t));
  return SpanBasis::span_of(vs, polys);
}

}  // namespace

TEST(SubalgebraSpec, ValidatesGenerators) {
  const auto vs = VarSystem::coordinates({"x", "y"});
  EXPECT_THROW(SubalgebraSpec(vs, {{"g", P(vs, "x + y^2")}}), std::invalid_argument);
  EXPECT_THROW(SubalgebraSpec(vs, {{"g", P(vs, "1")}}), std::invalid_argument);
  EXPECT_NO_THROW(SubalgebraSpec(vs, {{"g", P(vs, "x + y^2")}}, false));
  EXPECT_THROW(SubalgebraSpec(vs, {{"g", P(VarSystem::coordinates({"x"}), "x")}}),
               VarSystemMismatch);
  const auto pv = VarSystem::make({"x", "t"}, {VarRole::coordinate, VarRole::parameter});
  EXPECT_THROW(SubalgebraSpec(pv, {{"g", P(pv, "t*x")}}), std::invalid_argument);
  EXPECT_THROW(GradedBasis(SubalgebraSpec(vs, {{"g", P(vs, "x + y^2")}}, false)),
               std::invalid_argument);
}

TEST(GradedPiece, Examples) {
  const auto inst = build_standard_instance(1, 1);
  const GradedBasis a(inst.anm);
  const auto& vs = inst.coords;
  EXPECT_TRUE(graded_piece(a, 0).same_subspace(span(vs, {"1"})));
  EXPECT_TRUE(graded_piece(a, 1).same_subspace(span(vs, {"y1", "z"})));
  const auto a2 = graded_piece(a, 2);
  EXPECT_EQ(a2.dim(), 5);
  EXPECT_TRUE(a2.same_subspace(span(vs, {"y1^2", "y1*z", "z^2", "x1^2 + x1*z", "x1*y1"})));
  EXPECT_EQ(a.dimensions(8), (std::vector<Index>{1, 2, 5, 9, 14, 20, 27, 35, 44}));
}

TEST(GradedPiece, TransformReproducesBasis) {
  const auto inst = build_standard_instance(2, 1);
  const GradedBasis a(inst.anm);
  for (std::uint32_t d = 0; d <= 4; ++d) {
    const auto& piece = a.piece(d);
    ASSERT_EQ(piece.products.size(), static_cast<std::size_t>(piece.basis.dim()));
    for (Index i = 0; i < piece.basis.dim(); ++i) {
      Polynomial sum(inst.coords);
      for (Index k = 0; k < piece.transform.cols(); ++k) {
        sum += piece.product_values[static_cast<std::size_t>(k)] * piece.transform(i, k);
      }
      EXPECT_EQ(sum, piece.basis.element(i));
    }
  }
}

TEST(GradedPiece, TruncatedSpecRefusesHigherDegrees) {
  const auto inst = build_standard_instance(1, 1);
  const GradedBasis m(monomial_algebra_spec(inst.monomial, 3));
  EXPECT_NO_THROW(m.piece(3));
  EXPECT_THROW(m.piece(4), std::out_of_range);
}

TEST(Membership, Examples) {
  const auto inst = build_standard_instance(1, 1);
  const GradedBasis a(inst.anm);
  const auto& vs = inst.coords;

  const auto target = P(vs, "x1^2*y1");
  const auto cert = membership(a, target);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->verifies(inst.anm, target));
  EXPECT_EQ(cert->expression, P(inst.anm.label_system(), "y1*t1 - z*x1y1"));

  EXPECT_FALSE(membership(a, P(vs, "x1")));

  const auto zc = membership(a, P(vs, "z"));
  ASSERT_TRUE(zc);
  EXPECT_EQ(zc->expression, P(inst.anm.label_system(), "z"));
}

TEST(Membership, InhomogeneousAndConstants) {
  const auto inst = build_standard_instance(1, 1);
  const GradedBasis a(inst.anm);
  const auto& vs = inst.coords;
  const auto f = P(vs, "3 + z + x1^2*y1 - 1/2*y1*z");
  const auto cert = membership(a, f);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->verifies(inst.anm, f));
  EXPECT_FALSE(membership(a, P(vs, "z + x1")));
  EXPECT_THROW(membership(a, P(VarSystem::coordinates({"x1"}), "x1")), VarSystemMismatch);
}

TEST(IntersectWithSubring, Examples) {
  const auto inst = build_standard_instance(1, 1);
  const GradedBasis a(inst.anm);
  const auto& vs = inst.coords;
  const auto xy = std::vector<std::size_t>{0, 1};
  const auto i2 = intersect_with_subring(a, xy, 2);
  EXPECT_EQ(i2.dim(), 2);
  EXPECT_TRUE(i2.same_subspace(span(vs, {"x1*y1", "y1^2"})));
  for (std::uint32_t d = 1; d <= 8; ++d) EXPECT_EQ(intersect_with_subring(a, {0}, d).dim(), 0);
  EXPECT_TRUE(intersect_with_subring(a, xy, 0).same_subspace(span(vs, {"1"})));
}

TEST(MonomialMembership, Examples) {
  const auto inst = build_standard_instance(1, 1);
  EXPECT_TRUE(monomial_membership(inst.monomial, Monomial({3, 1, 0})));
  EXPECT_FALSE(monomial_membership(inst.monomial, Monomial({3, 0, 0})));
  EXPECT_TRUE(monomial_membership(inst.monomial, Monomial({0, 0, 0})));
  EXPECT_FALSE(monomial_membership(inst.monomial, Monomial({0, 1, 1})));
}

TEST(MonomialMembership, AgreesWithGeneralMembership) {
  const auto inst = build_standard_instance(2, 1);
  const GradedBasis m(monomial_algebra_spec(inst.monomial, 5));
  for (std::uint32_t d = 0; d <= 5; ++d) {
    for (const auto& mono : degree_frame(inst.coords, d)) {
      const bool fast = monomial_membership(inst.monomial, mono);
      const bool general = membership(m, Polynomial(inst.coords, mono)).has_value();
      EXPECT_EQ(fast, general) << to_string(mono, *inst.coords);
    }
  }
}

TEST(IndecomposableGenerators, MonomialAlgebraOneOne) {
  const auto inst = build_standard_instance(1, 1);
  const GradedBasis m(monomial_algebra_spec(inst.monomial, 8));
  const auto& vs = inst.coords;
  for (std::uint32_t d = 1; d <= 8; ++d) {
    const auto ind = indecomposable_generators(m, d);
    EXPECT_EQ(ind.dim(), 1) << d;
    const Polynomial witness(vs, Monomial({d - 1, 1, 0}));
    EXPECT_FALSE(decomposable_piece(m, d).contains(witness));
    EXPECT_TRUE(sum_spans(decomposable_piece(m, d), ind).same_subspace(graded_piece(m, d)));
  }
  EXPECT_THROW(indecomposable_generators(m, 0), std::invalid_argument);
}

TEST(IndecomposableGenerators, PolynomialRingInOneVariable) {
  const auto vs = VarSystem::coordinates({"y1"});
  const GradedBasis k(SubalgebraSpec(vs, {{"y", P(vs, "y1")}}));
  EXPECT_EQ(indecomposable_generators(k, 1).dim(), 1);
  for (std::uint32_t d = 2; d <= 6; ++d) EXPECT_EQ(indecomposable_generators(k, d).dim(), 0);
}

TEST(IndecomposableGenerators, MonomialAlgebraTwoOneDegreeThree) {
  const auto inst = build_standard_instance(2, 1);
  const GradedBasis m(monomial_algebra_spec(inst.monomial, 3));
  const auto& vs = inst.coords;
  const auto ind = indecomposable_generators(m, 3);
  EXPECT_EQ(ind.dim(), 3);
  const auto dec = decomposable_piece(m, 3);
  for (const auto* w : {"x1^2*y1", "x1*x2*y1", "x2^2*y1"}) {
    EXPECT_FALSE(dec.contains(P(vs, w))) << w;
  }
  // the decomposable part is y1 times the degree-2 members
  std::vector<Polynomial> y_times;
  for (const auto& p : graded_piece(m, 2).elements()) y_times.push_back(P(vs, "y1") * p);
  EXPECT_TRUE(dec.same_subspace(SpanBasis::span_of(vs, degree_frame(vs, 3), y_times)));
}

TEST(MonomialAlgebraSpec, GeneratorList) {
  const auto inst = build_standard_instance(1, 1);
  const auto spec = monomial_algebra_spec(inst.monomial, 4);
  ASSERT_EQ(spec.generators().size(), 4u);
  EXPECT_EQ(spec.generators()[3].poly, P(inst.coords, "x1^3*y1"));
  EXPECT_EQ(spec.exact_through(), 4u);
}

TEST(Deduplicate, KeepsFirst) {
  const auto vs = VarSystem::coordinates({"x"});
  const auto out = deduplicate({{"a", P(vs, "x")}, {"b", P(vs, "x")}, {"c", P(vs, "x^2")}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].label, "a");
  EXPECT_EQ(out[1].label, "c");
}
