// Randomized and exhaustive property checks against independent oracles.

#include "ikernel/actions.hpp"
#include "ikernel/integrality.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace ikernel;
using testsupport::Gen;
using testsupport::oracle_monomials;
using testsupport::oracle_products;
using testsupport::oracle_rank;
using testsupport::oracle_same_span;
using testsupport::P;

namespace {

VarSystemPtr ring() { return VarSystem::coordinates({"x1", "x2", "y1", "z"}); }

std::vector<Polynomial> generator_polys(const SubalgebraSpec& s) {
  std::vector<Polynomial> out;
  for (const auto& g : s.generators()) out.push_back(g.poly);
  return out;
}

}  // namespace

TEST(PolyProperties, RingAxioms) {
  Gen gen(11);
  const auto vs = ring();
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = gen.poly(vs, 3, 5);
    const auto g = gen.poly(vs, 3, 5);
    const auto h = gen.poly(vs, 3, 5);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ(f * g, g * f);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(PolyProperties, DegreeIsAdditive) {
  Gen gen(12);
  const auto vs = ring();
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = gen.poly(vs, 4, 5);
    const auto g = gen.poly(vs, 4, 5);
    if (f.is_zero() || g.is_zero()) continue;
    EXPECT_EQ((f * g).degree(), f.degree() + g.degree());
  }
}

TEST(PolyProperties, SubstitutionIsAHomomorphism) {
  Gen gen(13);
  const auto vs = ring();
  for (int trial = 0; trial < 100; ++trial) {
    SubstitutionMap sigma;
    for (const auto& name : vs->names()) sigma.emplace(name, gen.poly(vs, 2, 3));
    const auto f = gen.poly(vs, 3, 4);
    const auto g = gen.poly(vs, 3, 4);
    EXPECT_EQ(substitute(f * g, sigma), substitute(f, sigma) * substitute(g, sigma));
    EXPECT_EQ(substitute(f + g, sigma), substitute(f, sigma) + substitute(g, sigma));
  }
}

TEST(PolyProperties, CompositionOfSubstitutions) {
  Gen gen(14);
  const auto vs = ring();
  for (int trial = 0; trial < 50; ++trial) {
    SubstitutionMap s1, s2, composed;
    for (const auto& name : vs->names()) {
      s1.emplace(name, gen.poly(vs, 2, 3));
      s2.emplace(name, gen.poly(vs, 2, 3));
    }
    for (const auto& [name, img] : s1) composed.emplace(name, substitute(img, s2));
    const auto f = gen.poly(vs, 3, 4);
    EXPECT_EQ(substitute(substitute(f, s1), s2), substitute(f, composed));
  }
}

TEST(PolyProperties, PrintParseRoundTrip) {
  Gen gen(15);
  const auto vs = ring();
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = gen.poly(vs, 5, 6);
    const auto text = f.to_string();
    const auto back = parse_polynomial(text, vs);
    EXPECT_EQ(back, f) << text;
    EXPECT_EQ(back.to_string(), text);
  }
}

TEST(PolyProperties, HomogeneousComponentsSumBack) {
  Gen gen(16);
  const auto vs = ring();
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = gen.poly(vs, 5, 8);
    Polynomial sum(vs);
    for (std::uint32_t d = 0; d <= 5; ++d) sum += homogeneous_component(f, d);
    EXPECT_EQ(sum, f);
  }
}

TEST(LinearAlgebraProperties, RankNullity) {
  Gen gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = gen.integer(1, 40);
    const int cols = gen.integer(1, 40);
    const int rank_cap = gen.integer(1, std::min(rows, cols));
    // low-rank products exercise dependent rows
    RationalMatrix l(rows, rank_cap), r(rank_cap, cols);
    for (Index i = 0; i < l.rows(); ++i) {
      for (Index j = 0; j < l.cols(); ++j) l(i, j) = gen.integer(-3, 3);
    }
    for (Index i = 0; i < r.rows(); ++i) {
      for (Index j = 0; j < r.cols(); ++j) r(i, j) = gen.integer(-3, 3);
    }
    const RationalMatrix m = l * r;
    const auto ns = nullspace(m);
    EXPECT_EQ(rank(m) + ns.cols(), m.cols());
    EXPECT_TRUE(RationalMatrix(m * ns).isZero());
    const auto e = rref(m);
    EXPECT_EQ(rref(e.matrix).matrix, e.matrix);
  }
}

TEST(LinearAlgebraProperties, GrassmannIdentity) {
  Gen gen(22);
  const auto vs = ring();
  const std::vector<std::size_t> all{0, 1, 2, 3};
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t d = static_cast<std::uint32_t>(gen.integer(1, 3));
    std::vector<Polynomial> a, b;
    const int na = gen.integer(0, 8), nb = gen.integer(0, 8);
    for (int i = 0; i < na; ++i) a.push_back(gen.homogeneous(vs, all, d, 3));
    // share some vectors so the intersection is often nontrivial
    for (int i = 0; i < nb; ++i) {
      b.push_back(!a.empty() && gen.integer(0, 2) == 0
                      ? a[static_cast<std::size_t>(gen.integer(0, na - 1))] * Rational(gen.integer(1, 3))
                      : gen.homogeneous(vs, all, d, 3));
    }
    const auto frame = monomials_of_degree(vs->size(), all, d);
    const auto u = SpanBasis::span_of(vs, frame, a);
    const auto v = SpanBasis::span_of(vs, frame, b);
    const auto meet = intersect_spans(u, v);
    const auto join = sum_spans(u, v);
    EXPECT_EQ(meet.dim() + join.dim(), u.dim() + v.dim());
    for (const auto& p : meet.elements()) {
      EXPECT_TRUE(u.contains(p));
      EXPECT_TRUE(v.contains(p));
    }
    EXPECT_EQ(static_cast<std::size_t>(u.dim()), oracle_rank(a));
  }
}

TEST(LinearAlgebraProperties, SolveInSpanReconstructs) {
  Gen gen(23);
  const auto vs = ring();
  const std::vector<std::size_t> all{0, 1, 2, 3};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Polynomial> a;
    for (int i = 0; i < gen.integer(1, 6); ++i) a.push_back(gen.homogeneous(vs, all, 2, 3));
    const auto s = SpanBasis::span_of(vs, a);
    const auto target = gen.homogeneous(vs, all, 2, 3);
    const auto c = solve_in_span(s, target);
    testsupport::OracleSpan oracle;
    for (const auto& p : a) oracle.insert(p);
    EXPECT_EQ(c.has_value(), oracle.contains(target));
    if (c) {
      Polynomial rebuilt(vs);
      for (Index i = 0; i < c->size(); ++i) rebuilt += s.element(i) * (*c)(i);
      EXPECT_EQ(rebuilt, target);
    }
  }
}

TEST(DerivationProperties, Leibniz) {
  Gen gen(31);
  const auto vs = ring();
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, Polynomial> images;
    for (const auto& name : vs->names()) images.emplace(name, gen.poly(vs, 2, 3));
    const Derivation d(vs, images);
    const auto f = gen.poly(vs, 3, 4);
    const auto g = gen.poly(vs, 3, 4);
    EXPECT_EQ(apply(d, f * g), f * apply(d, g) + g * apply(d, f));
    EXPECT_EQ(apply(d, f * Rational(5) + g), apply(d, f) * Rational(5) + apply(d, g));
    EXPECT_TRUE(apply(d, Polynomial(vs, gen.rational())).is_zero());
  }
}

TEST(DerivationProperties, KernelSoundAndCompleteAgainstOracle) {
  for (auto [n, m] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    const auto inst = build_standard_instance(n, m);
    const auto& vs = inst.coords;
    const std::vector<std::vector<Derivation>> families{{inst.d1}, {inst.d2}, {inst.d1, inst.d2}};
    for (const auto& ds : families) {
      for (std::uint32_t d = 0; d <= 5; ++d) {
        const auto k = kernel_graded_basis(ds, vs, d);
        for (const auto& p : k.elements()) {
          for (const auto& der : ds) EXPECT_TRUE(apply(der, p).is_zero());
        }
        // brute force: nullity of the stacked map on all monomials of degree d
        const auto monos = oracle_monomials(vs->size(), vs->coordinate_indices(), d);
        std::size_t image_rank = 0;
        {
          // rows indexed by monomial, columns by (derivation, output monomial)
          testsupport::OracleSpan span;
          const auto shift = static_cast<std::uint32_t>(vs->size() + 1);
          for (const auto& mono : monos) {
            testsupport::Row row;
            for (std::size_t k2 = 0; k2 < ds.size(); ++k2) {
              const auto image = apply(ds[k2], Polynomial(vs, mono));
              for (const auto& [om, c] : image.terms()) {
                auto key = om.exponents();
                key.push_back(static_cast<std::uint32_t>(k2) * shift);
                row[key] = c;
              }
            }
            span.insert(row);
          }
          image_rank = span.rank();
        }
        EXPECT_EQ(static_cast<std::size_t>(k.dim()), monos.size() - image_rank);
      }
    }
  }
}

TEST(DerivationProperties, D1KernelIsZFree) {
  for (auto [n, m] : {std::pair{1, 1}, std::pair{2, 2}}) {
    const auto inst = build_standard_instance(n, m);
    const auto& vs = inst.coords;
    std::vector<std::size_t> xy = inst.x_vars;
    xy.insert(xy.end(), inst.y_vars.begin(), inst.y_vars.end());
    for (std::uint32_t d = 0; d <= 5; ++d) {
      std::vector<Polynomial> zfree;
      for (const auto& mono : oracle_monomials(vs->size(), xy, d)) zfree.emplace_back(vs, mono);
      EXPECT_TRUE(oracle_same_span(kernel_graded_basis({inst.d1}, vs, d).elements(), zfree));
    }
  }
}

TEST(AlgebraProperties, GradedPieceMatchesProductEnumeration) {
  std::vector<SubalgebraSpec> specs;
  for (auto [n, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
    const auto inst = build_standard_instance(n, m);
    specs.push_back(inst.anm);
    specs.push_back(monomial_algebra_spec(inst.monomial, 5));
  }
  const auto cusp = VarSystem::coordinates({"u", "w"});
  specs.emplace_back(cusp, std::vector<Generator>{
                               {"u2", P(cusp, "u^2")}, {"u3", P(cusp, "u^3")}, {"w", P(cusp, "w")}});
  for (const auto& spec : specs) {
    const GradedBasis a(spec);
    const auto gens = generator_polys(spec);
    for (std::uint32_t d = 0; d <= 5; ++d) {
      const auto brute = oracle_products(spec.varsys(), gens, d);
      EXPECT_EQ(static_cast<std::size_t>(graded_piece(a, d).dim()), oracle_rank(brute)) << d;
      EXPECT_TRUE(oracle_same_span(graded_piece(a, d).elements(), brute));
    }
  }
}

TEST(AlgebraProperties, Multiplicativity) {
  Gen gen(41);
  const auto inst = build_standard_instance(2, 1);
  const GradedBasis a(inst.anm);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = static_cast<std::uint32_t>(gen.integer(1, 3));
    const auto e = static_cast<std::uint32_t>(gen.integer(1, 3));
    Polynomial f(inst.coords), g(inst.coords);
    for (const auto& p : graded_piece(a, d).elements()) f += p * gen.rational();
    for (const auto& p : graded_piece(a, e).elements()) g += p * gen.rational();
    const auto cert = membership(a, f * g);
    ASSERT_TRUE(cert);
    EXPECT_TRUE(cert->verifies(inst.anm, f * g));
  }
}

TEST(AlgebraProperties, CertificatesAreSound) {
  Gen gen(42);
  const auto inst = build_standard_instance(1, 2);
  const GradedBasis a(inst.anm);
  const auto& vs = inst.coords;
  const auto all = vs->coordinate_indices();
  int members = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto d = static_cast<std::uint32_t>(gen.integer(1, 4));
    const auto f = gen.homogeneous(vs, all, d, 3);
    const auto cert = membership(a, f);
    testsupport::OracleSpan oracle;
    for (const auto& p : oracle_products(vs, generator_polys(inst.anm), d)) oracle.insert(p);
    EXPECT_EQ(cert.has_value(), oracle.contains(f));
    if (cert) {
      ++members;
      EXPECT_TRUE(cert->verifies(inst.anm, f));
    }
  }
  // biased draws: guaranteed members built from generators
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial f(vs);
    for (const auto& p : graded_piece(a, 3).elements()) f += p * gen.rational();
    const auto cert = membership(a, f);
    ASSERT_TRUE(cert);
    EXPECT_TRUE(cert->verifies(inst.anm, f));
    ++members;
  }
  EXPECT_GE(members, 50);
}

TEST(AlgebraProperties, LemmaInfiniDimensionCount) {
  for (auto [n, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
    const auto inst = build_standard_instance(n, m);
    const GradedBasis a(inst.anm);
    std::vector<std::size_t> xy = inst.x_vars;
    xy.insert(xy.end(), inst.y_vars.begin(), inst.y_vars.end());
    for (std::uint32_t d = 1; d <= 6; ++d) {
      std::size_t count = 0;
      for (const auto& mono : oracle_monomials(inst.coords->size(), xy, d)) {
        std::uint32_t ydeg = 0;
        for (auto y : inst.y_vars) ydeg += mono[y];
        if (ydeg >= 1) ++count;
      }
      EXPECT_EQ(static_cast<std::size_t>(intersect_with_subring(a, xy, d).dim()), count);
      EXPECT_EQ(static_cast<std::size_t>(monomial_algebra_piece(inst.monomial, d).dim()), count);
    }
  }
}

TEST(ActionProperties, InvarianceMatchesKernels) {
  for (auto [n, m] : {std::pair{1, 1}, std::pair{2, 1}}) {
    const auto inst = build_standard_instance(n, m);
    const auto& vs = inst.coords;
    for (std::uint32_t d = 0; d <= 6; ++d) {
      std::vector<Polynomial> tests;
      for (const auto& mono : oracle_monomials(vs->size(), vs->coordinate_indices(), d)) {
        tests.emplace_back(vs, mono);
      }
      for (const auto& p : kernel_graded_basis({inst.d1}, vs, d).elements()) tests.push_back(p);
      for (const auto& f : tests) {
        const bool k1 = apply(inst.d1, f).is_zero();
        const bool k2 = apply(inst.d2, f).is_zero();
        EXPECT_EQ(is_invariant(f, inst.phi), k1) << f.to_string();
        EXPECT_EQ(is_invariant(f, inst.psi), k1 && k2) << f.to_string();
      }
    }
  }
}

TEST(ActionProperties, IdentityParametersGiveIdentity) {
  Gen gen(51);
  const auto inst = build_standard_instance(2, 1);
  const auto& vs = inst.coords;
  for (const auto* tag : {"ga", "aut"}) {
    const auto& s = action_by_tag(inst, tag);
    SubstitutionMap at_identity;
    for (const auto& [p, v] : s.identity_values()) at_identity.emplace(p, Polynomial(vs, v));
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = gen.poly(vs, 3, 5);
      EXPECT_EQ(substitute(s.apply(f), at_identity, vs), f);
    }
  }
}

TEST(IntegralityProperties, RelationsReevaluate) {
  const auto inst = build_standard_instance(2, 1);
  const GradedBasis a(inst.anm);
  const auto& vs = inst.coords;
  for (const auto* text : {"x1", "x2", "y1", "z", "x1 + x2", "x1 - 2*z"}) {
    const auto res = integral_relation_search(P(vs, text), a, 4);
    ASSERT_TRUE(res.relation) << text;
    EXPECT_TRUE(res.relation->evaluate().is_zero());
    EXPECT_TRUE(res.relation->verifies(inst.anm));
  }
}
