#include "ikernel/algebra.hpp"

#include <algorithm>
#include <set>

namespace ikernel {

// ----------------------------------------------------------- SubalgebraSpec

SubalgebraSpec::SubalgebraSpec(VarSystemPtr vs, std::vector<Generator> generators,
                               bool homogeneous, std::optional<std::uint32_t> exact_through)
    : vs_(std::move(vs)),
      generators_(std::move(generators)),
      homogeneous_(homogeneous),
      exact_through_(exact_through) {
  std::vector<std::string> labels;
  const auto coords = vs_->coordinate_indices();
  for (const auto& g : generators_) {
    if (!same_system(g.poly.varsys(), vs_)) {
      throw VarSystemMismatch("generator '" + g.label + "' is not in the algebra's system");
    }
    if (!g.poly.only_involves(coords)) {
      throw std::invalid_argument("generator '" + g.label + "' involves a parameter");
    }
    if (homogeneous_ && (g.poly.degree() <= 0 || !g.poly.is_homogeneous())) {
      throw std::invalid_argument("generator '" + g.label +
                                  "' is not homogeneous of positive degree");
    }
    labels.push_back(g.label);
  }
  labels_ = VarSystem::coordinates(std::move(labels));
}

SubstitutionMap SubalgebraSpec::label_images() const {
  SubstitutionMap out;
  for (const auto& g : generators_) out.emplace(g.label, g.poly);
  return out;
}

std::vector<Generator> deduplicate(std::vector<Generator> generators) {
  std::vector<Generator> out;
  for (auto& g : generators) {
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const Generator& h) { return h.poly == g.poly; });
    if (!seen) out.push_back(std::move(g));
  }
  return out;
}

Polynomial MembershipCertificate::evaluate(const SubalgebraSpec& spec) const {
  return substitute(expression, spec.label_images(), spec.varsys());
}

// -------------------------------------------------------------- GradedBasis

std::vector<Monomial> degree_frame(const VarSystemPtr& vs, std::uint32_t d) {
  return monomials_of_degree(vs->size(), vs->coordinate_indices(), d);
}

SpanBasis full_piece(const VarSystemPtr& vs, std::uint32_t d) {
  auto frame = degree_frame(vs, d);
  Echelon<Rational> e;
  const auto n = static_cast<Index>(frame.size());
  e.matrix = RationalMatrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) e.pivots.push_back(i);
  return SpanBasis(vs, std::move(frame), std::move(e));
}

GradedBasis::GradedBasis(SubalgebraSpec spec)
    : spec_(std::move(spec)), coordinates_(spec_.varsys()->coordinate_indices()) {
  if (!spec_.homogeneous()) {
    throw std::invalid_argument("graded pieces need a homogeneous generator set");
  }
}

const GradedPiece& GradedBasis::piece(std::uint32_t d) const {
  if (spec_.exact_through() && d > *spec_.exact_through()) {
    throw std::out_of_range("subalgebra spec is only exact through degree " +
                            std::to_string(*spec_.exact_through()));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  build_through(d);
  return *pieces_.at(d);
}

std::vector<Index> GradedBasis::dimensions(std::uint32_t through) const {
  std::vector<Index> out;
  for (std::uint32_t d = 0; d <= through; ++d) out.push_back(piece(d).basis.dim());
  return out;
}

void GradedBasis::build_through(std::uint32_t d) const {
  const auto& vs = spec_.varsys();
  const auto& labels = spec_.label_system();
  const auto& gens = spec_.generators();

  for (std::uint32_t deg = 0; deg <= d; ++deg) {
    if (pieces_.count(deg)) continue;
    auto frame = degree_frame(vs, deg);
    SpanBasis shell(vs, frame);

    if (deg == 0) {
      EchelonBuilder b(shell.frame_size(), true);
      Polynomial one(vs, Rational(1));
      b.insert(*shell.to_row(one));
      auto res = b.finish();
      pieces_.emplace(deg, std::make_unique<const GradedPiece>(GradedPiece{
                               deg, SpanBasis(vs, std::move(frame), std::move(res.echelon)),
                               {Monomial(labels->size())}, {one}, std::move(res.transform)}));
      continue;
    }

    // A_d = sum over generators g of g * A_{d - deg g}.
    EchelonBuilder builder(shell.frame_size(), true);
    std::vector<Monomial> candidates;
    std::vector<Polynomial> candidate_values;
    std::set<Monomial, GrlexDescending> tried;
    for (std::size_t gi = 0; gi < gens.size() && !builder.full(); ++gi) {
      const auto gdeg = static_cast<std::uint32_t>(gens[gi].poly.degree());
      if (gdeg > deg) continue;
      const GradedPiece& lower = *pieces_.at(deg - gdeg);
      const Monomial gmono = Monomial::variable(labels->size(), gi);
      for (std::size_t k = 0; k < lower.products.size() && !builder.full(); ++k) {
        Monomial label = gmono * lower.products[k];
        if (!tried.insert(label).second) continue;
        Polynomial value = gens[gi].poly * lower.product_values[k];
        if (builder.insert(*shell.to_row(value))) {
          candidates.push_back(std::move(label));
          candidate_values.push_back(std::move(value));
        } else {
          // keep indices aligned with builder.accepted()
          candidates.emplace_back();
          candidate_values.emplace_back(vs);
        }
      }
    }

    auto res = builder.finish();
    std::vector<Monomial> products;
    std::vector<Polynomial> values;
    for (auto idx : res.accepted) {
      products.push_back(std::move(candidates[idx]));
      values.push_back(std::move(candidate_values[idx]));
    }
    pieces_.emplace(deg, std::make_unique<const GradedPiece>(GradedPiece{
                             deg, SpanBasis(vs, std::move(frame), std::move(res.echelon)),
                             std::move(products), std::move(values), std::move(res.transform)}));
  }
}

SpanBasis graded_piece(const GradedBasis& a, std::uint32_t d) {
  return a.piece(d).basis;
}

// --------------------------------------------------------------- membership

std::optional<MembershipCertificate> membership(const GradedBasis& a, const Polynomial& f) {
  if (!same_system(f.varsys(), a.varsys())) {
    throw VarSystemMismatch("membership: variable system mismatch");
  }
  const auto& labels = a.spec().label_system();
  Polynomial expression(labels);
  for (const auto& [d, component] : homogeneous_components(f)) {
    if (!component.only_involves(a.varsys()->coordinate_indices())) return std::nullopt;
    const GradedPiece& piece = a.piece(d);
    auto coords = solve_in_span(piece.basis, component);
    if (!coords) return std::nullopt;
    // coefficients over products: coords^T * transform
    for (Index k = 0; k < static_cast<Index>(piece.products.size()); ++k) {
      Rational c = 0;
      for (Index i = 0; i < coords->size(); ++i) {
        if ((*coords)(i) != 0 && piece.transform(i, k) != 0) c += (*coords)(i) * piece.transform(i, k);
      }
      expression.add_term(piece.products[static_cast<std::size_t>(k)], c);
    }
  }
  return MembershipCertificate{std::move(expression)};
}

SpanBasis intersect_with_subring(const GradedBasis& a, const std::vector<std::size_t>& vars,
                                 std::uint32_t d) {
  const auto& vs = a.varsys();
  std::vector<Polynomial> monos;
  for (const auto& m : monomials_of_degree(vs->size(), vars, d)) monos.emplace_back(vs, m);
  const auto sub = SpanBasis::span_of(vs, degree_frame(vs, d), monos);
  return intersect_spans(a.piece(d).basis, sub);
}

namespace {

// Fills `builder` with g * A_{d - deg g} for every generator with deg g < d.
void insert_decomposables(const GradedBasis& a, std::uint32_t d, const SpanBasis& shell,
                          EchelonBuilder& builder) {
  const auto& gens = a.spec().generators();
  for (const auto& g : gens) {
    const auto gdeg = static_cast<std::uint32_t>(g.poly.degree());
    if (gdeg >= d) continue;
    const GradedPiece& lower = a.piece(d - gdeg);
    for (const auto& v : lower.product_values) {
      if (builder.full()) return;
      builder.insert(*shell.to_row(g.poly * v));
    }
  }
}

}  // namespace

SpanBasis decomposable_piece(const GradedBasis& a, std::uint32_t d) {
  const auto& vs = a.varsys();
  SpanBasis shell(vs, degree_frame(vs, d));
  if (d == 0) return shell;
  EchelonBuilder builder(shell.frame_size());
  insert_decomposables(a, d, shell, builder);
  auto res = builder.finish();
  return SpanBasis(vs, shell.frame(), std::move(res.echelon));
}

SpanBasis indecomposable_generators(const GradedBasis& a, std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("indecomposable_generators: degree must be positive");
  const auto& vs = a.varsys();
  const GradedPiece& piece = a.piece(d);
  SpanBasis shell(vs, piece.basis.frame());
  EchelonBuilder builder(shell.frame_size());
  insert_decomposables(a, d, shell, builder);
  std::vector<Polynomial> complement;
  for (Index i = 0; i < piece.basis.dim(); ++i) {
    const auto row = piece.basis.rows().row(i);
    if (builder.insert(row)) complement.push_back(piece.basis.from_row(row));
  }
  return SpanBasis::span_of(vs, shell.frame(), complement);
}

// --------------------------------------------------------- monomial algebra

bool monomial_membership(const MonomialAlgebra& a, const Monomial& mono) {
  if (mono.is_one()) return true;
  std::vector<bool> allowed(mono.size(), false);
  for (auto x : a.x_vars) allowed.at(x) = true;
  std::uint32_t ydeg = 0;
  for (auto y : a.y_vars) {
    allowed.at(y) = true;
    ydeg += mono[y];
  }
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] != 0 && !allowed[i]) return false;
  }
  return ydeg >= 1;
}

SpanBasis monomial_algebra_piece(const MonomialAlgebra& a, std::uint32_t d) {
  std::vector<Polynomial> members;
  for (const auto& m : degree_frame(a.vs, d)) {
    if (monomial_membership(a, m)) members.emplace_back(a.vs, m);
  }
  return SpanBasis::span_of(a.vs, degree_frame(a.vs, d), members);
}

SubalgebraSpec monomial_algebra_spec(const MonomialAlgebra& a, std::uint32_t through_degree) {
  std::vector<Generator> gens;
  std::vector<std::size_t> xs = a.x_vars;
  std::sort(xs.begin(), xs.end());
  for (std::uint32_t xdeg = 0; xdeg + 1 <= through_degree; ++xdeg) {
    for (auto y : a.y_vars) {
      for (const auto& xm : monomials_of_degree(a.vs->size(), xs, xdeg)) {
        Monomial m = xm * Monomial::variable(a.vs->size(), y);
        gens.push_back({"g" + std::to_string(gens.size() + 1), Polynomial(a.vs, m)});
      }
    }
  }
  return SubalgebraSpec(a.vs, std::move(gens), true, through_degree);
}

}  // namespace ikernel
