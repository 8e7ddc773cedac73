#include "ikernel/integrality.hpp"

#include <sstream>

namespace ikernel {

Polynomial RelationCertificate::evaluate() const {
  Polynomial sum(element.varsys());
  if (monic) sum += element.pow(static_cast<std::uint32_t>(degree));
  for (const auto& c : coefficients) sum += c.value * element.pow(static_cast<std::uint32_t>(c.index));
  return sum;
}

bool RelationCertificate::verifies(const SubalgebraSpec& spec) const {
  if (!evaluate().is_zero()) return false;
  for (const auto& c : coefficients) {
    if (!c.certificate.verifies(spec, c.value)) return false;
  }
  if (!monic) {
    for (const auto& c : coefficients) {
      if (c.index == degree) return !c.value.is_zero();
    }
    return false;
  }
  return true;
}

std::string RelationCertificate::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (monic) {
    out << (degree == 1 ? std::string("X") : "X^" + std::to_string(degree));
    first = false;
  }
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    if (it->value.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << '(' << it->value.to_string() << ')';
    if (it->index == 1) out << "*X";
    if (it->index > 1) out << "*X^" << it->index;
  }
  return first ? "0" : out.str();
}

namespace {

void check_element(const Polynomial& x, const GradedBasis& a) {
  if (!same_system(x.varsys(), a.varsys())) throw VarSystemMismatch("relation search: system mismatch");
  if (x.is_zero() || !x.is_homogeneous() || x.degree() <= 0) {
    throw std::domain_error("relation search needs a homogeneous element of positive degree");
  }
}

struct Column {
  std::size_t index;
  Polynomial basis_element;
};

// Columns b * x^i for each block (i, degree of b) and each basis element b of
// A at that degree, expanded over the frame of `target_degree`.
RationalMatrix block_matrix(const Polynomial& x, const GradedBasis& a,
                            const std::vector<std::pair<std::size_t, std::uint32_t>>& blocks,
                            std::uint32_t target_degree, std::vector<Column>& columns) {
  const auto& vs = a.varsys();
  SpanBasis frame(vs, degree_frame(vs, target_degree));
  std::vector<RationalRowVector> cols;
  for (const auto& [i, deg] : blocks) {
    const Polynomial xi = x.pow(static_cast<std::uint32_t>(i));
    for (const auto& b : a.piece(deg).basis.elements()) {
      cols.push_back(*frame.to_row(b * xi));
      columns.push_back({i, b});
    }
  }
  RationalMatrix m = RationalMatrix::Zero(frame.frame_size(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Index>(k)) = cols[k].transpose();
  return m;
}

std::vector<RelationCoefficient> collect(const Polynomial& x, const GradedBasis& a,
                                         const std::vector<Column>& columns,
                                         const RationalVector& solution, std::size_t top) {
  std::vector<Polynomial> values(top + 1, Polynomial(x.varsys()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const auto& c = solution(static_cast<Index>(k));
    if (c != 0) values[columns[k].index] += c * columns[k].basis_element;
  }
  std::vector<RelationCoefficient> out;
  for (std::size_t i = 0; i <= top; ++i) {
    auto cert = membership(a, values[i]);
    if (!cert) throw std::logic_error("relation coefficient escaped the algebra");
    out.push_back({i, values[i], std::move(*cert)});
  }
  return out;
}

bool base_is_constants(const GradedBasis& a) { return a.spec().generators().empty(); }

}  // namespace

RelationSearchResult integral_relation_search(const Polynomial& x, const GradedBasis& a,
                                              std::size_t max_degree) {
  check_element(x, a);
  const auto e = static_cast<std::uint32_t>(x.degree());
  RelationSearchResult result;
  result.max_degree = max_degree;
  for (std::size_t n = 1; n <= max_degree; ++n) {
    std::vector<std::pair<std::size_t, std::uint32_t>> blocks;
    for (std::size_t i = n; i-- > 0;) blocks.emplace_back(i, static_cast<std::uint32_t>(e * (n - i)));
    std::vector<Column> columns;
    const auto target = static_cast<std::uint32_t>(e * n);
    const RationalMatrix m = block_matrix(x, a, blocks, target, columns);
    SpanBasis frame(a.varsys(), degree_frame(a.varsys(), target));
    const RationalVector rhs = -frame.to_row(x.pow(static_cast<std::uint32_t>(n)))->transpose();
    auto sol = solve(m, rhs);
    if (!sol) continue;
    RelationCertificate rel{x, n, true, collect(x, a, columns, *sol, n - 1)};
    result.relation = std::move(rel);
    return result;
  }
  if (base_is_constants(a)) {
    result.conclusive = true;
    result.reason = "base ring is the constants: x^n would have to vanish";
  } else {
    result.reason = "no monic relation up to degree " + std::to_string(max_degree);
  }
  return result;
}

RelationSearchResult algebraic_relation_search(const Polynomial& x, const GradedBasis& a,
                                               std::size_t max_degree,
                                               std::size_t max_coeff_degree) {
  check_element(x, a);
  const auto e = static_cast<std::uint32_t>(x.degree());
  RelationSearchResult result;
  result.max_degree = max_degree;
  result.max_coeff_degree = max_coeff_degree;
  for (std::size_t n = 1; n <= max_degree; ++n) {
    for (std::size_t c = 0; c <= max_coeff_degree; ++c) {
      std::vector<std::pair<std::size_t, std::uint32_t>> blocks;
      for (std::size_t i = n + 1; i-- > 0;) {
        blocks.emplace_back(i, static_cast<std::uint32_t>(c + e * (n - i)));
      }
      std::vector<Column> columns;
      const RationalMatrix m =
          block_matrix(x, a, blocks, static_cast<std::uint32_t>(c + e * n), columns);
      const RationalMatrix kernel = nullspace(m);
      for (Index k = 0; k < kernel.cols(); ++k) {
        bool leading = false;
        for (std::size_t j = 0; j < columns.size(); ++j) {
          if (columns[j].index == n && kernel(static_cast<Index>(j), k) != 0) leading = true;
        }
        if (!leading) continue;
        RationalVector v = kernel.col(k);
        auto coeffs = collect(x, a, columns, v, n);
        const Rational lc = coeffs[n].value.leading_coefficient();
        for (auto& co : coeffs) {
          co.value *= Rational(1) / lc;
          co.certificate.expression *= Rational(1) / lc;
        }
        result.relation = RelationCertificate{x, n, false, std::move(coeffs)};
        return result;
      }
    }
  }
  if (base_is_constants(a)) {
    result.conclusive = true;
    result.reason =
        "base ring is the constants: each homogeneous part b_i x^i of a relation must vanish";
  } else {
    result.reason = "no relation up to degree " + std::to_string(max_degree) +
                    " with leading coefficient degree <= " + std::to_string(max_coeff_degree);
  }
  return result;
}

bool specialization_forbids_monic(const Polynomial& x, const SubalgebraSpec& spec,
                                  const std::vector<std::size_t>& zero_vars) {
  const auto& vs = spec.varsys();
  SubstitutionMap zero;
  for (auto v : zero_vars) zero.emplace(vs->name(v), Polynomial(vs));
  for (const auto& g : spec.generators()) {
    if (!substitute(g.poly, zero).is_zero()) return false;
  }
  return !substitute(x, zero).is_zero();
}

LocalizationResult localization_contains(const Polynomial& f, const GradedBasis& a,
                                         const Polynomial& g, std::size_t max_power) {
  if (!f.is_homogeneous() || !g.is_homogeneous()) {
    throw std::domain_error("localization_contains needs homogeneous inputs");
  }
  if (!membership(a, g)) throw std::invalid_argument("localizing element is not in the algebra");
  LocalizationResult result;
  result.max_power = max_power;
  Polynomial cur = f;
  for (std::size_t k = 0; k <= max_power; ++k) {
    if (auto cert = membership(a, cur)) {
      result.power = k;
      result.certificate = std::move(cert);
      return result;
    }
    cur = cur * g;
  }
  return result;
}

}  // namespace ikernel
