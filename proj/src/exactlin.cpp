#include "ikernel/exactlin.hpp"

#include <algorithm>
#include <numeric>

namespace ikernel {

// ---------------------------------------------------------- EchelonBuilder

EchelonBuilder::EchelonBuilder(Index cols, bool track_origin)
    : cols_(cols), track_origin_(track_origin) {}

RationalRowVector EchelonBuilder::reduce(const RationalRowVector& v) const {
  RationalRowVector w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational c = w(pivots_[i]);
    if (c == 0) continue;
    for (Index j : nonzeros_[i]) w(j) -= c * rows_[i](j);
  }
  return w;
}

bool EchelonBuilder::insert(const RationalRowVector& v) {
  if (v.cols() != cols_) throw std::invalid_argument("EchelonBuilder: width mismatch");
  const std::size_t input_index = inserted_++;
  if (full()) return false;

  RationalRowVector w = v;
  std::vector<std::pair<std::size_t, Rational>> ops;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational c = w(pivots_[i]);
    if (c == 0) continue;
    for (Index j : nonzeros_[i]) w(j) -= c * rows_[i](j);
    if (track_origin_) ops.emplace_back(i, c);
  }

  Index pivot = 0;
  while (pivot < cols_ && w(pivot) == 0) ++pivot;
  if (pivot == cols_) return false;

  const Rational inv = Rational(1) / w(pivot);
  std::vector<Index> nz;
  for (Index j = pivot; j < cols_; ++j) {
    if (w(j) != 0) {
      w(j) *= inv;
      nz.push_back(j);
    }
  }

  if (track_origin_) {
    std::vector<Rational> origin(rows_.size() + 1, Rational(0));
    origin.back() = 1;
    for (const auto& [i, c] : ops) {
      const auto& oi = origins_[i];
      for (std::size_t k = 0; k < oi.size(); ++k) {
        if (oi[k] != 0) origin[k] -= c * oi[k];
      }
    }
    for (auto& o : origin) {
      if (o != 0) o *= inv;
    }
    origins_.push_back(std::move(origin));
  }

  rows_.push_back(std::move(w));
  pivots_.push_back(pivot);
  nonzeros_.push_back(std::move(nz));
  accepted_.push_back(input_index);
  return true;
}

EchelonBuilder::Result EchelonBuilder::finish() const {
  const std::size_t r = rows_.size();
  std::vector<RationalRowVector> rows = rows_;
  std::vector<std::vector<Rational>> origins;
  if (track_origin_) {
    origins = origins_;
    for (auto& o : origins) o.resize(r, Rational(0));
  }

  // Row j is clean of all later pivots once the loop reaches it.
  for (std::size_t j = r; j-- > 0;) {
    std::vector<Index> nz;
    for (Index c = pivots_[j]; c < cols_; ++c) {
      if (rows[j](c) != 0) nz.push_back(c);
    }
    for (std::size_t i = 0; i < j; ++i) {
      const Rational c = rows[i](pivots_[j]);
      if (c == 0) continue;
      for (Index k : nz) rows[i](k) -= c * rows[j](k);
      if (track_origin_) {
        for (std::size_t k = 0; k < r; ++k) {
          if (origins[j][k] != 0) origins[i][k] -= c * origins[j][k];
        }
      }
    }
  }

  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });

  Result res;
  res.echelon.matrix = RationalMatrix::Zero(static_cast<Index>(r), cols_);
  res.accepted = accepted_;
  if (track_origin_) res.transform = RationalMatrix::Zero(static_cast<Index>(r), static_cast<Index>(r));
  for (std::size_t k = 0; k < r; ++k) {
    const auto src = order[k];
    res.echelon.matrix.row(static_cast<Index>(k)) = rows[src];
    res.echelon.pivots.push_back(pivots_[src]);
    if (track_origin_) {
      for (std::size_t c = 0; c < r; ++c) {
        res.transform(static_cast<Index>(k), static_cast<Index>(c)) = origins[src][c];
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------- SpanBasis

SpanBasis::SpanBasis(VarSystemPtr vs, std::vector<Monomial> frame)
    : SpanBasis(std::move(vs), std::move(frame), Echelon<Rational>{}) {}

SpanBasis::SpanBasis(VarSystemPtr vs, std::vector<Monomial> frame, Echelon<Rational> echelon)
    : vs_(std::move(vs)), frame_(std::move(frame)), echelon_(std::move(echelon)) {
  for (std::size_t i = 0; i < frame_.size(); ++i) {
    if (frame_[i].size() != vs_->size()) {
      throw VarSystemMismatch("frame monomial does not match variable system");
    }
    if (!column_.emplace(frame_[i], static_cast<Index>(i)).second) {
      throw std::invalid_argument("SpanBasis: duplicate monomial in frame");
    }
  }
  if (echelon_.matrix.size() == 0) {
    echelon_.matrix = RationalMatrix::Zero(0, frame_size());
  }
  if (echelon_.matrix.cols() != frame_size() || echelon_.matrix.rows() != echelon_.rank()) {
    throw std::invalid_argument("SpanBasis: echelon shape does not match frame");
  }
}

std::vector<Monomial> frame_union(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end(), GrlexDescending{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SpanBasis SpanBasis::span_of(const VarSystemPtr& vs, std::vector<Monomial> frame,
                             const std::vector<Polynomial>& polys) {
  std::map<Monomial, Index, GrlexDescending> known;
  for (std::size_t i = 0; i < frame.size(); ++i) known.emplace(frame[i], static_cast<Index>(i));
  std::vector<Monomial> extra;
  for (const auto& p : polys) {
    if (!same_system(p.varsys(), vs)) throw VarSystemMismatch("span_of: variable system mismatch");
    for (const auto& [m, c] : p.terms()) {
      if (!known.count(m)) extra.push_back(m);
    }
  }
  if (!extra.empty()) frame = frame_union(frame, extra);

  SpanBasis shell(vs, frame);
  EchelonBuilder builder(shell.frame_size());
  for (const auto& p : polys) builder.insert(*shell.to_row(p));
  auto res = builder.finish();
  return SpanBasis(vs, std::move(frame), std::move(res.echelon));
}

SpanBasis SpanBasis::span_of(const VarSystemPtr& vs, const std::vector<Polynomial>& polys) {
  return span_of(vs, {}, polys);
}

Polynomial SpanBasis::element(Index i) const {
  return from_row(echelon_.matrix.row(i));
}

std::vector<Polynomial> SpanBasis::elements() const {
  std::vector<Polynomial> out;
  for (Index i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

std::optional<Index> SpanBasis::column_of(const Monomial& m) const {
  auto it = column_.find(m);
  if (it == column_.end()) return std::nullopt;
  return it->second;
}

std::optional<RationalRowVector> SpanBasis::to_row(const Polynomial& p) const {
  if (!same_system(p.varsys(), vs_)) throw VarSystemMismatch("SpanBasis: variable system mismatch");
  RationalRowVector row = RationalRowVector::Zero(frame_size());
  for (const auto& [m, c] : p.terms()) {
    auto col = column_of(m);
    if (!col) return std::nullopt;
    row(*col) = c;
  }
  return row;
}

Polynomial SpanBasis::from_row(const RationalRowVector& row) const {
  Polynomial p(vs_);
  for (Index j = 0; j < frame_size(); ++j) {
    if (row(j) != 0) p.add_term(frame_[static_cast<std::size_t>(j)], row(j));
  }
  return p;
}

SpanBasis SpanBasis::reframed(const std::vector<Monomial>& frame) const {
  if (frame == frame_) return *this;
  return span_of(vs_, frame, elements());
}

bool SpanBasis::contains(const Polynomial& p) const {
  return solve_in_span(*this, p).has_value();
}

bool SpanBasis::same_subspace(const SpanBasis& other) const {
  if (!same_system(vs_, other.vs_)) return false;
  if (dim() != other.dim()) return false;
  const auto frame = frame_union(frame_, other.frame_);
  const auto a = reframed(frame);
  const auto b = other.reframed(frame);
  return a.rows() == b.rows();
}

// ------------------------------------------------------------- operations

std::optional<RationalVector> solve_in_span(const SpanBasis& basis, const Polynomial& target) {
  auto row = basis.to_row(target);
  if (!row) return std::nullopt;
  RationalVector coords(basis.dim());
  RationalRowVector rebuilt = RationalRowVector::Zero(basis.frame_size());
  for (Index i = 0; i < basis.dim(); ++i) {
    coords(i) = (*row)(basis.pivots()[static_cast<std::size_t>(i)]);
    if (coords(i) == 0) continue;
    for (Index j = 0; j < basis.frame_size(); ++j) {
      if (basis.rows()(i, j) != 0) rebuilt(j) += coords(i) * basis.rows()(i, j);
    }
  }
  if (rebuilt != *row) return std::nullopt;
  return coords;
}

SpanBasis intersect_spans(const SpanBasis& u, const SpanBasis& v) {
  if (!same_system(u.varsys(), v.varsys())) {
    throw VarSystemMismatch("intersect_spans: variable system mismatch");
  }
  const auto frame = frame_union(u.frame(), v.frame());
  // big is kept in reduced echelon form; small is reduced modulo it.
  const bool u_bigger = u.dim() >= v.dim();
  const auto big = (u_bigger ? u : v).reframed(frame);
  const auto small = (u_bigger ? v : u).reframed(frame);
  if (big.dim() == 0 || small.dim() == 0) return SpanBasis(u.varsys(), frame);

  // The kernel of the stacked matrix [big; small] by block elimination: a
  // combination a^T small lies in big iff its remainder modulo big vanishes,
  // and remainders live on the non-pivot columns of big.
  const Index cols = static_cast<Index>(frame.size());
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : big.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free_cols;
  for (Index j = 0; j < cols; ++j) {
    if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
  }

  RationalMatrix remainder = RationalMatrix::Zero(static_cast<Index>(free_cols.size()), small.dim());
  for (Index k = 0; k < small.dim(); ++k) {
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
      const Index j = free_cols[f];
      Rational r = small.rows()(k, j);
      for (Index i = 0; i < big.dim(); ++i) {
        const Rational& lead = small.rows()(k, big.pivots()[static_cast<std::size_t>(i)]);
        if (lead != 0 && big.rows()(i, j) != 0) r -= lead * big.rows()(i, j);
      }
      remainder(static_cast<Index>(f), k) = r;
    }
  }
  const RationalMatrix combos = nullspace(remainder);

  std::vector<Polynomial> common;
  for (Index c = 0; c < combos.cols(); ++c) {
    RationalRowVector w = RationalRowVector::Zero(cols);
    for (Index k = 0; k < small.dim(); ++k) {
      if (combos(k, c) == 0) continue;
      for (Index j = 0; j < cols; ++j) {
        if (small.rows()(k, j) != 0) w(j) += combos(k, c) * small.rows()(k, j);
      }
    }
    common.push_back(small.from_row(w));
  }
  return SpanBasis::span_of(u.varsys(), frame, common);
}

SpanBasis sum_spans(const SpanBasis& u, const SpanBasis& v) {
  if (!same_system(u.varsys(), v.varsys())) {
    throw VarSystemMismatch("sum_spans: variable system mismatch");
  }
  auto polys = u.elements();
  auto more = v.elements();
  polys.insert(polys.end(), more.begin(), more.end());
  return SpanBasis::span_of(u.varsys(), frame_union(u.frame(), v.frame()), polys);
}

}  // namespace ikernel
