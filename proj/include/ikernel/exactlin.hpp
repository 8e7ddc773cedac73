#pragma once

#include "ikernel/poly.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace ikernel {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using RationalRowVector = RowVector<Rational>;

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> matrix;       // same shape as the input
  std::vector<Index> pivots;   // pivot column of row i, i < rank

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form. Pivot is the first nonzero entry scanning
/// columns left to right and rows top to bottom; pivots are normalized to 1.
/// Only meaningful for exact scalar types.
template <typename Derived>
Echelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out{input, {}};
  auto& m = out.matrix;
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> nz;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    nz.clear();
    for (Index j = c; j < cols; ++j) {
      if (m(r, j) != Scalar(0)) {
        m(r, j) *= inv;
        nz.push_back(j);
      }
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c);
      for (Index j : nz) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank();
}

/// Basis of {x : M x = 0} as the columns of the result, one per free column,
/// with the free variable set to 1.
template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto e = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, static_cast<Index>(free_cols.size()));
  for (Index k = 0; k < static_cast<Index>(free_cols.size()); ++k) {
    const Index f = free_cols[static_cast<std::size_t>(k)];
    basis(f, k) = Scalar(1);
    for (Index i = 0; i < e.rank(); ++i) basis(e.pivots[static_cast<std::size_t>(i)], k) = -e.matrix(i, f);
  }
  return basis;
}

/// A particular solution of M x = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
template <typename DerivedM, typename DerivedB>
std::optional<Vector<typename DerivedM::Scalar>> solve(const Eigen::MatrixBase<DerivedM>& m,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedM::Scalar;
  Matrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(m.cols());
  for (Index i = 0; i < e.rank(); ++i) x(e.pivots[static_cast<std::size_t>(i)]) = e.matrix(i, m.cols());
  return x;
}

/// Incremental semi-echelon basis. Vectors are reduced against the rows
/// accepted so far in insertion order; independent ones are kept. Each kept
/// row can optionally carry its expression in terms of the accepted inputs.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(Index cols, bool track_origin = false);

  /// Returns true when `v` was independent of everything accepted so far.
  bool insert(const RationalRowVector& v);
  /// Remainder of `v` after reduction, without inserting.
  RationalRowVector reduce(const RationalRowVector& v) const;

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  bool full() const { return rank() == cols_; }
  /// Insertion indices (counting every insert call) of the accepted vectors.
  const std::vector<std::size_t>& accepted() const { return accepted_; }

  struct Result {
    Echelon<Rational> echelon;       // rank x cols, fully reduced
    std::vector<std::size_t> accepted;
    RationalMatrix transform;        // echelon rows = transform * accepted inputs
  };
  /// Fully reduces and sorts rows by pivot column.
  Result finish() const;

 private:
  Index cols_;
  bool track_origin_;
  std::size_t inserted_ = 0;
  std::vector<RationalRowVector> rows_;
  std::vector<Index> pivots_;
  std::vector<std::vector<Index>> nonzeros_;
  std::vector<std::vector<Rational>> origins_;
  std::vector<std::size_t> accepted_;
};

/// A subspace of the span of an ordered monomial frame, kept as a reduced
/// echelon basis (rows indexed by frame position).
class SpanBasis {
 public:
  SpanBasis(VarSystemPtr vs, std::vector<Monomial> frame);
  SpanBasis(VarSystemPtr vs, std::vector<Monomial> frame, Echelon<Rational> echelon);

  /// Span of `polys`; the frame is `frame` extended by any extra monomials.
  static SpanBasis span_of(const VarSystemPtr& vs, std::vector<Monomial> frame,
                           const std::vector<Polynomial>& polys);
  static SpanBasis span_of(const VarSystemPtr& vs, const std::vector<Polynomial>& polys);

  const VarSystemPtr& varsys() const { return vs_; }
  const std::vector<Monomial>& frame() const { return frame_; }
  Index frame_size() const { return static_cast<Index>(frame_.size()); }
  Index dim() const { return echelon_.rank(); }
  const RationalMatrix& rows() const { return echelon_.matrix; }
  const std::vector<Index>& pivots() const { return echelon_.pivots; }

  Polynomial element(Index i) const;
  std::vector<Polynomial> elements() const;

  std::optional<Index> column_of(const Monomial& m) const;
  /// Coordinates of `p` in the frame, or nullopt if `p` uses other monomials.
  std::optional<RationalRowVector> to_row(const Polynomial& p) const;
  Polynomial from_row(const RationalRowVector& row) const;

  /// Same subspace in a frame that contains this one.
  SpanBasis reframed(const std::vector<Monomial>& frame) const;

  bool contains(const Polynomial& p) const;
  bool same_subspace(const SpanBasis& other) const;

 private:
  VarSystemPtr vs_;
  std::vector<Monomial> frame_;
  std::map<Monomial, Index, GrlexDescending> column_;
  Echelon<Rational> echelon_;
};

/// Sorted union (grlex descending) of two frames.
std::vector<Monomial> frame_union(const std::vector<Monomial>& a, const std::vector<Monomial>& b);

/// Coordinates c with sum c_i * basis_i = target, or nullopt if target is not
/// in the span.
std::optional<RationalVector> solve_in_span(const SpanBasis& basis, const Polynomial& target);

SpanBasis intersect_spans(const SpanBasis& u, const SpanBasis& v);
SpanBasis sum_spans(const SpanBasis& u, const SpanBasis& v);

}  // namespace ikernel
