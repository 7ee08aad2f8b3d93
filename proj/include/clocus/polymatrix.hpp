#ifndef CLOCUS_POLYMATRIX_HPP
#define CLOCUS_POLYMATRIX_HPP

#include <utility>
#include <vector>

#include "clocus/poly.hpp"

namespace clocus {

// Dense matrix of multivariate polynomials sharing one variable set.
template <class S>
class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0), numVars_(0) {}
  PolyMatrix(int rows, int cols, int numVars)
      : rows_(rows), cols_(cols), numVars_(numVars),
        e_(static_cast<std::size_t>(rows) * cols, MultiPoly<S>(numVars)) {}

  static PolyMatrix fromScalar(const MatrixX<S>& m, int numVars) {
    PolyMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                   numVars);
    for (int i = 0; i < out.rows_; ++i)
      for (int j = 0; j < out.cols_; ++j)
        out.at(i, j) = MultiPoly<S>::constant(numVars, m(i, j));
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int numVars() const { return numVars_; }

  MultiPoly<S>& at(int r, int c) { return e_[index(r, c)]; }
  const MultiPoly<S>& at(int r, int c) const { return e_[index(r, c)]; }

  void set(int r, int c, MultiPoly<S> p) {
    if (p.numVars() != numVars_)
      throw DimensionMismatchError("entry variable count mismatch");
    e_[index(r, c)] = std::move(p);
  }

  PolyMatrix submatrix(const std::vector<int>& rowIdx,
                       const std::vector<int>& colIdx) const {
    PolyMatrix out(static_cast<int>(rowIdx.size()),
                   static_cast<int>(colIdx.size()), numVars_);
    for (std::size_t i = 0; i < rowIdx.size(); ++i)
      for (std::size_t j = 0; j < colIdx.size(); ++j)
        out.at(static_cast<int>(i), static_cast<int>(j)) =
            e_[index(rowIdx[i], colIdx[j])];
    return out;
  }

  MatrixX<S> evalAt(const VectorX<S>& point) const {
    MatrixX<S> m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).eval(point);
    return m;
  }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && numVars_ == o.numVars_ &&
           e_ == o.e_;
  }

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw DimensionMismatchError("polynomial matrix index out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_, cols_, numVars_;
  std::vector<MultiPoly<S>> e_;
};

// Determinant by cofactor expansion with subset memoization (Laplace over
// column masks, one level per row).  Exponential in the order, so the order
// is capped at 8; every matrix the library builds stays within that.
template <class S>
MultiPoly<S> polyDeterminant(const PolyMatrix<S>& m) {
  const int n = m.rows();
  if (n != m.cols())
    throw DimensionMismatchError("polynomial determinant needs a square matrix");
  if (n > 8)
    throw DimensionMismatchError("polynomial determinant capped at order 8");
  if (n == 0) return MultiPoly<S>::constant(m.numVars(), S(1));
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  // det[mask] = determinant of rows 0..popcount(mask)-1 and columns in mask.
  std::vector<MultiPoly<S>> det(full + 1, MultiPoly<S>(m.numVars()));
  det[0] = MultiPoly<S>::constant(m.numVars(), S(1));
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int r = __builtin_popcount(mask) - 1;
    MultiPoly<S> acc(m.numVars());
    int pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const MultiPoly<S>& entry = m.at(r, c);
      if (!entry.isZero()) {
        MultiPoly<S> sub = entry * det[mask & ~(1u << c)];
        acc = ((r + pos) % 2 == 0) ? acc + sub : acc - sub;
      }
      ++pos;
    }
    det[mask] = std::move(acc);
  }
  return det[full];
}

namespace detail {
inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}
}  // namespace detail

// All size x size minors, ordered lexicographically by row subset and then
// by column subset.  Minors that happen to vanish identically are kept so
// the count always matches C(rows, size) * C(cols, size).
template <class S>
std::vector<MultiPoly<S>> maximalMinors(const PolyMatrix<S>& m, int size) {
  if (size < 0 || size > m.rows() || size > m.cols())
    throw DimensionMismatchError("minor size out of range");
  std::vector<MultiPoly<S>> out;
  const auto rowSets = detail::combinations(m.rows(), size);
  const auto colSets = detail::combinations(m.cols(), size);
  out.reserve(rowSets.size() * colSets.size());
  for (const auto& rs : rowSets)
    for (const auto& cs : colSets)
      out.push_back(polyDeterminant(m.submatrix(rs, cs)));
  return out;
}

}  // namespace clocus

#endif  // CLOCUS_POLYMATRIX_HPP
