#ifndef CLOCUS_LINALG_HPP
#define CLOCUS_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "clocus/errors.hpp"
#include "clocus/field.hpp"

namespace clocus {

template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVectorX = Eigen::Matrix<S, 1, Eigen::Dynamic>;

template <class S>
struct EchelonForm {
  MatrixX<S> mat;              // reduced row echelon form
  std::vector<int> pivotCols;  // one entry per nonzero row
  int rank = 0;
};

// Reduced row echelon form by exact Gauss-Jordan elimination.
template <class S>
EchelonForm<S> rowEchelon(MatrixX<S> m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  EchelonForm<S> out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!scalarIsZero(m(i, c))) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    S inv = S(1) / m(r, c);
    for (int j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || scalarIsZero(m(i, c))) continue;
      S f = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    out.pivotCols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.mat = std::move(m);
  return out;
}

template <class S>
int rank(const MatrixX<S>& m) {
  return rowEchelon<S>(m).rank;
}

template <class S>
S determinantExact(MatrixX<S> m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw DimensionMismatchError("determinant needs a square matrix");
  if (n == 0) return S(1);
  S det = S(1);
  bool negate = false;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (!scalarIsZero(m(i, c))) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return m(0, 0) - m(0, 0);  // zero in the matrix's own field
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      negate = !negate;
    }
    det = det * m(c, c);
    S inv = S(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (scalarIsZero(m(i, c))) continue;
      S f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return negate ? -det : det;
}

template <class S>
std::optional<MatrixX<S>> inverseExact(const MatrixX<S>& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw DimensionMismatchError("inverse needs a square matrix");
  MatrixX<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) aug(i, n + j) = (i == j) ? S(1) : S(0);
  EchelonForm<S> ech = rowEchelon<S>(std::move(aug));
  if (ech.rank < n || ech.pivotCols[n - 1] != n - 1) return std::nullopt;
  return MatrixX<S>(ech.mat.rightCols(n));
}

// Columns span the right kernel {x : m x = 0}; shape cols(m) x nullity.
template <class S>
MatrixX<S> kernelBasis(const MatrixX<S>& m) {
  const int cols = static_cast<int>(m.cols());
  EchelonForm<S> ech = rowEchelon<S>(m);
  std::vector<bool> isPivot(cols, false);
  for (int c : ech.pivotCols) isPivot[c] = true;
  const int nullity = cols - ech.rank;
  MatrixX<S> basis(cols, nullity);
  basis.setConstant(S(0));
  int b = 0;
  for (int f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    basis(f, b) = S(1);
    for (int r = 0; r < ech.rank; ++r)
      basis(ech.pivotCols[r], b) = -ech.mat(r, f);
    ++b;
  }
  return basis;
}

// One solution of m x = rhs, if any.
template <class S>
std::optional<VectorX<S>> solveExact(const MatrixX<S>& m,
                                     const VectorX<S>& rhs) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rhs.size() != rows) throw DimensionMismatchError("solve: rhs size mismatch");
  MatrixX<S> aug(rows, cols + 1);
  aug.leftCols(cols) = m;
  aug.col(cols) = rhs;
  EchelonForm<S> ech = rowEchelon<S>(std::move(aug));
  VectorX<S> x(cols);
  for (int j = 0; j < cols; ++j) x(j) = S(0);
  for (int r = 0; r < ech.rank; ++r) {
    if (ech.pivotCols[r] == cols) return std::nullopt;  // inconsistent
    x(ech.pivotCols[r]) = ech.mat(r, cols);
  }
  return x;
}

template <class S>
MatrixX<S> identityMatrix(const Field<S>& F, int n) {
  MatrixX<S> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j) ? F.one() : F.zero();
  return m;
}

template <class S>
MatrixX<S> zeroMatrix(const Field<S>& F, int r, int c) {
  MatrixX<S> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = F.zero();
  return m;
}

template <class S>
MatrixX<S> randomMatrix(const Field<S>& F, SplitMix64& rng, int r, int c) {
  MatrixX<S> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = F.sample(rng);
  return m;
}

inline constexpr int kResampleCap = 32;

template <class S>
MatrixX<S> randomFullRankMatrix(const Field<S>& F, SplitMix64& rng, int r,
                                int c) {
  const int target = std::min(r, c);
  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    MatrixX<S> m = randomMatrix(F, rng, r, c);
    if (rank<S>(m) == target) return m;
  }
  throw DegenerateSetupError("could not sample a full-rank matrix");
}

template <class S>
MatrixX<S> stackRows(const MatrixX<S>& a, const MatrixX<S>& b) {
  if (a.cols() != b.cols())
    throw DimensionMismatchError("stackRows: column counts differ");
  MatrixX<S> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (long long i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i);
    acc /= static_cast<unsigned __int128>(i);
  }
  return static_cast<long long>(acc);
}

}  // namespace clocus

#endif  // CLOCUS_LINALG_HPP
