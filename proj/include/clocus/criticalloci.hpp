#ifndef CLOCUS_CRITICALLOCI_HPP
#define CLOCUS_CRITICALLOCI_HPP

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "clocus/multiview.hpp"
#include "clocus/polymatrix.hpp"

namespace clocus {

// A reconstruction problem instance: two tuples of cameras with matching
// source space P^k and per-view target spaces P^{h_i}.
template <class S>
struct CriticalSetup {
  int k = 0;
  std::vector<int> hs;
  std::vector<Projection<S>> Ps;
  std::vector<Projection<S>> Qs;

  int views() const { return static_cast<int>(hs.size()); }
  int sumH() const { return std::accumulate(hs.begin(), hs.end(), 0); }
  int codim() const { return sumH() - k; }

  static CriticalSetup make(std::vector<Projection<S>> Ps,
                            std::vector<Projection<S>> Qs) {
    if (Ps.size() != Qs.size() || Ps.size() < 2)
      throw DimensionMismatchError("need matching camera tuples, two views or more");
    CriticalSetup s;
    s.k = Ps[0].sourceDim();
    for (std::size_t i = 0; i < Ps.size(); ++i) {
      if (Ps[i].sourceDim() != s.k || Qs[i].sourceDim() != s.k)
        throw DimensionMismatchError("cameras must share one source space");
      if (Ps[i].targetDim() != Qs[i].targetDim())
        throw DimensionMismatchError("paired cameras must share target space");
      s.hs.push_back(Ps[i].targetDim());
    }
    s.Ps = std::move(Ps);
    s.Qs = std::move(Qs);
    return s;
  }
};

// Expected projective dimension of the critical locus, 2k - sum h_i.
inline int expectedDimension(int k, const std::vector<int>& hs) {
  return 2 * k - std::accumulate(hs.begin(), hs.end(), 0);
}

// Expected degree: the determinantal (Porteous) count binom(n-1+c, n-1).
inline long long expectedDegree(int n, int k, const std::vector<int>& hs) {
  const int c = std::accumulate(hs.begin(), hs.end(), 0) - k;
  return binomial(n - 1 + c, n - 1);
}

// The (n + sum h_i) x (n + k + 1) matrix whose maximal minors cut out the
// critical locus.  Row block i is [P_i | 0 ... Q_i(X) ... 0] with the column
// vector of linear forms Q_i(X) in scalar column k + 1 + i.
template <class S>
PolyMatrix<S> assembleM(const CriticalSetup<S>& setup) {
  const int n = setup.views();
  const int k = setup.k;
  const int numVars = k + 1;
  const int rows = n + setup.sumH();
  PolyMatrix<S> m(rows, n + k + 1, numVars);
  int rowAt = 0;
  for (int i = 0; i < n; ++i) {
    const MatrixX<S>& P = setup.Ps[i].matrix();
    const MatrixX<S>& Q = setup.Qs[i].matrix();
    for (int r = 0; r <= setup.hs[i]; ++r) {
      for (int j = 0; j <= k; ++j)
        m.at(rowAt + r, j) = MultiPoly<S>::constant(numVars, P(r, j));
      MultiPoly<S> form(numVars);
      for (int j = 0; j <= k; ++j)
        form.addTerm(Monomial::variable(numVars, j), Q(r, j));
      m.at(rowAt + r, k + 1 + i) = std::move(form);
    }
    rowAt += setup.hs[i] + 1;
  }
  return m;
}

// Row split used to eliminate the scalar block of M.  tail[i] trailing rows
// are taken from block i; the k+1 selected rows form the invertible C.
template <class S>
struct ReducedN {
  PolyMatrix<S> N;              // (n - 1 + c) x n matrix of linear forms
  std::vector<int> tail;        // rows drawn from the end of each block
  std::vector<int> keptRows;    // global indices of the rows of N in M
  std::vector<int> pivotRows;   // global indices of the rows of C
};

namespace detail {

inline std::vector<std::vector<int>> tailTuples(const std::vector<int>& hs,
                                                int total) {
  const int n = static_cast<int>(hs.size());
  std::vector<int> caps(n), suffix(n + 1, 0);
  for (int i = 0; i < n; ++i) caps[i] = hs[i] + 1;
  for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + caps[i];
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int i, int need) -> void {
    if (i == n) {
      if (need == 0) out.push_back(cur);
      return;
    }
    const int low = std::max(0, need - suffix[i + 1]);
    const int high = std::min(caps[i], need);
    for (int t = low; t <= high; ++t) {
      cur[i] = t;
      self(self, i + 1, need - t);
    }
    cur[i] = 0;
  };
  rec(rec, 0, total);
  return out;  // already in ascending lexicographic order
}

}  // namespace detail

// Eliminate the scalar columns of M against an invertible (k+1) x (k+1)
// block C of camera rows.  Candidate row collections take trailing rows of
// each view block; tuples are scanned in lexicographic order and the first
// one with invertible C wins, so generic setups reduce the same way the
// hand computations do.  N = B - A C^{-1} D on the remaining rows generates
// the same maximal-minor ideal as M.
template <class S>
ReducedN<S> reduceToN(const CriticalSetup<S>& setup) {
  const int n = setup.views();
  const int k = setup.k;
  const PolyMatrix<S> M = assembleM(setup);
  std::vector<int> blockStart(n);
  {
    int at = 0;
    for (int i = 0; i < n; ++i) {
      blockStart[i] = at;
      at += setup.hs[i] + 1;
    }
  }
  for (const std::vector<int>& tail : detail::tailTuples(setup.hs, k + 1)) {
    std::vector<int> pivotRows, keptRows;
    for (int i = 0; i < n; ++i) {
      const int size = setup.hs[i] + 1;
      for (int r = 0; r < size - tail[i]; ++r)
        keptRows.push_back(blockStart[i] + r);
      for (int r = size - tail[i]; r < size; ++r)
        pivotRows.push_back(blockStart[i] + r);
    }
    MatrixX<S> C(k + 1, k + 1);
    for (int r = 0; r <= k; ++r)
      for (int j = 0; j <= k; ++j)
        C(r, j) = M.at(pivotRows[r], j).coefficient(Monomial::unit(k + 1));
    std::optional<MatrixX<S>> Cinv = inverseExact<S>(C);
    if (!Cinv) continue;

    const int outRows = static_cast<int>(keptRows.size());
    MatrixX<S> A(outRows, k + 1);
    for (int r = 0; r < outRows; ++r)
      for (int j = 0; j <= k; ++j)
        A(r, j) = M.at(keptRows[r], j).coefficient(Monomial::unit(k + 1));
    MatrixX<S> ACinv = A * (*Cinv);

    ReducedN<S> out;
    out.N = PolyMatrix<S>(outRows, n, k + 1);
    for (int r = 0; r < outRows; ++r) {
      for (int j = 0; j < n; ++j) {
        MultiPoly<S> acc = M.at(keptRows[r], k + 1 + j);
        for (int s = 0; s <= k; ++s) {
          const MultiPoly<S>& d = M.at(pivotRows[s], k + 1 + j);
          if (!d.isZero()) acc = acc - d.scaled(ACinv(r, s));
        }
        out.N.set(r, j, std::move(acc));
      }
    }
    out.tail = tail;
    out.keptRows = std::move(keptRows);
    out.pivotRows = std::move(pivotRows);
    return out;
  }
  throw DegenerateSetupError(
      "no block-respecting row collection yields an invertible camera block");
}

// The critical locus as a determinantal ideal: all n x n minors of N.
template <class S>
struct CriticalIdeal {
  std::vector<MultiPoly<S>> generators;
  ReducedN<S> reduction;
  int expectedDim = 0;
  long long expectedDeg = 0;
};

template <class S>
CriticalIdeal<S> criticalIdeal(const CriticalSetup<S>& setup) {
  if (setup.codim() < 1)
    throw DegenerateSetupError("critical locus fills P^k when sum h_i <= k");
  CriticalIdeal<S> out;
  out.reduction = reduceToN(setup);
  const int size = std::min(out.reduction.N.rows(), out.reduction.N.cols());
  out.generators = maximalMinors(out.reduction.N, size);
  out.expectedDim = expectedDimension(setup.k, setup.hs);
  out.expectedDeg = expectedDegree(setup.views(), setup.k, setup.hs);
  return out;
}

// The center of every Q-camera lies on the critical locus: restricting each
// generator to the center must give the zero polynomial.
template <class S>
std::vector<bool> centerContainment(const CriticalSetup<S>& setup,
                                    const std::vector<MultiPoly<S>>& gens) {
  std::vector<bool> contained;
  contained.reserve(setup.Qs.size());
  for (const Projection<S>& q : setup.Qs) {
    const MatrixX<S> basis = centerOf(q).basis;
    bool ok = true;
    for (const MultiPoly<S>& g : gens) {
      if (!restrictToLinearSubspace(g, basis).isZero()) {
        ok = false;
        break;
      }
    }
    contained.push_back(ok);
  }
  return contained;
}

enum class BoundsClass {
  MaybeSmoothIrreducible,
  ForcedReducible,
  ForcedSingular,
  ProfileInfeasible,
};

inline const char* boundsClassName(BoundsClass b) {
  switch (b) {
    case BoundsClass::MaybeSmoothIrreducible: return "maybe-smooth-irreducible";
    case BoundsClass::ForcedReducible: return "forced-reducible";
    case BoundsClass::ForcedSingular: return "forced-singular";
    case BoundsClass::ProfileInfeasible: return "profile-infeasible";
  }
  return "?";
}

struct BoundsReport {
  BoundsClass cls = BoundsClass::ProfileInfeasible;
  int codim = 0;
  std::string reason;
};

// Case analysis on (n, k, h_1..h_n) alone:
//   * sum h_i <= k        -> no proper critical locus (infeasible);
//   * dim = 2k - sum h <= 0 -> locus not positive-dimensional (infeasible);
//   * min h_i <= c - 1    -> wrong codimension or reducible;
//   * some pair of Q-centers forced to intersect by dimension count
//     (k >= h_a + h_b + 2 for the two smallest targets) -> singular;
//   * otherwise nothing in the dimension bounds rules out a smooth
//     irreducible locus.
inline BoundsReport boundsClassifier(int n, int k, std::vector<int> hs) {
  BoundsReport out;
  if (static_cast<int>(hs.size()) != n)
    throw DimensionMismatchError("classifier needs one target dimension per view");
  if (n < 2) {
    out.cls = BoundsClass::ProfileInfeasible;
    out.reason = "reconstruction needs at least two views";
    return out;
  }
  for (int h : hs) {
    if (h < 1 || h >= k) {
      out.cls = BoundsClass::ProfileInfeasible;
      out.reason = "each target dimension must satisfy 1 <= h < k";
      return out;
    }
  }
  const int sumH = std::accumulate(hs.begin(), hs.end(), 0);
  const int c = sumH - k;
  out.codim = c;
  if (c < 1) {
    out.cls = BoundsClass::ProfileInfeasible;
    out.reason = "sum of target dimensions must exceed k";
    return out;
  }
  if (2 * k - sumH <= 0) {
    out.cls = BoundsClass::ProfileInfeasible;
    out.reason = "critical locus would not be positive-dimensional";
    return out;
  }
  std::sort(hs.begin(), hs.end());
  if (hs[0] <= c - 1) {
    out.cls = BoundsClass::ForcedReducible;
    out.reason = "a view with h <= c-1 forces wrong codimension or reducibility";
    return out;
  }
  if (k >= hs[0] + hs[1] + 2) {
    out.cls = BoundsClass::ForcedSingular;
    out.reason = "two Q-centers must intersect: dim C_a + dim C_b >= k";
    return out;
  }
  out.cls = BoundsClass::MaybeSmoothIrreducible;
  out.reason = "dimension bounds allow a smooth irreducible locus";
  return out;
}

// ---------------------------------------------------------------------------
// Trifocal structure: for n = 3 with h = (c, c, c+eps), eps in {0, 1}, the
// reduced matrix N can be normalized by row operations so that column j
// involves only forms of view j, the entries (c+2, 1) and (c+1, 2) vanish,
// and additionally (c, 3) vanishes when eps = 0 (1-based indices).
// ---------------------------------------------------------------------------

template <class S>
struct StructureReport {
  PolyMatrix<S> normalized;       // (c+2) x 3 after row operations
  int c = 0;
  int eps = 0;
  bool canonicalSplit = false;    // reduction picked the expected row split
  std::array<bool, 3> columnPure{false, false, false};
  bool zeroBottomLeft = false;    // entry (c+2, 1) vanishes structurally
  bool zeroMidSecond = false;     // entry (c+1, 2) eliminated
  bool zeroThird = true;          // entry (c, 3) eliminated (eps = 0 only)
  bool centersPairwiseDisjoint = false;
  bool generic = false;           // all of the above succeeded
  std::string notes;
};

namespace detail {

// Make entry (targetRow, col) vanish by adding multiples of the other rows
// listed in sourceRows (row operations applied across the full matrix).
template <class S>
bool eliminateEntry(PolyMatrix<S>& N, int targetRow, int col,
                    const std::vector<int>& sourceRows) {
  const int v = N.numVars();
  if (N.at(targetRow, col).isZero()) return true;
  MatrixX<S> A(v, static_cast<int>(sourceRows.size()));
  for (std::size_t j = 0; j < sourceRows.size(); ++j)
    A.col(static_cast<int>(j)) =
        linearFormCoefficients(N.at(sourceRows[j], col)).transpose();
  VectorX<S> rhs = -linearFormCoefficients(N.at(targetRow, col)).transpose();
  std::optional<VectorX<S>> lambda = solveExact<S>(A, rhs);
  if (!lambda) return false;
  for (std::size_t j = 0; j < sourceRows.size(); ++j) {
    const S& l = (*lambda)(static_cast<int>(j));
    if (scalarIsZero(l)) continue;
    for (int cc = 0; cc < N.cols(); ++cc)
      N.at(targetRow, cc) =
          N.at(targetRow, cc) + N.at(sourceRows[j], cc).scaled(l);
  }
  return N.at(targetRow, col).isZero();
}

}  // namespace detail

template <class S>
StructureReport<S> structureConstraints(const CriticalSetup<S>& setup) {
  const int n = setup.views();
  const int k = setup.k;
  if (n != 3) throw DimensionMismatchError("structure normalization is trifocal");
  const int c = setup.codim();
  const int eps = k - 2 * c;
  if (setup.hs[0] != c || setup.hs[1] != c || setup.hs[2] != c + eps ||
      (eps != 0 && eps != 1))
    throw DimensionMismatchError(
        "trifocal structure needs h = (c, c, c+eps) with eps in {0, 1}");

  StructureReport<S> out;
  out.c = c;
  out.eps = eps;

  ReducedN<S> red = reduceToN(setup);
  out.canonicalSplit =
      (red.tail == std::vector<int>{0, c, setup.hs[2] + 1});
  if (!out.canonicalSplit)
    out.notes += "non-canonical row split; ";
  PolyMatrix<S> N = red.N;  // (c+2) x 3

  // Rows spanned per view: column j must stay inside the span of Q_j forms.
  auto columnPure = [&](int col) {
    const MatrixX<S>& Q = setup.Qs[col].matrix();
    MatrixX<S> stack(Q.rows() + N.rows(), k + 1);
    stack.topRows(Q.rows()) = Q;
    for (int r = 0; r < N.rows(); ++r)
      stack.row(static_cast<int>(Q.rows()) + r) =
          linearFormCoefficients(N.at(r, col));
    return rank<S>(stack) == static_cast<int>(Q.rows());
  };
  for (int j = 0; j < 3; ++j) out.columnPure[j] = columnPure(j);

  out.zeroBottomLeft = N.at(c + 1, 0).isZero();

  // (c+1, 2) in 1-based terms: eliminate N(c, 1) using the other rows.
  std::vector<int> srcMid;
  for (int r = 0; r <= c + 1; ++r)
    if (r != c) srcMid.push_back(r);
  out.zeroMidSecond = detail::eliminateEntry(N, c, 1, srcMid);
  if (!out.zeroMidSecond) out.notes += "could not clear entry (c+1, 2); ";

  if (eps == 0) {
    std::vector<int> srcThird;
    for (int r = 0; r <= c + 1; ++r)
      if (r != c - 1) srcThird.push_back(r);
    out.zeroThird = detail::eliminateEntry(N, c - 1, 2, srcThird);
    if (!out.zeroThird) out.notes += "could not clear entry (c, 3); ";
  }

  // Disjoint Q-centers (pairwise) is the generality tied to smoothness away
  // from special loci; failure here flags the degenerate situation where
  // two centers share a point.
  out.centersPairwiseDisjoint = true;
  for (int i = 0; i < 3 && out.centersPairwiseDisjoint; ++i)
    for (int j = i + 1; j < 3; ++j) {
      MatrixX<S> stacked =
          stackRows<S>(setup.Qs[i].matrix(), setup.Qs[j].matrix());
      if (rank<S>(stacked) < k + 1) {
        out.centersPairwiseDisjoint = false;
        out.notes += "centers of views " + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + " intersect; ";
        break;
      }
    }

  out.normalized = std::move(N);
  out.generic = out.canonicalSplit && out.columnPure[0] && out.columnPure[1] &&
                out.columnPure[2] && out.zeroBottomLeft && out.zeroMidSecond &&
                out.zeroThird && out.centersPairwiseDisjoint;
  return out;
}

// Random setup with the usual generality: full-rank cameras, full-rank
// stacked camera matrices, and a reducible row split for N.
template <class S>
CriticalSetup<S> sampleCriticalSetup(const Field<S>& F, SplitMix64& rng, int k,
                                     const std::vector<int>& hs) {
  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    std::vector<Projection<S>> Ps, Qs;
    for (int h : hs) {
      Ps.push_back(sampleProjection(F, rng, k, h));
      Qs.push_back(sampleProjection(F, rng, k, h));
    }
    CriticalSetup<S> s = CriticalSetup<S>::make(std::move(Ps), std::move(Qs));
    auto stackedFullRank = [&](const std::vector<Projection<S>>& cams) {
      MatrixX<S> m(s.sumH() + s.views(), k + 1);
      int at = 0;
      for (const Projection<S>& cam : cams) {
        m.block(at, 0, cam.targetDim() + 1, k + 1) = cam.matrix();
        at += cam.targetDim() + 1;
      }
      return rank<S>(m) == k + 1;
    };
    if (!stackedFullRank(s.Ps) || !stackedFullRank(s.Qs)) continue;
    // Centers in general position: any two small enough to avoid each
    // other must be disjoint.
    auto centersDisjoint = [&] {
      std::vector<MatrixX<S>> bases;
      for (const Projection<S>& q : s.Qs) bases.push_back(centerOf(q).basis);
      for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
          const int joint = static_cast<int>(bases[i].cols() + bases[j].cols());
          if (joint > k + 1) continue;
          MatrixX<S> st(k + 1, joint);
          st.leftCols(bases[i].cols()) = bases[i];
          st.rightCols(bases[j].cols()) = bases[j];
          if (rank<S>(st) < joint) return false;
        }
      return true;
    };
    if (!centersDisjoint()) continue;
    try {
      reduceToN(s);
    } catch (const DegenerateSetupError&) {
      continue;
    }
    return s;
  }
  throw DegenerateSetupError("could not sample a generic camera configuration");
}

}  // namespace clocus

#endif  // CLOCUS_CRITICALLOCI_HPP
