#ifndef CLOCUS_CONSTRUCTIONS_HPP
#define CLOCUS_CONSTRUCTIONS_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "clocus/criticalloci.hpp"
#include "clocus/idealanalysis.hpp"

namespace clocus {

namespace detail {

template <class S>
bool isLinearOrZero(const MultiPoly<S>& p) {
  return p.isZero() || (p.degree() == 1 && p.isHomogeneous());
}

// Camera matrix whose row r is the coefficient vector of forms[r].
template <class S>
MatrixX<S> cameraFromForms(const std::vector<MultiPoly<S>>& forms) {
  const int numVars = forms.at(0).numVars();
  MatrixX<S> m(static_cast<int>(forms.size()), numVars);
  for (std::size_t r = 0; r < forms.size(); ++r)
    m.row(static_cast<int>(r)) = linearFormCoefficients(forms[r]);
  return m;
}

template <class S>
MultiPoly<S> formFromRow(const RowVectorX<S>& row) {
  return MultiPoly<S>::linearForm(row.transpose());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two views: minimal-degree varieties.
// ---------------------------------------------------------------------------

// A variety of minimal degree c+1 and codimension c in P^k presented by a
// (c+1) x 2 matrix of linear forms whose 2 x 2 minors generate its ideal.
template <class S>
struct ScrollMatrix {
  PolyMatrix<S> entries;

  int codim() const { return entries.rows() - 1; }
  int ambientDim() const { return entries.numVars() - 1; }

  static ScrollMatrix make(PolyMatrix<S> m) {
    if (m.cols() != 2 || m.rows() < 2)
      throw ConstructionError("minimal-degree matrix must be (c+1) x 2 with c >= 1");
    for (int r = 0; r < m.rows(); ++r) {
      bool rowNonzero = false;
      for (int c = 0; c < 2; ++c) {
        if (!detail::isLinearOrZero(m.at(r, c)))
          throw ConstructionError("matrix entries must be linear forms");
        rowNonzero = rowNonzero || !m.at(r, c).isZero();
      }
      if (!rowNonzero)
        throw ConstructionError("matrix has a zero row");
    }
    return ScrollMatrix{std::move(m)};
  }

  std::vector<MultiPoly<S>> minors() const { return maximalMinors(entries, 2); }
};

// Realize the variety cut out by a (c+1) x 2 matrix of linear forms as the
// critical locus of two projections P^k --> P^{h_1}, P^k --> P^{h_2} with
// h_1 + h_2 = k + c.  The reduced matrix of the resulting setup reproduces
// the input matrix entry by entry.  The target split defaults to
// h_1 = c + 1, h_2 = k - 1 and requires c + 2 <= k; smoothness of the input
// additionally needs k <= 2c + 1 (beyond that minimal-degree varieties are
// cones), which is the caller's concern, not a shape constraint.
template <class S>
CriticalSetup<S> projectionsFromMinimalDegree(const ScrollMatrix<S>& scroll,
                                              const Field<S>& F,
                                              SplitMix64& rng,
                                              std::optional<int> h1Choice =
                                                  std::nullopt) {
  const int c = scroll.codim();
  const int k = scroll.ambientDim();
  const int numVars = k + 1;
  if (k < c + 2)
    throw ConstructionError(
        "no valid target split: need k >= c + 2 for two proper views");
  const int h1 = h1Choice.value_or(c + 1);
  const int h2 = k + c - h1;
  if (h1 < c + 1 || h1 > k - 1 || h2 < c + 1 || h2 > k - 1)
    throw ConstructionError("target split must satisfy c+1 <= h_i <= k-1");

  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    // Free data: E, tail forms of both Q cameras, F', and the camera block C.
    MatrixX<S> E = randomMatrix(F, rng, c + 1, h1 - c);
    MatrixX<S> q1Tail = randomMatrix(F, rng, h1 - c, numVars);
    MatrixX<S> Fprime = randomMatrix(F, rng, c + 1, h2 - c);
    MatrixX<S> q2Tail = randomMatrix(F, rng, h2 - c, numVars);
    MatrixX<S> C = randomMatrix(F, rng, numVars, numVars);
    if (!inverseExact<S>(C)) continue;

    // Column j of the input matrix prescribes the leading forms of Q_j.
    MatrixX<S> n1(c + 1, numVars), n2(c + 1, numVars);
    for (int r = 0; r <= c; ++r) {
      n1.row(r) = linearFormCoefficients(scroll.entries.at(r, 0));
      n2.row(r) = linearFormCoefficients(scroll.entries.at(r, 1));
    }
    MatrixX<S> q1Top = n1 + E * q1Tail;
    MatrixX<S> q2Top = n2 + Fprime * q2Tail;
    MatrixX<S> Q1 = stackRows<S>(q1Top, q1Tail);
    MatrixX<S> Q2 = stackRows<S>(q2Top, q2Tail);

    // A C^{-1} = (E | F) with F = (-I | F'), so the elimination of the
    // camera block reproduces the input matrix exactly.
    MatrixX<S> EF(c + 1, (h1 - c) + (h2 + 1));
    EF.leftCols(h1 - c) = E;
    EF.block(0, h1 - c, c + 1, c + 1) = -identityMatrix(F, c + 1);
    EF.rightCols(h2 - c) = Fprime;
    MatrixX<S> A = EF * C;

    MatrixX<S> P1 = stackRows<S>(A, MatrixX<S>(C.topRows(h1 - c)));
    MatrixX<S> P2 = C.bottomRows(h2 + 1);

    if (rank<S>(P1) != h1 + 1 || rank<S>(P2) != h2 + 1) continue;
    if (rank<S>(Q1) != h1 + 1 || rank<S>(Q2) != h2 + 1) continue;
    std::vector<Projection<S>> Ps{makeProjection<S>(P1), makeProjection<S>(P2)};
    std::vector<Projection<S>> Qs{makeProjection<S>(Q1), makeProjection<S>(Q2)};
    return CriticalSetup<S>::make(std::move(Ps), std::move(Qs));
  }
  throw ConstructionError("minimal-degree construction exhausted resampling");
}

// ---------------------------------------------------------------------------
// Three views: Cayley-Salmon cubics.
// ---------------------------------------------------------------------------

// A cubic L1 L2 L3 + M1 M2 M3 in 3 variables (plane cubic curve, k = 2) or
// 4 variables (cubic surface, k = 3).
template <class S>
struct CayleySalmonForm {
  std::array<MultiPoly<S>, 3> L;
  std::array<MultiPoly<S>, 3> M;

  int numVars() const { return L[0].numVars(); }

  static CayleySalmonForm make(std::array<MultiPoly<S>, 3> L,
                               std::array<MultiPoly<S>, 3> M) {
    const int nv = L[0].numVars();
    if (nv != 3 && nv != 4)
      throw ConstructionError("Cayley-Salmon data lives in 3 or 4 variables");
    for (const auto* triple : {&L, &M})
      for (const MultiPoly<S>& f : *triple) {
        if (f.numVars() != nv)
          throw ConstructionError("all six forms share one variable set");
        if (f.isZero() || f.degree() != 1)
          throw ConstructionError("all six forms must be nonzero linear forms");
      }
    return CayleySalmonForm{std::move(L), std::move(M)};
  }

  MultiPoly<S> cubic() const { return L[0] * L[1] * L[2] + M[0] * M[1] * M[2]; }
};

// The 3 x 3 matrix [[L1, M2, 0], [M1, 0, L3], [0, L2, M3]], whose
// determinant is -(L1 L2 L3 + M1 M2 M3).
template <class S>
PolyMatrix<S> cayleySalmonMatrix(const CayleySalmonForm<S>& f) {
  const int nv = f.numVars();
  PolyMatrix<S> m(3, 3, nv);
  m.set(0, 0, f.L[0]);
  m.set(0, 1, f.M[1]);
  m.set(1, 0, f.M[0]);
  m.set(1, 2, f.L[2]);
  m.set(2, 1, f.L[1]);
  m.set(2, 2, f.M[2]);
  return m;
}

// Realize the cubic as the critical locus of two triples of projections:
// P^3 with targets (1, 1, 2), or P^2 with targets (1, 1, 1).  The columns
// of the Cayley-Salmon matrix prescribe the Q cameras; the surface case
// first mixes the third column with the first two so that the three forms
// feeding Q_3 become independent.
template <class S>
CriticalSetup<S> projectionsFromCubic(const CayleySalmonForm<S>& f,
                                      const Field<S>& F, SplitMix64& rng) {
  const int nv = f.numVars();
  const int k = nv - 1;
  PolyMatrix<S> cs = cayleySalmonMatrix(f);

  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    MatrixX<S> C = randomMatrix(F, rng, nv, nv);
    if (!inverseExact<S>(C)) continue;
    const S e3 = F.sample(rng);

    // Column 2 of the reduced matrix is (-e1 Q22, -e2 Q22, Q21 - e3 Q22)
    // with the free column of A C^{-1} pinned to E = (-1, 0, e3).
    MultiPoly<S> Q21 = cs.at(2, 1) + cs.at(0, 1).scaled(e3);
    MultiPoly<S> Q22 = cs.at(0, 1);
    MatrixX<S> Q2 = detail::cameraFromForms<S>({Q21, Q22});
    MatrixX<S> Q1 = detail::cameraFromForms<S>({cs.at(0, 0), cs.at(1, 0)});

    MatrixX<S> E(3, 1);
    E(0, 0) = -F.one();
    E(1, 0) = F.zero();
    E(2, 0) = e3;

    MatrixX<S> Q3, Fblock;
    PolyMatrix<S> target = cs;
    if (k == 3) {
      // Column operation col3 += a col1 + b col2 keeps the determinant and
      // makes the three forms of the third column independent.
      const S a = F.sample(rng);
      const S b = F.sample(rng);
      for (int r = 0; r < 3; ++r)
        target.set(r, 2,
                   target.at(r, 2) + target.at(r, 0).scaled(a) +
                       target.at(r, 1).scaled(b));
      Q3 = detail::cameraFromForms<S>(
          {target.at(0, 2), target.at(1, 2), target.at(2, 2)});
      if (rank<S>(Q3) != 3) continue;
      Fblock = -identityMatrix(F, 3);
    } else {
      // Plane case: -F (Q31; Q32) = (0, L3, M3) with F = -(0 0; 1 0; 0 1).
      Q3 = detail::cameraFromForms<S>({target.at(1, 2), target.at(2, 2)});
      if (rank<S>(Q3) != 2) continue;
      Fblock = MatrixX<S>(3, 2);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) Fblock(i, j) = F.zero();
      Fblock(1, 0) = -F.one();
      Fblock(2, 1) = -F.one();
    }

    MatrixX<S> EF(3, 1 + Fblock.cols());
    EF.col(0) = E.col(0);
    EF.rightCols(Fblock.cols()) = Fblock;
    MatrixX<S> A = EF * C;

    MatrixX<S> P1 = A.topRows(2);
    MatrixX<S> P2(2, nv);
    P2.row(0) = A.row(2);
    P2.row(1) = C.row(0);
    MatrixX<S> P3 = C.bottomRows(nv - 1);

    if (rank<S>(P1) != 2 || rank<S>(P2) != 2 || rank<S>(Q1) != 2 ||
        rank<S>(Q2) != 2)
      continue;
    if (rank<S>(P3) != nv - 1) continue;
    std::vector<Projection<S>> Ps{makeProjection<S>(P1), makeProjection<S>(P2),
                                  makeProjection<S>(P3)};
    std::vector<Projection<S>> Qs{makeProjection<S>(Q1), makeProjection<S>(Q2),
                                  makeProjection<S>(Q3)};
    return CriticalSetup<S>::make(std::move(Ps), std::move(Qs));
  }
  throw ConstructionError("Cayley-Salmon construction exhausted resampling");
}

// ---------------------------------------------------------------------------
// Four views: quartic surfaces through four skew lines.
// ---------------------------------------------------------------------------

// Four pairwise skew lines in P^3, each given by two independent forms.
template <class S>
struct FourLines {
  std::array<std::array<MultiPoly<S>, 2>, 4> forms;

  static FourLines make(std::array<std::array<MultiPoly<S>, 2>, 4> forms) {
    for (const auto& line : forms)
      for (const MultiPoly<S>& f : line) {
        if (f.numVars() != 4)
          throw ConstructionError("lines live in P^3 (four variables)");
        if (f.isZero() || f.degree() != 1)
          throw ConstructionError("line generators must be nonzero linear forms");
      }
    FourLines out{std::move(forms)};
    for (int i = 0; i < 4; ++i)
      if (rank<S>(out.lineCamera(i)) != 2)
        throw ConstructionError("line " + std::to_string(i + 1) +
                                " has dependent generators");
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        MatrixX<S> stacked = stackRows<S>(out.lineCamera(i), out.lineCamera(j));
        if (rank<S>(stacked) != 4)
          throw ConstructionError("lines " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " are not skew");
      }
    return out;
  }

  MatrixX<S> lineCamera(int i) const {
    return detail::cameraFromForms<S>({forms[i][0], forms[i][1]});
  }
};

// The 4 x 4 matrix of linear forms whose determinant is a quartic through
// the four lines: columns 1 and 2 hold the generators of the first two
// lines; columns 3 and 4 mix the generators of lines 3 and 4 through the
// invertible matrix E (first two columns of E act on line 3, last two on
// line 4).
template <class S>
PolyMatrix<S> fourLinesMatrix(const FourLines<S>& lines, const MatrixX<S>& E) {
  if (E.rows() != 4 || E.cols() != 4)
    throw ConstructionError("mixing matrix E must be 4 x 4");
  if (!inverseExact<S>(E))
    throw ConstructionError("mixing matrix E must be invertible");
  PolyMatrix<S> N(4, 4, 4);
  N.set(0, 0, lines.forms[0][0]);
  N.set(1, 0, lines.forms[0][1]);
  N.set(2, 1, lines.forms[1][0]);
  N.set(3, 1, lines.forms[1][1]);
  for (int r = 0; r < 4; ++r) {
    N.set(r, 2,
          lines.forms[2][0].scaled(E(r, 0)) + lines.forms[2][1].scaled(E(r, 1)));
    N.set(r, 3,
          lines.forms[3][0].scaled(E(r, 2)) + lines.forms[3][1].scaled(E(r, 3)));
  }
  return N;
}

// A four-lines realization remembers the mixing matrix E so callers can
// reassemble the intended quartic matrix independently of the reduction.
template <class S>
struct FourLinesRealization {
  CriticalSetup<S> setup;
  MatrixX<S> mixing;
};

// Realize the quartic det(fourLinesMatrix(lines, E)) as the critical locus
// of two 4-tuples of projections P^3 --> P^1 whose Q-centers are the four
// given lines.  Both E and the calibration C must be invertible.
template <class S>
FourLinesRealization<S> projectionsFromFourLines(const FourLines<S>& lines,
                                                 const MatrixX<S>& E,
                                                 const MatrixX<S>& C) {
  if (E.rows() != 4 || E.cols() != 4 || !inverseExact<S>(E))
    throw ConstructionError("mixing matrix E must be invertible 4 x 4");
  if (C.rows() != 4 || C.cols() != 4 || !inverseExact<S>(C))
    throw ConstructionError("calibration matrix C must be invertible 4 x 4");
  MatrixX<S> A = -E * C;

  MatrixX<S> P1 = A.topRows(2), P2 = A.bottomRows(2);
  MatrixX<S> P3 = C.topRows(2), P4 = C.bottomRows(2);
  std::vector<Projection<S>> Ps{makeProjection<S>(P1), makeProjection<S>(P2),
                                makeProjection<S>(P3), makeProjection<S>(P4)};
  std::vector<Projection<S>> Qs;
  for (int i = 0; i < 4; ++i) Qs.push_back(makeProjection<S>(lines.lineCamera(i)));
  return FourLinesRealization<S>{
      CriticalSetup<S>::make(std::move(Ps), std::move(Qs)), E};
}

template <class S>
FourLinesRealization<S> projectionsFromFourLines(const FourLines<S>& lines,
                                                 const Field<S>& F,
                                                 SplitMix64& rng) {
  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    MatrixX<S> E = randomMatrix(F, rng, 4, 4);
    if (!inverseExact<S>(E)) continue;
    MatrixX<S> C = randomMatrix(F, rng, 4, 4);
    if (!inverseExact<S>(C)) continue;
    return projectionsFromFourLines(lines, E, C);
  }
  throw ConstructionError("four-lines construction exhausted resampling");
}

// The Schur curve of the first three columns of the reduced matrix splits
// into the centers of Q_1, Q_2, Q_3 and a residual twisted cubic; its three
// quadric generators are the 2 x 2 minors of
//   [ (Q11; Q12) | Adj(A) (Q21; Q22) | (n'_13; n'_23) ]
// where A relates the two generator pairs of the third line inside N'.
template <class S>
std::vector<MultiPoly<S>> residualTwistedCubic(const PolyMatrix<S>& N) {
  if (N.rows() != 4 || N.cols() != 4 || N.numVars() != 4)
    throw ConstructionError("residual curve needs the 4 x 4 reduced matrix");
  for (int r : {2, 3})
    if (!N.at(r, 0).isZero())
      throw ConstructionError("reduced matrix lacks the two-line column shape");
  for (int r : {0, 1})
    if (!N.at(r, 1).isZero())
      throw ConstructionError("reduced matrix lacks the two-line column shape");

  // Solve (n'_33; n'_43) = A (n'_13; n'_23) coefficient-wise.
  MatrixX<S> lhs(4, 2);
  lhs.col(0) = linearFormCoefficients(N.at(0, 2)).transpose();
  lhs.col(1) = linearFormCoefficients(N.at(1, 2)).transpose();
  MatrixX<S> Arel(2, 2);
  for (int r = 0; r < 2; ++r) {
    VectorX<S> rhs = linearFormCoefficients(N.at(2 + r, 2)).transpose();
    std::optional<VectorX<S>> sol = solveExact<S>(lhs, rhs);
    if (!sol)
      throw ConstructionError(
          "third column does not define a line (relation unsolvable)");
    Arel(r, 0) = (*sol)(0);
    Arel(r, 1) = (*sol)(1);
  }
  if (!inverseExact<S>(Arel))
    throw ConstructionError("line relation matrix is singular");
  MatrixX<S> adj(2, 2);
  adj(0, 0) = Arel(1, 1);
  adj(0, 1) = -Arel(0, 1);
  adj(1, 0) = -Arel(1, 0);
  adj(1, 1) = Arel(0, 0);

  PolyMatrix<S> m(2, 3, 4);
  m.set(0, 0, N.at(0, 0));
  m.set(1, 0, N.at(1, 0));
  m.set(0, 1, N.at(2, 1).scaled(adj(0, 0)) + N.at(3, 1).scaled(adj(0, 1)));
  m.set(1, 1, N.at(2, 1).scaled(adj(1, 0)) + N.at(3, 1).scaled(adj(1, 1)));
  m.set(0, 2, N.at(0, 2));
  m.set(1, 2, N.at(1, 2));
  return maximalMinors(m, 2);
}

// ---------------------------------------------------------------------------
// Generic-position test for quartic setups.
// ---------------------------------------------------------------------------

// The quartic surface cut out by a generic four-view setup carries four
// pairwise skew center lines and, for every choice of three of them, a
// residual twisted cubic meeting each chosen line in two distinct points
// while missing the fourth.  This report checks exactly that incidence
// package.  It never evaluates a Jacobian, so it can serve as an
// independent witness when testing smoothness claims over small fields.
struct QuarticPositionReport {
  bool skewCenters = false;
  bool residualsExist = false;
  bool transversalContacts = false;
  bool missesFourthLine = false;
  bool generic = false;
};

template <class S>
QuarticPositionReport quarticGenericPosition(const CriticalSetup<S>& setup) {
  if (setup.k != 3 || setup.hs != std::vector<int>{1, 1, 1, 1})
    throw DimensionMismatchError(
        "quartic position report needs four views P^3 -> P^1");

  QuarticPositionReport rep;
  std::array<MatrixX<S>, 4> centers;
  for (int i = 0; i < 4; ++i) centers[i] = centerOf(setup.Qs[i]).basis;

  rep.skewCenters = true;
  for (int i = 0; i < 4 && rep.skewCenters; ++i)
    for (int j = i + 1; j < 4; ++j) {
      MatrixX<S> st(4, 4);
      st.topRows(2) = setup.Qs[i].matrix();
      st.bottomRows(2) = setup.Qs[j].matrix();
      if (rank(st) < 4) {
        rep.skewCenters = false;
        break;
      }
    }

  rep.residualsExist = true;
  rep.transversalContacts = true;
  rep.missesFourthLine = true;
  for (int omit = 0; omit < 4; ++omit) {
    std::vector<Projection<S>> ps, qs;
    for (int i = 0; i < 4; ++i)
      if (i != omit) {
        ps.push_back(setup.Ps[i]);
        qs.push_back(setup.Qs[i]);
      }
    ps.push_back(setup.Ps[omit]);
    qs.push_back(setup.Qs[omit]);

    std::vector<MultiPoly<S>> cubic;
    try {
      CriticalSetup<S> rotated = CriticalSetup<S>::make(ps, qs);
      cubic = residualTwistedCubic(reduceToN(rotated).N);
    } catch (const Error&) {
      rep.residualsExist = false;
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      std::optional<SliceDivisor> div = sliceDivisorAlongLine(cubic, centers[i]);
      if (i == omit) {
        if (!div || div->length != 0) rep.missesFourthLine = false;
      } else {
        if (!div || div->length != 2 || !div->reduced)
          rep.transversalContacts = false;
      }
    }
  }

  rep.generic = rep.skewCenters && rep.residualsExist &&
                rep.transversalContacts && rep.missesFourthLine;
  return rep;
}

}  // namespace clocus

#endif  // CLOCUS_CONSTRUCTIONS_HPP
