#include "doctest.h"

#include <vector>

#include "clocus/criticalloci.hpp"
#include "clocus/multiview.hpp"

using namespace clocus;

namespace {

MatrixX<Fp> intMatrix(const Field<Fp>& F,
                      const std::vector<std::vector<long long>>& rows) {
  MatrixX<Fp> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = F.from(rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("cameras must be wide full-rank matrices") {
  Field<Fp> F(101);
  SplitMix64 rng(3);

  Projection<Fp> p = makeProjection<Fp>(randomFullRankMatrix(F, rng, 3, 5));
  CHECK(p.sourceDim() == 4);
  CHECK(p.targetDim() == 2);

  // Square and tall matrices are not projections with positive-dim center.
  CHECK_THROWS_AS(makeProjection<Fp>(randomFullRankMatrix(F, rng, 4, 4)),
                  InvalidCameraError);
  CHECK_THROWS_AS(makeProjection<Fp>(randomFullRankMatrix(F, rng, 5, 3)),
                  InvalidCameraError);

  MatrixX<Fp> degenerate = randomFullRankMatrix(F, rng, 3, 5);
  degenerate.row(2) = degenerate.row(0);
  CHECK_THROWS_AS(makeProjection<Fp>(degenerate), InvalidCameraError);

  VectorX<Fp> shortVec(3);
  shortVec(0) = F.one();
  shortVec(1) = F.zero();
  shortVec(2) = F.zero();
  CHECK_THROWS_AS(p.apply(shortVec), DimensionMismatchError);
}

TEST_CASE("the center is the right kernel, of projective dimension k-h-1") {
  Field<Fp> F(32003);
  SplitMix64 rng(11);
  for (auto [k, h] : std::vector<std::pair<int, int>>{
           {3, 2}, {4, 2}, {5, 1}, {6, 4}}) {
    Projection<Fp> p = sampleProjection(F, rng, k, h);
    Center<Fp> c = centerOf(p);
    CHECK(c.projectiveDim() == k - h - 1);
    MatrixX<Fp> image = p.matrix() * c.basis;
    for (int i = 0; i < image.rows(); ++i)
      for (int j = 0; j < image.cols(); ++j)
        CHECK(scalarIsZero(image(i, j)));
  }
}

TEST_CASE("profile validation enforces the partition of k+1") {
  CHECK(validateProfile(3, {2, 2, 2}, {2, 1, 1}).valid);
  CHECK(validateProfile(3, {1, 1, 1, 1}, {1, 1, 1, 1}).valid);
  CHECK_FALSE(validateProfile(3, {2, 2, 2}, {1, 1, 1}).valid);   // sums to 3
  CHECK_FALSE(validateProfile(3, {2, 2}, {2, 1, 1}).valid);      // length mismatch
  CHECK_FALSE(validateProfile(3, {2, 3, 2}, {2, 1, 1}).valid);   // h = k
  CHECK_FALSE(validateProfile(3, {2, 2, 2}, {3, 1, 0}).valid);   // alpha > h
  CHECK_FALSE(validateProfile(3, {2, 2, 2}, {2, 2, -1}).valid);  // alpha < 0
}

TEST_CASE("the multiview tensor vanishes exactly on corresponding frames") {
  Field<Fp> F(32003);
  SplitMix64 rng(17);
  const int k = 3;
  const std::vector<int> hs{2, 2, 2};
  const std::vector<int> alphas{2, 1, 1};
  REQUIRE(validateProfile(k, hs, alphas).valid);

  std::vector<Projection<Fp>> projs;
  for (int h : hs) projs.push_back(sampleProjection(F, rng, k, h));

  // Frames built through a witness point always correspond.
  for (int trial = 0; trial < 20; ++trial) {
    VectorX<Fp> witness = randomFullRankMatrix(F, rng, k + 1, 1).col(0);
    auto frames = sampleFramesThroughPoint(projs, alphas, witness, F, rng);
    CHECK(scalarIsZero(grassmannTensorValue(projs, frames)));
    CHECK(areCorresponding(projs, frames));
  }

  // Vanishing of the determinant must agree with rank deficiency of the
  // assembled matrix: a common preimage point is a kernel vector.
  int hits = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto frames = sampleRandomFrames(projs, alphas, F, rng);
    MatrixX<Fp> m = assembleGrassmannMatrix(projs, frames);
    REQUIRE(m.rows() == m.cols());
    const bool vanishes = areCorresponding(projs, frames);
    CHECK(vanishes == (rank<Fp>(m) < m.rows()));
    if (!vanishes) ++hits;
  }
  CHECK(hits >= 28);  // random frames almost never correspond
}

TEST_CASE("frame assembly rejects mismatched profiles") {
  Field<Fp> F(101);
  SplitMix64 rng(23);
  std::vector<Projection<Fp>> projs{sampleProjection(F, rng, 3, 2),
                                    sampleProjection(F, rng, 3, 2)};
  // Widths (1, 1) give order-by-columns 6 but order-by-rows is also 6: the
  // alphas sum to 4 = k + 1, fine.  Widths (1, 2) break the balance.
  std::vector<SubspaceFrame<Fp>> unbalanced{
      SubspaceFrame<Fp>{randomFullRankMatrix(F, rng, 3, 1)},
      SubspaceFrame<Fp>{randomFullRankMatrix(F, rng, 3, 2)}};
  CHECK_THROWS_AS(assembleGrassmannMatrix(projs, unbalanced),
                  ProfileMismatchError);

  std::vector<SubspaceFrame<Fp>> wrongSpace{
      SubspaceFrame<Fp>{randomFullRankMatrix(F, rng, 4, 1)},
      SubspaceFrame<Fp>{randomFullRankMatrix(F, rng, 3, 1)}};
  CHECK_THROWS_AS(assembleGrassmannMatrix(projs, wrongSpace),
                  ProfileMismatchError);
}

TEST_CASE("expected dimension and degree reproduce the classical counts") {
  // Two views P^3 -> P^2: the critical locus is a quadric surface.
  CHECK(expectedDimension(3, {2, 2}) == 2);
  CHECK(expectedDegree(2, 3, {2, 2}) == 2);
  // Three views P^4 -> P^2: the Bordiga surface, degree 6.
  CHECK(expectedDimension(4, {2, 2, 2}) == 2);
  CHECK(expectedDegree(3, 4, {2, 2, 2}) == 6);
  // Four views P^3 -> P^1: a quartic surface.
  CHECK(expectedDimension(3, {1, 1, 1, 1}) == 2);
  CHECK(expectedDegree(4, 3, {1, 1, 1, 1}) == 4);
  // Two views P^5 -> P^4 and P^3: a cubic threefold (a scroll).
  CHECK(expectedDimension(5, {4, 3}) == 3);
  CHECK(expectedDegree(2, 5, {4, 3}) == 3);
  // Three views P^3 -> P^2: expected dimension zero, ten points.
  CHECK(expectedDimension(3, {2, 2, 2}) == 0);
  CHECK(expectedDegree(3, 3, {2, 2, 2}) == 10);
}

TEST_CASE("the reduced matrix has shape (n-1+c) x n with linear entries") {
  Field<Fp> F(32003);
  SplitMix64 rng(29);
  struct Case {
    int k;
    std::vector<int> hs;
  };
  for (const Case& cs : {Case{3, {2, 2}}, Case{4, {2, 2, 2}},
                         Case{3, {1, 1, 1, 1}}, Case{5, {4, 3}}}) {
    CriticalSetup<Fp> setup = sampleCriticalSetup(F, rng, cs.k, cs.hs);
    const int n = setup.views();
    const int c = setup.codim();
    ReducedN<Fp> red = reduceToN(setup);
    CHECK(red.N.rows() == n - 1 + c);
    CHECK(red.N.cols() == n);
    CHECK(static_cast<int>(red.keptRows.size()) == n - 1 + c);
    CHECK(static_cast<int>(red.pivotRows.size()) == cs.k + 1);
    for (int i = 0; i < red.N.rows(); ++i)
      for (int j = 0; j < red.N.cols(); ++j)
        CHECK(red.N.at(i, j).degree() <= 1);

    CriticalIdeal<Fp> ideal = criticalIdeal(setup);
    CHECK(static_cast<long long>(ideal.generators.size()) ==
          binomial(n - 1 + c, n));
    for (const MultiPoly<Fp>& g : ideal.generators) CHECK(g.degree() == n);
  }
}

TEST_CASE("camera centers lie on the critical locus") {
  Field<Fp> F(32003);
  SplitMix64 rng(31);
  CriticalSetup<Fp> setup = sampleCriticalSetup(F, rng, 4, {2, 2, 2});
  CriticalIdeal<Fp> ideal = criticalIdeal(setup);
  for (bool in : centerContainment(setup, ideal.generators)) CHECK(in);
}

TEST_CASE("paired cameras must agree on source and target dimensions") {
  Field<Fp> F(101);
  SplitMix64 rng(37);
  std::vector<Projection<Fp>> Ps{sampleProjection(F, rng, 3, 2),
                                 sampleProjection(F, rng, 3, 2)};
  std::vector<Projection<Fp>> mixedTarget{sampleProjection(F, rng, 3, 2),
                                          sampleProjection(F, rng, 3, 1)};
  CHECK_THROWS_AS(CriticalSetup<Fp>::make(Ps, mixedTarget),
                  DimensionMismatchError);
  std::vector<Projection<Fp>> one{sampleProjection(F, rng, 3, 2)};
  CHECK_THROWS_AS(CriticalSetup<Fp>::make(one, one), DimensionMismatchError);
}

TEST_CASE("feasibility bounds sort profiles into the coarse classes") {
  // Balanced small cases that stay candidates for smooth irreducible loci.
  CHECK(boundsClassifier(2, 3, {2, 2}).cls ==
        BoundsClass::MaybeSmoothIrreducible);
  CHECK(boundsClassifier(3, 4, {2, 2, 2}).cls ==
        BoundsClass::MaybeSmoothIrreducible);
  CHECK(boundsClassifier(4, 3, {1, 1, 1, 1}).cls ==
        BoundsClass::MaybeSmoothIrreducible);
  // Two small targets force intersecting centers once k >= h_(1)+h_(2)+2.
  CHECK(boundsClassifier(3, 6, {2, 2, 4}).cls == BoundsClass::ForcedSingular);
  CHECK(boundsClassifier(4, 6, {1, 2, 2, 2}).cls ==
        BoundsClass::ForcedSingular);
  // A view with h <= c - 1 splits off its center as a component.
  CHECK(boundsClassifier(3, 3, {1, 2, 2}).cls == BoundsClass::ForcedReducible);
  // Codimension <= 0, nonpositive expected dimension, or h out of range.
  CHECK(boundsClassifier(2, 4, {2, 2}).cls == BoundsClass::ProfileInfeasible);
  CHECK(boundsClassifier(2, 2, {2, 2}).cls == BoundsClass::ProfileInfeasible);
  CHECK(boundsClassifier(3, 3, {1, 2, 3}).cls ==
        BoundsClass::ProfileInfeasible);

  BoundsReport r = boundsClassifier(3, 4, {2, 2, 2});
  CHECK(r.codim == 2);
  CHECK(std::string(boundsClassName(r.cls)) == "maybe-smooth-irreducible");
}

TEST_CASE("sampled setups are admissible and have disjoint centers") {
  Field<Fp> F(32003);
  SplitMix64 rng(41);
  CriticalSetup<Fp> s = sampleCriticalSetup(F, rng, 4, {2, 2, 2});
  CHECK(s.k == 4);
  CHECK(s.views() == 3);
  CHECK(s.codim() == 2);
  for (std::size_t i = 0; i < s.Qs.size(); ++i)
    for (std::size_t j = i + 1; j < s.Qs.size(); ++j) {
      MatrixX<Fp> a = centerOf(s.Qs[i]).basis;
      MatrixX<Fp> b = centerOf(s.Qs[j]).basis;
      MatrixX<Fp> st(a.rows(), a.cols() + b.cols());
      st.leftCols(a.cols()) = a;
      st.rightCols(b.cols()) = b;
      CHECK(rank<Fp>(st) == a.cols() + b.cols());
    }
}

TEST_CASE("an explicit two-view pair reproduces the epipolar quadric") {
  // P, Q both project P^3 -> P^2; the critical locus is cut by the single
  // 2x2-minor determinant of the reduced 2x2 matrix: a quadric through both
  // centers.
  Field<Fp> F(32003);
  auto P0 = makeProjection<Fp>(intMatrix(F, {{1, 0, 0, 0},
                                             {0, 1, 0, 0},
                                             {0, 0, 1, 0}}));
  auto Q0 = makeProjection<Fp>(intMatrix(F, {{0, 1, 0, 0},
                                             {0, 0, 1, 0},
                                             {0, 0, 0, 1}}));
  auto P1 = makeProjection<Fp>(intMatrix(F, {{1, 1, 0, 0},
                                             {0, 1, 1, 0},
                                             {0, 0, 1, 1}}));
  auto Q1 = makeProjection<Fp>(intMatrix(F, {{1, 0, 0, 2},
                                             {0, 1, 0, 3},
                                             {0, 0, 1, 5}}));
  auto setup = CriticalSetup<Fp>::make({P0, P1}, {Q0, Q1});
  CriticalIdeal<Fp> ideal = criticalIdeal(setup);
  REQUIRE(ideal.generators.size() == 1);
  CHECK(ideal.generators[0].degree() == 2);
  for (bool in : centerContainment(setup, ideal.generators)) CHECK(in);
}
