#include "doctest.h"

#include <array>
#include <vector>

#include "clocus/constructions.hpp"
#include "clocus/idealanalysis.hpp"

using namespace clocus;

namespace {

template <class S>
MultiPoly<S> lf(const Field<S>& F, std::initializer_list<long long> coeffs) {
  VectorX<S> v(coeffs.size());
  int i = 0;
  for (long long c : coeffs) v(i++) = F.from(c);
  return MultiPoly<S>::linearForm(v);
}

template <class S>
FourLines<S> skewFamily(const Field<S>& F, long long lambda) {
  return FourLines<S>::make(
      {{{lf(F, {1, 0, 0, 0}), lf(F, {0, 1, 0, 0})},
        {lf(F, {0, 0, 1, 0}), lf(F, {0, 0, 0, 1})},
        {lf(F, {1, 0, -1, 0}), lf(F, {0, 1, 0, -1})},
        {lf(F, {1, 0, -lambda, 0}), lf(F, {0, 1, 0, -lambda})}}});
}

}  // namespace

TEST_CASE("minimal-degree matrices must be (c+1) x 2 of linear forms") {
  Field<Fp> F(32003);

  PolyMatrix<Fp> good(2, 2, 4);
  good.set(0, 0, lf(F, {1, 0, 0, 0}));
  good.set(0, 1, lf(F, {0, 1, 0, 0}));
  good.set(1, 0, lf(F, {0, 0, 1, 0}));
  good.set(1, 1, lf(F, {0, 0, 0, 1}));
  ScrollMatrix<Fp> scroll = ScrollMatrix<Fp>::make(good);
  CHECK(scroll.codim() == 1);
  CHECK(scroll.ambientDim() == 3);
  CHECK(scroll.minors().size() == 1);

  PolyMatrix<Fp> wide(2, 3, 4);
  CHECK_THROWS_AS(ScrollMatrix<Fp>::make(wide), ConstructionError);

  PolyMatrix<Fp> zeroRow(2, 2, 4);
  zeroRow.set(0, 0, lf(F, {1, 0, 0, 0}));
  zeroRow.set(0, 1, lf(F, {0, 1, 0, 0}));
  CHECK_THROWS_AS(ScrollMatrix<Fp>::make(zeroRow), ConstructionError);

  PolyMatrix<Fp> quadratic(2, 2, 4);
  quadratic.set(0, 0, lf(F, {1, 0, 0, 0}) * lf(F, {0, 1, 0, 0}));
  quadratic.set(0, 1, lf(F, {0, 1, 0, 0}));
  quadratic.set(1, 0, lf(F, {0, 0, 1, 0}));
  quadratic.set(1, 1, lf(F, {0, 0, 0, 1}));
  CHECK_THROWS_AS(ScrollMatrix<Fp>::make(quadratic), ConstructionError);
}

TEST_CASE("a quadric surface is the critical locus of a two-view setup") {
  Field<Fp> F(32003);
  SplitMix64 rng(9);

  PolyMatrix<Fp> m(2, 2, 4);
  m.set(0, 0, lf(F, {1, 0, 0, 0}));
  m.set(0, 1, lf(F, {0, 1, 0, 0}));
  m.set(1, 0, lf(F, {0, 0, 1, 0}));
  m.set(1, 1, lf(F, {0, 0, 0, 1}));
  ScrollMatrix<Fp> scroll = ScrollMatrix<Fp>::make(m);

  CriticalSetup<Fp> setup = projectionsFromMinimalDegree(scroll, F, rng);
  CHECK(setup.k == 3);
  CHECK(setup.hs == std::vector<int>{2, 2});

  // The reduction reproduces the input matrix entry by entry.
  ReducedN<Fp> red = reduceToN(setup);
  REQUIRE(red.N.rows() == 2);
  REQUIRE(red.N.cols() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(red.N.at(i, j) == m.at(i, j));

  CriticalIdeal<Fp> ideal = criticalIdeal(setup);
  std::string why;
  CHECK(idealsMatchThroughDegree(scroll.minors(), ideal.generators, 4, &why));
}

TEST_CASE("scroll realization rejects impossible target splits") {
  Field<Fp> F(32003);
  SplitMix64 rng(13);

  // c = 1 in P^2: would need k >= c + 2 = 3.
  PolyMatrix<Fp> small(2, 2, 3);
  small.set(0, 0, lf(F, {1, 0, 0}));
  small.set(0, 1, lf(F, {0, 1, 0}));
  small.set(1, 0, lf(F, {0, 1, 0}));
  small.set(1, 1, lf(F, {0, 0, 1}));
  ScrollMatrix<Fp> tooSmall = ScrollMatrix<Fp>::make(small);
  CHECK_THROWS_AS(projectionsFromMinimalDegree(tooSmall, F, rng),
                  ConstructionError);

  // Valid ambient but an out-of-range split request.
  PolyMatrix<Fp> ok(2, 2, 5);
  ok.set(0, 0, lf(F, {1, 0, 0, 0, 0}));
  ok.set(0, 1, lf(F, {0, 1, 0, 0, 0}));
  ok.set(1, 0, lf(F, {0, 1, 0, 0, 0}));
  ok.set(1, 1, lf(F, {0, 0, 1, 0, 0}));
  ScrollMatrix<Fp> scroll = ScrollMatrix<Fp>::make(ok);
  CHECK_THROWS_AS(projectionsFromMinimalDegree(scroll, F, rng, 1),
                  ConstructionError);
  CHECK_THROWS_AS(projectionsFromMinimalDegree(scroll, F, rng, 4),
                  ConstructionError);
  CHECK_NOTHROW(projectionsFromMinimalDegree(scroll, F, rng, 3));
}

TEST_CASE("a cubic splits as L1 L2 L3 + M1 M2 M3 with matching determinant") {
  Field<Fp> F(32003);

  std::array<MultiPoly<Fp>, 3> L{lf(F, {1, 0, 0, 0}), lf(F, {0, 1, 0, 0}),
                                 lf(F, {1, 1, 1, 1})};
  std::array<MultiPoly<Fp>, 3> M{lf(F, {0, 0, 1, 0}), lf(F, {0, 0, 0, 1}),
                                 lf(F, {1, 2, 3, 4})};
  CayleySalmonForm<Fp> f = CayleySalmonForm<Fp>::make(L, M);
  CHECK(f.cubic().degree() == 3);
  // det [[L1, M2, 0], [M1, 0, L3], [0, L2, M3]] = -(L1 L2 L3 + M1 M2 M3)
  CHECK(polyDeterminant(cayleySalmonMatrix(f)) ==
        f.cubic().scaled(-F.one()));

  std::array<MultiPoly<Fp>, 3> wrongVars{lf(F, {1, 0}), lf(F, {0, 1}),
                                         lf(F, {1, 1})};
  CHECK_THROWS_AS(CayleySalmonForm<Fp>::make(wrongVars, wrongVars),
                  ConstructionError);

  std::array<MultiPoly<Fp>, 3> withZero{lf(F, {1, 0, 0, 0}),
                                        MultiPoly<Fp>::zero(4),
                                        lf(F, {1, 1, 1, 1})};
  CHECK_THROWS_AS(CayleySalmonForm<Fp>::make(L, withZero), ConstructionError);

  std::array<MultiPoly<Fp>, 3> withQuadric{
      lf(F, {1, 0, 0, 0}) * lf(F, {0, 1, 0, 0}), lf(F, {0, 1, 0, 0}),
      lf(F, {1, 1, 1, 1})};
  CHECK_THROWS_AS(CayleySalmonForm<Fp>::make(withQuadric, M),
                  ConstructionError);
}

TEST_CASE("a cubic surface is the critical locus of three views of P^3") {
  Field<Fp> F(32003);
  SplitMix64 rng(21);
  std::array<MultiPoly<Fp>, 3> L{lf(F, {1, 0, 0, 0}), lf(F, {0, 1, 0, 0}),
                                 lf(F, {1, 1, 1, 1})};
  std::array<MultiPoly<Fp>, 3> M{lf(F, {0, 0, 1, 0}), lf(F, {0, 0, 0, 1}),
                                 lf(F, {1, 2, 3, 4})};
  CayleySalmonForm<Fp> f = CayleySalmonForm<Fp>::make(L, M);

  CriticalSetup<Fp> setup = projectionsFromCubic(f, F, rng);
  CHECK(setup.k == 3);
  CHECK(setup.hs == std::vector<int>{1, 1, 2});

  CriticalIdeal<Fp> ideal = criticalIdeal(setup);
  REQUIRE(ideal.generators.size() == 1);
  std::string why;
  CHECK(idealsMatchThroughDegree<Fp>({f.cubic()}, ideal.generators, 5, &why));
}

TEST_CASE("a plane cubic is the critical locus of three views of P^2") {
  Field<Fp> F(32003);
  SplitMix64 rng(23);
  std::array<MultiPoly<Fp>, 3> L{lf(F, {1, 0, 0}), lf(F, {0, 1, 0}),
                                 lf(F, {1, 1, 1})};
  std::array<MultiPoly<Fp>, 3> M{lf(F, {0, 0, 1}), lf(F, {1, 2, 3}),
                                 lf(F, {1, 5, 7})};
  CayleySalmonForm<Fp> f = CayleySalmonForm<Fp>::make(L, M);

  CriticalSetup<Fp> setup = projectionsFromCubic(f, F, rng);
  CHECK(setup.k == 2);
  CHECK(setup.hs == std::vector<int>{1, 1, 1});

  CriticalIdeal<Fp> ideal = criticalIdeal(setup);
  REQUIRE(ideal.generators.size() == 1);
  std::string why;
  CHECK(idealsMatchThroughDegree<Fp>({f.cubic()}, ideal.generators, 5, &why));
}

TEST_CASE("four lines must be pairwise skew with independent generators") {
  Field<Fp> F(32003);
  CHECK_NOTHROW(skewFamily(F, 7));

  // Lines 1 and 3 here share the point (0:0:0:1).
  CHECK_THROWS_AS(FourLines<Fp>::make(
                      {{{lf(F, {1, 0, 0, 0}), lf(F, {0, 1, 0, 0})},
                        {lf(F, {0, 0, 1, 0}), lf(F, {0, 0, 0, 1})},
                        {lf(F, {1, 0, 0, 0}), lf(F, {0, 0, 1, 0})},
                        {lf(F, {1, 0, -2, 0}), lf(F, {0, 1, 0, -2})}}}),
                  ConstructionError);

  // Dependent generators never cut out a line.
  CHECK_THROWS_AS(FourLines<Fp>::make(
                      {{{lf(F, {1, 0, 0, 0}), lf(F, {2, 0, 0, 0})},
                        {lf(F, {0, 0, 1, 0}), lf(F, {0, 0, 0, 1})},
                        {lf(F, {1, 0, -1, 0}), lf(F, {0, 1, 0, -1})},
                        {lf(F, {1, 0, -2, 0}), lf(F, {0, 1, 0, -2})}}}),
                  ConstructionError);

  // The degenerate member of the pencil family: lambda = 1 repeats line 3.
  CHECK_THROWS_AS(skewFamily(F, 1), ConstructionError);
}

TEST_CASE("the four-lines matrix is a quartic through all four lines") {
  Field<Fp> F(32003);
  SplitMix64 rng(31);
  FourLines<Fp> lines = skewFamily(F, 7);

  MatrixX<Fp> E = randomMatrix(F, rng, 4, 4);
  REQUIRE(inverseExact<Fp>(E).has_value());
  PolyMatrix<Fp> N = fourLinesMatrix(lines, E);

  // Column pattern: first two columns hold the generators of lines 1, 2.
  CHECK(N.at(2, 0).isZero());
  CHECK(N.at(3, 0).isZero());
  CHECK(N.at(0, 1).isZero());
  CHECK(N.at(1, 1).isZero());

  MultiPoly<Fp> quartic = polyDeterminant(N);
  CHECK(quartic.degree() == 4);
  for (int i = 0; i < 4; ++i) {
    MatrixX<Fp> param = kernelBasis<Fp>(lines.lineCamera(i));
    REQUIRE(param.cols() == 2);
    CHECK(restrictToLinearSubspace(quartic, param).isZero());
  }

  MatrixX<Fp> singularE = MatrixX<Fp>(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) singularE(i, j) = F.zero();
  CHECK_THROWS_AS(fourLinesMatrix(lines, singularE), ConstructionError);
}

TEST_CASE("four skew lines are the Q-centers of a four-view quartic setup") {
  Field<Fp> F(32003);
  SplitMix64 rng(37);
  FourLines<Fp> lines = skewFamily(F, 7);

  FourLinesRealization<Fp> made = projectionsFromFourLines(lines, F, rng);
  CriticalSetup<Fp>& setup = made.setup;
  CHECK(setup.k == 3);
  CHECK(setup.hs == std::vector<int>{1, 1, 1, 1});

  // Each Q-center is the corresponding line.
  for (int i = 0; i < 4; ++i) {
    MatrixX<Fp> st = stackRows<Fp>(setup.Qs[i].matrix(), lines.lineCamera(i));
    CHECK(rank<Fp>(st) == 2);
  }

  // The critical quartic is exactly det(fourLinesMatrix(lines, E)).
  CriticalIdeal<Fp> ideal = criticalIdeal(setup);
  REQUIRE(ideal.generators.size() == 1);
  MultiPoly<Fp> target = polyDeterminant(fourLinesMatrix(lines, made.mixing));
  std::string why;
  CHECK(idealsMatchThroughDegree<Fp>({target}, ideal.generators, 6, &why));

  // The residual cubics land in general position for a generic member.
  QuarticPositionReport pos = quarticGenericPosition(setup);
  CHECK(pos.skewCenters);
  CHECK(pos.residualsExist);
  CHECK(pos.transversalContacts);
  CHECK(pos.missesFourthLine);
  CHECK(pos.generic);
}

TEST_CASE("the four-lines realization is deterministic in its inputs") {
  Field<Fp> F(32003);
  FourLines<Fp> lines = skewFamily(F, 7);
  SplitMix64 rngA(99), rngB(99);
  FourLinesRealization<Fp> a = projectionsFromFourLines(lines, F, rngA);
  FourLinesRealization<Fp> b = projectionsFromFourLines(lines, F, rngB);
  for (int i = 0; i < 4; ++i) {
    CHECK(a.setup.Ps[i].matrix() == b.setup.Ps[i].matrix());
    CHECK(a.setup.Qs[i].matrix() == b.setup.Qs[i].matrix());
  }
  CHECK(a.mixing == b.mixing);
}

TEST_CASE("the residual curve of three of the lines is a twisted cubic") {
  Field<Fp> F(32003);
  SplitMix64 rng(41);
  FourLines<Fp> lines = skewFamily(F, 7);
  FourLinesRealization<Fp> made = projectionsFromFourLines(lines, F, rng);

  std::vector<MultiPoly<Fp>> cubic =
      residualTwistedCubic(reduceToN(made.setup).N);
  REQUIRE(cubic.size() == 3);
  for (const MultiPoly<Fp>& q : cubic) CHECK(q.degree() == 2);
  DimensionDegree dd = dimensionAndDegree(hilbertFunctionAuto(cubic, 6));
  CHECK(dd.dim == 1);
  CHECK(dd.degree == 3);
}

TEST_CASE("residual-curve extraction and the position report check shapes") {
  Field<Fp> F(32003);
  SplitMix64 rng(43);

  PolyMatrix<Fp> wrongSize(3, 3, 4);
  CHECK_THROWS_AS(residualTwistedCubic(wrongSize), ConstructionError);

  PolyMatrix<Fp> wrongPattern(4, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) wrongPattern.set(i, j, lf(F, {1, 1, 1, 1}));
  CHECK_THROWS_AS(residualTwistedCubic(wrongPattern), ConstructionError);

  CriticalSetup<Fp> twoView = sampleCriticalSetup(F, rng, 3, {2, 2});
  CHECK_THROWS_AS(quarticGenericPosition(twoView), DimensionMismatchError);
}
