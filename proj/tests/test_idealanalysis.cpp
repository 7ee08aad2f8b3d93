#include "doctest.h"

#include <set>
#include <vector>

#include "clocus/idealanalysis.hpp"

using namespace clocus;

namespace {

// x_i * x_j - x_k * x_l in numVars variables.
template <class S>
MultiPoly<S> minorQuadric(const Field<S>& F, int numVars, int i, int j, int k,
                          int l) {
  MultiPoly<S> p = MultiPoly<S>::zero(numVars);
  p.addTerm(Monomial::variable(numVars, i) * Monomial::variable(numVars, j),
            F.one());
  p.addTerm(Monomial::variable(numVars, k) * Monomial::variable(numVars, l),
            -F.one());
  return p;
}

// The 2x2 minors of [[x0, x1, x2], [x1, x2, x3]].
template <class S>
std::vector<MultiPoly<S>> twistedCubic(const Field<S>& F) {
  return {minorQuadric(F, 4, 0, 2, 1, 1), minorQuadric(F, 4, 0, 3, 1, 2),
          minorQuadric(F, 4, 1, 3, 2, 2)};
}

}  // namespace

TEST_CASE("the twisted cubic has Hilbert function 3d+1, so (dim, deg) = (1, 3)") {
  Field<Fp> F(32003);
  auto gens = twistedCubic(F);
  HilbertProfile hp = hilbertFunction(gens, 6);
  REQUIRE(hp.values.size() == 7);
  CHECK(hp.values[0] == 1);
  for (int d = 1; d <= 6; ++d) CHECK(hp.values[d] == 3 * d + 1);
  DimensionDegree dd = dimensionAndDegree(hp);
  CHECK(dd.dim == 1);
  CHECK(dd.degree == 3);

  // Same profile over the rationals.
  Field<Rational> Q;
  DimensionDegree ddq = dimensionAndDegree(hilbertFunction(twistedCubic(Q), 6));
  CHECK(ddq.dim == 1);
  CHECK(ddq.degree == 3);
}

TEST_CASE("graded pieces of a principal ideal count multiples of the generator") {
  Field<Fp> F(101);
  std::vector<MultiPoly<Fp>> gens{minorQuadric(F, 4, 0, 3, 1, 2)};
  // In degree d the span is f * R_{d-2}, and f is a nonzerodivisor.
  for (int d = 2; d <= 6; ++d)
    CHECK(gradedPieceRank(gens, d) == binomial(d - 2 + 3, 3));
  CHECK(gradedPieceRank(gens, 1) == 0);
}

TEST_CASE("point enumeration hits every point of P^k exactly once") {
  Field<Fp> F5(5);
  auto pts = enumeratePoints(F5, 2);
  CHECK(static_cast<long long>(pts.size()) == (125 - 1) / 4);  // 31

  std::set<std::vector<std::uint32_t>> seen;
  for (const VectorX<Fp>& x : pts) {
    int lead = 0;
    while (lead < x.size() && scalarIsZero(x(lead))) ++lead;
    REQUIRE(lead < x.size());
    CHECK(x(lead).value() == 1);  // normalized representative
    std::vector<std::uint32_t> key;
    for (int i = 0; i < x.size(); ++i) key.push_back(x(i).value());
    seen.insert(key);
  }
  CHECK(seen.size() == pts.size());

  Field<Fp> F3(3);
  CHECK(enumeratePoints(F3, 3).size() == (81 - 1) / 2);  // 40
}

TEST_CASE("the smoothness survey separates a smooth quadric from a cone") {
  Field<Fp> F(7);

  // x0*x3 = x1*x2 is P^1 x P^1: (q+1)^2 points, no singular ones.
  std::vector<MultiPoly<Fp>> smooth{minorQuadric(F, 4, 0, 3, 1, 2)};
  SmoothnessSurvey<Fp> s = smoothnessSurvey(smooth, 1, F);
  CHECK(s.pointsOnVariety == 64);
  CHECK(s.singularPoints.empty());
  CHECK(s.rankHistogram.at(1) == 64);

  // x0*x1 = x2^2 is a cone: q(q+1)+1 points, singular exactly at the vertex.
  std::vector<MultiPoly<Fp>> cone{minorQuadric(F, 4, 2, 2, 0, 1)};
  SmoothnessSurvey<Fp> c = smoothnessSurvey(cone, 1, F);
  CHECK(c.pointsOnVariety == 7 * 8 + 1);
  REQUIRE(c.singularPoints.size() == 1);
  const VectorX<Fp>& v = c.singularPoints[0];
  CHECK(scalarIsZero(v(0)));
  CHECK(scalarIsZero(v(1)));
  CHECK(scalarIsZero(v(2)));
  CHECK(v(3).value() == 1);
  CHECK(c.rankHistogram.at(0) == 1);
  CHECK(c.rankHistogram.at(1) == 56);

  // The characteristic must clear the generator degree for derivatives to
  // stay faithful.
  Field<Fp> F2(2);
  std::vector<MultiPoly<Fp>> overSmall{minorQuadric(Field<Fp>(2), 4, 0, 3, 1, 2)};
  CHECK_THROWS_AS(smoothnessSurvey(overSmall, 1, F2), DimensionMismatchError);
}

TEST_CASE("the Jacobian is only defined on the variety") {
  Field<Fp> F(101);
  std::vector<MultiPoly<Fp>> gens{minorQuadric(F, 4, 0, 3, 1, 2)};

  VectorX<Fp> off(4);
  off(0) = F.one();
  off(1) = F.zero();
  off(2) = F.zero();
  off(3) = F.one();
  CHECK_THROWS_AS(jacobianAt(gens, off), NotOnVarietyError);

  VectorX<Fp> on(4);
  on(0) = F.one();
  on(1) = F.zero();
  on(2) = F.zero();
  on(3) = F.zero();
  JacobianInfo<Fp> j = jacobianAt(gens, on);
  CHECK(j.rank == 1);
  CHECK(j.matrix.rows() == 1);
  CHECK(j.matrix.cols() == 4);
}

TEST_CASE("line slices of a quadric: member, secant, tangent") {
  Field<Fp> F(32003);
  std::vector<MultiPoly<Fp>> gens{minorQuadric(F, 4, 0, 3, 1, 2)};

  auto lineThrough = [&](std::initializer_list<int> a,
                         std::initializer_list<int> b) {
    MatrixX<Fp> param(4, 2);
    int r = 0;
    for (int v : a) param(r++, 0) = F.from(v);
    r = 0;
    for (int v : b) param(r++, 1) = F.from(v);
    return param;
  };

  // A ruling of the quadric lies inside it.
  CHECK_FALSE(
      sliceDivisorAlongLine(gens, lineThrough({1, 0, 0, 0}, {0, 1, 0, 0}))
          .has_value());

  // A secant meets it in two reduced points.
  auto secant =
      sliceDivisorAlongLine(gens, lineThrough({1, 0, 0, 1}, {0, 1, 1, 0}));
  REQUIRE(secant.has_value());
  CHECK(secant->length == 2);
  CHECK(secant->reduced);

  // A tangent line meets it in one double point.
  auto tangent =
      sliceDivisorAlongLine(gens, lineThrough({1, 0, 0, 0}, {0, 1, 1, 0}));
  REQUIRE(tangent.has_value());
  CHECK(tangent->length == 2);
  CHECK_FALSE(tangent->reduced);

  // Generic lines see the full degree.
  SplitMix64 rng(5);
  CHECK(lineSliceDegree(gens, F, rng) == 2);
}

TEST_CASE("ideal comparison is degree-by-degree span equality") {
  Field<Fp> F(101);
  MultiPoly<Fp> f = minorQuadric(F, 4, 0, 3, 1, 2);
  std::vector<MultiPoly<Fp>> a{f};
  std::vector<MultiPoly<Fp>> scaled{f.scaled(F.from(2))};
  std::vector<MultiPoly<Fp>> other{minorQuadric(F, 4, 0, 2, 1, 1)};

  CHECK(idealsMatchThroughDegree(a, scaled, 5));
  std::string why;
  CHECK_FALSE(idealsMatchThroughDegree(a, other, 5, &why));
  CHECK(why.find("degree 2") != std::string::npos);
}

TEST_CASE("Hilbert fits retry with a larger degree window when needed") {
  Field<Fp> F(101);
  std::vector<MultiPoly<Fp>> gens{minorQuadric(F, 4, 0, 3, 1, 2)};
  CHECK_THROWS_AS(hilbertFunction(gens, 2), NeedsHigherDegreeError);
  DimensionDegree dd = dimensionAndDegree(hilbertFunctionAuto(gens, 2));
  CHECK(dd.dim == 2);
  CHECK(dd.degree == 2);
}

TEST_CASE("a monomial ideal with a known complement of standard monomials") {
  // I = (x0 x1, x1 x2) in P^2: the union of the line x1 = 0 and the point
  // (0:1:0), so HF(d) = d + 2 for d >= 1 and the fit sees dimension 1,
  // degree 1.
  Field<Rational> Q;
  MultiPoly<Rational> f = MultiPoly<Rational>::zero(3);
  f.addTerm(Monomial::variable(3, 0) * Monomial::variable(3, 1), Q.one());
  MultiPoly<Rational> g = MultiPoly<Rational>::zero(3);
  g.addTerm(Monomial::variable(3, 1) * Monomial::variable(3, 2), Q.one());
  HilbertProfile hp = hilbertFunction<Rational>({f, g}, 8);
  CHECK(hp.values[0] == 1);
  for (int d = 1; d <= 8; ++d) CHECK(hp.values[d] == d + 2);
  DimensionDegree dd = dimensionAndDegree(hp);
  CHECK(dd.dim == 1);
  CHECK(dd.degree == 1);
}

TEST_CASE("the empty subscheme reports dimension -1") {
  Field<Fp> F(101);
  // (x0, x1, x2, x3) cuts out nothing in P^3.
  std::vector<MultiPoly<Fp>> gens;
  for (int i = 0; i < 4; ++i)
    gens.push_back(MultiPoly<Fp>::variable(4, i));
  DimensionDegree dd = dimensionAndDegree(hilbertFunctionAuto(gens, 4));
  CHECK(dd.dim == -1);
  CHECK(dd.degree == 0);
}

TEST_CASE("the singular linear space requires the normalized shape") {
  PolyMatrix<Fp> wrong(3, 3, 8);
  CHECK_THROWS_AS(singularLinearSpaceL(wrong, 2), DimensionMismatchError);
}
