#ifndef CLOCUS_IDEALANALYSIS_HPP
#define CLOCUS_IDEALANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clocus/linalg.hpp"
#include "clocus/poly.hpp"
#include "clocus/polymatrix.hpp"

namespace clocus {

namespace detail {

// Incremental row reduction over GF(p) with delayed modular reduction:
// a pivot row has zeros left of its pivot column, so scanning an incoming
// row left to right and eliminating immediately is exact.  Entries are
// accumulated in int64 and reduced once per elimination sweep; the caller
// guarantees (p-1)^2 * (#pivots + 1) fits in int64, which holds for every
// p < 2^21 at the matrix sizes this library meets.
class FpEliminator {
 public:
  FpEliminator(int numCols, std::uint32_t p)
      : cols_(numCols), p_(p), pivotOfCol_(numCols, -1) {}

  int rank() const { return static_cast<int>(pivotRows_.size()); }

  // Consumes one row (values reduced mod p); returns true if rank grew.
  bool addRow(std::vector<std::int64_t>& cur) {
    const std::int64_t p = p_;
    for (int j = 0; j < cols_; ++j) {
      std::int64_t v = cur[j] % p;
      if (v < 0) v += p;
      if (v == 0) continue;
      const int t = pivotOfCol_[j];
      if (t >= 0) {
        const std::uint32_t* pr = pivotRows_[t].data();
        for (int s = j; s < cols_; ++s)
          cur[s] -= v * static_cast<std::int64_t>(pr[s]);
      } else {
        std::vector<std::uint32_t> row(cols_, 0);
        const std::int64_t inv = modInverse(v, p);
        for (int s = j; s < cols_; ++s) {
          std::int64_t w = cur[s] % p;
          if (w < 0) w += p;
          row[s] = static_cast<std::uint32_t>((w * inv) % p);
        }
        pivotOfCol_[j] = static_cast<int>(pivotRows_.size());
        pivotRows_.push_back(std::move(row));
        return true;
      }
    }
    return false;
  }

 private:
  int cols_;
  std::int64_t p_;
  std::vector<int> pivotOfCol_;
  std::vector<std::vector<std::uint32_t>> pivotRows_;
};

template <class S>
std::uint32_t commonModulus(const std::vector<MultiPoly<S>>& gens) {
  if constexpr (std::is_same_v<S, Fp>) {
    for (const MultiPoly<Fp>& g : gens)
      for (const auto& [m, c] : g.terms())
        if (c.modulus() != 0) return c.modulus();
  }
  return 0;
}

}  // namespace detail

// Rank of the degree-d graded piece of the ideal generated by gens: the
// span of {m * g : g a generator, m a monomial, deg(m g) = d}.
template <class S>
long long gradedPieceRank(const std::vector<MultiPoly<S>>& gens, int d) {
  if (gens.empty()) return 0;
  const int numVars = gens[0].numVars();
  for (const MultiPoly<S>& g : gens)
    if (g.numVars() != numVars)
      throw DimensionMismatchError("generators share one variable set");
  MonomialBasis basis(numVars, d);

  const std::uint32_t p = detail::commonModulus(gens);
  const bool fastPath = [&] {
    if constexpr (std::is_same_v<S, Fp>) {
      return p != 0 && p < (1u << 21);
    } else {
      return false;
    }
  }();

  if (fastPath) {
    if constexpr (std::is_same_v<S, Fp>) {
      detail::FpEliminator elim(basis.size(), p);
      std::vector<std::int64_t> row(basis.size());
      for (const MultiPoly<Fp>& g : gens) {
        if (g.isZero() || g.degree() > d) continue;
        if (!g.isHomogeneous())
          throw DimensionMismatchError("graded rank needs homogeneous generators");
        for (const Monomial& m : monomialsOfDegree(numVars, d - g.degree())) {
          std::fill(row.begin(), row.end(), 0);
          for (const auto& [mono, coef] : g.terms())
            row[basis.indexOf(m * mono)] = Fp(coef.value(), p).value();
          elim.addRow(row);
        }
      }
      return elim.rank();
    }
  }

  // Generic exact path (rationals, or an oversized prime).
  std::vector<RowVectorX<S>> rows;
  for (const MultiPoly<S>& g : gens) {
    if (g.isZero() || g.degree() > d) continue;
    if (!g.isHomogeneous())
      throw DimensionMismatchError("graded rank needs homogeneous generators");
    for (const Monomial& m : monomialsOfDegree(numVars, d - g.degree())) {
      RowVectorX<S> row(basis.size());
      for (int j = 0; j < basis.size(); ++j) row(j) = S(0);
      for (const auto& [mono, coef] : g.terms())
        row(basis.indexOf(m * mono)) = coef;
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return 0;
  MatrixX<S> mat(static_cast<int>(rows.size()), basis.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    mat.row(static_cast<int>(i)) = rows[i];
  return rank<S>(mat);
}

struct HilbertProfile {
  int numVars = 0;                  // k + 1
  std::vector<long long> values;    // HF(R/I, d) for d = 0..dMax
  int fitOrder = -1;                // order of the stabilized difference
  long long fitConstant = 0;        // the stabilized difference value
  int stabilizedFrom = 0;           // first degree of the agreeing tail
};

// Hilbert function of R/I in degrees 0..dMax, with a finite-difference fit
// of the tail.  The fit takes the smallest m whose m-th difference sequence
// is constant over its last m+2 entries; if no order stabilizes, the caller
// must retry with a larger dMax.
template <class S>
HilbertProfile hilbertFunction(const std::vector<MultiPoly<S>>& gens,
                               int dMax) {
  if (gens.empty()) throw DimensionMismatchError("no generators given");
  const int numVars = gens[0].numVars();
  HilbertProfile out;
  out.numVars = numVars;
  int minDeg = dMax + 1;
  for (const MultiPoly<S>& g : gens)
    if (!g.isZero()) minDeg = std::min(minDeg, g.degree());
  for (int d = 0; d <= dMax; ++d) {
    const long long full = binomial(d + numVars - 1, numVars - 1);
    const long long r = (d < minDeg) ? 0 : gradedPieceRank(gens, d);
    out.values.push_back(full - r);
  }

  std::vector<long long> diffs = out.values;
  for (int m = 0; m + 1 < static_cast<int>(out.values.size()); ++m) {
    // diffs currently holds the m-th difference sequence.
    const int len = static_cast<int>(diffs.size());
    const int window = m + 2;
    if (len < window) break;
    bool constant = true;
    const long long tailValue = diffs[len - 1];
    for (int i = 1; i < window; ++i)
      if (diffs[len - 1 - i] != tailValue) {
        constant = false;
        break;
      }
    if (constant && !(tailValue == 0 && m > 0)) {
      out.fitOrder = m;
      out.fitConstant = tailValue;
      out.stabilizedFrom = len - window;
      return out;
    }
    for (int i = 0; i + 1 < len; ++i) diffs[i] = diffs[i + 1] - diffs[i];
    diffs.resize(len - 1);
  }
  throw NeedsHigherDegreeError(
      "Hilbert function did not stabilize by degree " + std::to_string(dMax));
}

// Retry wrapper: grows dMax in steps of 2 up to the hard cap of 20.
template <class S>
HilbertProfile hilbertFunctionAuto(const std::vector<MultiPoly<S>>& gens,
                                   int dStart) {
  for (int dMax = dStart; dMax <= 20; dMax += 2) {
    try {
      return hilbertFunction(gens, dMax);
    } catch (const NeedsHigherDegreeError&) {
      if (dMax + 2 > 20) throw;
    }
  }
  throw NeedsHigherDegreeError("Hilbert fit exceeded the degree cap of 20");
}

struct DimensionDegree {
  int dim = -1;        // projective dimension; -1 for the empty subscheme
  long long degree = 0;
};

// The fitted Hilbert polynomial of a projective subscheme of dimension r
// has degree r with leading coefficient deg(X) / r!, so the r-th finite
// difference stabilizes at deg(X).
inline DimensionDegree dimensionAndDegree(const HilbertProfile& profile) {
  DimensionDegree out;
  if (profile.fitOrder < 0)
    throw NeedsHigherDegreeError("profile carries no stabilized fit");
  if (profile.fitConstant == 0) {
    out.dim = -1;
    out.degree = 0;
  } else {
    out.dim = profile.fitOrder;
    out.degree = profile.fitConstant;
  }
  return out;
}

// All points of P^k over a small prime field, one representative per point:
// first nonzero coordinate normalized to 1, charts scanned from x_0 on.
template <class S>
std::vector<VectorX<S>> enumeratePoints(const Field<S>& F, int k) {
  static_assert(std::is_same_v<S, Fp>, "point enumeration needs a finite field");
  const std::uint32_t p = F.characteristic();
  if (k > 4 || p > 31)
    throw DimensionMismatchError(
        "point enumeration is capped at k <= 4 and p <= 31");
  std::vector<VectorX<S>> points;
  for (int lead = 0; lead <= k; ++lead) {
    const int free = k - lead;
    long long count = 1;
    for (int i = 0; i < free; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      VectorX<S> x(k + 1);
      for (int i = 0; i < lead; ++i) x(i) = F.zero();
      x(lead) = F.one();
      long long rest = idx;
      for (int i = lead + 1; i <= k; ++i) {
        x(i) = F.from(rest % p);
        rest /= p;
      }
      points.push_back(std::move(x));
    }
  }
  return points;
}

template <class S>
struct JacobianInfo {
  MatrixX<S> matrix;  // one row per generator, one column per variable
  int rank = 0;
};

template <class S>
JacobianInfo<S> jacobianAt(const std::vector<MultiPoly<S>>& gens,
                           const VectorX<S>& point) {
  if (gens.empty()) throw DimensionMismatchError("no generators given");
  const int numVars = gens[0].numVars();
  for (const MultiPoly<S>& g : gens)
    if (!scalarIsZero(g.eval(point)))
      throw NotOnVarietyError("Jacobian requested off the variety");
  JacobianInfo<S> out;
  out.matrix = MatrixX<S>(static_cast<int>(gens.size()), numVars);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < numVars; ++j)
      out.matrix(static_cast<int>(i), j) =
          partialDerivative(gens[i], j).eval(point);
  out.rank = rank<S>(out.matrix);
  return out;
}

template <class S>
struct SmoothnessSurvey {
  long long pointsOnVariety = 0;
  std::vector<VectorX<S>> singularPoints;
  std::map<int, long long> rankHistogram;
};

// Walk every rational point of the locus and classify it by Jacobian rank;
// a point is singular when the rank falls below the codimension.  This is
// a finite-field proxy for smoothness: it can only see rational points of
// one small field, so "no singular points found" is evidence, not proof.
// Derivatives stay faithful because exponents never reach the
// characteristic (enforced: p > max generator degree).
template <class S>
SmoothnessSurvey<S> smoothnessSurvey(const std::vector<MultiPoly<S>>& gens,
                                     int codim, const Field<S>& F) {
  static_assert(std::is_same_v<S, Fp>, "survey needs a finite field");
  if (gens.empty()) throw DimensionMismatchError("no generators given");
  const int numVars = gens[0].numVars();
  int maxDeg = 0;
  for (const MultiPoly<S>& g : gens) maxDeg = std::max(maxDeg, g.degree());
  if (static_cast<int>(F.characteristic()) <= maxDeg)
    throw DimensionMismatchError(
        "survey field characteristic must exceed the generator degree");
  std::vector<std::vector<MultiPoly<S>>> derivs(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < numVars; ++j)
      derivs[i].push_back(partialDerivative(gens[i], j));

  SmoothnessSurvey<S> out;
  for (const VectorX<S>& x : enumeratePoints(F, numVars - 1)) {
    bool onVariety = true;
    for (const MultiPoly<S>& g : gens)
      if (!scalarIsZero(g.eval(x))) {
        onVariety = false;
        break;
      }
    if (!onVariety) continue;
    ++out.pointsOnVariety;
    MatrixX<S> jac(static_cast<int>(gens.size()), numVars);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (int j = 0; j < numVars; ++j)
        jac(static_cast<int>(i), j) = derivs[i][j].eval(x);
    const int r = rank<S>(jac);
    ++out.rankHistogram[r];
    if (r < codim) out.singularPoints.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Line slicing.
// ---------------------------------------------------------------------------

namespace detail {

// Binary form in (s, t) as the coefficient vector of t^e, e = 0..deg.
template <class S>
std::vector<S> binaryFormCoeffs(const MultiPoly<S>& p) {
  if (p.numVars() != 2)
    throw DimensionMismatchError("binary form expected");
  const int d = p.degree();
  std::vector<S> coeffs(d + 1, S(0));
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != d)
      throw DimensionMismatchError("binary form must be homogeneous");
    coeffs[m.exponent(1)] = c;
  }
  return coeffs;
}

template <class S>
int univariateDegree(const std::vector<S>& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!scalarIsZero(f[i])) return i;
  return -1;
}

template <class S>
std::vector<S> univariateGcd(std::vector<S> a, std::vector<S> b) {
  auto trim = [](std::vector<S>& f) {
    f.resize(static_cast<std::size_t>(univariateDegree(f) + 1));
  };
  trim(a);
  trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  while (!b.empty()) {
    // a mod b
    const int db = static_cast<int>(b.size()) - 1;
    const S lead = b[db];
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
      const int da = static_cast<int>(a.size()) - 1;
      S f = a[da] / lead;
      for (int i = 0; i <= db; ++i)
        a[da - db + i] = a[da - db + i] - f * b[i];
      trim(a);
      if (static_cast<int>(a.size()) - 1 == da) break;  // defensive
    }
    std::swap(a, b);
  }
  return a;
}

template <class S>
std::vector<S> univariateDerivative(const std::vector<S>& f) {
  std::vector<S> d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * S(static_cast<long long>(i)));
  return d;
}

}  // namespace detail

// The divisor a line cuts on the locus: its length (intersection count with
// multiplicity, over the algebraic closure) plus whether it is reduced,
// i.e. all intersection points are distinct.
struct SliceDivisor {
  int length = 0;
  bool reduced = true;
};

// Returns nullopt when the line lies inside the locus.
template <class S>
std::optional<SliceDivisor> sliceDivisorAlongLine(
    const std::vector<MultiPoly<S>>& gens, const MatrixX<S>& param) {
  if (param.cols() != 2)
    throw DimensionMismatchError("a line needs a two-column parametrization");
  bool allZero = true;
  int sValuation = -1;
  std::vector<S> gcd;
  for (const MultiPoly<S>& g : gens) {
    if (g.isZero()) continue;
    MultiPoly<S> r = restrictToLinearSubspace(g, param);
    if (r.isZero()) continue;
    allZero = false;
    std::vector<S> coeffs = detail::binaryFormCoeffs(r);
    const int d = static_cast<int>(coeffs.size()) - 1;
    const int uDeg = detail::univariateDegree(coeffs);
    // Dehomogenizing at s = 1 drops the root at (0:1), which has
    // multiplicity d - deg(f); add the common part back at the end.
    const int val = d - uDeg;
    sValuation = (sValuation < 0) ? val : std::min(sValuation, val);
    coeffs.resize(static_cast<std::size_t>(uDeg + 1));
    gcd = gcd.empty() ? coeffs : detail::univariateGcd(std::move(gcd), coeffs);
  }
  if (allZero) return std::nullopt;
  SliceDivisor out;
  out.length = detail::univariateDegree(gcd) + sValuation;
  // Squarefree test only makes sense below the characteristic; the degrees
  // handled here (minors of linear matrices) stay far smaller than any
  // usable survey prime.
  const bool affineSquarefree =
      detail::univariateDegree(gcd) <= 0 ||
      detail::univariateDegree(
          detail::univariateGcd(gcd, detail::univariateDerivative(gcd))) <= 0;
  out.reduced = affineSquarefree && sValuation <= 1;
  return out;
}

// Number of intersections (with multiplicity, over the algebraic closure)
// of the locus with the line parametrized by the two columns of param.
// Returns nullopt when the line lies inside the locus.
template <class S>
std::optional<int> sliceDegreeAlongLine(const std::vector<MultiPoly<S>>& gens,
                                        const MatrixX<S>& param) {
  std::optional<SliceDivisor> div = sliceDivisorAlongLine(gens, param);
  if (!div) return std::nullopt;
  return div->length;
}

// Degree-wise ideal comparison: the spans of the two generator sets agree
// in every degree up to dMax iff each degree-d piece has the same rank as
// the joint span.  On mismatch, *why (if given) names the first bad degree.
template <class S>
bool idealsMatchThroughDegree(const std::vector<MultiPoly<S>>& a,
                              const std::vector<MultiPoly<S>>& b, int dMax,
                              std::string* why = nullptr) {
  std::vector<MultiPoly<S>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  for (int d = 1; d <= dMax; ++d) {
    const long long ra = gradedPieceRank(a, d);
    const long long rb = gradedPieceRank(b, d);
    const long long rj = gradedPieceRank(both, d);
    if (ra != rb || ra != rj) {
      if (why) {
        std::ostringstream s;
        s << "graded ranks differ at degree " << d << ": " << ra << "/" << rb
          << "/joint " << rj;
        *why = s.str();
      }
      return false;
    }
  }
  return true;
}

// Degree of a codimension-one locus by generic line section: a random line
// meets V(f) in deg f points counted with multiplicity.  Lines landing
// inside the locus are resampled (cap kResampleCap).
template <class S>
int lineSliceDegree(const std::vector<MultiPoly<S>>& gens, const Field<S>& F,
                    SplitMix64& rng) {
  if (gens.empty()) throw DimensionMismatchError("no generators given");
  const int numVars = gens[0].numVars();
  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    MatrixX<S> param = randomMatrix(F, rng, numVars, 2);
    if (rank<S>(param) != 2) continue;
    std::optional<int> d = sliceDegreeAlongLine(gens, param);
    if (d) return *d;
  }
  throw DegenerateSetupError("line slicing kept landing inside the locus");
}

// ---------------------------------------------------------------------------
// Singular linear space of a normalized trifocal matrix.
// ---------------------------------------------------------------------------

template <class S>
struct SingularSpace {
  MatrixX<S> param;  // (k+1) x (k-c-2): columns span the space L
  int projectiveDim = 0;
};

// For the normalized (c+2) x 3 matrix N, the linear space L cut out by
//   n_{1,1} = ... = n_{c+1,1} = n_{c+2,2} = n_{c+2,3} = 0
// (c+3 independent forms) lies on the critical locus and consists of
// singular points.  Defined when the locus has dimension k - c >= 3.
template <class S>
SingularSpace<S> singularLinearSpaceL(const PolyMatrix<S>& normalized, int c) {
  if (normalized.rows() != c + 2 || normalized.cols() != 3)
    throw DimensionMismatchError("normalized trifocal matrix must be (c+2) x 3");
  const int numVars = normalized.numVars();
  const int k = numVars - 1;
  if (k - c < 3)
    throw DegenerateSetupError(
        "singular space needs a locus of dimension at least 3");
  MatrixX<S> conditions(c + 3, numVars);
  for (int r = 0; r <= c; ++r)
    conditions.row(r) = linearFormCoefficients(normalized.at(r, 0));
  conditions.row(c + 1) = linearFormCoefficients(normalized.at(c + 1, 1));
  conditions.row(c + 2) = linearFormCoefficients(normalized.at(c + 1, 2));
  if (rank<S>(conditions) != c + 3)
    throw DegenerateSetupError("defining forms of L are dependent");
  SingularSpace<S> out;
  out.param = kernelBasis<S>(conditions);
  out.projectiveDim = static_cast<int>(out.param.cols()) - 1;
  return out;
}

}  // namespace clocus

#endif  // CLOCUS_IDEALANALYSIS_HPP
