#ifndef CLOCUS_POLY_HPP
#define CLOCUS_POLY_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clocus/field.hpp"
#include "clocus/linalg.hpp"
#include "clocus/monomial.hpp"

namespace clocus {

// Sparse multivariate polynomial over an exact field scalar S.  Terms are
// kept in ascending graded-lex order with no zero coefficients stored.
template <class S>
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, S>;

  MultiPoly() : numVars_(0) {}
  explicit MultiPoly(int numVars) : numVars_(numVars) {}

  static MultiPoly zero(int numVars) { return MultiPoly(numVars); }
  static MultiPoly constant(int numVars, const S& c) {
    MultiPoly p(numVars);
    p.addTerm(Monomial::unit(numVars), c);
    return p;
  }
  static MultiPoly variable(int numVars, int i) {
    MultiPoly p(numVars);
    p.addTerm(Monomial::variable(numVars, i), S(1));
    return p;
  }
  // Linear form sum_i coeffs[i] * x_i.
  static MultiPoly linearForm(const VectorX<S>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    MultiPoly p(n);
    for (int i = 0; i < n; ++i)
      p.addTerm(Monomial::variable(n, i), coeffs(i));
    return p;
  }

  int numVars() const { return numVars_; }
  bool isZero() const { return terms_.empty(); }
  int termCount() const { return static_cast<int>(terms_.size()); }
  const TermMap& terms() const { return terms_; }

  // Max total degree of a stored term; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
  }

  bool isHomogeneous() const {
    if (terms_.empty()) return true;
    const int d = terms_.begin()->first.degree();
    return terms_.rbegin()->first.degree() == d;
  }

  void addTerm(const Monomial& m, const S& c) {
    if (m.numVars() != numVars_)
      throw DimensionMismatchError("term variable count mismatch");
    if (scalarIsZero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (scalarIsZero(it->second)) terms_.erase(it);
    }
  }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  MultiPoly operator+(const MultiPoly& o) const {
    checkCompatible(o);
    MultiPoly out(*this);
    for (const auto& [m, c] : o.terms_) out.addTerm(m, c);
    return out;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    checkCompatible(o);
    MultiPoly out(*this);
    for (const auto& [m, c] : o.terms_) out.addTerm(m, -c);
    return out;
  }
  MultiPoly operator-() const {
    MultiPoly out(numVars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    checkCompatible(o);
    MultiPoly out(numVars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) out.addTerm(ma * mb, ca * cb);
    return out;
  }
  MultiPoly scaled(const S& c) const {
    MultiPoly out(numVars_);
    if (scalarIsZero(c)) return out;
    for (const auto& [m, k] : terms_) out.addTerm(m, k * c);
    return out;
  }

  bool operator==(const MultiPoly& o) const {
    if (numVars_ != o.numVars_ || terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
      if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  S eval(const VectorX<S>& point) const {
    if (point.size() != numVars_)
      throw DimensionMismatchError("evaluation point has wrong length");
    // Memoized per-variable powers keep repeated exponents cheap.
    std::vector<std::vector<S>> pw(numVars_);
    for (int i = 0; i < numVars_; ++i) pw[i].push_back(S(1));
    S acc = S(0);
    for (const auto& [m, c] : terms_) {
      S t = c;
      for (int i = 0; i < numVars_; ++i) {
        int e = m.exponent(i);
        if (e == 0) continue;
        auto& p = pw[i];
        while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * point(i));
        t = t * p[e];
      }
      acc = acc + t;
    }
    return acc;
  }

  // Row of coefficients with respect to a degree basis; the polynomial must
  // be homogeneous of the basis degree (or zero).
  RowVectorX<S> coefficientRow(const MonomialBasis& basis) const {
    if (basis.numVars() != numVars_)
      throw DimensionMismatchError("basis variable count mismatch");
    RowVectorX<S> row(basis.size());
    for (int i = 0; i < basis.size(); ++i) row(i) = S(0);
    for (const auto& [m, c] : terms_) {
      if (m.degree() != basis.degree())
        throw DimensionMismatchError("coefficientRow: term degree off basis");
      row(basis.indexOf(m)) = c;
    }
    return row;
  }

  std::string toString(const std::string& stem = "x") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << it->second;
      if (it->first.degree() > 0) os << "*" << it->first.toString(stem);
    }
    return os.str();
  }

 private:
  void checkCompatible(const MultiPoly& o) const {
    if (numVars_ != o.numVars_)
      throw DimensionMismatchError("polynomial variable counts differ");
  }

  int numVars_;
  TermMap terms_;
};

template <class S>
MultiPoly<S> polyAdd(const MultiPoly<S>& a, const MultiPoly<S>& b) {
  return a + b;
}

template <class S>
MultiPoly<S> polyMul(const MultiPoly<S>& a, const MultiPoly<S>& b) {
  return a * b;
}

template <class S>
S polyEval(const MultiPoly<S>& p, const VectorX<S>& point) {
  return p.eval(point);
}

template <class S>
MultiPoly<S> partialDerivative(const MultiPoly<S>& p, int var) {
  if (var < 0 || var >= p.numVars())
    throw DimensionMismatchError("derivative variable out of range");
  MultiPoly<S> out(p.numVars());
  for (const auto& [m, c] : p.terms()) {
    int e = m.exponent(var);
    if (e == 0) continue;
    std::vector<std::uint8_t> exps = m.exponents();
    exps[var] = static_cast<std::uint8_t>(e - 1);
    out.addTerm(Monomial(std::move(exps)), c * S(e));
  }
  return out;
}

// Coefficient row (length numVars) of a linear form.
template <class S>
RowVectorX<S> linearFormCoefficients(const MultiPoly<S>& p) {
  const int n = p.numVars();
  RowVectorX<S> row(n);
  for (int j = 0; j < n; ++j) row(j) = S(0);
  for (const auto& [m, coef] : p.terms()) {
    if (m.degree() != 1)
      throw DimensionMismatchError("expected a linear form");
    for (int j = 0; j < n; ++j)
      if (m.exponent(j) == 1) row(j) = coef;
  }
  return row;
}

// Substitute x_i = sum_j param(i, j) * t_j, producing a polynomial in the
// t-variables.  param must have full column rank (an honest parametrization
// of a linear subspace); homogeneity and degree are preserved.
template <class S>
MultiPoly<S> restrictToLinearSubspace(const MultiPoly<S>& p,
                                      const MatrixX<S>& param) {
  if (param.rows() != p.numVars())
    throw DimensionMismatchError("parametrization row count must match variables");
  const int m = static_cast<int>(param.cols());
  if (rank<S>(param) != m)
    throw DegenerateSetupError("parametrization columns are dependent");
  std::vector<MultiPoly<S>> lin;
  lin.reserve(p.numVars());
  for (int i = 0; i < p.numVars(); ++i) {
    MultiPoly<S> li(m);
    for (int j = 0; j < m; ++j)
      li.addTerm(Monomial::variable(m, j), param(i, j));
    lin.push_back(std::move(li));
  }
  // Memoize powers of each substituted form.
  std::vector<std::vector<MultiPoly<S>>> pw(p.numVars());
  for (int i = 0; i < p.numVars(); ++i)
    pw[i].push_back(MultiPoly<S>::constant(m, S(1)));
  MultiPoly<S> out(m);
  for (const auto& [mono, c] : p.terms()) {
    MultiPoly<S> term = MultiPoly<S>::constant(m, c);
    for (int i = 0; i < p.numVars(); ++i) {
      int e = mono.exponent(i);
      if (e == 0) continue;
      auto& powers = pw[i];
      while (static_cast<int>(powers.size()) <= e)
        powers.push_back(powers.back() * lin[i]);
      term = term * powers[e];
    }
    out = out + term;
  }
  return out;
}

}  // namespace clocus

#endif  // CLOCUS_POLY_HPP
