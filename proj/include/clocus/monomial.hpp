#ifndef CLOCUS_MONOMIAL_HPP
#define CLOCUS_MONOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "clocus/errors.hpp"

namespace clocus {

// Exponent vector of a monomial in a fixed number of variables.  Ordered by
// graded lexicographic order: compare total degree first, then exponent
// vectors lexicographically (x0 heaviest).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int numVars) : e_(numVars, 0) {}
  explicit Monomial(std::vector<std::uint8_t> exps) : e_(std::move(exps)) {}

  static Monomial unit(int numVars) { return Monomial(numVars); }
  static Monomial variable(int numVars, int i) {
    Monomial m(numVars);
    m.e_[i] = 1;
    return m;
  }

  int numVars() const { return static_cast<int>(e_.size()); }
  int degree() const {
    return std::accumulate(e_.begin(), e_.end(), 0);
  }
  int exponent(int i) const { return e_[i]; }
  const std::vector<std::uint8_t>& exponents() const { return e_; }

  Monomial operator*(const Monomial& o) const {
    if (e_.size() != o.e_.size())
      throw DimensionMismatchError("monomial variable counts differ");
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      int s = m.e_[i] + o.e_[i];
      if (s > 255) throw DimensionMismatchError("monomial exponent overflow");
      m.e_[i] = static_cast<std::uint8_t>(s);
    }
    return m;
  }

  bool divides(const Monomial& o) const {
    if (e_.size() != o.e_.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  // Graded lex: lower degree sorts first; within a degree, the monomial with
  // the smaller exponent on the earliest differing variable sorts first.
  bool operator<(const Monomial& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(e_.begin(), e_.end(), o.e_.begin(),
                                        o.e_.end());
  }

  std::string toString(const std::string& stem = "x") const {
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += stem + std::to_string(i);
      if (e_[i] > 1) s += "^" + std::to_string(static_cast<int>(e_[i]));
    }
    return s.empty() ? "1" : s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Monomial& m) {
    return os << m.toString();
  }

 private:
  std::vector<std::uint8_t> e_;
};

// All monomials of total degree d in numVars variables, ascending graded lex.
inline std::vector<Monomial> monomialsOfDegree(int numVars, int d) {
  std::vector<Monomial> out;
  std::vector<std::uint8_t> cur(numVars, 0);
  // Depth-first fill; sort afterwards for the documented order.
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == numVars - 1) {
      cur[var] = static_cast<std::uint8_t>(left);
      out.emplace_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[var] = static_cast<std::uint8_t>(e);
      self(self, var + 1, left - e);
    }
    cur[var] = 0;
  };
  if (numVars == 0) {
    if (d == 0) out.emplace_back(cur);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

// Index lookup for the graded piece of fixed degree.
class MonomialBasis {
 public:
  MonomialBasis(int numVars, int degree)
      : numVars_(numVars), degree_(degree), list_(monomialsOfDegree(numVars, degree)) {
    for (std::size_t i = 0; i < list_.size(); ++i) index_[list_[i]] = static_cast<int>(i);
  }

  int numVars() const { return numVars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(list_.size()); }
  const Monomial& at(int i) const { return list_[i]; }
  int indexOf(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end())
      throw DimensionMismatchError("monomial outside basis");
    return it->second;
  }

 private:
  int numVars_;
  int degree_;
  std::vector<Monomial> list_;
  std::map<Monomial, int> index_;
};

}  // namespace clocus

#endif  // CLOCUS_MONOMIAL_HPP
