#ifndef CLOCUS_FIELD_HPP
#define CLOCUS_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include "clocus/errors.hpp"
#include "clocus/rng.hpp"

namespace clocus {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  // Trial division over the 2,3,5 wheel; fine for moduli below 2^31.
  static constexpr std::uint32_t wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t d = 7;
  int w = 0;
  while (d * d <= n) {
    if (n % d == 0) return false;
    d += wheel[w];
    w = (w + 1) & 7;
  }
  return true;
}

enum class FieldKind { Rationals, PrimeField };

// Runtime description of the coefficient field, as it appears in configs.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t modulus = 0;  // meaningful only for PrimeField

  static FieldSpec rationals() { return FieldSpec{FieldKind::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p) {
    FieldSpec s{FieldKind::PrimeField, p};
    s.validate();
    return s;
  }

  void validate() const {
    if (kind == FieldKind::PrimeField) {
      if (modulus < 2 || !isPrime(modulus))
        throw ConfigError("field modulus " + std::to_string(modulus) +
                          " is not prime");
      if (modulus > (1u << 31))
        throw ConfigError("field modulus must fit in 31 bits");
    } else if (modulus != 0) {
      throw ConfigError("rational field carries no modulus");
    }
  }

  bool operator==(const FieldSpec& o) const {
    return kind == o.kind && modulus == o.modulus;
  }

  std::string describe() const {
    return kind == FieldKind::Rationals ? std::string("QQ")
                                        : "GF(" + std::to_string(modulus) + ")";
  }
};

namespace detail {
inline std::int64_t modInverse(std::int64_t a, std::int64_t p) {
  // Extended Euclid; a is reduced mod p and nonzero.
  std::int64_t t = 0, newT = 1, r = p, newR = a;
  while (newR != 0) {
    std::int64_t q = r / newR;
    t -= q * newT;
    std::swap(t, newT);
    r -= q * newR;
    std::swap(r, newR);
  }
  if (r != 1) throw SingularityError("element not invertible mod p");
  return t < 0 ? t + p : t;
}
}  // namespace detail

// Prime-field element.  The modulus travels with the value so that Eigen
// expressions over Matrix<Fp,...> work without a global context.  A value
// built from a bare integer literal (e.g. Eigen's Scalar(0)) starts out
// "unattached" (modulus 0) and adopts the modulus of the first attached
// operand it meets.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  template <class I, class = std::enable_if_t<std::is_integral_v<I>>>
  Fp(I v) : v_(static_cast<std::int64_t>(v)), p_(0) {}  // NOLINT: implicit for literals
  Fp(long long v, std::uint32_t p) : p_(p) {
    std::int64_t m = static_cast<std::int64_t>(p);
    v_ = v % m;
    if (v_ < 0) v_ += m;
  }

  std::int64_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool attached() const { return p_ != 0; }
  bool isZero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint32_t p = joinModulus(a, b);
    if (p == 0) return Fp(a.v_ + b.v_);
    return Fp(a.canon(p) + b.canon(p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint32_t p = joinModulus(a, b);
    if (p == 0) return Fp(a.v_ - b.v_);
    return Fp(a.canon(p) - b.canon(p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint32_t p = joinModulus(a, b);
    if (p == 0) return Fp(a.v_ * b.v_);
    return Fp(a.canon(p) * b.canon(p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return attached() ? Fp(p_ - v_, p_) : Fp(-v_); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp inverse() const {
    if (!attached()) {
      if (v_ == 1 || v_ == -1) return *this;
      throw SingularityError("cannot invert unattached prime-field element");
    }
    if (v_ == 0) throw SingularityError("division by zero in GF(p)");
    return Fp(detail::modInverse(v_, p_), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint32_t p = joinModulus(a, b);
    if (p == 0) return a.v_ == b.v_;
    return a.canon(p) == b.canon(p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << x.v_;
  }

 private:
  static std::uint32_t joinModulus(const Fp& a, const Fp& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw DimensionMismatchError("mixed prime-field moduli " +
                                   std::to_string(a.p_) + " and " +
                                   std::to_string(b.p_));
    return a.p_ != 0 ? a.p_ : b.p_;
  }
  std::int64_t canon(std::uint32_t p) const {
    std::int64_t m = static_cast<std::int64_t>(p);
    std::int64_t r = v_ % m;
    return r < 0 ? r + m : r;
  }

  std::int64_t v_;
  std::uint32_t p_;
};

// Compile-time field tag.  Carries the data (the modulus) needed to create
// elements from nothing: zero(), one(), literals, random samples.
template <class S>
struct Field;

template <>
struct Field<Fp> {
  std::uint32_t p;

  explicit Field(std::uint32_t modulus) : p(modulus) {
    FieldSpec::prime(modulus);  // validates
  }
  explicit Field(const FieldSpec& spec) : p(spec.modulus) {
    if (spec.kind != FieldKind::PrimeField)
      throw ConfigError("Field<Fp> needs a prime-field spec");
    spec.validate();
  }

  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  Fp from(long long v) const { return Fp(v, p); }
  Fp fromRatio(long long num, long long den) const {
    return from(num) / from(den);
  }
  Fp inv(const Fp& x) const { return x.inverse(); }
  bool isZero(const Fp& x) const { return x.isZero(); }
  std::uint32_t characteristic() const { return p; }
  FieldSpec spec() const { return FieldSpec::prime(p); }

  Fp sample(SplitMix64& rng) const {
    return Fp(static_cast<long long>(rng.below(p)), p);
  }
  Fp sampleNonzero(SplitMix64& rng) const {
    return Fp(static_cast<long long>(rng.below(p - 1)) + 1, p);
  }
};

template <>
struct Field<Rational> {
  Field() = default;
  explicit Field(const FieldSpec& spec) {
    if (spec.kind != FieldKind::Rationals)
      throw ConfigError("Field<Rational> needs the rational spec");
  }

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from(long long v) const { return Rational(v); }
  Rational fromRatio(long long num, long long den) const {
    return Rational(num) / Rational(den);
  }
  Rational inv(const Rational& x) const {
    if (x == 0) throw SingularityError("division by zero in QQ");
    return Rational(1) / x;
  }
  bool isZero(const Rational& x) const { return x == 0; }
  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  // Small integers keep rational test data readable and fast.
  Rational sample(SplitMix64& rng) const {
    return Rational(static_cast<long long>(rng.below(199)) - 99);
  }
  Rational sampleNonzero(SplitMix64& rng) const {
    long long v = static_cast<long long>(rng.below(198)) - 99;
    return Rational(v >= 0 ? v + 1 : v);
  }
};

template <class S>
bool scalarIsZero(const S& x) {
  if constexpr (std::is_same_v<S, Fp>) {
    return x.isZero();
  } else {
    return x == S(0);
  }
}

}  // namespace clocus

namespace Eigen {

template <>
struct NumTraits<clocus::Fp> {
  typedef clocus::Fp Real;
  typedef clocus::Fp NonInteger;
  typedef clocus::Fp Literal;
  typedef clocus::Fp Nested;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 9
  };
  static inline Real epsilon() { return clocus::Fp(0); }
  static inline Real dummy_precision() { return clocus::Fp(0); }
  static inline int digits10() { return 10; }
};

}  // namespace Eigen

#endif  // CLOCUS_FIELD_HPP
