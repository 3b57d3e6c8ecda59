#pragma once

#include "padic/prime.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padic {

/// p-adic order: a non-negative integer, or +infinity. At finite precision N an
/// infinite valuation means "at least N".
class Valuation {
 public:
  static constexpr Valuation infinity() noexcept { return Valuation(); }
  constexpr explicit Valuation(int value) noexcept : value_(value) {}

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Finite value; for the infinite marker returns INT_MAX.
  constexpr int value() const noexcept {
    return value_.value_or(std::numeric_limits<int>::max());
  }

  friend constexpr bool operator==(Valuation, Valuation) = default;
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) noexcept {
    return a.value() <=> b.value();
  }

 private:
  constexpr Valuation() noexcept = default;
  std::optional<int> value_;
};

/// An exact p-adic absolute value: either 0 or p^exponent.
class Norm {
 public:
  static Norm zero(Prime p) noexcept { return Norm(p, std::nullopt); }
  static Norm power(Prime p, long exponent) noexcept { return Norm(p, exponent); }
  static Norm from_valuation(Prime p, Valuation v) noexcept {
    return v.is_infinite() ? zero(p) : power(p, -static_cast<long>(v.value()));
  }

  Prime prime() const noexcept { return prime_; }
  bool is_zero() const noexcept { return !exponent_.has_value(); }
  /// Exponent e with norm = p^e. Undefined for zero.
  long exponent() const noexcept { return exponent_.value_or(0); }

  /// "0", "1", "1/9", "49".
  std::string to_string() const;

  friend bool operator==(const Norm& a, const Norm& b) noexcept {
    return a.exponent_ == b.exponent_;
  }
  friend std::strong_ordering operator<=>(const Norm& a, const Norm& b) noexcept {
    if (a.is_zero() || b.is_zero()) return !a.is_zero() <=> !b.is_zero();
    return a.exponent() <=> b.exponent();
  }

 private:
  Norm(Prime p, std::optional<long> e) noexcept : prime_(p), exponent_(e) {}
  Prime prime_;
  std::optional<long> exponent_;
};

/// An element of Z_p known modulo p^N: N base-p digits, least significant first.
class PadicInt {
 public:
  PadicInt(Prime p, std::vector<std::uint32_t> digits);

  static PadicInt zero(Prime p, int precision);
  static PadicInt one(Prime p, int precision);
  /// Canonical image of a non-negative integer, truncated to `precision` digits.
  static PadicInt from_integer(const Natural& k, Prime p, int precision);
  /// Any integer, negative values mapped through k mod p^N.
  static PadicInt from_signed(const Integer& k, Prime p, int precision);
  /// num/den for den coprime to p, via inversion of den modulo p^N.
  static PadicInt from_rational(const Integer& num, const Integer& den, Prime p, int precision);

  Prime prime() const noexcept { return prime_; }
  int precision() const noexcept { return static_cast<int>(digits_.size()); }
  std::span<const std::uint32_t> digits() const noexcept { return digits_; }
  std::uint32_t digit(int i) const { return digits_.at(static_cast<std::size_t>(i)); }

  bool is_zero() const noexcept;
  Valuation ord() const noexcept;
  Norm norm() const noexcept { return Norm::from_valuation(prime_, ord()); }

  /// x^(k) = x_0 + x_1 p + ... + x_k p^k. Requires k < precision.
  Natural standard_seq(int k) const;
  /// The representative in [0, p^N).
  Natural to_natural() const { return standard_seq(precision() - 1); }

  /// First `precision` digits; precision may not grow.
  PadicInt truncated(int precision) const;
  /// Divide by p^e. The first e digits must be zero; precision drops by e.
  PadicInt exact_div_p(int e) const;
  /// Multiply by p^e; the value becomes known modulo p^(N+e).
  PadicInt shift_up(int e) const;
  PadicInt pow(std::uint64_t exponent) const;

  /// `d0 d1 ... | p=<p> N=<N>`.
  std::string to_text() const;

  PadicInt operator-() const;
  friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b);

  friend bool operator==(const PadicInt&, const PadicInt&) = default;

 private:
  Prime prime_;
  std::vector<std::uint32_t> digits_;
};

inline Valuation ord(const PadicInt& x) noexcept { return x.ord(); }
inline Norm norm(const PadicInt& x) noexcept { return x.norm(); }
inline PadicInt exact_div_p(const PadicInt& x, int e) { return x.exact_div_p(e); }
inline Natural standard_seq(const PadicInt& x, int k) { return x.standard_seq(k); }

/// m is an initial part of x (m equals one of x^(0), x^(1), ...). Throws
/// precision-exhausted when x has fewer digits than m.
bool initial_part(const Natural& m, const PadicInt& x);

/// An element of Z_p^n. All coordinates share prime and precision.
class PadicPoint {
 public:
  explicit PadicPoint(std::vector<PadicInt> coords);

  static PadicPoint from_integers(std::span<const Natural> values, Prime p, int precision);

  std::size_t arity() const noexcept { return coords_.size(); }
  Prime prime() const noexcept { return coords_.front().prime(); }
  int precision() const noexcept { return coords_.front().precision(); }
  const PadicInt& operator[](std::size_t i) const { return coords_.at(i); }
  std::span<const PadicInt> coords() const noexcept { return coords_; }

  /// min over coordinates.
  Valuation ord() const noexcept;
  /// max over coordinates of |x_i|_p.
  Norm norm() const noexcept { return Norm::from_valuation(prime(), ord()); }

  friend bool operator==(const PadicPoint&, const PadicPoint&) = default;

 private:
  std::vector<PadicInt> coords_;
};

inline Norm vec_norm(const PadicPoint& x) noexcept { return x.norm(); }

}  // namespace padic
