#include "padic/padic_int.hpp"

#include "padic/error.hpp"

#include <boost/integer/mod_inverse.hpp>

#include <algorithm>
#include <sstream>

namespace padic {

namespace {

void require_same_prime(const PadicInt& a, const PadicInt& b) {
  if (a.prime() != b.prime()) {
    throw Error(Errc::prime_mismatch, "operands have primes " + std::to_string(a.prime().value()) +
                                          " and " + std::to_string(b.prime().value()));
  }
}

void require_precision(int precision) {
  if (precision < 1) {
    throw Error(Errc::precision_exhausted, "precision must be at least 1, got " +
                                               std::to_string(precision));
  }
}

}  // namespace

std::string Norm::to_string() const {
  if (is_zero()) return "0";
  const long e = exponent();
  const std::string magnitude = padic::power(prime_, static_cast<int>(e < 0 ? -e : e)).str();
  return e < 0 ? "1/" + magnitude : magnitude;
}

PadicInt::PadicInt(Prime p, std::vector<std::uint32_t> digits)
    : prime_(p), digits_(std::move(digits)) {
  require_precision(precision());
  for (auto d : digits_) {
    if (d >= p.value()) {
      throw Error(Errc::invalid_input, "digit " + std::to_string(d) + " out of range for p=" +
                                           std::to_string(p.value()));
    }
  }
}

PadicInt PadicInt::zero(Prime p, int precision) {
  require_precision(precision);
  return PadicInt(p, std::vector<std::uint32_t>(static_cast<std::size_t>(precision), 0));
}

PadicInt PadicInt::one(Prime p, int precision) {
  auto x = zero(p, precision);
  x.digits_[0] = 1;
  return x;
}

PadicInt PadicInt::from_integer(const Natural& k, Prime p, int precision) {
  if (k < 0) throw Error(Errc::out_of_range, "from_integer expects k >= 0");
  auto x = zero(p, precision);
  auto digits = base_p_digits(k, p);
  const auto n = std::min(digits.size(), x.digits_.size());
  std::copy_n(digits.begin(), n, x.digits_.begin());
  return x;
}

PadicInt PadicInt::from_signed(const Integer& k, Prime p, int precision) {
  require_precision(precision);
  return from_integer(mod_floor(k, power(p, precision)), p, precision);
}

PadicInt PadicInt::from_rational(const Integer& num, const Integer& den, Prime p, int precision) {
  require_precision(precision);
  if (den % p.value() == 0) {
    throw Error(Errc::non_integral_constant,
                "denominator " + den.str() + " is divisible by p=" + std::to_string(p.value()));
  }
  const Natural modulus = power(p, precision);
  const Natural inverse = boost::integer::mod_inverse(Integer(mod_floor(den, modulus)), modulus);
  return from_integer(mod_floor(Integer(mod_floor(num, modulus) * inverse), modulus), p,
                      precision);
}

bool PadicInt::is_zero() const noexcept {
  return std::all_of(digits_.begin(), digits_.end(), [](auto d) { return d == 0; });
}

Valuation PadicInt::ord() const noexcept {
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] != 0) return Valuation(static_cast<int>(i));
  }
  return Valuation::infinity();
}

Natural PadicInt::standard_seq(int k) const {
  if (k < 0 || k >= precision()) {
    throw Error(Errc::out_of_range, "standard sequence index " + std::to_string(k) +
                                        " outside precision " + std::to_string(precision()));
  }
  Natural value = 0;
  for (int i = k; i >= 0; --i) {
    value *= prime_.value();
    value += digits_[static_cast<std::size_t>(i)];
  }
  return value;
}

PadicInt PadicInt::truncated(int precision) const {
  require_precision(precision);
  if (precision > this->precision()) {
    throw Error(Errc::precision_exhausted, "cannot extend precision " +
                                               std::to_string(this->precision()) + " to " +
                                               std::to_string(precision));
  }
  return PadicInt(prime_, {digits_.begin(), digits_.begin() + precision});
}

PadicInt PadicInt::exact_div_p(int e) const {
  if (e < 0) throw Error(Errc::out_of_range, "negative division exponent");
  const int checked = std::min(e, precision());
  for (int i = 0; i < checked; ++i) {
    if (digits_[static_cast<std::size_t>(i)] != 0) {
      throw Error(Errc::inexact_division, "value " + to_text() + " is not divisible by p^" +
                                              std::to_string(e));
    }
  }
  require_precision(precision() - e);
  return PadicInt(prime_, {digits_.begin() + e, digits_.end()});
}

PadicInt PadicInt::shift_up(int e) const {
  if (e < 0) throw Error(Errc::out_of_range, "negative shift");
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(e), 0);
  digits.insert(digits.end(), digits_.begin(), digits_.end());
  return PadicInt(prime_, std::move(digits));
}

PadicInt PadicInt::pow(std::uint64_t exponent) const {
  auto result = one(prime_, precision());
  auto base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::string PadicInt::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i > 0) out << ' ';
    out << digits_[i];
  }
  out << " | p=" << prime_.value() << " N=" << precision();
  return out.str();
}

PadicInt PadicInt::operator-() const { return zero(prime_, precision()) - *this; }

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  const std::uint64_t p = a.prime_.value();
  const auto n = static_cast<std::size_t>(std::min(a.precision(), b.precision()));
  std::vector<std::uint32_t> digits(n);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t sum = std::uint64_t{a.digits_[i]} + b.digits_[i] + carry;
    digits[i] = static_cast<std::uint32_t>(sum % p);
    carry = sum / p;
  }
  return PadicInt(a.prime_, std::move(digits));
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  const std::int64_t p = a.prime_.value();
  const auto n = static_cast<std::size_t>(std::min(a.precision(), b.precision()));
  std::vector<std::uint32_t> digits(n);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t diff = std::int64_t{a.digits_[i]} - b.digits_[i] - borrow;
    borrow = diff < 0 ? 1 : 0;
    if (diff < 0) diff += p;
    digits[i] = static_cast<std::uint32_t>(diff);
  }
  return PadicInt(a.prime_, std::move(digits));
}

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  const std::uint64_t p = a.prime_.value();
  const auto n = static_cast<std::size_t>(std::min(a.precision(), b.precision()));
  std::vector<std::uint32_t> digits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.digits_[i] == 0) continue;
    std::uint64_t carry = 0;
    for (std::size_t j = 0; i + j < n; ++j) {
      const std::uint64_t cur =
          std::uint64_t{digits[i + j]} + std::uint64_t{a.digits_[i]} * b.digits_[j] + carry;
      digits[i + j] = static_cast<std::uint32_t>(cur % p);
      carry = cur / p;
    }
  }
  return PadicInt(a.prime_, std::move(digits));
}

bool initial_part(const Natural& m, const PadicInt& x) {
  const auto digits = base_p_digits(m, x.prime());
  if (static_cast<int>(digits.size()) > x.precision()) {
    throw Error(Errc::precision_exhausted, "x has " + std::to_string(x.precision()) +
                                               " digits, m needs " +
                                               std::to_string(digits.size()));
  }
  if (digits.empty()) return x.digit(0) == 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (x.digits()[i] != digits[i]) return false;
  }
  return true;
}

PadicPoint::PadicPoint(std::vector<PadicInt> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(Errc::arity, "a point needs at least one coordinate");
  for (const auto& c : coords_) {
    if (c.prime() != coords_.front().prime()) {
      throw Error(Errc::prime_mismatch, "point coordinates use different primes");
    }
    if (c.precision() != coords_.front().precision()) {
      throw Error(Errc::invalid_input, "point coordinates use different precisions");
    }
  }
}

PadicPoint PadicPoint::from_integers(std::span<const Natural> values, Prime p, int precision) {
  std::vector<PadicInt> coords;
  coords.reserve(values.size());
  for (const auto& v : values) coords.push_back(PadicInt::from_integer(v, p, precision));
  return PadicPoint(std::move(coords));
}

Valuation PadicPoint::ord() const noexcept {
  Valuation best = Valuation::infinity();
  for (const auto& c : coords_) best = std::min(best, c.ord());
  return best;
}

}  // namespace padic
