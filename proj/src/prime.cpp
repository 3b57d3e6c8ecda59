#include "padic/prime.hpp"

#include "padic/error.hpp"

#include <string>

namespace padic {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_prime: return "invalid-prime";
    case Errc::prime_mismatch: return "prime-mismatch";
    case Errc::inexact_division: return "inexact-division";
    case Errc::precision_exhausted: return "precision-exhausted";
    case Errc::undefined_m_star: return "undefined-m-star";
    case Errc::undefined_log: return "undefined-log";
    case Errc::out_of_range: return "out-of-range";
    case Errc::syntax: return "syntax";
    case Errc::arity: return "arity";
    case Errc::non_integral_constant: return "non-integral-constant";
    case Errc::precondition: return "precondition";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::invalid_input: return "invalid-input";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) {
  if (value >= (std::uint64_t{1} << 31) || !is_prime(value)) {
    throw Error(Errc::invalid_prime, std::to_string(value) + " is not a prime below 2^31");
  }
  value_ = static_cast<std::uint32_t>(value);
}

Natural power(Prime p, int e) {
  if (e < 0) throw Error(Errc::out_of_range, "negative exponent " + std::to_string(e));
  return boost::multiprecision::pow(Natural(p.value()), static_cast<unsigned>(e));
}

std::vector<std::uint32_t> base_p_digits(const Natural& m, Prime p) {
  if (m < 0) throw Error(Errc::out_of_range, "negative index");
  std::vector<std::uint32_t> digits;
  Natural rest = m;
  const Natural base = p.value();
  while (rest > 0) {
    Natural q, r;
    boost::multiprecision::divide_qr(rest, base, q, r);
    digits.push_back(r.convert_to<std::uint32_t>());
    rest = std::move(q);
  }
  return digits;
}

int base_p_length(const Natural& m, Prime p) {
  if (m < 0) throw Error(Errc::out_of_range, "negative index");
  int len = 0;
  Natural bound = 1;
  while (bound <= m) {
    bound *= p.value();
    ++len;
  }
  return len;
}

int floor_log_p(const Natural& m, Prime p) {
  if (m < 1) throw Error(Errc::undefined_log, "floor(log_p m) is undefined for m = 0");
  return base_p_length(m, p) - 1;
}

int bound_exponent(const Natural& m, Prime p) {
  return m < p.value() ? 0 : floor_log_p(m, p);
}

Natural m_star(const Natural& m, Prime p) {
  if (m < p.value()) {
    throw Error(Errc::undefined_m_star, "m* requires m >= p");
  }
  return m % power(p, floor_log_p(m, p));
}

Natural mod_floor(const Integer& k, const Natural& modulus) {
  Integer r = k % modulus;
  if (r < 0) r += modulus;
  return r;
}

}  // namespace padic
