#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <vector>

namespace padic {

/// Arbitrary-size integers. `Natural` is used where the value is a
/// non-negative index (m, standard-sequence values, residues).
using Integer = boost::multiprecision::cpp_int;
using Natural = boost::multiprecision::cpp_int;

/// A prime that fits in 31 bits, checked by trial division on construction.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  std::uint32_t value() const noexcept { return value_; }
  operator std::uint32_t() const noexcept { return value_; }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t value_;
};

bool is_prime(std::uint64_t n) noexcept;

/// p^e as an exact integer.
Natural power(Prime p, int e);

/// Base-p digits of m, least significant first; empty for m = 0.
std::vector<std::uint32_t> base_p_digits(const Natural& m, Prime p);

/// Number of base-p digits of m (0 for m = 0).
int base_p_length(const Natural& m, Prime p);

/// s(m) = floor(log_p m), the position of the top nonzero digit. Requires m >= 1.
int floor_log_p(const Natural& m, Prime p);

/// floor(log_p m) for m >= p and 0 for m < p (m = 0 included). This is the
/// exponent used in every coefficient bound and normalization.
int bound_exponent(const Natural& m, Prime p);

/// m with its top base-p digit removed. Requires m >= p.
Natural m_star(const Natural& m, Prime p);

/// Least non-negative residue of k modulo `modulus`.
Natural mod_floor(const Integer& k, const Natural& modulus);

}  // namespace padic
