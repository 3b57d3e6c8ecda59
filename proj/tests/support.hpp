#pragma once

#include "padic/dsl.hpp"
#include "padic/error.hpp"
#include "padic/padic_int.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using padic::Integer;
using padic::Natural;
using padic::Prime;

/// Runs `fn` and returns the error code it threw, or nullopt.
template <class Fn>
std::optional<padic::Errc> error_code(Fn&& fn) {
  try {
    fn();
  } catch (const padic::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Independent arithmetic, kept apart from the library on purpose.
Integer ipow(Integer base, unsigned e);
Natural pmod(const Integer& v, const Natural& m);
/// Base-p digits of v mod p^n, exactly n of them.
std::vector<std::uint32_t> digits_of(const Integer& v, std::uint32_t p, int n);
/// p-adic order of v as an integer, or `cap` when p^cap divides v.
int int_ord(const Integer& v, std::uint32_t p, int cap);

/// A random expression that renders to DSL text and evaluates exactly over
/// the integers. Only compositions that are integer-valued on integer points
/// are generated, so the integer value reduced mod p^N is an oracle for the
/// library's evaluator.
class RandomExpr {
 public:
  struct Node;
  using Ptr = std::shared_ptr<const Node>;

  static RandomExpr generate(std::mt19937_64& rng, std::uint32_t p, std::size_t arity,
                             int depth = 3, bool allow_divp = true);

  std::string text() const;
  /// Exact value at an integer point; digit sums read N digits.
  Integer value(const std::vector<Natural>& point, int precision) const;
  std::size_t arity() const { return arity_; }
  std::uint32_t prime() const { return p_; }

 private:
  Ptr root_;
  std::uint32_t p_ = 2;
  std::size_t arity_ = 1;
};

/// Evaluator built from a random expression's integer oracle.
padic::FunctionPtr oracle_function(const RandomExpr& e);

}  // namespace testsupport
