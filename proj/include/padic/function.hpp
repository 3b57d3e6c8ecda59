#pragma once

#include "padic/padic_int.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <span>
#include <vector>

namespace padic {

/// A function F: Z_p^n -> Z_p evaluated at points with integer coordinates.
///
/// Every finite-precision p-adic point is an integer below p^N, so integer
/// evaluation is all the analysis code needs. `at` returns F(m) mod p^precision
/// with exactly `precision` digits, or throws.
class Function {
 public:
  virtual ~Function() = default;

  virtual Prime prime() const = 0;
  virtual std::size_t arity() const = 0;
  virtual PadicInt at(std::span<const Natural> point, int precision) const = 0;
  /// Highest precision `at` can deliver (tables are only known mod p^N).
  virtual int precision_limit() const { return std::numeric_limits<int>::max(); }

  PadicInt at(const Natural& x, int precision) const {
    return at(std::span<const Natural>(&x, 1), precision);
  }
};

using FunctionPtr = std::shared_ptr<const Function>;

class CallbackFunction final : public Function {
 public:
  using Callback = std::function<PadicInt(std::span<const Natural>, int)>;

  CallbackFunction(Prime p, std::size_t arity, Callback fn)
      : prime_(p), arity_(arity), fn_(std::move(fn)) {}

  Prime prime() const override { return prime_; }
  std::size_t arity() const override { return arity_; }
  PadicInt at(std::span<const Natural> point, int precision) const override;
  using Function::at;

 private:
  Prime prime_;
  std::size_t arity_;
  Callback fn_;
};

/// F_l(z) = F(x_1, ..., x_{l-1}, z, x_{l+1}, ..., x_n) with the other
/// coordinates held fixed. `slot` is 0-based.
class ProjectionFunction final : public Function {
 public:
  ProjectionFunction(FunctionPtr base, std::size_t slot, std::vector<Natural> fixed);

  Prime prime() const override { return base_->prime(); }
  std::size_t arity() const override { return 1; }
  PadicInt at(std::span<const Natural> point, int precision) const override;
  using Function::at;
  int precision_limit() const override { return base_->precision_limit(); }

  std::size_t slot() const noexcept { return slot_; }

 private:
  FunctionPtr base_;
  std::size_t slot_;
  std::vector<Natural> fixed_;
};

/// Projection onto coordinate `slot` (0-based) with the remaining n-1
/// coordinates taken from `fixed`.
FunctionPtr projection(FunctionPtr f, std::size_t slot, const PadicPoint& fixed);
FunctionPtr projection(FunctionPtr f, std::size_t slot, std::vector<Natural> fixed);

/// Default cap on function evaluations for enumerations and samplers.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Throws budget-exceeded when `needed` evaluations exceed `budget`.
void check_budget(const Natural& needed, std::uint64_t budget, const char* what);

using Rng = std::mt19937_64;

/// Uniform integer in [0, p^digits).
Natural random_residue(Rng& rng, Prime p, int digits);

}  // namespace padic
