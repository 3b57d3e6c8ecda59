#include "padic/function.hpp"

#include "padic/error.hpp"

#include <string>

namespace padic {

PadicInt CallbackFunction::at(std::span<const Natural> point, int precision) const {
  if (point.size() != arity_) {
    throw Error(Errc::arity, "expected " + std::to_string(arity_) + " coordinates, got " +
                                 std::to_string(point.size()));
  }
  return fn_(point, precision).truncated(precision);
}

ProjectionFunction::ProjectionFunction(FunctionPtr base, std::size_t slot,
                                       std::vector<Natural> fixed)
    : base_(std::move(base)), slot_(slot), fixed_(std::move(fixed)) {
  if (slot_ >= base_->arity()) {
    throw Error(Errc::arity, "projection coordinate " + std::to_string(slot_ + 1) +
                                 " outside arity " + std::to_string(base_->arity()));
  }
  if (fixed_.size() + 1 != base_->arity()) {
    throw Error(Errc::arity, "projection needs " + std::to_string(base_->arity() - 1) +
                                 " fixed coordinates, got " + std::to_string(fixed_.size()));
  }
}

PadicInt ProjectionFunction::at(std::span<const Natural> point, int precision) const {
  if (point.size() != 1) throw Error(Errc::arity, "projection is univariate");
  std::vector<Natural> full(fixed_.begin(), fixed_.end());
  full.insert(full.begin() + static_cast<std::ptrdiff_t>(slot_), point.front());
  return base_->at(std::span<const Natural>(full), precision);
}

FunctionPtr projection(FunctionPtr f, std::size_t slot, std::vector<Natural> fixed) {
  return std::make_shared<ProjectionFunction>(std::move(f), slot, std::move(fixed));
}

FunctionPtr projection(FunctionPtr f, std::size_t slot, const PadicPoint& fixed) {
  std::vector<Natural> values;
  for (const auto& c : fixed.coords()) values.push_back(c.to_natural());
  return projection(std::move(f), slot, std::move(values));
}

void check_budget(const Natural& needed, std::uint64_t budget, const char* what) {
  if (needed > budget) {
    throw Error(Errc::budget_exceeded, std::string(what) + " needs " + needed.str() +
                                           " evaluations, budget is " + std::to_string(budget));
  }
}

Natural random_residue(Rng& rng, Prime p, int digits) {
  std::uniform_int_distribution<std::uint32_t> digit(0, p.value() - 1);
  Natural value = 0;
  for (int i = 0; i < digits; ++i) {
    value *= p.value();
    value += digit(rng);
  }
  return value;
}

}  // namespace padic
