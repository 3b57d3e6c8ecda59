#pragma once

#include "padic/function.hpp"
#include "padic/padic_int.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace padic {

/// All x in [0, p^k) with f(x) ≡ 0 mod p^(k - alpha). Requires k >= 1 + alpha.
std::vector<Natural> roots_mod_uni(const Function& f, int alpha, int k,
                                   std::uint64_t budget = kDefaultBudget);

struct ResidueCheckReport {
  bool passes = true;
  std::uint64_t checks = 0;
  /// (x, y) with x ≡ y mod p^k but f(x) ≢ f(y) mod p^(k - alpha).
  std::optional<std::pair<Natural, Natural>> witness;
};

/// Samples lifts y = x + p^k u of every residue x < p^k and checks that
/// f(y) ≡ f(x) mod p^(k - alpha).
ResidueCheckReport well_defined_residue_check(const Function& f, int alpha, int k,
                                              std::uint64_t lifts_per_residue,
                                              std::uint64_t seed,
                                              std::uint64_t budget = kDefaultBudget);

enum class LiftStatus { lifted, condition_failed, residual_nonliftable };

std::string_view to_string(LiftStatus status) noexcept;

struct LiftLevel {
  int level;
  /// 0-based coordinate whose digit `level` was chosen.
  std::size_t coordinate;
  /// Digit `level` of F at the current partial root.
  std::uint32_t residual;
  std::uint32_t digit;
  /// For r = 1..p-1: (F(m + r p^l e_j) - F(m)) / p^l mod p, or empty when the
  /// difference is not divisible by p^l.
  std::vector<std::optional<std::uint32_t>> condition_set;
  bool condition_holds;
  /// Coordinates tried before `coordinate` whose condition set was incomplete.
  std::vector<std::size_t> rejected;
  std::vector<Natural> partial_root;
};

struct LiftTrace {
  Prime p;
  std::vector<int> alpha;
  std::vector<Natural> start;
  int l0;
  int start_level;
  int target_precision;
  /// Fixed coordinate (0-based), or empty for per-level search.
  std::optional<std::size_t> coordinate;
  std::vector<LiftLevel> levels;
  LiftStatus status = LiftStatus::lifted;
  std::optional<int> failed_level;
  /// Root reached; a root mod p^N when status is lifted, otherwise the
  /// partial root at the failing level.
  std::vector<Natural> root;
  bool replay_verified = false;
};

/// Derivative-free lifting of a root z of f mod p^(l0 + alpha) to a root mod
/// p^N. At each level the normalized differences f(ẑ + r p^l) - f(ẑ) must
/// cover {1, ..., p-1}; the check is made along the constructed path only.
LiftTrace hensel_lift_uni(const Function& f, int alpha, const Natural& z, int l0,
                          int target_precision);

/// Multivariate lifting: one coordinate per level, either fixed or searched.
LiftTrace hensel_lift_multi(const Function& f, std::span<const int> alpha,
                            std::span<const Natural> z, int l0,
                            std::optional<std::size_t> coordinate, int target_precision);

/// All points of [0, p^k)^n with F ≡ 0 mod p^(k - max alpha).
std::vector<std::vector<Natural>> brute_force_roots_multi(const Function& f, int k,
                                                          std::span<const int> alpha,
                                                          std::uint64_t budget = kDefaultBudget);

struct ProjectionRootReport {
  std::size_t coordinate;
  std::vector<Natural> fixed;
  std::vector<std::pair<int, std::vector<Natural>>> roots_by_level;
  bool nonempty_at_all_levels = true;
};

/// roots_mod_uni of the projection F_j (other coordinates fixed) for every
/// level in [k_min, k_max].
ProjectionRootReport root_exists_via_projection(const FunctionPtr& f, std::size_t coordinate,
                                                std::vector<Natural> fixed, int alpha, int k_min,
                                                int k_max, std::uint64_t budget = kDefaultBudget);

}  // namespace padic
