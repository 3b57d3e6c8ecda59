#pragma once

#include "padic/function.hpp"
#include "padic/padic_int.hpp"
#include "padic/vdp_uni.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padic {

using MultiIndex = std::vector<Natural>;

/// Coordinates i (0-based) with m_i >= p.
std::vector<std::size_t> index_set_I(const MultiIndex& m, Prime p);

/// E_m(x) = e_{m_1}(x_1) ... e_{m_n}(x_n).
int E_m(const MultiIndex& m, const PadicPoint& x);

/// A_m as the alternating sum over S ⊆ I(m) of (-1)^|S| F(m with m_i -> m_i*
/// for i in S). A_m = F(m) when I(m) is empty.
PadicInt vdp_coeff_multi_ie(const Function& f, const MultiIndex& m, int precision);

/// A_m by nested differences: difference F in coordinate order[0], then the
/// result in order[1], and so on. `order` must be a permutation of I(m); empty
/// means increasing order.
PadicInt vdp_coeff_multi_rec(const Function& f, const MultiIndex& m, int precision,
                             std::span<const std::size_t> order = {});

/// Dense expansion over [0, p^K)^n, row-major with the first coordinate
/// slowest.
struct VdpTableN {
  /// a_m = p^{min_{i in I(m)} (alpha_i - s(m_i))} A_m, with exponent 0 when
  /// I(m) is empty.
  struct Normalized {
    std::vector<int> alpha;
    std::vector<PadicInt> coeffs;
  };

  Prime p;
  std::size_t arity;
  int level;
  int precision;
  std::vector<PadicInt> coeffs;
  std::optional<Normalized> normalized;

  std::uint64_t side() const;
  std::uint64_t flat_index(const MultiIndex& m) const;
  MultiIndex multi_index(std::uint64_t flat) const;
  const PadicInt& at(const MultiIndex& m) const { return coeffs[flat_index(m)]; }
};

/// "(m1,m2,...)" as used for table keys.
std::string format_multi_index(const MultiIndex& m);
MultiIndex parse_multi_index(const std::string& key);

VdpTableN vdp_expand_multi(const Function& f, int level, int precision,
                           std::uint64_t budget = kDefaultBudget);

/// Sum of A_m over all m with m_i an initial part of x_i and m_i < p^K.
PadicInt vdp_eval_multi(const VdpTableN& table, const PadicPoint& x);

Norm sup_norm(const VdpTableN& table);

struct WeightedBoundVerdict {
  /// True means the necessary condition holds at level K; it does not certify
  /// the Lipschitz property.
  bool holds;
  std::optional<MultiIndex> violated_at;
};

/// |A_m|_p <= p^{min_{i in I(m)} (-floor(log_p m_i) + alpha_i)}; entries with
/// I(m) empty are bounded by 1 and never violate.
WeightedBoundVerdict weighted_lip_bound_check(const VdpTableN& table,
                                              std::span<const int> alpha);

VdpTableN normalize_weighted(const VdpTableN& table, std::span<const int> alpha);

class TableFunctionN final : public Function {
 public:
  explicit TableFunctionN(VdpTableN table);

  Prime prime() const override { return table_.p; }
  std::size_t arity() const override { return table_.arity; }
  PadicInt at(std::span<const Natural> point, int precision) const override;
  using Function::at;
  int precision_limit() const override { return table_.precision; }

  const VdpTableN& table() const noexcept { return table_; }

 private:
  VdpTableN table_;
};

SampledLipReport sampled_weighted_lip_check(const Function& f, std::span<const int> alpha,
                                            std::uint64_t samples, std::uint64_t seed,
                                            int precision);

/// Lip_{alpha_l} check of projections F_l at sampled fixed coordinates.
struct ProjectionCheck {
  std::size_t coordinate = 0;  // 0-based
  std::uint64_t fixed_samples = 0;
  std::uint64_t failures = 0;
  std::optional<std::vector<Natural>> failing_fixed;
  std::optional<Natural> violated_at;
};

struct ProjectionReport {
  bool holds = true;
  std::vector<ProjectionCheck> coordinates;
};

ProjectionReport projection_lip_check(const FunctionPtr& f, std::span<const int> alpha, int level,
                                      int precision, std::uint64_t fixed_samples,
                                      std::uint64_t seed, std::uint64_t budget = kDefaultBudget);

}  // namespace padic
