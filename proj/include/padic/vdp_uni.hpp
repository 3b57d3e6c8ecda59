#pragma once

#include "padic/function.hpp"
#include "padic/padic_int.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace padic {

/// Truncated van der Put expansion f(x) = sum_{m < p^K} B_m e_m(x).
struct VdpTable1 {
  /// b^alpha_m = p^{alpha - s(m)} B_m with s(m) = 0 for m < p.
  struct Normalized {
    int alpha;
    std::vector<PadicInt> coeffs;
  };

  Prime p;
  int level;
  int precision;
  std::vector<PadicInt> coeffs;
  std::optional<Normalized> normalized;

  std::uint64_t size() const noexcept { return coeffs.size(); }
};

/// e_m(x): 1 when m is an initial part of x, else 0.
int e_m(const Natural& m, const PadicInt& x);

/// Distinct initial parts x^(0), ..., x^(K-1) of x, increasing. Requires
/// x.precision() >= K.
std::vector<Natural> initial_parts(const PadicInt& x, int level);

/// B_m = f(m) - f(m*) for m >= p, f(m) otherwise.
PadicInt vdp_coeff_uni(const Function& f, const Natural& m, int precision);

/// All B_m with m < p^K, each computed to `precision` digits.
VdpTable1 vdp_expand_uni(const Function& f, int level, int precision,
                         std::uint64_t budget = kDefaultBudget);

/// Partial sum of B_m over the initial parts m < p^K of x.
PadicInt vdp_eval_uni(const VdpTable1& table, const PadicInt& x);

/// max_m |B_m|_p.
Norm sup_norm(const VdpTable1& table);

struct LipVerdict {
  bool holds;
  /// First m with |B_m|_p > p^{alpha - s(m)}.
  std::optional<Natural> violated_at;
};

/// |B_m|_p <= p^{-floor(log_p m) + alpha} for every m < p^K. For m < p the
/// bound is p^alpha and holds automatically.
LipVerdict lip_alpha_check_uni(const VdpTable1& table, int alpha);

/// Fills `normalized`. Throws precondition when the bound fails.
VdpTable1 normalize_alpha(const VdpTable1& table, int alpha);

/// Rebuilds B_m from the normalized coefficients.
VdpTable1 denormalize(const VdpTable1& table);

/// f(x) = sum_{m ◁ x, m < p^K} B_m, i.e. the function the table represents.
class TableFunction1 final : public Function {
 public:
  explicit TableFunction1(VdpTable1 table);

  Prime prime() const override { return table_.p; }
  std::size_t arity() const override { return 1; }
  PadicInt at(std::span<const Natural> point, int precision) const override;
  using Function::at;
  int precision_limit() const override { return table_.precision; }

  const VdpTable1& table() const noexcept { return table_; }

 private:
  VdpTable1 table_;
};

struct PairViolation {
  std::vector<Natural> x;
  std::vector<Natural> y;
  Norm value_distance;
  Norm allowed;
};

/// Randomized check of |F(x) - F(y)|_p <= max_i p^{alpha_i} |x_i - y_i|_p.
/// Pairs are drawn uniformly and as perturbations of one or all coordinates at
/// a random depth, so close pairs are well represented.
struct SampledLipReport {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  /// Pairs whose difference vanished at the available precision while the
  /// bound asked for more digits.
  std::uint64_t inconclusive = 0;
  int precision = 0;
  std::optional<PairViolation> witness;
};

SampledLipReport sampled_lip_check_uni(const Function& f, int alpha, std::uint64_t samples,
                                       std::uint64_t seed, int precision);

namespace detail {
SampledLipReport sample_weighted_pairs(const Function& f, std::span<const int> alpha,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int precision);
}  // namespace detail

}  // namespace padic
