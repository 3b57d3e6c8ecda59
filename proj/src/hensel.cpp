#include "padic/hensel.hpp"

#include "padic/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace padic {

std::string_view to_string(LiftStatus status) noexcept {
  switch (status) {
    case LiftStatus::lifted: return "lifted";
    case LiftStatus::condition_failed: return "condition-failed";
    case LiftStatus::residual_nonliftable: return "residual-nonliftable";
  }
  return "unknown";
}

namespace {

bool zero_mod(const PadicInt& v, int digits) {
  for (int i = 0; i < digits; ++i) {
    if (v.digit(i) != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<Natural> roots_mod_uni(const Function& f, int alpha, int k, std::uint64_t budget) {
  if (f.arity() != 1) throw Error(Errc::arity, "roots_mod_uni needs a univariate function");
  if (alpha < 0) throw Error(Errc::out_of_range, "alpha must be non-negative");
  if (k < 1 + alpha) throw Error(Errc::out_of_range, "level must satisfy k >= 1 + alpha");
  const Natural size = power(f.prime(), k);
  check_budget(size, budget, "root enumeration");
  const int precision = k - alpha;
  if (precision > f.precision_limit()) {
    throw Error(Errc::precision_exhausted, "function values are not known mod p^" +
                                               std::to_string(precision));
  }
  std::vector<Natural> roots;
  for (Natural x = 0; x < size; ++x) {
    if (f.at(x, precision).is_zero()) roots.push_back(x);
  }
  return roots;
}

ResidueCheckReport well_defined_residue_check(const Function& f, int alpha, int k,
                                              std::uint64_t lifts_per_residue,
                                              std::uint64_t seed, std::uint64_t budget) {
  if (f.arity() != 1) throw Error(Errc::arity, "residue check needs a univariate function");
  if (k < 1 + alpha) throw Error(Errc::out_of_range, "level must satisfy k >= 1 + alpha");
  const Prime p = f.prime();
  const Natural size = power(p, k);
  check_budget(size * (lifts_per_residue + 1), budget, "residue check");
  const int precision = k - alpha;
  const int lift_digits = k;
  Rng rng(seed);
  ResidueCheckReport report;
  for (Natural x = 0; x < size; ++x) {
    const auto base = f.at(x, precision);
    for (std::uint64_t s = 0; s < lifts_per_residue; ++s) {
      const Natural u = random_residue(rng, p, lift_digits) + 1;
      const Natural y = x + size * u;
      ++report.checks;
      if (f.at(y, precision) != base) {
        report.passes = false;
        if (!report.witness) report.witness = std::make_pair(x, y);
      }
    }
  }
  return report;
}

LiftTrace hensel_lift_uni(const Function& f, int alpha, const Natural& z, int l0,
                          int target_precision) {
  if (f.arity() != 1) throw Error(Errc::arity, "hensel_lift_uni needs a univariate function");
  const int weights[] = {alpha};
  const Natural start[] = {z};
  return hensel_lift_multi(f, weights, start, l0, std::size_t{0}, target_precision);
}

LiftTrace hensel_lift_multi(const Function& f, std::span<const int> alpha,
                            std::span<const Natural> z, int l0,
                            std::optional<std::size_t> coordinate, int target_precision) {
  const std::size_t n = f.arity();
  const Prime p = f.prime();
  if (alpha.size() != n || z.size() != n) {
    throw Error(Errc::arity, "weight and start point must have " + std::to_string(n) + " entries");
  }
  if (coordinate && *coordinate >= n) {
    throw Error(Errc::arity, "coordinate " + std::to_string(*coordinate + 1) + " outside arity " +
                                 std::to_string(n));
  }
  if (l0 < 1) throw Error(Errc::precondition, "l0 must be a positive integer");
  for (int a : alpha) {
    if (a < 0) throw Error(Errc::precondition, "weights must be non-negative");
  }
  const int min_alpha = *std::min_element(alpha.begin(), alpha.end());
  const int max_alpha = *std::max_element(alpha.begin(), alpha.end());
  const int start_level = l0 + max_alpha;
  if (target_precision < start_level) {
    throw Error(Errc::precondition, "target precision " + std::to_string(target_precision) +
                                        " is below the starting level " +
                                        std::to_string(start_level));
  }
  if (target_precision > f.precision_limit()) {
    throw Error(Errc::precision_exhausted, "function values are not known mod p^" +
                                               std::to_string(target_precision));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (z[k] < 0 || z[k] >= power(p, l0 + alpha[k])) {
      throw Error(Errc::precondition, "start coordinate " + std::to_string(k + 1) +
                                          " must lie in [0, p^(l0+alpha_k))");
    }
  }

  LiftTrace trace{p,
                  {alpha.begin(), alpha.end()},
                  {z.begin(), z.end()},
                  l0,
                  start_level,
                  target_precision,
                  coordinate,
                  {},
                  LiftStatus::lifted,
                  std::nullopt,
                  {z.begin(), z.end()},
                  false};

  const int N = target_precision;
  std::vector<Natural>& m = trace.root;
  if (!zero_mod(f.at(std::span<const Natural>(m), N), l0 + min_alpha)) {
    throw Error(Errc::precondition, "F(z) is not 0 mod p^" + std::to_string(l0 + min_alpha));
  }

  std::vector<std::size_t> candidates;
  if (coordinate) {
    candidates.push_back(*coordinate);
  } else {
    candidates.resize(n);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  }

  for (int l = start_level; l < N; ++l) {
    const auto value = f.at(std::span<const Natural>(m), N);
    if (!zero_mod(value, l)) {
      trace.status = LiftStatus::residual_nonliftable;
      trace.failed_level = l;
      return trace;
    }
    const std::uint32_t residual = value.digit(l);
    const Natural step = power(p, l);

    LiftLevel record{l, candidates.front(), residual, 0, {}, false, {}, {}};
    for (auto j : candidates) {
      std::vector<std::optional<std::uint32_t>> set;
      std::vector<bool> seen(p.value(), false);
      bool full = true;
      std::vector<Natural> moved = m;
      for (std::uint32_t r = 1; r < p.value(); ++r) {
        moved[j] = m[j] + step * r;
        const auto diff = f.at(std::span<const Natural>(moved), N) - value;
        if (zero_mod(diff, l)) {
          const std::uint32_t w = diff.digit(l);
          set.emplace_back(w);
          if (w == 0 || seen[w]) full = false;
          seen[w] = true;
        } else {
          set.emplace_back(std::nullopt);
          full = false;
        }
      }
      record.coordinate = j;
      record.condition_set = std::move(set);
      record.condition_holds = full;
      if (full) break;
      record.rejected.push_back(j);
    }
    if (!record.condition_holds) {
      record.rejected.pop_back();
      record.partial_root = m;
      trace.levels.push_back(std::move(record));
      trace.status = LiftStatus::condition_failed;
      trace.failed_level = l;
      return trace;
    }
    if (residual != 0) {
      // The unique r with w_r + residual ≡ 0 mod p.
      const std::uint32_t target = p.value() - residual;
      for (std::uint32_t r = 1; r < p.value(); ++r) {
        if (*record.condition_set[r - 1] == target) record.digit = r;
      }
    }
    m[record.coordinate] += step * record.digit;
    record.partial_root = m;
    trace.levels.push_back(std::move(record));
  }

  // Replay: every reported root is re-evaluated before it is returned.
  if (!f.at(std::span<const Natural>(m), N).is_zero()) {
    throw std::logic_error("lifted root does not replay to 0 mod p^N");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k] % power(p, l0 + alpha[k]) != z[k]) {
      throw std::logic_error("lifted root lost congruence with the start point");
    }
  }
  trace.replay_verified = true;
  return trace;
}

std::vector<std::vector<Natural>> brute_force_roots_multi(const Function& f, int k,
                                                          std::span<const int> alpha,
                                                          std::uint64_t budget) {
  const std::size_t n = f.arity();
  if (alpha.size() != n) throw Error(Errc::arity, "weight length must equal arity");
  const int max_alpha = *std::max_element(alpha.begin(), alpha.end());
  if (k < 1 + max_alpha) throw Error(Errc::out_of_range, "level must satisfy k >= 1 + max alpha");
  const Natural side = power(f.prime(), k);
  check_budget(boost::multiprecision::pow(side, static_cast<unsigned>(n)), budget,
               "root enumeration");
  const int precision = k - max_alpha;
  std::vector<std::vector<Natural>> roots;
  std::vector<Natural> point(n, 0);
  while (true) {
    if (f.at(std::span<const Natural>(point), precision).is_zero()) roots.push_back(point);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++point[i] < side) break;
      point[i] = 0;
      if (i == 0) return roots;
    }
  }
}

ProjectionRootReport root_exists_via_projection(const FunctionPtr& f, std::size_t coordinate,
                                                std::vector<Natural> fixed, int alpha, int k_min,
                                                int k_max, std::uint64_t budget) {
  const auto proj = projection(f, coordinate, fixed);
  ProjectionRootReport report{coordinate, std::move(fixed), {}, true};
  for (int k = k_min; k <= k_max; ++k) {
    auto roots = roots_mod_uni(*proj, alpha, k, budget);
    report.nonempty_at_all_levels = report.nonempty_at_all_levels && !roots.empty();
    report.roots_by_level.emplace_back(k, std::move(roots));
  }
  return report;
}

}  // namespace padic
