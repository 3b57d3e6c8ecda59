#include "padic/vdp_uni.hpp"

#include "padic/error.hpp"

#include <algorithm>
#include <string>

namespace padic {

int e_m(const Natural& m, const PadicInt& x) { return initial_part(m, x) ? 1 : 0; }

std::vector<Natural> initial_parts(const PadicInt& x, int level) {
  if (x.precision() < level) {
    throw Error(Errc::precision_exhausted, "need " + std::to_string(level) +
                                               " digits of x, have " +
                                               std::to_string(x.precision()));
  }
  std::vector<Natural> parts;
  Natural partial = 0;
  Natural scale = 1;
  for (int k = 0; k < level; ++k) {
    partial += scale * x.digit(k);
    scale *= x.prime().value();
    if (parts.empty() || parts.back() != partial) parts.push_back(partial);
  }
  return parts;
}

PadicInt vdp_coeff_uni(const Function& f, const Natural& m, int precision) {
  if (m < f.prime().value()) return f.at(m, precision);
  return f.at(m, precision) - f.at(m_star(m, f.prime()), precision);
}

VdpTable1 vdp_expand_uni(const Function& f, int level, int precision, std::uint64_t budget) {
  if (f.arity() != 1) throw Error(Errc::arity, "univariate expansion needs arity 1");
  if (level < 1) throw Error(Errc::out_of_range, "level must be at least 1");
  const Prime p = f.prime();
  const Natural size = power(p, level);
  check_budget(size, budget, "univariate expansion");
  const auto n = size.convert_to<std::uint64_t>();

  // Every m* is below m, so one pass over f(0..p^K-1) gives all differences.
  std::vector<PadicInt> values;
  values.reserve(n);
  for (std::uint64_t m = 0; m < n; ++m) values.push_back(f.at(Natural(m), precision));

  VdpTable1 table{p, level, precision, {}, std::nullopt};
  table.coeffs.reserve(n);
  for (std::uint64_t m = 0; m < n; ++m) {
    if (m < p.value()) {
      table.coeffs.push_back(values[m]);
    } else {
      const auto star = m_star(Natural(m), p).convert_to<std::uint64_t>();
      table.coeffs.push_back(values[m] - values[star]);
    }
  }
  return table;
}

PadicInt vdp_eval_uni(const VdpTable1& table, const PadicInt& x) {
  if (x.prime() != table.p) throw Error(Errc::prime_mismatch, "table and point primes differ");
  auto sum = PadicInt::zero(table.p, table.precision);
  for (const auto& m : initial_parts(x, table.level)) {
    sum = sum + table.coeffs[m.convert_to<std::size_t>()];
  }
  return sum;
}

Norm sup_norm(const VdpTable1& table) {
  Norm best = Norm::zero(table.p);
  for (const auto& b : table.coeffs) best = std::max(best, b.norm());
  return best;
}

LipVerdict lip_alpha_check_uni(const VdpTable1& table, int alpha) {
  for (std::uint64_t m = table.p.value(); m < table.size(); ++m) {
    const int required = floor_log_p(Natural(m), table.p) - alpha;
    if (table.coeffs[m].ord() < Valuation(required)) return {false, Natural(m)};
  }
  return {true, std::nullopt};
}

VdpTable1 normalize_alpha(const VdpTable1& table, int alpha) {
  if (alpha < 0) throw Error(Errc::out_of_range, "alpha must be non-negative");
  const auto verdict = lip_alpha_check_uni(table, alpha);
  if (!verdict.holds) {
    throw Error(Errc::precondition,
                "coefficient bound fails at m=" + verdict.violated_at->str() +
                    " for alpha=" + std::to_string(alpha));
  }
  VdpTable1 out = table;
  VdpTable1::Normalized normalized{alpha, {}};
  normalized.coeffs.reserve(table.size());
  for (std::uint64_t m = 0; m < table.size(); ++m) {
    const int shift = bound_exponent(Natural(m), table.p) - alpha;
    const auto& b = table.coeffs[m];
    normalized.coeffs.push_back(shift >= 0 ? b.exact_div_p(shift) : b.shift_up(-shift));
  }
  out.normalized = std::move(normalized);
  return out;
}

VdpTable1 denormalize(const VdpTable1& table) {
  if (!table.normalized) throw Error(Errc::invalid_input, "table carries no normalized form");
  VdpTable1 out{table.p, table.level, table.precision, {}, std::nullopt};
  const int alpha = table.normalized->alpha;
  for (std::uint64_t m = 0; m < table.normalized->coeffs.size(); ++m) {
    const int shift = bound_exponent(Natural(m), table.p) - alpha;
    const auto& b = table.normalized->coeffs[m];
    out.coeffs.push_back(shift >= 0 ? b.shift_up(shift) : b.exact_div_p(-shift));
  }
  return out;
}

TableFunction1::TableFunction1(VdpTable1 table) : table_(std::move(table)) {
  if (table_.size() != power(table_.p, table_.level)) {
    throw Error(Errc::invalid_input, "table does not hold p^K coefficients");
  }
}

PadicInt TableFunction1::at(std::span<const Natural> point, int precision) const {
  if (point.size() != 1) throw Error(Errc::arity, "table function is univariate");
  if (precision > table_.precision) {
    throw Error(Errc::precision_exhausted, "table values are known to " +
                                               std::to_string(table_.precision) + " digits");
  }
  const auto x = PadicInt::from_integer(point.front(), table_.p, table_.level);
  return vdp_eval_uni(table_, x).truncated(precision);
}

SampledLipReport sampled_lip_check_uni(const Function& f, int alpha, std::uint64_t samples,
                                       std::uint64_t seed, int precision) {
  if (f.arity() != 1) throw Error(Errc::arity, "univariate check needs arity 1");
  const int weights[] = {alpha};
  return detail::sample_weighted_pairs(f, weights, samples, seed, precision);
}

namespace detail {

namespace {

/// p-adic order of a nonzero integer.
int order_of(Integer v, Prime p) {
  if (v < 0) v = -v;
  int k = 0;
  while (v % p.value() == 0) {
    v /= p.value();
    ++k;
  }
  return k;
}

}  // namespace

SampledLipReport sample_weighted_pairs(const Function& f, std::span<const int> alpha,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int precision) {
  const std::size_t n = f.arity();
  if (alpha.size() != n) {
    throw Error(Errc::arity, "weight has " + std::to_string(alpha.size()) +
                                 " entries, function arity is " + std::to_string(n));
  }
  if (precision < 1) throw Error(Errc::out_of_range, "precision must be at least 1");
  const Prime p = f.prime();
  const int value_precision = std::min(precision, f.precision_limit());
  const Natural modulus = power(p, precision);

  Rng rng(seed);
  std::uniform_int_distribution<int> mode_dist(0, 2);
  std::uniform_int_distribution<int> depth_dist(0, precision - 1);
  std::uniform_int_distribution<std::size_t> coord_dist(0, n - 1);
  std::uniform_int_distribution<std::uint32_t> unit_dist(1, p.value() - 1);

  auto perturb = [&](const Natural& v) {
    const int depth = depth_dist(rng);
    Natural u = random_residue(rng, p, precision) * p.value() + unit_dist(rng);
    return Natural((v + power(p, depth) * u) % modulus);
  };

  SampledLipReport report;
  report.precision = value_precision;
  std::vector<Natural> x(n), y(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& c : x) c = random_residue(rng, p, precision);
    switch (mode_dist(rng)) {
      case 0:
        for (auto& c : y) c = random_residue(rng, p, precision);
        break;
      case 1: {
        y = x;
        const auto i = coord_dist(rng);
        y[i] = perturb(x[i]);
        break;
      }
      default:
        for (std::size_t i = 0; i < n; ++i) y[i] = perturb(x[i]);
        break;
    }
    if (x == y) continue;
    ++report.pairs;

    // Allowed order: min over differing coordinates of ord(x_i - y_i) - alpha_i.
    std::optional<int> allowed;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == y[i]) continue;
      const int bound = order_of(Integer(x[i]) - Integer(y[i]), p) - alpha[i];
      allowed = allowed ? std::min(*allowed, bound) : bound;
    }
    const auto diff = f.at(x, value_precision) - f.at(y, value_precision);
    const Valuation v = diff.ord();
    if (v.is_infinite()) {
      if (value_precision < *allowed) ++report.inconclusive;
      continue;
    }
    if (v.value() < *allowed) {
      ++report.violations;
      if (!report.witness) {
        report.witness =
            PairViolation{x, y, diff.norm(), Norm::power(p, -static_cast<long>(*allowed))};
      }
    }
  }
  return report;
}

}  // namespace detail

}  // namespace padic
