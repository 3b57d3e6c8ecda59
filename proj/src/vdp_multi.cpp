#include "padic/vdp_multi.hpp"

#include "padic/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace padic {

namespace {

void require_alpha(std::span<const int> alpha, std::size_t arity) {
  if (alpha.size() != arity) {
    throw Error(Errc::arity, "weight has " + std::to_string(alpha.size()) +
                                 " entries, arity is " + std::to_string(arity));
  }
  for (int a : alpha) {
    if (a < 0) throw Error(Errc::out_of_range, "weights must be non-negative");
  }
}

PadicInt nested_difference(const Function& f, MultiIndex& point, int precision,
                           std::span<const std::size_t> order) {
  if (order.empty()) return f.at(std::span<const Natural>(point), precision);
  const std::size_t i = order.front();
  const auto rest = order.subspan(1);
  const Natural original = point[i];
  auto upper = nested_difference(f, point, precision, rest);
  point[i] = m_star(original, f.prime());
  auto lower = nested_difference(f, point, precision, rest);
  point[i] = original;
  return upper - lower;
}

}  // namespace

std::vector<std::size_t> index_set_I(const MultiIndex& m, Prime p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] >= p.value()) out.push_back(i);
  }
  return out;
}

int E_m(const MultiIndex& m, const PadicPoint& x) {
  if (m.size() != x.arity()) throw Error(Errc::arity, "multi-index and point arity differ");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (e_m(m[i], x[i]) == 0) return 0;
  }
  return 1;
}

PadicInt vdp_coeff_multi_ie(const Function& f, const MultiIndex& m, int precision) {
  if (m.size() != f.arity()) throw Error(Errc::arity, "multi-index and function arity differ");
  const Prime p = f.prime();
  const auto starred = index_set_I(m, p);
  if (starred.size() > 30) throw Error(Errc::budget_exceeded, "too many starred coordinates");

  std::vector<Natural> stars;
  for (auto i : starred) stars.push_back(m_star(m[i], p));

  auto plus = PadicInt::zero(p, precision);
  auto minus = PadicInt::zero(p, precision);
  MultiIndex point = m;
  const std::uint64_t subsets = std::uint64_t{1} << starred.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    for (std::size_t k = 0; k < starred.size(); ++k) {
      point[starred[k]] = (mask >> k) & 1 ? stars[k] : m[starred[k]];
    }
    const auto value = f.at(std::span<const Natural>(point), precision);
    if (std::popcount(mask) % 2 == 0) {
      plus = plus + value;
    } else {
      minus = minus + value;
    }
  }
  return plus - minus;
}

PadicInt vdp_coeff_multi_rec(const Function& f, const MultiIndex& m, int precision,
                             std::span<const std::size_t> order) {
  if (m.size() != f.arity()) throw Error(Errc::arity, "multi-index and function arity differ");
  const auto starred = index_set_I(m, f.prime());
  std::vector<std::size_t> chosen(order.begin(), order.end());
  if (chosen.empty()) {
    chosen = starred;
  } else {
    auto sorted = chosen;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != starred) {
      throw Error(Errc::invalid_input, "differencing order must be a permutation of I(m)");
    }
  }
  MultiIndex point = m;
  return nested_difference(f, point, precision, chosen);
}

std::uint64_t VdpTableN::side() const { return power(p, level).convert_to<std::uint64_t>(); }

std::uint64_t VdpTableN::flat_index(const MultiIndex& m) const {
  if (m.size() != arity) throw Error(Errc::arity, "multi-index arity mismatch");
  const auto s = side();
  std::uint64_t flat = 0;
  for (const auto& v : m) {
    if (v >= s) throw Error(Errc::out_of_range, "multi-index entry beyond p^K");
    flat = flat * s + v.convert_to<std::uint64_t>();
  }
  return flat;
}

MultiIndex VdpTableN::multi_index(std::uint64_t flat) const {
  const auto s = side();
  MultiIndex m(arity);
  for (std::size_t i = arity; i-- > 0;) {
    m[i] = flat % s;
    flat /= s;
  }
  return m;
}

std::string format_multi_index(const MultiIndex& m) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) out << ',';
    out << m[i];
  }
  out << ')';
  return out.str();
}

MultiIndex parse_multi_index(const std::string& key) {
  if (key.size() < 3 || key.front() != '(' || key.back() != ')') {
    throw Error(Errc::invalid_input, "bad multi-index key '" + key + "'");
  }
  MultiIndex m;
  std::stringstream in(key.substr(1, key.size() - 2));
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw Error(Errc::invalid_input, "bad multi-index key '" + key + "'");
    }
    m.emplace_back(part);
  }
  return m;
}

VdpTableN vdp_expand_multi(const Function& f, int level, int precision, std::uint64_t budget) {
  if (level < 1) throw Error(Errc::out_of_range, "level must be at least 1");
  const Prime p = f.prime();
  const std::size_t n = f.arity();
  VdpTableN table{p, n, level, precision, {}, std::nullopt};
  check_budget(boost::multiprecision::pow(power(p, level), static_cast<unsigned>(n)), budget,
               "multivariate expansion");
  const auto s = table.side();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= s;

  // F on the whole grid; every starred index stays inside it.
  std::vector<PadicInt> grid;
  grid.reserve(total);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    const auto m = table.multi_index(flat);
    grid.push_back(f.at(std::span<const Natural>(m), precision));
  }

  std::vector<std::uint64_t> star(s, 0);
  for (std::uint64_t v = p.value(); v < s; ++v) {
    star[v] = m_star(Natural(v), p).convert_to<std::uint64_t>();
  }
  std::vector<std::uint64_t> stride(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) stride[i] = stride[i + 1] * s;

  table.coeffs.reserve(total);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    std::vector<std::size_t> starred;
    std::vector<std::uint64_t> drop;  // flat offset removed when coordinate is starred
    std::uint64_t rest = flat;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t v = (rest / stride[i]) % s;
      if (v >= p.value()) {
        starred.push_back(i);
        drop.push_back((v - star[v]) * stride[i]);
      }
    }
    auto plus = PadicInt::zero(p, precision);
    auto minus = PadicInt::zero(p, precision);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << starred.size()); ++mask) {
      std::uint64_t idx = flat;
      for (std::size_t k = 0; k < starred.size(); ++k) {
        if ((mask >> k) & 1) idx -= drop[k];
      }
      if (std::popcount(mask) % 2 == 0) {
        plus = plus + grid[idx];
      } else {
        minus = minus + grid[idx];
      }
    }
    table.coeffs.push_back(plus - minus);
  }
  return table;
}

PadicInt vdp_eval_multi(const VdpTableN& table, const PadicPoint& x) {
  if (x.arity() != table.arity) throw Error(Errc::arity, "point and table arity differ");
  if (x.prime() != table.p) throw Error(Errc::prime_mismatch, "table and point primes differ");
  std::vector<std::vector<std::uint64_t>> parts(table.arity);
  for (std::size_t i = 0; i < table.arity; ++i) {
    for (const auto& m : initial_parts(x[i], table.level)) {
      parts[i].push_back(m.convert_to<std::uint64_t>());
    }
  }
  const auto s = table.side();
  auto sum = PadicInt::zero(table.p, table.precision);
  std::vector<std::size_t> pick(table.arity, 0);
  while (true) {
    std::uint64_t flat = 0;
    for (std::size_t i = 0; i < table.arity; ++i) flat = flat * s + parts[i][pick[i]];
    sum = sum + table.coeffs[flat];
    std::size_t i = table.arity;
    while (i > 0) {
      --i;
      if (++pick[i] < parts[i].size()) break;
      pick[i] = 0;
      if (i == 0) return sum;
    }
  }
}

Norm sup_norm(const VdpTableN& table) {
  Norm best = Norm::zero(table.p);
  for (const auto& a : table.coeffs) best = std::max(best, a.norm());
  return best;
}

namespace {

/// max_{i in I(m)} (s(m_i) - alpha_i): the order A_m must reach. Empty I(m)
/// gives 0.
int required_order(const MultiIndex& m, Prime p, std::span<const int> alpha) {
  std::optional<int> best;
  for (auto i : index_set_I(m, p)) {
    const int r = floor_log_p(m[i], p) - alpha[i];
    best = best ? std::max(*best, r) : r;
  }
  return best.value_or(0);
}

}  // namespace

WeightedBoundVerdict weighted_lip_bound_check(const VdpTableN& table,
                                              std::span<const int> alpha) {
  require_alpha(alpha, table.arity);
  for (std::uint64_t flat = 0; flat < table.coeffs.size(); ++flat) {
    const auto m = table.multi_index(flat);
    if (table.coeffs[flat].ord() < Valuation(required_order(m, table.p, alpha))) {
      return {false, m};
    }
  }
  return {true, std::nullopt};
}

VdpTableN normalize_weighted(const VdpTableN& table, std::span<const int> alpha) {
  const auto verdict = weighted_lip_bound_check(table, alpha);
  if (!verdict.holds) {
    throw Error(Errc::precondition,
                "coefficient bound fails at " + format_multi_index(*verdict.violated_at));
  }
  VdpTableN out = table;
  VdpTableN::Normalized normalized{{alpha.begin(), alpha.end()}, {}};
  for (std::uint64_t flat = 0; flat < table.coeffs.size(); ++flat) {
    const int shift = required_order(table.multi_index(flat), table.p, alpha);
    const auto& a = table.coeffs[flat];
    normalized.coeffs.push_back(shift >= 0 ? a.exact_div_p(shift) : a.shift_up(-shift));
  }
  out.normalized = std::move(normalized);
  return out;
}

TableFunctionN::TableFunctionN(VdpTableN table) : table_(std::move(table)) {
  const Natural expected =
      boost::multiprecision::pow(power(table_.p, table_.level), static_cast<unsigned>(table_.arity));
  if (table_.coeffs.size() != expected) {
    throw Error(Errc::invalid_input, "table does not hold p^(K n) coefficients");
  }
}

PadicInt TableFunctionN::at(std::span<const Natural> point, int precision) const {
  if (precision > table_.precision) {
    throw Error(Errc::precision_exhausted, "table values are known to " +
                                               std::to_string(table_.precision) + " digits");
  }
  const auto x = PadicPoint::from_integers(point, table_.p, table_.level);
  return vdp_eval_multi(table_, x).truncated(precision);
}

SampledLipReport sampled_weighted_lip_check(const Function& f, std::span<const int> alpha,
                                            std::uint64_t samples, std::uint64_t seed,
                                            int precision) {
  require_alpha(alpha, f.arity());
  return detail::sample_weighted_pairs(f, alpha, samples, seed, precision);
}

ProjectionReport projection_lip_check(const FunctionPtr& f, std::span<const int> alpha, int level,
                                      int precision, std::uint64_t fixed_samples,
                                      std::uint64_t seed, std::uint64_t budget) {
  const std::size_t n = f->arity();
  require_alpha(alpha, n);
  check_budget(Natural(fixed_samples) * n * power(f->prime(), level), budget,
               "projection check");
  Rng rng(seed);
  ProjectionReport report;
  for (std::size_t l = 0; l < n; ++l) {
    ProjectionCheck check;
    check.coordinate = l;
    for (std::uint64_t s = 0; s < fixed_samples; ++s) {
      std::vector<Natural> fixed(n - 1);
      for (auto& c : fixed) c = random_residue(rng, f->prime(), precision);
      const auto proj = projection(f, l, fixed);
      const auto table = vdp_expand_uni(*proj, level, precision, budget);
      const auto verdict = lip_alpha_check_uni(table, alpha[l]);
      ++check.fixed_samples;
      if (!verdict.holds) {
        ++check.failures;
        if (!check.failing_fixed) {
          check.failing_fixed = fixed;
          check.violated_at = verdict.violated_at;
        }
      }
    }
    report.holds = report.holds && check.failures == 0;
    report.coordinates.push_back(std::move(check));
  }
  return report;
}

}  // namespace padic
