#include "padic/json_io.hpp"

#include "padic/error.hpp"

#include <limits>

namespace padic::io {

namespace {

Json digits_json(const PadicInt& x) { return Json(std::vector<std::uint32_t>(x.digits().begin(), x.digits().end())); }

PadicInt digits_from_json(const Json& j, Prime p) {
  if (!j.is_array() || j.empty()) throw Error(Errc::invalid_input, "digit list must be a non-empty array");
  return PadicInt(p, j.get<std::vector<std::uint32_t>>());
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::invalid_input, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_input, std::string("bad field '") + key + "': " + e.what());
  }
}

Json naturals_json(const std::vector<Natural>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

}  // namespace

Json to_json(const Natural& value) {
  if (value >= 0 && value <= std::numeric_limits<std::int64_t>::max()) {
    return Json(value.convert_to<std::int64_t>());
  }
  return Json(value.str());
}

Natural natural_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return Natural(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) return Natural(s);
  }
  throw Error(Errc::invalid_input, "expected a non-negative integer, got " + j.dump());
}

Json to_json(const PadicInt& x) {
  Json j;
  j["p"] = x.prime().value();
  j["precision"] = x.precision();
  j["digits"] = digits_json(x);
  return j;
}

PadicInt padic_from_json(const Json& j) {
  const Prime p(field<std::uint64_t>(j, "p"));
  auto x = digits_from_json(j.at("digits"), p);
  if (field<int>(j, "precision") != x.precision()) {
    throw Error(Errc::invalid_input, "precision does not match digit count");
  }
  return x;
}

Json to_json(const Norm& norm) { return Json(norm.to_string()); }

Json to_json(const dsl::FuncDef& def) {
  Json j;
  j["arity"] = def.arity;
  if (def.alpha) j["alpha"] = *def.alpha;
  j["body"] = def.body;
  return j;
}

dsl::FuncDef funcdef_from_json(const Json& j) {
  std::optional<std::vector<int>> alpha;
  if (j.is_object() && j.contains("alpha") && !j.at("alpha").is_null()) {
    alpha = field<std::vector<int>>(j, "alpha");
  }
  return dsl::FuncDef::make(field<std::string>(j, "body"), field<std::size_t>(j, "arity"),
                            std::move(alpha));
}

Json to_json(const VdpTable1& table) {
  Json j;
  j["p"] = table.p.value();
  j["K"] = table.level;
  j["N"] = table.precision;
  Json coeffs = Json::array();
  for (const auto& b : table.coeffs) coeffs.push_back(digits_json(b));
  j["B"] = std::move(coeffs);
  if (table.normalized) {
    j["alpha"] = table.normalized->alpha;
    Json b = Json::array();
    for (const auto& v : table.normalized->coeffs) b.push_back(digits_json(v));
    j["b"] = std::move(b);
  }
  return j;
}

VdpTable1 table1_from_json(const Json& j) {
  const Prime p(field<std::uint64_t>(j, "p"));
  VdpTable1 table{p, field<int>(j, "K"), field<int>(j, "N"), {}, std::nullopt};
  if (table.level < 1 || table.precision < 1) {
    throw Error(Errc::invalid_input, "K and N must be at least 1");
  }
  const Json& coeffs = j.at("B");
  if (!coeffs.is_array() || Natural(coeffs.size()) != power(p, table.level)) {
    throw Error(Errc::invalid_input, "B must hold exactly p^K coefficients");
  }
  for (const auto& c : coeffs) {
    auto b = digits_from_json(c, p);
    if (b.precision() != table.precision) {
      throw Error(Errc::invalid_input, "coefficient precision differs from N");
    }
    table.coeffs.push_back(std::move(b));
  }
  if (j.contains("b")) {
    VdpTable1::Normalized normalized{field<int>(j, "alpha"), {}};
    for (const auto& c : j.at("b")) normalized.coeffs.push_back(digits_from_json(c, p));
    if (normalized.coeffs.size() != table.coeffs.size()) {
      throw Error(Errc::invalid_input, "b and B differ in length");
    }
    table.normalized = std::move(normalized);
  }
  return table;
}

Json to_json(const VdpTableN& table) {
  Json j;
  j["p"] = table.p.value();
  j["n"] = table.arity;
  j["K"] = table.level;
  j["N"] = table.precision;
  Json coeffs = Json::object();
  for (std::uint64_t flat = 0; flat < table.coeffs.size(); ++flat) {
    coeffs[format_multi_index(table.multi_index(flat))] = digits_json(table.coeffs[flat]);
  }
  j["A"] = std::move(coeffs);
  if (table.normalized) {
    j["alpha"] = table.normalized->alpha;
    Json a = Json::object();
    for (std::uint64_t flat = 0; flat < table.normalized->coeffs.size(); ++flat) {
      a[format_multi_index(table.multi_index(flat))] = digits_json(table.normalized->coeffs[flat]);
    }
    j["a"] = std::move(a);
  }
  return j;
}

VdpTableN tableN_from_json(const Json& j) {
  const Prime p(field<std::uint64_t>(j, "p"));
  VdpTableN table{p, field<std::size_t>(j, "n"), field<int>(j, "K"), field<int>(j, "N"), {},
                  std::nullopt};
  if (table.arity < 1 || table.level < 1 || table.precision < 1) {
    throw Error(Errc::invalid_input, "n, K and N must be at least 1");
  }
  const Natural total =
      boost::multiprecision::pow(power(p, table.level), static_cast<unsigned>(table.arity));
  const Json& coeffs = j.at("A");
  if (!coeffs.is_object() || Natural(coeffs.size()) != total) {
    throw Error(Errc::invalid_input, "A must hold exactly p^(K n) coefficients");
  }
  std::vector<std::optional<PadicInt>> slots(coeffs.size());
  for (const auto& [key, value] : coeffs.items()) {
    const auto flat = table.flat_index(parse_multi_index(key));
    auto a = digits_from_json(value, p);
    if (a.precision() != table.precision) {
      throw Error(Errc::invalid_input, "coefficient precision differs from N");
    }
    slots[flat] = std::move(a);
  }
  for (auto& s : slots) {
    if (!s) throw Error(Errc::invalid_input, "A has duplicate or missing multi-indices");
    table.coeffs.push_back(std::move(*s));
  }
  if (j.contains("a")) {
    const Json& a = j.at("a");
    VdpTableN::Normalized normalized{j.at("alpha").get<std::vector<int>>(), {}};
    if (normalized.alpha.size() != table.arity) throw Error(Errc::arity, "alpha length differs from n");
    if (!a.is_object() || a.size() != table.coeffs.size()) {
      throw Error(Errc::invalid_input, "a must hold exactly p^(K n) coefficients");
    }
    std::vector<std::optional<PadicInt>> norm_slots(a.size());
    for (const auto& [key, value] : a.items()) {
      norm_slots[table.flat_index(parse_multi_index(key))] = digits_from_json(value, p);
    }
    for (auto& s : norm_slots) {
      if (!s) throw Error(Errc::invalid_input, "a has duplicate or missing multi-indices");
      normalized.coeffs.push_back(std::move(*s));
    }
    table.normalized = std::move(normalized);
  }
  return table;
}

Json to_json(const LiftTrace& trace) {
  Json j;
  j["p"] = trace.p.value();
  j["alpha"] = trace.alpha;
  j["start"] = naturals_json(trace.start);
  j["l0"] = trace.l0;
  j["start_level"] = trace.start_level;
  j["target_precision"] = trace.target_precision;
  j["coordinate"] = trace.coordinate ? Json("x" + std::to_string(*trace.coordinate + 1)) : Json("auto");
  j["status"] = std::string(to_string(trace.status));
  j["failed_level"] = trace.failed_level ? Json(*trace.failed_level) : Json(nullptr);
  Json levels = Json::array();
  for (const auto& level : trace.levels) {
    Json l;
    l["level"] = level.level;
    l["coordinate"] = level.coordinate + 1;
    l["residual"] = level.residual;
    l["digit"] = level.digit;
    Json set = Json::array();
    for (const auto& w : level.condition_set) set.push_back(w ? Json(*w) : Json(nullptr));
    l["condition_set"] = std::move(set);
    l["condition_holds"] = level.condition_holds;
    Json rejected = Json::array();
    for (auto r : level.rejected) rejected.push_back(r + 1);
    l["rejected"] = std::move(rejected);
    l["partial_root"] = naturals_json(level.partial_root);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  Json root = Json::array();
  for (const auto& r : trace.root) {
    root.push_back(to_json(PadicInt::from_integer(r, trace.p, trace.target_precision)));
  }
  j["root"] = std::move(root);
  j["replay_verified"] = trace.replay_verified;
  return j;
}

Json to_json(const SampledLipReport& report) {
  Json j;
  j["pairs"] = report.pairs;
  j["violations"] = report.violations;
  j["inconclusive"] = report.inconclusive;
  j["precision"] = report.precision;
  if (report.witness) {
    Json w;
    w["x"] = naturals_json(report.witness->x);
    w["y"] = naturals_json(report.witness->y);
    w["value_distance"] = to_json(report.witness->value_distance);
    w["allowed"] = to_json(report.witness->allowed);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const ProjectionReport& report) {
  Json j;
  j["holds"] = report.holds;
  Json coords = Json::array();
  for (const auto& c : report.coordinates) {
    Json e;
    e["coordinate"] = c.coordinate + 1;
    e["fixed_samples"] = c.fixed_samples;
    e["failures"] = c.failures;
    e["failing_fixed"] = c.failing_fixed ? naturals_json(*c.failing_fixed) : Json(nullptr);
    e["violated_at"] = c.violated_at ? to_json(*c.violated_at) : Json(nullptr);
    coords.push_back(std::move(e));
  }
  j["coordinates"] = std::move(coords);
  return j;
}

Json to_json(const dsl::WellDefinedReport& report) {
  Json j;
  j["samples"] = report.samples;
  j["inexact_failures"] = report.inexact_failures;
  j["precision_failures"] = report.precision_failures;
  j["witness"] = report.witness ? naturals_json(*report.witness) : Json(nullptr);
  return j;
}

Json to_json(const ResidueCheckReport& report) {
  Json j;
  j["passes"] = report.passes;
  j["checks"] = report.checks;
  if (report.witness) {
    j["witness"] = Json::array({to_json(report.witness->first), to_json(report.witness->second)});
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace padic::io
