#include "padic/cli.hpp"

#include "padic/dsl.hpp"
#include "padic/error.hpp"
#include "padic/hensel.hpp"
#include "padic/json_io.hpp"
#include "padic/vdp_multi.hpp"
#include "padic/vdp_uni.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace padic::cli {

namespace {

using io::Json;

struct RunConfig {
  std::uint64_t prime = 0;
  int precision = 12;
  std::size_t vars = 1;
  int level = 2;
  std::string alpha;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::uint64_t budget = kDefaultBudget;
  std::string expr;
  std::string func_file;
  std::string table_file;
  std::string out_file;

  // eval
  std::string point;
  // lipschitz / wellposed
  std::uint64_t samples = 10'000;
  std::uint64_t fixed_samples = 8;
  // roots / lift
  std::size_t coordinate = 0;
  std::string fixed;
  std::string start;
  int l0 = 1;
  int target_precision = 0;
  bool auto_coordinate = false;
};

/// A function loaded from --expr or --func, or a coefficient table.
struct Input {
  FunctionPtr function;
  std::optional<dsl::FuncExpr> expr;
  std::optional<std::vector<int>> declared_alpha;
  std::optional<VdpTable1> table1;
  std::optional<VdpTableN> tableN;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    parts.push_back(part);
  }
  return parts;
}

std::vector<Natural> parse_naturals(const std::string& text, const char* what) {
  std::vector<Natural> values;
  for (const auto& part : split(text)) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw Error(Errc::invalid_input, std::string(what) + ": '" + part +
                                           "' is not a non-negative integer");
    }
    values.emplace_back(part);
  }
  return values;
}

std::vector<int> parse_alpha(const RunConfig& cfg, std::size_t arity,
                             const std::optional<std::vector<int>>& declared) {
  if (cfg.alpha.empty()) {
    return declared ? *declared : std::vector<int>(arity, 0);
  }
  std::vector<int> alpha;
  for (const auto& v : parse_naturals(cfg.alpha, "--alpha")) {
    if (v > 1'000'000) throw Error(Errc::invalid_input, "--alpha entry too large");
    alpha.push_back(v.convert_to<int>());
  }
  if (alpha.size() == 1 && arity > 1) alpha.assign(arity, alpha.front());
  if (alpha.size() != arity) {
    throw Error(Errc::arity, "--alpha has " + std::to_string(alpha.size()) +
                                 " entries, arity is " + std::to_string(arity));
  }
  return alpha;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_input, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_input, path + ": " + e.what());
  }
}

Input load_input(const RunConfig& cfg, bool allow_table) {
  const int sources = !cfg.expr.empty() + !cfg.func_file.empty() + !cfg.table_file.empty();
  if (sources != 1) {
    throw Error(Errc::invalid_input, allow_table ? "give exactly one of --expr, --func, --table"
                                                 : "give exactly one of --expr, --func");
  }
  Input input;
  if (!cfg.table_file.empty()) {
    if (!allow_table) throw Error(Errc::invalid_input, "--table is not accepted here");
    const auto j = read_json_file(cfg.table_file);
    if (j.contains("B")) {
      input.table1 = io::table1_from_json(j);
      input.function = std::make_shared<TableFunction1>(*input.table1);
    } else {
      input.tableN = io::tableN_from_json(j);
      input.function = std::make_shared<TableFunctionN>(*input.tableN);
    }
    if (cfg.prime != 0 && cfg.prime != input.function->prime().value()) {
      throw Error(Errc::prime_mismatch, "--prime differs from the table's prime");
    }
    return input;
  }
  if (cfg.prime == 0) throw Error(Errc::invalid_input, "--prime is required");
  const Prime p(cfg.prime);
  if (!cfg.func_file.empty()) {
    auto def = io::funcdef_from_json(read_json_file(cfg.func_file));
    input.declared_alpha = def.alpha;
    input.expr = def.expr;
  } else {
    input.expr = dsl::parse(cfg.expr, cfg.vars);
  }
  input.function = dsl::make_function(*input.expr, p);
  return input;
}

void emit(const RunConfig& cfg, std::ostream& out, const Json& j, const std::string& text) {
  if (cfg.format == "text") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
}

std::string join(const std::vector<Natural>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + values[i].str();
  return s;
}

// Reconstruction spot-check on up to 64 seeded grid points.
void verify_reconstruction(const Function& f, const RunConfig& cfg, std::size_t arity, int level,
                           int precision, const std::function<PadicInt(const PadicPoint&)>& eval) {
  const Prime p = f.prime();
  Rng rng(cfg.seed);
  for (int s = 0; s < 64; ++s) {
    std::vector<Natural> m(arity);
    for (auto& c : m) c = random_residue(rng, p, level);
    const auto expected = f.at(std::span<const Natural>(m), precision);
    if (eval(PadicPoint::from_integers(m, p, level)) != expected) {
      throw std::logic_error("expansion does not reconstruct F at (" + join(m) + ")");
    }
  }
}

int cmd_expand(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto input = load_input(cfg, false);
  const auto& f = *input.function;
  Json table;
  Json summary;
  std::ostringstream text;
  if (f.arity() == 1) {
    const auto t = vdp_expand_uni(f, cfg.level, cfg.precision, cfg.budget);
    verify_reconstruction(f, cfg, 1, cfg.level, cfg.precision,
                          [&](const PadicPoint& x) { return vdp_eval_uni(t, x[0]); });
    table = io::to_json(t);
    summary["entries"] = t.size();
    summary["sup_norm"] = sup_norm(t).to_string();
    for (std::uint64_t m = 0; m < t.size(); ++m) text << "B_" << m << " = " << t.coeffs[m].to_text() << '\n';
  } else {
    const auto t = vdp_expand_multi(f, cfg.level, cfg.precision, cfg.budget);
    verify_reconstruction(f, cfg, f.arity(), cfg.level, cfg.precision,
                          [&](const PadicPoint& x) { return vdp_eval_multi(t, x); });
    table = io::to_json(t);
    summary["entries"] = t.coeffs.size();
    summary["sup_norm"] = sup_norm(t).to_string();
    for (std::uint64_t flat = 0; flat < t.coeffs.size(); ++flat) {
      text << "A_" << format_multi_index(t.multi_index(flat)) << " = " << t.coeffs[flat].to_text() << '\n';
    }
  }
  summary["reconstruction_check"] = "passed";
  text << "sup norm " << summary["sup_norm"].get<std::string>() << '\n';

  if (!cfg.out_file.empty()) {
    std::ofstream file(cfg.out_file);
    if (!file) throw Error(Errc::invalid_input, "cannot write " + cfg.out_file);
    file << table.dump(2) << '\n';
    emit(cfg, out, summary, text.str());
  } else {
    emit(cfg, out, table, text.str());
    err << summary.dump() << '\n';
  }
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const auto input = load_input(cfg, true);
  const auto point = parse_naturals(cfg.point, "--point");
  if (point.size() != input.function->arity()) {
    throw Error(Errc::arity, "--point has " + std::to_string(point.size()) +
                                 " coordinates, function arity is " +
                                 std::to_string(input.function->arity()));
  }
  const auto value = input.function->at(std::span<const Natural>(point), cfg.precision);
  emit(cfg, out, io::to_json(value), value.to_text());
  return kOk;
}

int cmd_lipschitz(const RunConfig& cfg, std::ostream& out) {
  const auto input = load_input(cfg, true);
  const auto& f = input.function;
  const std::size_t n = f->arity();
  const auto alpha = parse_alpha(cfg, n, input.declared_alpha);
  const int precision = std::min(cfg.precision, f->precision_limit());

  Json j;
  j["p"] = f->prime().value();
  j["arity"] = n;
  j["alpha"] = alpha;
  j["seed"] = cfg.seed;
  std::ostringstream text;
  bool pass = true;

  Json bound;
  if (n == 1) {
    const auto table = input.table1 ? *input.table1 : vdp_expand_uni(*f, cfg.level, precision, cfg.budget);
    const auto verdict = lip_alpha_check_uni(table, alpha[0]);
    bound["scope"] = "equivalent at level K";
    bound["level"] = table.level;
    bound["holds"] = verdict.holds;
    bound["violated_at"] = verdict.violated_at ? io::to_json(*verdict.violated_at) : Json(nullptr);
    pass = pass && verdict.holds;
    text << "necessary-bound: " << (verdict.holds ? "holds" : "violated at m=" + verdict.violated_at->str()) << '\n';
  } else {
    const auto table = input.tableN ? *input.tableN : vdp_expand_multi(*f, cfg.level, precision, cfg.budget);
    const auto verdict = weighted_lip_bound_check(table, alpha);
    bound["scope"] = "necessary condition only";
    bound["level"] = table.level;
    bound["holds"] = verdict.holds;
    bound["violated_at"] = verdict.violated_at ? Json(format_multi_index(*verdict.violated_at)) : Json(nullptr);
    pass = pass && verdict.holds;
    text << "necessary-bound: " << (verdict.holds ? "holds" : "violated at " + format_multi_index(*verdict.violated_at)) << '\n';
  }
  j["necessary-bound"] = std::move(bound);

  if (n > 1) {
    const auto level = input.tableN ? input.tableN->level : cfg.level;
    const auto report = projection_lip_check(f, alpha, level, precision, cfg.fixed_samples, cfg.seed, cfg.budget);
    Json proj = io::to_json(report);
    proj["level"] = level;
    proj["note"] = "fixed coordinates are sampled, not exhausted";
    j["projection-sampled"] = std::move(proj);
    pass = pass && report.holds;
    text << "projection-sampled: " << (report.holds ? "holds" : "violated") << '\n';
  } else {
    j["projection-sampled"] = nullptr;
    text << "projection-sampled: not applicable to one variable\n";
  }

  const auto pairs = sampled_weighted_lip_check(*f, alpha, cfg.samples, cfg.seed, precision);
  j["pair-sampled"] = io::to_json(pairs);
  pass = pass && pairs.violations == 0;
  text << "pair-sampled: " << pairs.violations << " violations in " << pairs.pairs << " pairs\n";

  j["verdict"] = pass ? "pass" : "violation";
  emit(cfg, out, j, text.str());
  return pass ? kOk : kVerdictNegative;
}

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
  const auto input = load_input(cfg, false);
  const auto& f = input.function;
  const std::size_t n = f->arity();
  const auto alpha = parse_alpha(cfg, n, input.declared_alpha);
  Json j;
  j["p"] = f->prime().value();
  j["level"] = cfg.level;
  j["alpha"] = alpha;
  std::ostringstream text;

  if (cfg.coordinate != 0 && n > 1) {
    const std::size_t slot = cfg.coordinate - 1;
    if (slot >= n) throw Error(Errc::arity, "--coordinate outside arity");
    const auto report = root_exists_via_projection(f, slot, parse_naturals(cfg.fixed, "--fixed"),
                                                   alpha[slot], 1 + alpha[slot], cfg.level, cfg.budget);
    j["coordinate"] = cfg.coordinate;
    Json fixed = Json::array();
    for (const auto& v : report.fixed) fixed.push_back(io::to_json(v));
    j["fixed"] = std::move(fixed);
    Json levels = Json::array();
    for (const auto& [k, roots] : report.roots_by_level) {
      Json l;
      l["level"] = k;
      Json r = Json::array();
      for (const auto& v : roots) r.push_back(io::to_json(v));
      l["roots"] = std::move(r);
      levels.push_back(std::move(l));
      text << "k=" << k << ": [" << join(roots) << "]\n";
    }
    j["levels"] = std::move(levels);
    j["nonempty_at_all_levels"] = report.nonempty_at_all_levels;
  } else if (n == 1) {
    const auto roots = roots_mod_uni(*f, alpha[0], cfg.level, cfg.budget);
    Json r = Json::array();
    for (const auto& v : roots) r.push_back(io::to_json(v));
    j["roots"] = std::move(r);
    text << "[" << join(roots) << "]\n";
  } else {
    const auto roots = brute_force_roots_multi(*f, cfg.level, alpha, cfg.budget);
    Json r = Json::array();
    for (const auto& point : roots) {
      Json pt = Json::array();
      for (const auto& v : point) pt.push_back(io::to_json(v));
      r.push_back(std::move(pt));
      text << "(" << join(point) << ")\n";
    }
    j["roots"] = std::move(r);
  }
  emit(cfg, out, j, text.str());
  return kOk;
}

int cmd_lift(const RunConfig& cfg, std::ostream& out) {
  const auto input = load_input(cfg, false);
  const auto& f = input.function;
  const std::size_t n = f->arity();
  const auto alpha = parse_alpha(cfg, n, input.declared_alpha);
  const auto start = parse_naturals(cfg.start, "--start");
  if (start.size() != n) throw Error(Errc::arity, "--start must have one entry per variable");
  if (cfg.auto_coordinate && cfg.coordinate != 0) {
    throw Error(Errc::invalid_input, "--coordinate and --auto-coordinate are exclusive");
  }
  std::optional<std::size_t> coordinate;
  if (!cfg.auto_coordinate) coordinate = cfg.coordinate == 0 ? 0 : cfg.coordinate - 1;
  const int target = cfg.target_precision > 0 ? cfg.target_precision : cfg.precision;

  const auto trace = hensel_lift_multi(*f, alpha, start, cfg.l0, coordinate, target);
  std::ostringstream text;
  text << "status " << to_string(trace.status);
  if (trace.failed_level) text << " at level " << *trace.failed_level;
  text << '\n';
  for (const auto& level : trace.levels) {
    text << "l=" << level.level << " x" << level.coordinate + 1 << " t=" << level.residual
         << " r=" << level.digit << (level.condition_holds ? "" : " (condition set incomplete)") << '\n';
  }
  for (std::size_t k = 0; k < trace.root.size(); ++k) {
    text << "zeta_" << k + 1 << " = " << PadicInt::from_integer(trace.root[k], f->prime(), target).to_text() << '\n';
  }
  emit(cfg, out, io::to_json(trace), text.str());
  return trace.status == LiftStatus::lifted ? kOk : kVerdictNegative;
}

int cmd_wellposed(const RunConfig& cfg, std::ostream& out) {
  const auto input = load_input(cfg, false);
  const Prime p = input.function->prime();
  const std::size_t n = input.function->arity();
  const auto alpha = parse_alpha(cfg, n, input.declared_alpha);
  const auto report = dsl::well_defined_check(*input.expr, p, cfg.precision, cfg.samples, cfg.seed);
  Json j;
  j["p"] = p.value();
  j["precision"] = cfg.precision;
  j["seed"] = cfg.seed;
  j["divisibility"] = io::to_json(report);
  bool pass = report.inexact_failures == 0 && report.precision_failures == 0;
  std::ostringstream text;
  text << "divisibility: " << report.inexact_failures << " inexact divisions in " << report.samples
       << " samples\n";
  if (pass && n == 1 && cfg.level >= 1 + alpha[0]) {
    const auto residue = well_defined_residue_check(*input.function, alpha[0], cfg.level, 4, cfg.seed, cfg.budget);
    Json r = io::to_json(residue);
    r["level"] = cfg.level;
    r["alpha"] = alpha[0];
    j["residue"] = std::move(r);
    pass = pass && residue.passes;
    text << "residue: " << (residue.passes ? "passes" : "fails") << '\n';
  } else {
    j["residue"] = nullptr;
  }
  j["verdict"] = pass ? "pass" : "violation";
  emit(cfg, out, j, text.str());
  return pass ? kOk : kVerdictNegative;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::inexact_division: return kEvaluationError;
    case Errc::precision_exhausted: return kPrecisionError;
    default: return kConfigError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"p-adic van der Put analysis and derivative-free Hensel lifting", "padic"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--prime", cfg.prime, "prime p");
  app.add_option("--precision", cfg.precision, "working precision N (digits)")->check(CLI::PositiveNumber);
  app.add_option("--vars,--var", cfg.vars, "number of variables n")->check(CLI::PositiveNumber);
  app.add_option("--level", cfg.level, "truncation level K / residue level k")->check(CLI::PositiveNumber);
  app.add_option("--alpha", cfg.alpha, "weight a1,a2,... (one value is broadcast)");
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget", cfg.budget, "cap on function evaluations");
  app.add_option("--expr", cfg.expr, "inline function body");
  app.add_option("--func", cfg.func_file, "function definition JSON file");
  app.add_option("--out", cfg.out_file, "write the table to this file");

  auto* expand = app.add_subcommand("expand", "van der Put coefficient table");
  auto* eval = app.add_subcommand("eval", "evaluate at an integer point");
  eval->add_option("--table", cfg.table_file, "coefficient table JSON file");
  eval->add_option("--point", cfg.point, "z1,z2,...")->required();
  auto* lipschitz = app.add_subcommand("lipschitz", "three-tier Lipschitz verification");
  lipschitz->add_option("--table", cfg.table_file, "coefficient table JSON file");
  lipschitz->add_option("--samples", cfg.samples, "random pairs");
  lipschitz->add_option("--fixed-samples", cfg.fixed_samples, "fixed points per projection");
  auto* roots = app.add_subcommand("roots", "roots modulo p^k");
  roots->add_option("--coordinate", cfg.coordinate, "project onto this coordinate (1-based)");
  roots->add_option("--fixed", cfg.fixed, "values of the other coordinates");
  auto* lift = app.add_subcommand("lift", "derivative-free Hensel lifting");
  lift->add_option("--start", cfg.start, "z1,z2,...")->required();
  lift->add_option("--l0", cfg.l0, "l0 >= 1");
  lift->add_option("--target-precision", cfg.target_precision, "lift to a root mod p^N");
  lift->add_option("--coordinate", cfg.coordinate, "coordinate to lift (1-based)");
  lift->add_flag("--auto-coordinate", cfg.auto_coordinate, "search a coordinate at every level");
  auto* wellposed = app.add_subcommand("wellposed", "divisibility and residue well-posedness");
  wellposed->add_option("--samples", cfg.samples, "random points");

  std::vector<std::string> argv_storage{"padic"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*expand) return cmd_expand(cfg, out, err);
    if (*eval) return cmd_eval(cfg, out);
    if (*lipschitz) return cmd_lipschitz(cfg, out);
    if (*roots) return cmd_roots(cfg, out);
    if (*lift) return cmd_lift(cfg, out);
    if (*wellposed) return cmd_wellposed(cfg, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kEvaluationError;
  }
  return kConfigError;
}

}  // namespace padic::cli
