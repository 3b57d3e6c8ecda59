#pragma once

#include "padic/function.hpp"
#include "padic/padic_int.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace padic::dsl {

// Expression language for functions Z_p^n -> Z_p.
//
//   expr     = term { ("+"|"-") term }
//   term     = factor { "*" factor }
//   factor   = "-" factor | base [ "^" natural ]
//   base     = integer [ "/" integer ] | variable | "(" expr ")"
//            | "divp" "(" expr "," natural ")"
//            | "digitsum" "(" variable "," ipoly "," natural ")"
//   variable = "x" natural                       (x1 ... xn)
//   ipoly    = integer polynomial in the symbol i
//
// A leading minus binds looser than "^": -x1^2 is -(x1^2).

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Integer polynomial in the digit position i; coeffs[k] multiplies i^k.
class IndexPoly {
 public:
  IndexPoly() = default;
  explicit IndexPoly(std::vector<Integer> coeffs);

  static IndexPoly constant(Integer c) { return IndexPoly({std::move(c)}); }
  static IndexPoly symbol() { return IndexPoly({0, 1}); }

  Integer operator()(std::uint64_t i) const;
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  /// "4+7i^3", "i", "-2+i^2", "0".
  std::string to_string() const;

  friend IndexPoly operator+(const IndexPoly& a, const IndexPoly& b);
  friend IndexPoly operator-(const IndexPoly& a, const IndexPoly& b);
  friend IndexPoly operator*(const IndexPoly& a, const IndexPoly& b);
  friend bool operator==(const IndexPoly&, const IndexPoly&) = default;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class BinaryOp { add, sub, mul };

struct IntConst {
  Integer value;
};
/// num/den in lowest terms, den > 1.
struct RatConst {
  Integer num;
  Integer den;
};
/// 1-based variable index.
struct Var {
  std::size_t index;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Pow {
  NodePtr base;
  std::uint64_t exponent;
};
/// Exact division by p^exponent.
struct DivP {
  NodePtr child;
  int exponent;
};
/// sum_i p^i * coeff(i) * (digit i of x_var)^exponent.
struct DigitSum {
  std::size_t var;
  IndexPoly coeff;
  std::uint64_t exponent;
};

struct Node {
  std::variant<IntConst, RatConst, Var, Binary, Pow, DivP, DigitSum> kind;
  SourcePos pos;
};

/// A parsed, immutable expression together with its declared arity.
class FuncExpr {
 public:
  FuncExpr(NodePtr root, std::size_t arity);

  const Node& root() const noexcept { return *root_; }
  std::size_t arity() const noexcept { return arity_; }

  /// Largest sum of divp exponents along any root-to-leaf path: the number of
  /// digits evaluation can lose.
  int divp_depth() const noexcept { return divp_depth_; }

  /// Structural rendering, e.g. "Add(IntConst -5, DigitSum(1, 4+7i^3, 5))".
  std::string to_sexpr() const;

 private:
  NodePtr root_;
  std::size_t arity_;
  int divp_depth_;
};

FuncExpr parse(std::string_view text, std::size_t arity);

/// Throws non-integral-constant when a rational constant has a denominator
/// divisible by p.
void check_constants(const FuncExpr& f, Prime p);

/// Value at a point. Precision of the result is the point's precision minus
/// the divp exponents met along the evaluation path.
PadicInt eval(const FuncExpr& f, const PadicPoint& point);

/// A function definition as stored on disk:
/// {"arity":1,"alpha":[0],"body":"-5 + digitsum(x1, 4+7*i^3, 5)"}.
struct FuncDef {
  std::size_t arity;
  std::optional<std::vector<int>> alpha;
  std::string body;
  FuncExpr expr;

  static FuncDef make(std::string body, std::size_t arity,
                      std::optional<std::vector<int>> alpha = std::nullopt);
};

/// Function adapter: evaluates at integer points, padding the input precision
/// by divp_depth() so the requested output precision is always met.
class DslFunction final : public Function {
 public:
  DslFunction(FuncExpr expr, Prime p);

  Prime prime() const override { return prime_; }
  std::size_t arity() const override { return expr_.arity(); }
  PadicInt at(std::span<const Natural> point, int precision) const override;
  using Function::at;

  const FuncExpr& expr() const noexcept { return expr_; }

 private:
  FuncExpr expr_;
  Prime prime_;
};

FunctionPtr make_function(FuncExpr expr, Prime p);
/// Parse and bind in one step.
FunctionPtr make_function(std::string_view text, std::size_t arity, Prime p);

struct WellDefinedReport {
  std::uint64_t samples = 0;
  std::uint64_t inexact_failures = 0;
  std::uint64_t precision_failures = 0;
  /// First sampled point where divp was inexact.
  std::optional<std::vector<Natural>> witness;
};

/// Randomized search for points where a divp in `f` is inexact. Zero failures
/// is evidence that `f` is total on Z_p^n, not a proof.
WellDefinedReport well_defined_check(const FuncExpr& f, Prime p, int precision,
                                     std::uint64_t samples, std::uint64_t seed);

}  // namespace padic::dsl
