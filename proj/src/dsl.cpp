#include "padic/dsl.hpp"

#include "padic/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace padic::dsl {

// ---------------------------------------------------------------- IndexPoly

IndexPoly::IndexPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IndexPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IndexPoly::operator()(std::uint64_t i) const {
  Integer value = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * i + *it;
  }
  return value;
}

std::string IndexPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (c < 0) {
      out << '-';
    } else if (!first) {
      out << '+';
    }
    if (k == 0 || mag != 1) out << mag;
    if (k >= 1) out << 'i';
    if (k >= 2) out << '^' << k;
    first = false;
  }
  return out.str();
}

IndexPoly operator+(const IndexPoly& a, const IndexPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return IndexPoly(std::move(c));
}

IndexPoly operator-(const IndexPoly& a, const IndexPoly& b) {
  return a + IndexPoly::constant(-1) * b;
}

IndexPoly operator*(const IndexPoly& a, const IndexPoly& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return IndexPoly();
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IndexPoly(std::move(c));
}

// ------------------------------------------------------------------ Lexer

namespace {

enum class Tok { integer, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tokens.push_back({Tok::integer, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      tokens.push_back({Tok::ident, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      default:
        throw ParseError(Errc::syntax, std::string("unexpected character '") + c + "'",
                         start.line, start.column);
    }
    tokens.push_back({kind, std::string(1, c), start});
    advance(1);
  }
  tokens.push_back({Tok::end, "", pos});
  return tokens;
}

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::integer: return "integer";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::end: return "end of input";
  }
  return "token";
}

NodePtr make(decltype(Node::kind) kind, SourcePos pos) {
  return std::make_shared<const Node>(Node{std::move(kind), pos});
}

// ----------------------------------------------------------------- Parser

class Parser {
 public:
  Parser(std::string_view text, std::size_t arity) : tokens_(tokenize(text)), arity_(arity) {}

  NodePtr parse_all() {
    auto root = expr();
    if (peek().kind != Tok::end) fail("expected end of input, found " + show(peek()));
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + describe(kind) + ", found " + show(peek()));
    }
    return next();
  }

  static std::string show(const Token& t) {
    return t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
  }

  [[noreturn]] void fail(const std::string& msg, Errc code = Errc::syntax) const {
    throw ParseError(code, msg, peek().pos.line, peek().pos.column);
  }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg,
                                   Errc code = Errc::syntax) {
    throw ParseError(code, msg, t.pos.line, t.pos.column);
  }

  std::uint64_t natural() {
    const Token& t = expect(Tok::integer);
    if (t.text.size() > 18) fail_at(t, "natural literal too large");
    return std::stoull(t.text);
  }

  NodePtr expr() {
    auto lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Token& op = next();
      auto rhs = term();
      lhs = make(Binary{op.kind == Tok::plus ? BinaryOp::add : BinaryOp::sub, lhs, rhs}, op.pos);
    }
    return lhs;
  }

  NodePtr term() {
    auto lhs = factor();
    while (peek().kind == Tok::star) {
      const Token& op = next();
      auto rhs = factor();
      lhs = make(Binary{BinaryOp::mul, lhs, rhs}, op.pos);
    }
    return lhs;
  }

  NodePtr factor() {
    if (peek().kind == Tok::minus) {
      const Token& op = next();
      auto operand = factor();
      if (const auto* c = std::get_if<IntConst>(&operand->kind)) {
        return make(IntConst{-c->value}, op.pos);
      }
      if (const auto* r = std::get_if<RatConst>(&operand->kind)) {
        return make(RatConst{-r->num, r->den}, op.pos);
      }
      return make(Binary{BinaryOp::mul, make(IntConst{-1}, op.pos), operand}, op.pos);
    }
    auto b = base();
    if (peek().kind == Tok::caret) {
      const Token& op = next();
      const auto exponent = natural();
      b = make(Pow{b, exponent}, op.pos);
    }
    return b;
  }

  std::size_t variable() {
    const Token& t = expect(Tok::ident);
    if (t.text.size() < 2 || t.text[0] != 'x' ||
        !std::all_of(t.text.begin() + 1, t.text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      fail_at(t, "expected a variable x1..x" + std::to_string(arity_) + ", found '" + t.text + "'");
    }
    if (t.text.size() > 10) fail_at(t, "variable index too large", Errc::arity);
    const auto index = std::stoull(t.text.substr(1));
    if (index < 1 || index > arity_) {
      fail_at(t, "variable " + t.text + " outside arity " + std::to_string(arity_), Errc::arity);
    }
    return static_cast<std::size_t>(index);
  }

  NodePtr base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer: {
        next();
        Integer num(t.text);
        if (!accept(Tok::slash)) return make(IntConst{num}, t.pos);
        if (peek().kind != Tok::integer) {
          fail("'/' is only allowed between integer literals; use divp(expr, e)");
        }
        const Token& d = next();
        Integer den(d.text);
        if (den == 0) fail_at(d, "zero denominator");
        const Integer g = boost::multiprecision::gcd(num, den);
        num /= g;
        den /= g;
        if (den == 1) return make(IntConst{num}, t.pos);
        return make(RatConst{num, den}, t.pos);
      }
      case Tok::lparen: {
        next();
        auto inner = expr();
        expect(Tok::rparen);
        return inner;
      }
      case Tok::ident: {
        if (t.text == "divp") {
          next();
          expect(Tok::lparen);
          auto child = expr();
          expect(Tok::comma);
          const Token& et = peek();
          const auto e = natural();
          if (e < 1 || e > 1'000'000) fail_at(et, "divp exponent must be at least 1");
          expect(Tok::rparen);
          return make(DivP{child, static_cast<int>(e)}, t.pos);
        }
        if (t.text == "digitsum") {
          next();
          expect(Tok::lparen);
          const auto var = variable();
          expect(Tok::comma);
          auto coeff = ipoly_expr();
          expect(Tok::comma);
          const Token& et = peek();
          const auto e = natural();
          if (e < 1) fail_at(et, "digitsum exponent must be at least 1");
          expect(Tok::rparen);
          return make(DigitSum{var, std::move(coeff), e}, t.pos);
        }
        if (t.text[0] == 'x') {
          const auto index = variable();
          return make(Var{index}, t.pos);
        }
        fail("unknown identifier '" + t.text + "'");
      }
      default:
        fail("expected an operand, found " + show(t));
    }
  }

  // The digitsum coefficient: integer polynomial in i.

  IndexPoly ipoly_expr() {
    auto lhs = ipoly_term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool plus = next().kind == Tok::plus;
      auto rhs = ipoly_term();
      lhs = plus ? lhs + rhs : lhs - rhs;
    }
    return lhs;
  }

  IndexPoly ipoly_term() {
    auto lhs = ipoly_factor();
    while (accept(Tok::star)) lhs = lhs * ipoly_factor();
    return lhs;
  }

  IndexPoly ipoly_factor() {
    if (accept(Tok::minus)) return IndexPoly::constant(-1) * ipoly_factor();
    auto b = ipoly_base();
    if (accept(Tok::caret)) {
      const auto e = natural();
      if (e > 64) fail("digitsum coefficient degree too large");
      IndexPoly result = IndexPoly::constant(1);
      for (std::uint64_t k = 0; k < e; ++k) result = result * b;
      b = result;
    }
    return b;
  }

  IndexPoly ipoly_base() {
    const Token& t = peek();
    if (t.kind == Tok::integer) {
      next();
      if (peek().kind == Tok::slash) {
        fail("digitsum coefficient must be a polynomial in i with integer coefficients");
      }
      return IndexPoly::constant(Integer(t.text));
    }
    if (t.kind == Tok::ident && t.text == "i") {
      next();
      return IndexPoly::symbol();
    }
    if (accept(Tok::lparen)) {
      auto inner = ipoly_expr();
      expect(Tok::rparen);
      return inner;
    }
    fail("digitsum coefficient must be a polynomial in i with integer coefficients, found " +
         show(t));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t arity_;
};

int depth_of(const Node& node) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>) {
          return std::max(depth_of(*n.lhs), depth_of(*n.rhs));
        } else if constexpr (std::is_same_v<T, Pow>) {
          return depth_of(*n.base);
        } else if constexpr (std::is_same_v<T, DivP>) {
          return n.exponent + depth_of(*n.child);
        } else {
          return 0;
        }
      },
      node.kind);
}

void render(const Node& node, std::ostream& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          out << "IntConst " << n.value;
        } else if constexpr (std::is_same_v<T, RatConst>) {
          out << "RatConst " << n.num << '/' << n.den;
        } else if constexpr (std::is_same_v<T, Var>) {
          out << "Var " << n.index;
        } else if constexpr (std::is_same_v<T, Binary>) {
          out << (n.op == BinaryOp::add ? "Add(" : n.op == BinaryOp::sub ? "Sub(" : "Mul(");
          render(*n.lhs, out);
          out << ", ";
          render(*n.rhs, out);
          out << ')';
        } else if constexpr (std::is_same_v<T, Pow>) {
          out << "Pow(";
          render(*n.base, out);
          out << ", " << n.exponent << ')';
        } else if constexpr (std::is_same_v<T, DivP>) {
          out << "DivP(";
          render(*n.child, out);
          out << ", " << n.exponent << ')';
        } else {
          out << "DigitSum(" << n.var << ", " << n.coeff.to_string() << ", " << n.exponent << ')';
        }
      },
      node.kind);
}

void check_constants_node(const Node& node, Prime p) {
  std::visit(
      [p](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RatConst>) {
          if (n.den % p.value() == 0) {
            throw Error(Errc::non_integral_constant,
                        "constant " + n.num.str() + "/" + n.den.str() + " is not " +
                            std::to_string(p.value()) + "-integral");
          }
        } else if constexpr (std::is_same_v<T, Binary>) {
          check_constants_node(*n.lhs, p);
          check_constants_node(*n.rhs, p);
        } else if constexpr (std::is_same_v<T, Pow>) {
          check_constants_node(*n.base, p);
        } else if constexpr (std::is_same_v<T, DivP>) {
          check_constants_node(*n.child, p);
        }
      },
      node.kind);
}

PadicInt digit_sum(const DigitSum& n, const PadicInt& x) {
  const Prime p = x.prime();
  const int precision = x.precision();
  const Natural modulus = power(p, precision);
  Integer total = 0;
  Natural scale = 1;
  for (int i = 0; i < precision; ++i) {
    const std::uint32_t d = x.digit(i);
    if (d != 0) {
      const Integer term =
          scale * n.coeff(static_cast<std::uint64_t>(i)) *
          boost::multiprecision::pow(Integer(d), static_cast<unsigned>(n.exponent));
      total = mod_floor(total + term, modulus);
    }
    scale *= p.value();
  }
  return PadicInt::from_signed(total, p, precision);
}

PadicInt eval_node(const Node& node, const PadicPoint& point) {
  const Prime p = point.prime();
  const int precision = point.precision();
  return std::visit(
      [&](const auto& n) -> PadicInt {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          return PadicInt::from_signed(n.value, p, precision);
        } else if constexpr (std::is_same_v<T, RatConst>) {
          return PadicInt::from_rational(n.num, n.den, p, precision);
        } else if constexpr (std::is_same_v<T, Var>) {
          return point[n.index - 1];
        } else if constexpr (std::is_same_v<T, Binary>) {
          auto lhs = eval_node(*n.lhs, point);
          auto rhs = eval_node(*n.rhs, point);
          switch (n.op) {
            case BinaryOp::add: return lhs + rhs;
            case BinaryOp::sub: return lhs - rhs;
            case BinaryOp::mul: return lhs * rhs;
          }
          throw Error(Errc::invalid_input, "bad operator");
        } else if constexpr (std::is_same_v<T, Pow>) {
          return eval_node(*n.base, point).pow(n.exponent);
        } else if constexpr (std::is_same_v<T, DivP>) {
          return eval_node(*n.child, point).exact_div_p(n.exponent);
        } else {
          return digit_sum(n, point[n.var - 1]);
        }
      },
      node.kind);
}

}  // namespace

// ---------------------------------------------------------------- FuncExpr

FuncExpr::FuncExpr(NodePtr root, std::size_t arity)
    : root_(std::move(root)), arity_(arity), divp_depth_(depth_of(*root_)) {
  if (arity_ < 1) throw Error(Errc::arity, "arity must be at least 1");
}

std::string FuncExpr::to_sexpr() const {
  std::ostringstream out;
  render(*root_, out);
  return out.str();
}

FuncExpr parse(std::string_view text, std::size_t arity) {
  if (arity < 1) throw Error(Errc::arity, "arity must be at least 1");
  Parser parser(text, arity);
  return FuncExpr(parser.parse_all(), arity);
}

void check_constants(const FuncExpr& f, Prime p) { check_constants_node(f.root(), p); }

PadicInt eval(const FuncExpr& f, const PadicPoint& point) {
  if (point.arity() != f.arity()) {
    throw Error(Errc::arity, "function has arity " + std::to_string(f.arity()) +
                                 ", point has " + std::to_string(point.arity()));
  }
  return eval_node(f.root(), point);
}

FuncDef FuncDef::make(std::string body, std::size_t arity, std::optional<std::vector<int>> alpha) {
  if (alpha) {
    if (alpha->size() != arity) {
      throw Error(Errc::arity, "alpha has " + std::to_string(alpha->size()) +
                                   " entries, arity is " + std::to_string(arity));
    }
    for (int a : *alpha) {
      if (a < 0) throw Error(Errc::invalid_input, "alpha entries must be non-negative");
    }
  }
  auto expr = parse(body, arity);
  return FuncDef{arity, std::move(alpha), std::move(body), std::move(expr)};
}

// ------------------------------------------------------------- DslFunction

DslFunction::DslFunction(FuncExpr expr, Prime p) : expr_(std::move(expr)), prime_(p) {
  check_constants(expr_, prime_);
}

PadicInt DslFunction::at(std::span<const Natural> point, int precision) const {
  if (point.size() != expr_.arity()) {
    throw Error(Errc::arity, "function has arity " + std::to_string(expr_.arity()) +
                                 ", point has " + std::to_string(point.size()));
  }
  const auto input = PadicPoint::from_integers(point, prime_, precision + expr_.divp_depth());
  return eval(expr_, input).truncated(precision);
}

FunctionPtr make_function(FuncExpr expr, Prime p) {
  return std::make_shared<DslFunction>(std::move(expr), p);
}

FunctionPtr make_function(std::string_view text, std::size_t arity, Prime p) {
  return make_function(parse(text, arity), p);
}

WellDefinedReport well_defined_check(const FuncExpr& f, Prime p, int precision,
                                     std::uint64_t samples, std::uint64_t seed) {
  check_constants(f, p);
  Rng rng(seed);
  WellDefinedReport report;
  std::vector<Natural> coords(f.arity());
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& c : coords) c = random_residue(rng, p, precision);
    ++report.samples;
    try {
      (void)eval(f, PadicPoint::from_integers(coords, p, precision));
    } catch (const Error& e) {
      if (e.code() == Errc::inexact_division) {
        ++report.inexact_failures;
        if (!report.witness) report.witness = coords;
      } else if (e.code() == Errc::precision_exhausted) {
        ++report.precision_failures;
      } else {
        throw;
      }
    }
  }
  return report;
}

}  // namespace padic::dsl
