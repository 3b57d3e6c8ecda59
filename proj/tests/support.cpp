#include "support.hpp"

#include "padic/function.hpp"

#include <sstream>

namespace testsupport {

Integer ipow(Integer base, unsigned e) {
  Integer r = 1;
  while (e--) r *= base;
  return r;
}

Natural pmod(const Integer& v, const Natural& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

std::vector<std::uint32_t> digits_of(const Integer& v, std::uint32_t p, int n) {
  Natural r = pmod(v, ipow(p, n));
  std::vector<std::uint32_t> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(static_cast<std::uint32_t>(r % p));
    r /= p;
  }
  return out;
}

int int_ord(const Integer& v, std::uint32_t p, int cap) {
  if (v == 0) return cap;
  Integer r = v;
  int k = 0;
  while (k < cap && r % p == 0) {
    r /= p;
    ++k;
  }
  return k;
}

struct RandomExpr::Node {
  enum Kind { konst, var, add, sub, mul, pow, digitsum, fermat } kind;
  Integer c;
  std::size_t index = 0;
  unsigned exponent = 0;
  std::vector<Integer> ipoly;
  Ptr a, b;
};

namespace {

using Node = RandomExpr::Node;
using Ptr = RandomExpr::Ptr;

Ptr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Ptr gen(std::mt19937_64& rng, std::uint32_t p, std::size_t arity, int depth, bool divp) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int choice = depth <= 0 ? pick(0, 1) : pick(0, divp ? 7 : 6);
  Node n{};
  switch (choice) {
    case 0:
      n.kind = Node::konst;
      n.c = pick(-9, 9);
      break;
    case 1:
      n.kind = Node::var;
      n.index = static_cast<std::size_t>(pick(0, static_cast<int>(arity) - 1));
      break;
    case 2:
    case 3:
    case 4:
      n.kind = choice == 2 ? Node::add : choice == 3 ? Node::sub : Node::mul;
      n.a = gen(rng, p, arity, depth - 1, divp);
      n.b = gen(rng, p, arity, depth - 1, divp);
      break;
    case 5:
      n.kind = Node::pow;
      n.exponent = static_cast<unsigned>(pick(2, 3));
      n.a = gen(rng, p, arity, depth - 2, divp);
      break;
    case 6:
      n.kind = Node::digitsum;
      n.index = static_cast<std::size_t>(pick(0, static_cast<int>(arity) - 1));
      n.exponent = static_cast<unsigned>(pick(1, 3));
      for (int d = pick(0, 2); d >= 0; --d) n.ipoly.push_back(pick(-3, 3));
      break;
    default:
      n.kind = Node::fermat;
      n.index = static_cast<std::size_t>(pick(0, static_cast<int>(arity) - 1));
      break;
  }
  return make(std::move(n));
}

std::string ipoly_text(const std::vector<Integer>& c) {
  std::ostringstream s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) s << " + ";
    s << "(" << c[k] << ")";
    if (k >= 1) s << "*i";
    if (k >= 2) s << "^" << k;
  }
  return s.str();
}

std::string render(const Node& n, std::uint32_t p) {
  const auto var = [](std::size_t i) { return "x" + std::to_string(i + 1); };
  switch (n.kind) {
    case Node::konst: return n.c < 0 ? "(" + n.c.str() + ")" : n.c.str();
    case Node::var: return var(n.index);
    case Node::add: return "(" + render(*n.a, p) + " + " + render(*n.b, p) + ")";
    case Node::sub: return "(" + render(*n.a, p) + " - " + render(*n.b, p) + ")";
    case Node::mul: return render(*n.a, p) + "*" + render(*n.b, p);
    case Node::pow: return "(" + render(*n.a, p) + ")^" + std::to_string(n.exponent);
    case Node::digitsum:
      return "digitsum(" + var(n.index) + ", " + ipoly_text(n.ipoly) + ", " +
             std::to_string(n.exponent) + ")";
    case Node::fermat:
      return "divp(" + var(n.index) + " - " + var(n.index) + "^" + std::to_string(p) + ", 1)";
  }
  return {};
}

Integer value_of(const Node& n, std::uint32_t p, const std::vector<Natural>& x, int precision) {
  switch (n.kind) {
    case Node::konst: return n.c;
    case Node::var: return x[n.index];
    case Node::add: return value_of(*n.a, p, x, precision) + value_of(*n.b, p, x, precision);
    case Node::sub: return value_of(*n.a, p, x, precision) - value_of(*n.b, p, x, precision);
    case Node::mul: return value_of(*n.a, p, x, precision) * value_of(*n.b, p, x, precision);
    case Node::pow: return ipow(value_of(*n.a, p, x, precision), n.exponent);
    case Node::digitsum: {
      const auto d = digits_of(x[n.index], p, precision);
      Integer sum = 0;
      for (int i = 0; i < precision; ++i) {
        Integer a = 0;
        for (std::size_t k = 0; k < n.ipoly.size(); ++k) a += n.ipoly[k] * ipow(i, static_cast<unsigned>(k));
        sum += ipow(p, static_cast<unsigned>(i)) * a * ipow(d[static_cast<std::size_t>(i)], n.exponent);
      }
      return sum;
    }
    case Node::fermat: {
      const Integer v = x[n.index];
      return (v - ipow(v, p)) / p;
    }
  }
  return 0;
}

}  // namespace

RandomExpr RandomExpr::generate(std::mt19937_64& rng, std::uint32_t p, std::size_t arity,
                                int depth, bool allow_divp) {
  RandomExpr e;
  do {
    e.root_ = gen(rng, p, arity, depth, allow_divp);
  } while (e.root_->kind == Node::konst || e.root_->kind == Node::var);
  e.p_ = p;
  e.arity_ = arity;
  return e;
}

std::string RandomExpr::text() const { return render(*root_, p_); }

Integer RandomExpr::value(const std::vector<Natural>& point, int precision) const {
  return value_of(*root_, p_, point, precision);
}

padic::FunctionPtr oracle_function(const RandomExpr& e) {
  return std::make_shared<padic::CallbackFunction>(
      Prime(e.prime()), e.arity(),
      [e](std::span<const Natural> x, int precision) {
        const std::vector<Natural> point(x.begin(), x.end());
        return padic::PadicInt::from_signed(e.value(point, precision), Prime(e.prime()), precision);
      });
}

}  // namespace testsupport
