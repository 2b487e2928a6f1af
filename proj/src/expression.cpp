#include "vmsdg/expression.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace vmsdg {

namespace {

using Node = Expression::Node;
using NodePtr = Expression::NodePtr;
using Kind = Node::Kind;

constexpr std::array<std::string_view, 6> kFunctions = {"exp", "sin", "cos", "sinh", "cosh", "log"};

bool is_function(std::string_view name) {
  for (auto f : kFunctions)
    if (f == name) return true;
  return false;
}

int coordinate_of(std::string_view name) {
  if (name == "x" || name == "x1") return 0;
  if (name == "x2") return 1;
  return -1;
}

NodePtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = v;
  return n;
}

NodePtr named(Kind kind, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  return n;
}

NodePtr negate(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->args = {std::move(a)};
  return n;
}

NodePtr binary(char op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->args = {std::move(a), std::move(b)};
  return n;
}

NodePtr call(std::string name, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->name = std::move(name);
  n->args = {std::move(a)};
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = expr();
    skip();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary('+', lhs, term());
      else if (accept('-')) lhs = binary('-', lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = binary('*', lhs, unary());
      else if (accept('/')) lhs = binary('/', lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return negate(unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr literal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_ || !std::isfinite(v))
      throw ParseError("malformed number", start);
    return number(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    if (is_function(name)) {
      if (!accept('(')) throw ParseError("expected '(' after " + name, pos_);
      NodePtr arg = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return call(name, arg);
    }
    if (coordinate_of(name) >= 0) return named(Kind::Variable, name);
    if (name == "pi" || name == "e") return named(Kind::Constant, name);
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, Point p) {
  switch (n.kind) {
    case Kind::Number: return n.number;
    case Kind::Variable: return coordinate_of(n.name) == 0 ? p.x : p.y;
    case Kind::Constant: return n.name == "pi" ? std::numbers::pi : std::numbers::e;
    case Kind::Negate: return -eval(*n.args[0], p);
    case Kind::Binary: {
      const double a = eval(*n.args[0], p), b = eval(*n.args[1], p);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
    case Kind::Call: {
      const double a = eval(*n.args[0], p);
      if (n.name == "exp") return std::exp(a);
      if (n.name == "sin") return std::sin(a);
      if (n.name == "cos") return std::cos(a);
      if (n.name == "sinh") return std::sinh(a);
      if (n.name == "cosh") return std::cosh(a);
      if (!(a > 0.0)) throw std::domain_error("log of a nonpositive argument");
      return std::log(a);
    }
  }
  return 0.0;
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case Kind::Variable:
    case Kind::Constant: out += n.name; return;
    case Kind::Negate:
      out += "(-";
      print(*n.args[0], out);
      out += ')';
      return;
    case Kind::Binary:
      out += '(';
      print(*n.args[0], out);
      out += n.op;
      print(*n.args[1], out);
      out += ')';
      return;
    case Kind::Call:
      out += n.name;
      out += '(';
      print(*n.args[0], out);
      out += ')';
      return;
  }
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.op != b.op || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == Kind::Number && !(a.number == b.number)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

bool uses(const Node& n, int coord) {
  if (n.kind == Kind::Variable) return coordinate_of(n.name) == coord;
  for (const auto& a : n.args)
    if (uses(*a, coord)) return true;
  return false;
}

bool is_number(const NodePtr& n, double v) { return n->kind == Kind::Number && n->number == v; }

// Constructors that fold the trivial identities produced by differentiation.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  return binary('+', a, b);
}
NodePtr sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return negate(b);
  return binary('-', a, b);
}
NodePtr mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  return binary('*', a, b);
}
NodePtr div(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return number(0.0);
  if (is_number(b, 1.0)) return a;
  return binary('/', a, b);
}
NodePtr neg(NodePtr a) {
  if (is_number(a, 0.0)) return a;
  return negate(a);
}

NodePtr diff(const NodePtr& n, int coord) {
  switch (n->kind) {
    case Kind::Number:
    case Kind::Constant: return number(0.0);
    case Kind::Variable: return number(coordinate_of(n->name) == coord ? 1.0 : 0.0);
    case Kind::Negate: return neg(diff(n->args[0], coord));
    case Kind::Binary: {
      const NodePtr& a = n->args[0];
      const NodePtr& b = n->args[1];
      const NodePtr da = diff(a, coord), db = diff(b, coord);
      switch (n->op) {
        case '+': return add(da, db);
        case '-': return sub(da, db);
        case '*': return add(mul(da, b), mul(a, db));
        case '/': return div(sub(mul(da, b), mul(a, db)), binary('^', b, number(2.0)));
        default: {
          if (!uses(*b, coord)) {
            // d(a^b) = b a^(b-1) a'
            return mul(mul(b, binary('^', a, sub(b, number(1.0)))), da);
          }
          // d(a^b) = a^b (b' log a + b a'/a)
          return mul(n, add(mul(db, call("log", a)), div(mul(b, da), a)));
        }
      }
    }
    case Kind::Call: {
      const NodePtr& a = n->args[0];
      const NodePtr da = diff(a, coord);
      if (is_number(da, 0.0)) return number(0.0);
      if (n->name == "exp") return mul(n, da);
      if (n->name == "sin") return mul(call("cos", a), da);
      if (n->name == "cos") return neg(mul(call("sin", a), da));
      if (n->name == "sinh") return mul(call("cosh", a), da);
      if (n->name == "cosh") return mul(call("sinh", a), da);
      return div(da, a);
    }
  }
  return number(0.0);
}

}  // namespace

Expression Expression::parse(std::string_view source) { return Expression(Parser(source).parse()); }

double Expression::evaluate(Point p) const {
  if (!root_) throw std::logic_error("Expression: empty");
  return eval(*root_, p);
}

std::string Expression::to_string() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

Expression Expression::derivative(int coordinate) const {
  if (coordinate != 0 && coordinate != 1) throw std::invalid_argument("Expression: coordinate must be 0 or 1");
  if (!root_) throw std::logic_error("Expression: empty");
  return Expression(diff(root_, coordinate));
}

bool Expression::uses_coordinate(int coordinate) const { return root_ && uses(*root_, coordinate); }

bool operator==(const Expression& a, const Expression& b) {
  if (!a.root_ || !b.root_) return !a.root_ && !b.root_;
  return equal(*a.root_, *b.root_);
}

}  // namespace vmsdg
