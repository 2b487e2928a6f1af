#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vmsdg/geometry.hpp"

namespace vmsdg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Arithmetic expression over the coordinates x (= x1) and x2, the constants
/// pi and e, the operators + - * / ^ and the functions exp, sin, cos, sinh,
/// cosh and log.
class Expression {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expression() = default;
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  static Expression parse(std::string_view source);

  /// Throws std::domain_error for log of a nonpositive argument.
  double evaluate(Point p) const;
  double operator()(Point p) const { return evaluate(p); }

  /// Fully parenthesised form that parses back to the same tree.
  std::string to_string() const;

  /// Symbolic partial derivative with respect to coordinate 0 (x, x1) or 1 (x2).
  Expression derivative(int coordinate) const;

  bool uses_coordinate(int coordinate) const;
  bool empty() const { return !root_; }
  const NodePtr& root() const { return root_; }

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  NodePtr root_;
};

struct Expression::Node {
  enum class Kind { Number, Variable, Constant, Negate, Binary, Call };
  Kind kind = Kind::Number;
  double number = 0.0;
  /// Variable, constant or function name.
  std::string name;
  char op = 0;
  std::vector<NodePtr> args;
};

inline Expression parse_expression(std::string_view source) { return Expression::parse(source); }

}  // namespace vmsdg
