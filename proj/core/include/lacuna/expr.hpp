#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace lacuna {

// Closed-form scalar expressions in x, y (torus coordinates in [0,1)):
//   numbers, x, y, + - * / ^, unary minus, parentheses,
//   min(a, b, ...), max(a, b, ...), clamp(v, lo, hi), abs(a),
//   dist(px, py)  periodic Euclidean distance from (x, y) to (px, py).
class Expression {
 public:
  struct Node;

  Expression() = default;
  // Throws ValidationError with the offending column on syntax errors.
  static Expression parse(std::string_view text);

  double operator()(double x, double y) const;
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace lacuna
