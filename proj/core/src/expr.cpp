#include "lacuna/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "lacuna/errors.hpp"

namespace lacuna {

struct Expression::Node {
  enum class Kind { Number, X, Y, Add, Sub, Mul, Div, Pow, Neg, Min, Max, Clamp, Abs, Dist };
  Kind kind;
  double value = 0;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, double y) const {
    auto a = [&](std::size_t i) { return args[i]->eval(x, y); };
    switch (kind) {
      case Kind::Number: return value;
      case Kind::X: return x;
      case Kind::Y: return y;
      case Kind::Add: return a(0) + a(1);
      case Kind::Sub: return a(0) - a(1);
      case Kind::Mul: return a(0) * a(1);
      case Kind::Div: return a(0) / a(1);
      case Kind::Pow: return std::pow(a(0), a(1));
      case Kind::Neg: return -a(0);
      case Kind::Abs: return std::abs(a(0));
      case Kind::Min: {
        double m = a(0);
        for (std::size_t i = 1; i < args.size(); ++i) m = std::min(m, a(i));
        return m;
      }
      case Kind::Max: {
        double m = a(0);
        for (std::size_t i = 1; i < args.size(); ++i) m = std::max(m, a(i));
        return m;
      }
      case Kind::Clamp: return std::clamp(a(0), a(1), a(2));
      case Kind::Dist: {
        auto wrap = [](double d) { return d - std::round(d); };
        double d1 = wrap(x - a(0)), d2 = wrap(y - a(1));
        return std::sqrt(d1 * d1 + d2 * d2);
      }
    }
    return 0;
  }
};

namespace {

using Node = Expression::Node;
using Ptr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Ptr parse() {
    Ptr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("expression '" + std::string(s_) + "' column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static Ptr make(Kind k, std::vector<Ptr> args = {}, double v = 0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    n->value = v;
    return n;
  }

  Ptr expr() {
    Ptr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(Kind::Add, {lhs, term()});
      else if (eat('-'))
        lhs = make(Kind::Sub, {lhs, term()});
      else
        return lhs;
    }
  }
  Ptr term() {
    Ptr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Kind::Mul, {lhs, unary()});
      else if (eat('/'))
        lhs = make(Kind::Div, {lhs, unary()});
      else
        return lhs;
    }
  }
  Ptr unary() {
    if (eat('-')) return make(Kind::Neg, {unary()});
    Ptr base = primary();
    if (eat('^')) return make(Kind::Pow, {base, unary()});
    return base;
  }
  Ptr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Ptr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (r.ec != std::errc{}) fail("bad number");
      pos_ = static_cast<std::size_t>(r.ptr - s_.data());
      return make(Kind::Number, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "x") return make(Kind::X);
      if (name == "y") return make(Kind::Y);
      struct Fn {
        const char* name;
        Kind kind;
        std::size_t min_args, max_args;
      };
      static const Fn fns[] = {{"min", Kind::Min, 2, 64}, {"max", Kind::Max, 2, 64}, {"clamp", Kind::Clamp, 3, 3},
                               {"abs", Kind::Abs, 1, 1},  {"dist", Kind::Dist, 2, 2}};
      for (const auto& f : fns) {
        if (name != f.name) continue;
        if (!eat('(')) fail("expected '(' after " + name);
        std::vector<Ptr> args{expr()};
        while (eat(',')) args.push_back(expr());
        if (!eat(')')) fail("expected ')' closing " + name);
        if (args.size() < f.min_args || args.size() > f.max_args) fail("wrong argument count for " + name);
        return make(f.kind, std::move(args));
      }
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.source_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(double x, double y) const {
  if (!root_) throw ValidationError("empty expression");
  return root_->eval(x, y);
}

}  // namespace lacuna
