#include "fracsph/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>
#include <vector>

#include "fracsph/error.hpp"

namespace fracsph {

namespace detail {

enum class Func { Sin, Cos, Exp, Abs, Sqrt, Pow };

struct Number {
  double value;
};
struct Variable {};
struct Pi {};
struct Negate {
  std::shared_ptr<const ExprNode> operand;
};
struct Binary {
  char op;  // one of + - * / ^
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};
struct Call {
  Func func;
  std::vector<std::shared_ptr<const ExprNode>> args;
};

struct ExprNode {
  std::variant<Number, Variable, Pi, Negate, Binary, Call> node;
};

}  // namespace detail

namespace {

using detail::ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

template <typename T>
NodePtr make(T value) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(value)});
}

struct FuncInfo {
  std::string_view name;
  detail::Func func;
  std::size_t arity;
};

constexpr FuncInfo kFunctions[] = {
    {"sin", detail::Func::Sin, 1},   {"cos", detail::Func::Cos, 1},
    {"exp", detail::Func::Exp, 1},   {"abs", detail::Func::Abs, 1},
    {"sqrt", detail::Func::Sqrt, 1}, {"pow", detail::Func::Pow, 2},
};

std::string_view func_name(detail::Func f) {
  for (const auto& info : kFunctions)
    if (info.func == f) return info.name;
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size()) fail({"expression"});
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ != src_.size()) fail({"operator", "end of input"});
    return root;
  }

 private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      skip_space();
      if (peek() != '+' && peek() != '-') return lhs;
      const char op = src_[pos_++];
      lhs = make(detail::Binary{op, lhs, parse_term()});
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (true) {
      skip_space();
      // '**' is exponentiation, not two multiplications.
      if (peek() == '/' || (peek() == '*' && peek(1) != '*')) {
        const char op = src_[pos_++];
        lhs = make(detail::Binary{op, lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_space();
    if (peek() == '-') {
      ++pos_;
      return make(detail::Negate{parse_unary()});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_space();
    if (peek() == '^') {
      ++pos_;
    } else if (peek() == '*' && peek(1) == '*') {
      pos_ += 2;
    } else {
      return base;
    }
    return make(detail::Binary{'^', base, parse_unary()});
  }

  NodePtr parse_primary() {
    skip_space();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail({"number", "x", "pi", "function", "(", "-"});
  }

  NodePtr parse_number() {
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr == first) fail({"number"});
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(detail::Number{value});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view word = src_.substr(start, pos_ - start);
    if (word == "x") return make(detail::Variable{});
    if (word == "pi") return make(detail::Pi{});
    for (const auto& info : kFunctions) {
      if (word != info.name) continue;
      expect('(');
      std::vector<NodePtr> args;
      args.push_back(parse_expr());
      for (std::size_t k = 1; k < info.arity; ++k) {
        expect(',');
        args.push_back(parse_expr());
      }
      expect(')');
      return make(detail::Call{info.func, std::move(args)});
    }
    pos_ = start;
    fail({"number", "x", "pi", "function", "(", "-"}, "identifier '" + std::string(word) + "'");
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail({std::string(1, c)});
    ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, std::string found = {}) const {
    if (found.empty())
      found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), found);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked_pow(double base, double exponent) {
  if (base < 0.0 && exponent != std::floor(exponent))
    throw EvaluationError("negative base raised to a non-integer power");
  if (base == 0.0 && exponent < 0.0) throw EvaluationError("division by zero (0 to a negative power)");
  return std::pow(base, exponent);
}

double eval(const ExprNode& n, double x) {
  struct Visitor {
    double x;
    double operator()(const detail::Number& v) const { return v.value; }
    double operator()(const detail::Variable&) const { return x; }
    double operator()(const detail::Pi&) const { return std::numbers::pi; }
    double operator()(const detail::Negate& v) const { return -eval(*v.operand, x); }
    double operator()(const detail::Binary& v) const {
      const double l = eval(*v.lhs, x);
      const double r = eval(*v.rhs, x);
      switch (v.op) {
        case '+':
          return l + r;
        case '-':
          return l - r;
        case '*':
          return l * r;
        case '/':
          if (r == 0.0) throw EvaluationError("division by zero");
          return l / r;
        default:
          return checked_pow(l, r);
      }
    }
    double operator()(const detail::Call& v) const {
      const double u = eval(*v.args[0], x);
      switch (v.func) {
        case detail::Func::Sin:
          return std::sin(u);
        case detail::Func::Cos:
          return std::cos(u);
        case detail::Func::Exp:
          return std::exp(u);
        case detail::Func::Abs:
          return std::abs(u);
        case detail::Func::Sqrt:
          if (u < 0.0) throw EvaluationError("square root of a negative number");
          return std::sqrt(u);
        case detail::Func::Pow:
          return checked_pow(u, eval(*v.args[1], x));
      }
      return 0.0;
    }
  };
  return std::visit(Visitor{x}, n.node);
}

void print(const ExprNode& n, std::string& out) {
  struct Visitor {
    std::string& out;
    void operator()(const detail::Number& v) const {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v.value);
      out += buf;
    }
    void operator()(const detail::Variable&) const { out += 'x'; }
    void operator()(const detail::Pi&) const { out += "pi"; }
    void operator()(const detail::Negate& v) const {
      out += "(-";
      print(*v.operand, out);
      out += ')';
    }
    void operator()(const detail::Binary& v) const {
      out += '(';
      print(*v.lhs, out);
      out += ' ';
      out += v.op;
      out += ' ';
      print(*v.rhs, out);
      out += ')';
    }
    void operator()(const detail::Call& v) const {
      out += func_name(v.func);
      out += '(';
      for (std::size_t k = 0; k < v.args.size(); ++k) {
        if (k) out += ", ";
        print(*v.args[k], out);
      }
      out += ')';
    }
  };
  std::visit(Visitor{out}, n.node);
}

bool mentions_x(const ExprNode& n) {
  if (std::holds_alternative<detail::Variable>(n.node)) return true;
  if (const auto* neg = std::get_if<detail::Negate>(&n.node)) return mentions_x(*neg->operand);
  if (const auto* bin = std::get_if<detail::Binary>(&n.node))
    return mentions_x(*bin->lhs) || mentions_x(*bin->rhs);
  if (const auto* call = std::get_if<detail::Call>(&n.node)) {
    for (const auto& arg : call->args)
      if (mentions_x(*arg)) return true;
  }
  return false;
}

}  // namespace

double Expr::evaluate(double x) const { return eval(*root_, x); }

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool Expr::is_constant() const noexcept { return !mentions_x(*root_); }

Expr parse_expression(std::string_view source) { return Expr(Parser(source).parse()); }

}  // namespace fracsph
