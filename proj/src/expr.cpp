#include "ratl2/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

namespace ratl2 {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual cplx eval(double t) const = 0;
};
using NodePtr = std::shared_ptr<Node>;

struct Const : Node {
  cplx v;
  explicit Const(cplx v) : v(v) {}
  cplx eval(double) const override { return v; }
};
struct Var : Node {
  cplx eval(double t) const override { return {t, 0.0}; }
};
struct Unary : Node {
  char op;
  NodePtr c;
  Unary(char op, NodePtr c) : op(op), c(std::move(c)) {}
  cplx eval(double t) const override { return op == '-' ? -c->eval(t) : c->eval(t); }
};
struct Binary : Node {
  char op;
  NodePtr l, r;
  Binary(char op, NodePtr l, NodePtr r) : op(op), l(std::move(l)), r(std::move(r)) {}
  cplx eval(double t) const override {
    cplx a = l->eval(t), b = r->eval(t);
    switch (op) {
      case '+': return a + b;
      case '-': return a - b;
      case '*': return a * b;
      case '/': return a / b;
      default: return std::pow(a, b);
    }
  }
};
struct Call : Node {
  std::string name;
  NodePtr c;
  Call(std::string name, NodePtr c) : name(std::move(name)), c(std::move(c)) {}
  cplx eval(double t) const override {
    cplx a = c->eval(t);
    if (name == "exp") return std::exp(a);
    if (name == "log") return std::log(a);
    if (name == "sin") return std::sin(a);
    if (name == "cos") return std::cos(a);
    if (name == "sqrt") return std::sqrt(a);
    if (name == "abs") return {std::abs(a), 0.0};
    return std::conj(a);  // "conj", validated at parse time
  }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("expression parse error at position " + std::to_string(pos_) +
                                ": " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr e = product();
    for (;;) {
      if (eat('+')) e = std::make_shared<Binary>('+', e, product());
      else if (eat('-')) e = std::make_shared<Binary>('-', e, product());
      else return e;
    }
  }
  NodePtr product() {
    NodePtr e = power();
    for (;;) {
      if (eat('*')) e = std::make_shared<Binary>('*', e, power());
      else if (eat('/')) e = std::make_shared<Binary>('/', e, power());
      else return e;
    }
  }
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return std::make_shared<Binary>('^', base, power());  // right assoc
    return base;
  }
  NodePtr atom() {
    skip_ws();
    if (eat('+')) return atom();
    if (eat('-')) return std::make_shared<Unary>('-', atom());
    if (eat('(')) {
      NodePtr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail(std::string("unexpected character '") + c + "'");
  }
  NodePtr number() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            s_[pos_] == 'e' || s_[pos_] == 'E' ||
            ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > start &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
      ++pos_;
    try {
      return std::make_shared<Const>(cplx{std::stod(s_.substr(start, pos_ - start)), 0.0});
    } catch (const std::exception&) {
      fail("bad number literal");
    }
  }
  NodePtr name() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (id == "i") return std::make_shared<Const>(iu);
    if (id == "t") return std::make_shared<Var>();
    if (id == "pi") return std::make_shared<Const>(cplx{pi, 0.0});
    static const char* fns[] = {"exp", "log", "sin", "cos", "sqrt", "abs", "conj"};
    for (const char* f : fns) {
      if (id == f) {
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = sum();
        if (!eat(')')) fail("expected ')'");
        return std::make_shared<Call>(id, arg);
      }
    }
    fail("unknown identifier '" + id + "'");
  }
};

}  // namespace

std::function<cplx(double)> compile_expr(const std::string& text) {
  NodePtr root = Parser(text).parse();
  return [root](double t) { return root->eval(t); };
}

}  // namespace ratl2
