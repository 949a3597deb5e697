#pragma once

#include "calib/jet.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// A small arithmetic expression language over the variables u and v, used
// for user-defined immersion components.  Evaluation produces second-order
// jets (value, gradient, Hessian), exact to round-off.
//
// Grammar (standard precedence, lowest to highest):
//   additive:        a + b | a - b
//   multiplicative:  a * b | a / b
//   unary:           -a
//   power:           a ^ b        (right-associative, binds tighter than -a)
//   primary:         number | u | v | name(args) | ( a )
// Functions: sin cos tan exp log sqrt sinh cosh tanh atan2.

namespace calib {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t at) : std::runtime_error(msg), offset(at) {}
};

struct EvalDomainError : std::runtime_error {
    std::string subexpr;  // pretty-printed offending subexpression
    std::size_t offset;   // byte offset of that subexpression in the source
    EvalDomainError(const std::string& msg, std::string sub, std::size_t at)
        : std::runtime_error(msg), subexpr(std::move(sub)), offset(at) {}
};

enum class ExprKind {
    number,
    var_u,
    var_v,
    add,
    sub,
    mul,
    divide,
    pow,
    neg,
    call,
};

enum class Func { sin, cos, tan, exp, log, sqrt, sinh, cosh, tanh, atan2 };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double number = 0;
    Func func = Func::sin;
    std::vector<ExprPtr> args;
    std::size_t offset = 0;  // position in the source text
};

class Expr {
  public:
    Expr() = default;
    explicit Expr(ExprPtr root) : root_(std::move(root)) {}

    const ExprNode& node() const { return *root_; }
    ExprPtr ptr() const { return root_; }
    bool empty() const { return root_ == nullptr; }

    Jet2 eval_jet2(double u, double v) const;
    double eval(double u, double v) const;

  private:
    ExprPtr root_;
};

Expr parse(const std::string& text);
std::string print(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace calib
