#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hardyforge::exprlang {

using Bindings = std::map<std::string, double>;

struct Node;

// Immutable arithmetic expression in one variable r with bound parameters
// (pi, N, R, b, lambda, alpha), the usual operators with standard
// precedence, and the function set sinh cosh tanh coth exp ln abs sqrt
// sin cos sign besselj(order, .). Exponents must not depend on r.
class Expr {
  public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    const Node* node() const { return root_.get(); }
    std::shared_ptr<const Node> share() const { return root_; }
    bool valid() const { return root_ != nullptr; }

  private:
    std::shared_ptr<const Node> root_;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// Domain failure during evaluation; carries the offending subexpression.
class EvalError : public std::runtime_error {
  public:
    EvalError(const std::string& msg, const std::string& subexpr)
        : std::runtime_error(msg + " in '" + subexpr + "'"), subexpr(subexpr) {}
    std::string subexpr;
};

class DerivError : public std::runtime_error {
  public:
    explicit DerivError(const std::string& msg) : std::runtime_error(msg) {}
};

Expr parse(std::string_view src);
double eval(const Expr& e, double r, const Bindings& bindings = {});
Expr deriv(const Expr& e);
std::string to_string(const Expr& e);

}  // namespace hardyforge::exprlang
