#include "hardyforge/exprlang.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "hardyforge/specfun.hpp"

namespace hardyforge::exprlang {

struct Node {
    enum class Kind { number, variable, pi, param, add, sub, mul, div, pow, neg, call };
    Kind kind;
    double number = 0.0;   // literal value; besselj order
    std::string name;      // parameter or function name
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

const std::array<std::string, 5> kParams = {"N", "R", "b", "lambda", "alpha"};
const std::array<std::string, 12> kFunctions = {"sinh", "cosh", "tanh", "coth", "exp", "ln",
                                                "abs",  "sqrt", "sin",  "cos",  "sign", "besselj"};

bool is_param(const std::string& s) {
    for (const auto& p : kParams)
        if (p == s) return true;
    return false;
}

bool is_function(const std::string& s) {
    for (const auto& f : kFunctions)
        if (f == s) return true;
    return false;
}

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->number = v;
    return n;
}

NodePtr make_call(const std::string& name, NodePtr arg, double order = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->name = name;
    n->number = order;
    n->a = std::move(arg);
    return n;
}

bool contains_variable(const Node* n) {
    if (!n) return false;
    if (n->kind == Node::Kind::variable) return true;
    return contains_variable(n->a.get()) || contains_variable(n->b.get());
}

// ---------------------------------------------------------------------------
// Tokenizer / recursive descent parser

struct Token {
    enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };
    Kind kind;
    double value = 0.0;
    std::string text;
    std::size_t offset = 0;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : src_(src) { tokenize(); }

    NodePtr run() {
        NodePtr e = expression();
        expect(Token::Kind::end, "end of input");
        return e;
    }

  private:
    std::string_view src_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
        throw ParseError(msg, offset);
    }

    void tokenize() {
        std::size_t i = 0;
        while (i < src_.size()) {
            const char c = src_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            Token t;
            t.offset = i;
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                // strtod needs a terminated buffer; copy the tail
                std::string tail(src_.substr(i));
                char* end = nullptr;
                t.value = std::strtod(tail.c_str(), &end);
                if (end == tail.c_str()) fail("malformed number", i);
                t.kind = Token::Kind::number;
                t.text.assign(tail.c_str(), static_cast<std::size_t>(end - tail.c_str()));
                i += t.text.size();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                    ++j;
                t.kind = Token::Kind::ident;
                t.text.assign(src_.substr(i, j - i));
                i = j;
            } else {
                switch (c) {
                    case '+': t.kind = Token::Kind::plus; break;
                    case '-': t.kind = Token::Kind::minus; break;
                    case '*': t.kind = Token::Kind::star; break;
                    case '/': t.kind = Token::Kind::slash; break;
                    case '^': t.kind = Token::Kind::caret; break;
                    case '(': t.kind = Token::Kind::lparen; break;
                    case ')': t.kind = Token::Kind::rparen; break;
                    case ',': t.kind = Token::Kind::comma; break;
                    default: fail(std::string("unexpected character '") + c + "'", i);
                }
                ++i;
            }
            tokens_.push_back(std::move(t));
        }
        Token end;
        end.kind = Token::Kind::end;
        end.offset = src_.size();
        tokens_.push_back(end);
    }

    const Token& peek() const { return tokens_[pos_]; }
    bool match(Token::Kind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(Token::Kind k, const std::string& what) {
        if (!match(k)) fail("expected " + what, peek().offset);
    }

    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            if (match(Token::Kind::plus)) {
                lhs = make(Node::Kind::add, lhs, term());
            } else if (match(Token::Kind::minus)) {
                lhs = make(Node::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (match(Token::Kind::star)) {
                lhs = make(Node::Kind::mul, lhs, unary());
            } else if (match(Token::Kind::slash)) {
                lhs = make(Node::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (match(Token::Kind::minus)) return make(Node::Kind::neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (peek().kind == Token::Kind::caret) {
            const std::size_t caret_offset = peek().offset;
            ++pos_;
            NodePtr exponent = unary();  // right associative; leading sign allowed
            if (contains_variable(exponent.get()))
                fail("exponent must not depend on r", caret_offset);
            return make(Node::Kind::pow, base, exponent);
        }
        return base;
    }

    NodePtr primary() {
        const Token t = peek();
        switch (t.kind) {
            case Token::Kind::number:
                ++pos_;
                return make_number(t.value);
            case Token::Kind::lparen: {
                ++pos_;
                NodePtr e = expression();
                expect(Token::Kind::rparen, "')'");
                return e;
            }
            case Token::Kind::ident: {
                ++pos_;
                if (t.text == "r") return make(Node::Kind::variable);
                if (t.text == "pi") return make(Node::Kind::pi);
                if (is_param(t.text)) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::param;
                    n->name = t.text;
                    return n;
                }
                if (is_function(t.text)) {
                    expect(Token::Kind::lparen, "'(' after function name");
                    if (t.text == "besselj") {
                        const Token order = peek();
                        if (order.kind != Token::Kind::number)
                            fail("besselj requires a numeric order literal", order.offset);
                        ++pos_;
                        expect(Token::Kind::comma, "',' between besselj arguments");
                        NodePtr arg = expression();
                        expect(Token::Kind::rparen, "')'");
                        return make_call("besselj", arg, order.value);
                    }
                    NodePtr arg = expression();
                    expect(Token::Kind::rparen, "')'");
                    return make_call(t.text, arg);
                }
                fail("unknown identifier '" + t.text + "'", t.offset);
            }
            default:
                fail("expected a value", t.offset);
        }
    }
};

// ---------------------------------------------------------------------------
// Pretty printer (minimal parentheses, round-trippable)

int precedence(const Node* n) {
    switch (n->kind) {
        case Node::Kind::add:
        case Node::Kind::sub: return 1;
        case Node::Kind::mul:
        case Node::Kind::div: return 2;
        case Node::Kind::neg: return 3;
        case Node::Kind::pow: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print(const Node* n, std::string& out);

void print_child(const Node* child, int min_prec, std::string& out) {
    const bool parens = precedence(child) < min_prec;
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
}

void print(const Node* n, std::string& out) {
    switch (n->kind) {
        case Node::Kind::number: out += format_number(n->number); break;
        case Node::Kind::variable: out += 'r'; break;
        case Node::Kind::pi: out += "pi"; break;
        case Node::Kind::param: out += n->name; break;
        case Node::Kind::add:
            print_child(n->a.get(), 1, out);
            out += " + ";
            print_child(n->b.get(), 2, out);
            break;
        case Node::Kind::sub:
            print_child(n->a.get(), 1, out);
            out += " - ";
            print_child(n->b.get(), 2, out);
            break;
        case Node::Kind::mul:
            print_child(n->a.get(), 2, out);
            out += " * ";
            print_child(n->b.get(), 3, out);
            break;
        case Node::Kind::div:
            print_child(n->a.get(), 2, out);
            out += " / ";
            print_child(n->b.get(), 3, out);
            break;
        case Node::Kind::neg:
            out += '-';
            print_child(n->a.get(), 3, out);
            break;
        case Node::Kind::pow:
            print_child(n->a.get(), 5, out);
            out += '^';
            print_child(n->b.get(), 3, out);
            break;
        case Node::Kind::call:
            out += n->name;
            out += '(';
            if (n->name == "besselj") {
                out += format_number(n->number);
                out += ", ";
            }
            print(n->a.get(), out);
            out += ')';
            break;
    }
}

std::string node_str(const Node* n) {
    std::string s;
    print(n, s);
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation

double eval_node(const Node* n, double r, const Bindings& bindings) {
    switch (n->kind) {
        case Node::Kind::number: return n->number;
        case Node::Kind::variable: return r;
        case Node::Kind::pi: return 3.14159265358979323846264338328;
        case Node::Kind::param: {
            auto it = bindings.find(n->name);
            if (it == bindings.end())
                throw EvalError("unbound parameter '" + n->name + "'", node_str(n));
            return it->second;
        }
        case Node::Kind::add:
            return eval_node(n->a.get(), r, bindings) + eval_node(n->b.get(), r, bindings);
        case Node::Kind::sub:
            return eval_node(n->a.get(), r, bindings) - eval_node(n->b.get(), r, bindings);
        case Node::Kind::mul:
            return eval_node(n->a.get(), r, bindings) * eval_node(n->b.get(), r, bindings);
        case Node::Kind::div: {
            const double den = eval_node(n->b.get(), r, bindings);
            if (den == 0.0) throw EvalError("division by zero", node_str(n));
            return eval_node(n->a.get(), r, bindings) / den;
        }
        case Node::Kind::pow: {
            const double base = eval_node(n->a.get(), r, bindings);
            const double ex = eval_node(n->b.get(), r, bindings);
            if (base < 0.0 && ex != std::floor(ex))
                throw EvalError("negative base with non-integer exponent", node_str(n));
            if (base == 0.0 && ex < 0.0)
                throw EvalError("zero base with negative exponent", node_str(n));
            return std::pow(base, ex);
        }
        case Node::Kind::neg: return -eval_node(n->a.get(), r, bindings);
        case Node::Kind::call: {
            const double u = eval_node(n->a.get(), r, bindings);
            const std::string& f = n->name;
            if (f == "sinh") return std::sinh(u);
            if (f == "cosh") return std::cosh(u);
            if (f == "tanh") return std::tanh(u);
            if (f == "coth") {
                if (u == 0.0) throw EvalError("coth of zero", node_str(n));
                return 1.0 / std::tanh(u);
            }
            if (f == "exp") return std::exp(u);
            if (f == "ln") {
                if (u <= 0.0) throw EvalError("logarithm of a non-positive value", node_str(n));
                return std::log(u);
            }
            if (f == "abs") return std::fabs(u);
            if (f == "sqrt") {
                if (u < 0.0) throw EvalError("square root of a negative value", node_str(n));
                return std::sqrt(u);
            }
            if (f == "sin") return std::sin(u);
            if (f == "cos") return std::cos(u);
            if (f == "sign") {
                if (u == 0.0) throw EvalError("sign at the kink of abs", node_str(n));
                return u > 0.0 ? 1.0 : -1.0;
            }
            if (f == "besselj") {
                if (u < 0.0) throw EvalError("besselj of a negative argument", node_str(n));
                return specfun::bessel_j(n->number, u);
            }
            throw EvalError("unknown function '" + f + "'", node_str(n));
        }
    }
    throw EvalError("corrupt expression", "?");
}

// ---------------------------------------------------------------------------
// Symbolic derivative with respect to r

NodePtr times(NodePtr a, NodePtr b) { return make(Node::Kind::mul, std::move(a), std::move(b)); }

NodePtr d(const NodePtr& n) {
    switch (n->kind) {
        case Node::Kind::number:
        case Node::Kind::pi:
        case Node::Kind::param: return make_number(0.0);
        case Node::Kind::variable: return make_number(1.0);
        case Node::Kind::add: return make(Node::Kind::add, d(n->a), d(n->b));
        case Node::Kind::sub: return make(Node::Kind::sub, d(n->a), d(n->b));
        case Node::Kind::mul:
            return make(Node::Kind::add, times(d(n->a), n->b), times(n->a, d(n->b)));
        case Node::Kind::div:
            return make(Node::Kind::div,
                        make(Node::Kind::sub, times(d(n->a), n->b), times(n->a, d(n->b))),
                        make(Node::Kind::pow, n->b, make_number(2.0)));
        case Node::Kind::pow: {
            // exponent is r-free by construction: (u^c)' = c u^{c-1} u'
            NodePtr cm1 = make(Node::Kind::sub, n->b, make_number(1.0));
            return times(times(n->b, make(Node::Kind::pow, n->a, cm1)), d(n->a));
        }
        case Node::Kind::neg: return make(Node::Kind::neg, d(n->a));
        case Node::Kind::call: {
            const std::string& f = n->name;
            NodePtr du = d(n->a);
            if (f == "sinh") return times(make_call("cosh", n->a), du);
            if (f == "cosh") return times(make_call("sinh", n->a), du);
            if (f == "tanh")
                return times(make(Node::Kind::pow, make_call("cosh", n->a), make_number(-2.0)), du);
            if (f == "coth")
                return make(Node::Kind::neg,
                            times(make(Node::Kind::pow, make_call("sinh", n->a), make_number(-2.0)),
                                  du));
            if (f == "exp") return times(make_call("exp", n->a), du);
            if (f == "ln") return make(Node::Kind::div, du, n->a);
            if (f == "abs") return times(make_call("sign", n->a), du);
            if (f == "sqrt")
                return make(Node::Kind::div, du, times(make_number(2.0), make_call("sqrt", n->a)));
            if (f == "sin") return times(make_call("cos", n->a), du);
            if (f == "cos") return make(Node::Kind::neg, times(make_call("sin", n->a), du));
            if (f == "sign") return make_number(0.0);
            if (f == "besselj")
                throw DerivError("derivative of besselj is not supported in expressions");
            throw DerivError("unknown function '" + f + "'");
        }
    }
    throw DerivError("corrupt expression");
}

}  // namespace

Expr parse(std::string_view src) {
    if (src.empty()) throw ParseError("empty expression", 0);
    Parser p(src);
    return Expr(p.run());
}

double eval(const Expr& e, double r, const Bindings& bindings) {
    if (!e.valid()) throw EvalError("empty expression", "");
    return eval_node(e.node(), r, bindings);
}

Expr deriv(const Expr& e) {
    if (!e.valid()) throw DerivError("empty expression");
    return Expr(d(e.share()));
}

std::string to_string(const Expr& e) {
    if (!e.valid()) return "";
    return node_str(e.node());
}

}  // namespace hardyforge::exprlang
