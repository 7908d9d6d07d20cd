#pragma once

// Expression trees for user-defined curve coordinates.
//
// Grammar (usual precedence, ^ right-associative and binding tighter than
// unary minus, so -t^2 is -(t^2) and 2^-t is 2^(-t)):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | tan | sqrt | exp | ln | abs

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>

#include "error.hpp"

namespace caustics
{

enum class ExprOp
{
    number,
    variable,
    pi,
    e,
    negate,
    add,
    sub,
    mul,
    div,
    pow,
    call,
};

enum class ExprFunc
{
    sin,
    cos,
    tan,
    sqrt,
    exp,
    ln,
    abs,
};

inline constexpr std::array<std::pair<std::string_view, ExprFunc>, 7> kExprFunctions{{
    {"sin", ExprFunc::sin},
    {"cos", ExprFunc::cos},
    {"tan", ExprFunc::tan},
    {"sqrt", ExprFunc::sqrt},
    {"exp", ExprFunc::exp},
    {"ln", ExprFunc::ln},
    {"abs", ExprFunc::abs},
}};

inline std::string_view function_name(ExprFunc f)
{
    for (auto const& [name, func] : kExprFunctions)
        if (func == f)
            return name;
    return "?";
}

struct ExprNode;
using ExprPtr = std::shared_ptr<ExprNode const>;

struct ExprNode
{
    ExprOp op = ExprOp::number;
    double value = 0.0;
    ExprFunc func = ExprFunc::sin;
    ExprPtr lhs;
    ExprPtr rhs;
};

namespace detail
{

inline ExprPtr leaf(ExprOp op, double value = 0.0)
{
    return std::make_shared<ExprNode const>(ExprNode{op, value, ExprFunc::sin, nullptr, nullptr});
}

inline ExprPtr unary_node(ExprOp op, ExprPtr a)
{
    return std::make_shared<ExprNode const>(ExprNode{op, 0.0, ExprFunc::sin, std::move(a), nullptr});
}

inline ExprPtr binary_node(ExprOp op, ExprPtr a, ExprPtr b)
{
    return std::make_shared<ExprNode const>(ExprNode{op, 0.0, ExprFunc::sin, std::move(a), std::move(b)});
}

inline ExprPtr call_node(ExprFunc f, ExprPtr a)
{
    return std::make_shared<ExprNode const>(ExprNode{ExprOp::call, 0.0, f, std::move(a), nullptr});
}

inline bool is_number(ExprPtr const& n, double v)
{
    return n->op == ExprOp::number && n->value == v;
}

inline bool depends_on_t(ExprNode const& n)
{
    switch (n.op)
    {
    case ExprOp::variable:
        return true;
    case ExprOp::number:
    case ExprOp::pi:
    case ExprOp::e:
        return false;
    default:
        return (n.lhs && depends_on_t(*n.lhs)) || (n.rhs && depends_on_t(*n.rhs));
    }
}

// Builders with light algebraic folding, used by differentiation.
inline ExprPtr num(double v) { return leaf(ExprOp::number, v); }

inline ExprPtr neg(ExprPtr a)
{
    if (a->op == ExprOp::number)
        return num(-a->value);
    if (a->op == ExprOp::negate)
        return a->lhs;
    return unary_node(ExprOp::negate, std::move(a));
}

inline ExprPtr add(ExprPtr a, ExprPtr b)
{
    if (is_number(a, 0))
        return b;
    if (is_number(b, 0))
        return a;
    if (a->op == ExprOp::number && b->op == ExprOp::number)
        return num(a->value + b->value);
    return binary_node(ExprOp::add, std::move(a), std::move(b));
}

inline ExprPtr sub(ExprPtr a, ExprPtr b)
{
    if (is_number(b, 0))
        return a;
    if (is_number(a, 0))
        return neg(std::move(b));
    if (a->op == ExprOp::number && b->op == ExprOp::number)
        return num(a->value - b->value);
    return binary_node(ExprOp::sub, std::move(a), std::move(b));
}

inline ExprPtr mul(ExprPtr a, ExprPtr b)
{
    if (is_number(a, 0) || is_number(b, 0))
        return num(0);
    if (is_number(a, 1))
        return b;
    if (is_number(b, 1))
        return a;
    if (a->op == ExprOp::number && b->op == ExprOp::number)
        return num(a->value * b->value);
    return binary_node(ExprOp::mul, std::move(a), std::move(b));
}

inline ExprPtr div(ExprPtr a, ExprPtr b)
{
    if (is_number(a, 0))
        return num(0);
    if (is_number(b, 1))
        return a;
    return binary_node(ExprOp::div, std::move(a), std::move(b));
}

inline ExprPtr pow(ExprPtr a, ExprPtr b)
{
    if (is_number(b, 1))
        return a;
    if (is_number(b, 0))
        return num(1);
    return binary_node(ExprOp::pow, std::move(a), std::move(b));
}

inline ExprPtr call(ExprFunc f, ExprPtr a) { return call_node(f, std::move(a)); }

inline ExprPtr differentiate(ExprPtr const& n)
{
    switch (n->op)
    {
    case ExprOp::number:
    case ExprOp::pi:
    case ExprOp::e:
        return num(0);
    case ExprOp::variable:
        return num(1);
    case ExprOp::negate:
        return neg(differentiate(n->lhs));
    case ExprOp::add:
        return add(differentiate(n->lhs), differentiate(n->rhs));
    case ExprOp::sub:
        return sub(differentiate(n->lhs), differentiate(n->rhs));
    case ExprOp::mul:
        return add(mul(differentiate(n->lhs), n->rhs), mul(n->lhs, differentiate(n->rhs)));
    case ExprOp::div:
        return div(sub(mul(differentiate(n->lhs), n->rhs), mul(n->lhs, differentiate(n->rhs))),
                   pow(n->rhs, num(2)));
    case ExprOp::pow: {
        ExprPtr const& base = n->lhs;
        ExprPtr const& expo = n->rhs;
        if (!depends_on_t(*expo))
            return mul(mul(expo, pow(base, sub(expo, num(1)))), differentiate(base));
        if (!depends_on_t(*base))
            return mul(mul(n, call(ExprFunc::ln, base)), differentiate(expo));
        return mul(n, add(mul(differentiate(expo), call(ExprFunc::ln, base)),
                          div(mul(expo, differentiate(base)), base)));
    }
    case ExprOp::call: {
        ExprPtr const& a = n->lhs;
        ExprPtr da = differentiate(a);
        switch (n->func)
        {
        case ExprFunc::sin:
            return mul(call(ExprFunc::cos, a), da);
        case ExprFunc::cos:
            return neg(mul(call(ExprFunc::sin, a), da));
        case ExprFunc::tan:
            return div(da, pow(call(ExprFunc::cos, a), num(2)));
        case ExprFunc::sqrt:
            return div(da, mul(num(2), n));
        case ExprFunc::exp:
            return mul(n, da);
        case ExprFunc::ln:
            return div(da, a);
        case ExprFunc::abs:
            return div(mul(a, da), n);
        }
        break;
    }
    }
    return num(0);
}

inline double evaluate_node(ExprNode const& n, double t)
{
    switch (n.op)
    {
    case ExprOp::number:
        return n.value;
    case ExprOp::variable:
        return t;
    case ExprOp::pi:
        return std::numbers::pi;
    case ExprOp::e:
        return std::numbers::e;
    case ExprOp::negate:
        return -evaluate_node(*n.lhs, t);
    case ExprOp::add:
        return evaluate_node(*n.lhs, t) + evaluate_node(*n.rhs, t);
    case ExprOp::sub:
        return evaluate_node(*n.lhs, t) - evaluate_node(*n.rhs, t);
    case ExprOp::mul:
        return evaluate_node(*n.lhs, t) * evaluate_node(*n.rhs, t);
    case ExprOp::div: {
        double const den = evaluate_node(*n.rhs, t);
        if (den == 0.0)
            throw EvalError("division by zero");
        return evaluate_node(*n.lhs, t) / den;
    }
    case ExprOp::pow: {
        double const base = evaluate_node(*n.lhs, t);
        double const expo = evaluate_node(*n.rhs, t);
        if (base == 0.0 && expo < 0.0)
            throw EvalError("zero raised to a negative power");
        double const r = std::pow(base, expo);
        if (std::isnan(r))
            throw EvalError("negative base with non-integer exponent");
        return r;
    }
    case ExprOp::call: {
        double const a = evaluate_node(*n.lhs, t);
        switch (n.func)
        {
        case ExprFunc::sin:
            return std::sin(a);
        case ExprFunc::cos:
            return std::cos(a);
        case ExprFunc::tan:
            return std::tan(a);
        case ExprFunc::sqrt:
            if (a < 0.0)
                throw EvalError("sqrt of a negative value");
            return std::sqrt(a);
        case ExprFunc::exp:
            return std::exp(a);
        case ExprFunc::ln:
            if (a <= 0.0)
                throw EvalError("ln of a non-positive value");
            return std::log(a);
        case ExprFunc::abs:
            return std::abs(a);
        }
        break;
    }
    }
    return 0.0;
}

// Binding strength used by the printer; higher binds tighter.
inline int precedence(ExprNode const& n)
{
    switch (n.op)
    {
    case ExprOp::add:
    case ExprOp::sub:
        return 1;
    case ExprOp::mul:
    case ExprOp::div:
        return 2;
    case ExprOp::negate:
        return 3;
    case ExprOp::pow:
        return 4;
    case ExprOp::number:
        // Folded negative literals print with a leading minus.
        return n.value < 0 ? 3 : 5;
    default:
        return 5;
    }
}

inline void format_number(std::string& out, double v)
{
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

inline void print_node(std::string& out, ExprNode const& n);

inline void print_child(std::string& out, ExprNode const& child, bool parens)
{
    if (parens)
        out += '(';
    print_node(out, child);
    if (parens)
        out += ')';
}

inline void print_node(std::string& out, ExprNode const& n)
{
    switch (n.op)
    {
    case ExprOp::number:
        format_number(out, n.value);
        return;
    case ExprOp::variable:
        out += 't';
        return;
    case ExprOp::pi:
        out += "pi";
        return;
    case ExprOp::e:
        out += 'e';
        return;
    case ExprOp::negate:
        out += '-';
        print_child(out, *n.lhs, precedence(*n.lhs) < 3);
        return;
    case ExprOp::call:
        out += function_name(n.func);
        print_child(out, *n.lhs, true);
        return;
    case ExprOp::pow:
        print_child(out, *n.lhs, precedence(*n.lhs) <= 4);
        out += '^';
        print_child(out, *n.rhs, precedence(*n.rhs) < 3);
        return;
    default: {
        int const p = precedence(n);
        print_child(out, *n.lhs, precedence(*n.lhs) < p);
        switch (n.op)
        {
        case ExprOp::add:
            out += " + ";
            break;
        case ExprOp::sub:
            out += " - ";
            break;
        case ExprOp::mul:
            out += '*';
            break;
        default:
            out += '/';
            break;
        }
        print_child(out, *n.rhs, precedence(*n.rhs) <= p);
        return;
    }
    }
}

class ExpressionParser
{
  public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    ExprPtr parse()
    {
        ExprPtr root = parse_expr();
        skip_space();
        if (pos_ < text_.size())
            throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr()
    {
        ExprPtr lhs = parse_term();
        for (;;)
        {
            if (accept('+'))
                lhs = binary_node(ExprOp::add, lhs, parse_term());
            else if (accept('-'))
                lhs = binary_node(ExprOp::sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term()
    {
        ExprPtr lhs = parse_unary();
        for (;;)
        {
            if (accept('*'))
                lhs = binary_node(ExprOp::mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = binary_node(ExprOp::div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    ExprPtr parse_unary()
    {
        if (accept('-'))
            return unary_node(ExprOp::negate, parse_unary());
        return parse_power();
    }

    ExprPtr parse_power()
    {
        ExprPtr base = parse_primary();
        if (accept('^'))
            return binary_node(ExprOp::pow, base, parse_unary());
        return base;
    }

    ExprPtr parse_number()
    {
        std::size_t const start = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
                ++end;
        };
        digits();
        if (end < text_.size() && text_[end] == '.')
        {
            ++end;
            digits();
        }
        // Exponent only when digits follow, so "2e" stays a syntax error
        // rather than swallowing the constant e.
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E'))
        {
            std::size_t k = end + 1;
            if (k < text_.size() && (text_[k] == '+' || text_[k] == '-'))
                ++k;
            if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k])))
            {
                end = k;
                digits();
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (ec != std::errc() || ptr != text_.data() + end)
            throw ParseError(start, "malformed number");
        pos_ = end;
        return leaf(ExprOp::number, value);
    }

    ExprPtr parse_primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError(pos_, "expected expression");
        char const c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (c == '(')
        {
            ++pos_;
            ExprPtr inner = parse_expr();
            if (!accept(')'))
                throw ParseError(pos_, "expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        {
            std::size_t const start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view const ident = text_.substr(start, pos_ - start);
            if (ident == "t")
                return leaf(ExprOp::variable);
            if (ident == "pi")
                return leaf(ExprOp::pi);
            if (ident == "e")
                return leaf(ExprOp::e);
            for (auto const& [name, func] : kExprFunctions)
            {
                if (ident != name)
                    continue;
                if (!accept('('))
                    throw ParseError(pos_, "expected '(' after function '" + std::string(name) + "'");
                ExprPtr arg = parse_expr();
                if (accept(','))
                    throw ParseError(pos_ - 1, "function '" + std::string(name) + "' takes 1 argument");
                if (!accept(')'))
                    throw ParseError(pos_, "expected ')'");
                return call_node(func, std::move(arg));
            }
            throw ParseError(start, "unknown identifier '" + std::string(ident) + "'");
        }
        throw ParseError(pos_, "expected expression");
    }
};

} // namespace detail

// Immutable expression in the single variable t.
class ExpressionTree
{
  public:
    ExpressionTree() : root_(detail::num(0)) {}
    explicit ExpressionTree(ExprPtr root) : root_(std::move(root)) {}

    // Throws EvalError for division by zero, ln/sqrt outside their domain,
    // and any non-finite result.
    double operator()(double t) const
    {
        double const v = detail::evaluate_node(*root_, t);
        if (!std::isfinite(v))
            throw EvalError("non-finite value");
        return v;
    }

    ExpressionTree derivative() const { return ExpressionTree(detail::differentiate(root_)); }

    std::string to_string() const
    {
        std::string out;
        detail::print_node(out, *root_);
        return out;
    }

    bool depends_on_t() const { return detail::depends_on_t(*root_); }

    ExprNode const& root() const { return *root_; }

  private:
    ExprPtr root_;
};

inline ExpressionTree parse_expression(std::string_view text)
{
    return ExpressionTree(detail::ExpressionParser(text).parse());
}

} // namespace caustics
