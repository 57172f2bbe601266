// Copyright 2026 The jetforge Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//         http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "jetforge/expression.hpp"

#include "jetforge/error.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace jetforge {

Expr Expr::number(mpq_class v)
{
    Expr e;
    e.kind = Kind::number;
    e.value = std::move(v);
    e.value.canonicalize();
    return e;
}

Expr Expr::var(std::size_t index)
{
    Expr e;
    e.kind = Kind::variable;
    e.variable = index;
    return e;
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs)
{
    Expr e;
    e.kind = kind;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
}

Expr Expr::pow(Expr base, unsigned exponent)
{
    Expr e;
    e.kind = Kind::pow;
    e.exponent = exponent;
    e.args.push_back(std::move(base));
    return e;
}

Expr Expr::neg(Expr operand)
{
    Expr e;
    e.kind = Kind::neg;
    e.args.push_back(std::move(operand));
    return e;
}

Expr Expr::call(Function f, Expr arg)
{
    Expr e;
    e.kind = Kind::call;
    e.function = f;
    e.args.push_back(std::move(arg));
    return e;
}

std::size_t Expr::max_variable() const
{
    std::size_t m = kind == Kind::variable ? variable : 0;
    for (const auto& a : args) {
        m = std::max(m, a.max_variable());
    }
    return m;
}

bool Expr::is_polynomial_or_rational() const
{
    if (kind == Kind::call) {
        return false;
    }
    for (const auto& a : args) {
        if (!a.is_polynomial_or_rational()) {
            return false;
        }
    }
    return true;
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case Expr::Kind::number:
        return a.value == b.value;
    case Expr::Kind::variable:
        return a.variable == b.variable;
    case Expr::Kind::pow:
        if (a.exponent != b.exponent) {
            return false;
        }
        break;
    case Expr::Kind::call:
        if (a.function != b.function) {
            return false;
        }
        break;
    default:
        break;
    }
    return a.args == b.args;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_space();
        if (pos_ < text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const
    {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("syntax error: " + message, line, column);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                                     : "expected '" + std::string(1, c) + "' before end of input");
        }
    }

    static Expr fold_div(Expr lhs, Expr rhs)
    {
        if (lhs.kind == Expr::Kind::number && rhs.kind == Expr::Kind::number && sgn(rhs.value) != 0) {
            return Expr::number(lhs.value / rhs.value);
        }
        return Expr::binary(Expr::Kind::div, std::move(lhs), std::move(rhs));
    }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Expr::Kind::add, std::move(lhs), parse_term());
            } else if (accept('-')) {
                lhs = Expr::binary(Expr::Kind::sub, std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term()
    {
        Expr lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Expr::Kind::mul, std::move(lhs), parse_factor());
            } else if (accept('/')) {
                lhs = fold_div(std::move(lhs), parse_factor());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor()
    {
        if (accept('-')) {
            Expr operand = parse_factor();
            if (operand.kind == Expr::Kind::number) {
                return Expr::number(-operand.value);
            }
            return Expr::neg(std::move(operand));
        }
        Expr base = parse_base();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected a non-negative integer exponent");
            }
            unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 1000) {
                pos_ = start;
                fail("exponent too large");
            }
            return Expr::pow(std::move(base), static_cast<unsigned>(e));
        }
        return base;
    }

    Expr parse_base()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            std::string ident(text_.substr(start, pos_ - start));
            if (ident.size() > 1 && ident[0] == 'x'
                && ident.find_first_not_of("0123456789", 1) == std::string::npos) {
                std::size_t index = std::stoul(ident.substr(1));
                if (index == 0) {
                    pos_ = start;
                    fail("variables are numbered from x1");
                }
                return Expr::var(index);
            }
            static const std::pair<const char*, Function> functions[] = {
                {"sin", Function::sin}, {"cos", Function::cos}, {"exp", Function::exp},
                {"log", Function::log}, {"sqrt", Function::sqrt}};
            for (const auto& [name, f] : functions) {
                if (ident == name) {
                    expect('(');
                    Expr arg = parse_expr();
                    expect(')');
                    return Expr::call(f, std::move(arg));
                }
            }
            pos_ = start;
            fail("unknown identifier '" + ident + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr parse_number()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            ++pos_;
        }
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.find('.') != digits.rfind('.') || digits == ".") {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::number(Coefficient::parse(digits, Domain::rational).rational());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

const char* function_name(Function f)
{
    switch (f) {
    case Function::sin:
        return "sin";
    case Function::cos:
        return "cos";
    case Function::exp:
        return "exp";
    case Function::log:
        return "log";
    case Function::sqrt:
        return "sqrt";
    }
    return "?";
}

} // namespace

Expr parse_expression(std::string_view text)
{
    return Parser(text).parse_all();
}

std::vector<Expr> parse_expression_list(std::string_view text)
{
    std::vector<Expr> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') {
            ++depth;
        } else if (i < text.size() && text[i] == ')') {
            --depth;
        } else if (i == text.size() || (depth == 0 && (text[i] == ',' || text[i] == ';'))) {
            out.push_back(parse_expression(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::string print_expression(const Expr& e)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number:
        if (e.value.get_den() == 1 && sgn(e.value) >= 0) {
            return e.value.get_num().get_str();
        }
        return "(" + e.value.get_str() + ")";
    case K::variable:
        return "x" + std::to_string(e.variable);
    case K::add:
        return "(" + print_expression(e.args[0]) + " + " + print_expression(e.args[1]) + ")";
    case K::sub:
        return "(" + print_expression(e.args[0]) + " - " + print_expression(e.args[1]) + ")";
    case K::mul:
        return "(" + print_expression(e.args[0]) + " * " + print_expression(e.args[1]) + ")";
    case K::div:
        return "(" + print_expression(e.args[0]) + " / " + print_expression(e.args[1]) + ")";
    case K::pow:
        return "(" + print_expression(e.args[0]) + ")^" + std::to_string(e.exponent);
    case K::neg:
        return "(-" + print_expression(e.args[0]) + ")";
    case K::call:
        return std::string(function_name(e.function)) + "(" + print_expression(e.args[0]) + ")";
    }
    return {};
}

namespace {

// Univariate Taylor coefficients c_k = f^(k)(a) / k!, k = 0..order.
std::vector<Coefficient> function_series(Function f, const Coefficient& a, unsigned order)
{
    const double x = a.real();
    std::vector<double> c(order + 1, 0.0);
    switch (f) {
    case Function::exp:
        c[0] = std::exp(x);
        for (unsigned k = 1; k <= order; ++k) {
            c[k] = c[k - 1] / k;
        }
        break;
    case Function::sin:
    case Function::cos: {
        // s_k, co_k: series of sin and cos at a; s_k = co_{k-1}/k, co_k = -s_{k-1}/k.
        std::vector<double> s(order + 1), co(order + 1);
        s[0] = std::sin(x);
        co[0] = std::cos(x);
        for (unsigned k = 1; k <= order; ++k) {
            s[k] = co[k - 1] / k;
            co[k] = -s[k - 1] / k;
        }
        c = f == Function::sin ? s : co;
        break;
    }
    case Function::log:
        if (!(x > 0.0)) {
            throw PreconditionError("evaluation singularity: log of a non-positive value");
        }
        c[0] = std::log(x);
        for (unsigned k = 1; k <= order; ++k) {
            c[k] = (k % 2 == 1 ? 1.0 : -1.0) / (k * std::pow(x, k));
        }
        break;
    case Function::sqrt: {
        if (!(x > 0.0)) {
            throw PreconditionError("evaluation singularity: sqrt at a non-positive value");
        }
        // sqrt(a + u) = sqrt(a) * sum binom(1/2, k) (u/a)^k
        double binom = 1.0;
        double root = std::sqrt(x);
        for (unsigned k = 0; k <= order; ++k) {
            if (k > 0) {
                binom *= (0.5 - (k - 1)) / k;
            }
            c[k] = root * binom / std::pow(x, k);
        }
        break;
    }
    }
    std::vector<Coefficient> out;
    out.reserve(c.size());
    for (double v : c) {
        out.emplace_back(v);
    }
    return out;
}

TruncatedPoly expand(const Expr& e, std::span<const Coefficient> point, unsigned order, Domain domain)
{
    using K = Expr::Kind;
    const std::size_t h = point.size();
    switch (e.kind) {
    case K::number:
        return TruncatedPoly::constant(h, order, Coefficient::from_rational(e.value, domain));
    case K::variable: {
        if (e.variable > h) {
            throw ValidationError("variable x" + std::to_string(e.variable) + " exceeds the source dimension "
                                  + std::to_string(h));
        }
        TruncatedPoly p = TruncatedPoly::variable(h, order, e.variable - 1, domain);
        p.add_to(MultiIndex::zero(h), point[e.variable - 1]);
        return p;
    }
    case K::add:
        return expand(e.args[0], point, order, domain) + expand(e.args[1], point, order, domain);
    case K::sub:
        return expand(e.args[0], point, order, domain) - expand(e.args[1], point, order, domain);
    case K::mul:
        return expand(e.args[0], point, order, domain) * expand(e.args[1], point, order, domain);
    case K::neg:
        return -expand(e.args[0], point, order, domain);
    case K::pow:
        return power(expand(e.args[0], point, order, domain), e.exponent);
    case K::div: {
        TruncatedPoly num = expand(e.args[0], point, order, domain);
        TruncatedPoly den = expand(e.args[1], point, order, domain);
        Coefficient c = den.constant_term();
        if (c.is_zero()) {
            throw PreconditionError("evaluation singularity: division by zero at the expansion point");
        }
        // 1/(c + u) = sum_k (-1)^k u^k / c^(k+1)
        std::vector<Coefficient> series;
        Coefficient term = Coefficient::one(domain) / c;
        for (unsigned k = 0; k <= order; ++k) {
            series.push_back(term);
            term = -(term / c);
        }
        return num * apply_series(den.without_constant(), series);
    }
    case K::call: {
        if (domain == Domain::rational) {
            throw PreconditionError(std::string("transcendental function ") + function_name(e.function)
                                    + " requires float mode");
        }
        TruncatedPoly arg = expand(e.args[0], point, order, domain);
        return apply_series(arg.without_constant(), function_series(e.function, arg.constant_term(), order));
    }
    }
    throw ValidationError("malformed expression");
}

} // namespace

TruncatedPoly taylor_expand(const Expr& e, std::span<const Coefficient> point, unsigned order, Domain domain)
{
    for (const auto& c : point) {
        if (c.domain() != domain) {
            throw ValidationError("expansion point outside the requested domain");
        }
    }
    return expand(e, point, order, domain);
}

JetMap jet_of_expressions(std::span<const Expr> exprs, std::span<const Coefficient> point, unsigned order,
                          Domain domain)
{
    if (exprs.empty()) {
        throw ValidationError("a jet needs at least one component expression");
    }
    Point target;
    std::vector<TruncatedPoly> comps;
    for (const Expr& e : exprs) {
        TruncatedPoly p = taylor_expand(e, point, order, domain);
        target.push_back(p.constant_term());
        comps.push_back(p.without_constant());
    }
    return JetMap(Point(point.begin(), point.end()), std::move(target), std::move(comps), domain, order);
}

} // namespace jetforge
