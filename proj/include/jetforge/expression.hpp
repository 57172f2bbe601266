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

#pragma once

#include "jetforge/coefficient.hpp"
#include "jetforge/jet.hpp"
#include "jetforge/poly.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jetforge {

enum class Function { sin, cos, exp, log, sqrt };

// Expression tree over variables x1..xn with rational literals.
struct Expr {
    enum class Kind { number, variable, add, sub, mul, div, pow, neg, call };

    Kind kind = Kind::number;
    mpq_class value;          // number
    std::size_t variable = 0; // 1-based
    unsigned exponent = 0;    // pow
    Function function = Function::sin;
    std::vector<Expr> args;

    static Expr number(mpq_class v);
    static Expr var(std::size_t index);
    static Expr binary(Kind kind, Expr lhs, Expr rhs);
    static Expr pow(Expr base, unsigned exponent);
    static Expr neg(Expr operand);
    static Expr call(Function f, Expr arg);

    // Largest variable index used, 0 for constants.
    std::size_t max_variable() const;
    bool is_polynomial_or_rational() const;

    friend bool operator==(const Expr& a, const Expr& b);
};

// expr := term (('+'|'-') term)*
// term := factor (('*'|'/') factor)*
// factor := '-' factor | base ('^' uint)?
// base := number | var | func '(' expr ')' | '(' expr ')'
// A quotient of two literals folds into a single rational literal, as does
// negation of a literal.
Expr parse_expression(std::string_view text);

// Fully parenthesized canonical form; parse(print(e)) == e.
std::string print_expression(const Expr& e);

// Taylor polynomial of e around `point` in displacement variables, including
// the constant term.
TruncatedPoly taylor_expand(const Expr& e, std::span<const Coefficient> point, unsigned order, Domain domain);

// r-jet at `point` of the map with the given components.
JetMap jet_of_expressions(std::span<const Expr> exprs, std::span<const Coefficient> point, unsigned order,
                          Domain domain);

// Splits "e1, e2; e3" on ',' and ';' outside parentheses.
std::vector<Expr> parse_expression_list(std::string_view text);

} // namespace jetforge
