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

#include "jetforge/coefficient.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

namespace jetforge {

namespace {

void require_same_domain(const Coefficient& a, const Coefficient& b)
{
    if (a.domain() != b.domain()) {
        throw PreconditionError("mixed-domain arithmetic between rational and real coefficients");
    }
}

mpq_class parse_rational_text(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) {
        throw ValidationError("empty rational literal");
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0) {
            throw ValidationError("malformed rational literal '" + s + "'");
        }
        if (den == 0) {
            throw ValidationError("zero denominator in '" + s + "'");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    // Decimal with optional exponent, converted exactly.
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) {
                ++scale;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) {
        throw ValidationError("malformed number '" + s + "'");
    }
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') {
            throw ValidationError("malformed number '" + s + "'");
        }
        ++pos;
        try {
            std::size_t used = 0;
            exponent = std::stol(s.substr(pos), &used);
            if (pos + used != s.size()) {
                throw ValidationError("malformed exponent in '" + s + "'");
            }
        } catch (const std::logic_error&) {
            throw ValidationError("malformed exponent in '" + s + "'");
        }
    }
    mpz_class num(digits, 10);
    if (negative) {
        num = -num;
    }
    long shift = exponent - scale;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift >= 0 ? mpq_class(num * power) : mpq_class(num, power);
    q.canonicalize();
    return q;
}

} // namespace

std::string_view to_string(Domain d)
{
    return d == Domain::rational ? "rational" : "float";
}

Coefficient::Coefficient(mpq_class q) : value_(std::move(q))
{
    std::get<mpq_class>(value_).canonicalize();
}

Coefficient Coefficient::zero(Domain d)
{
    return d == Domain::rational ? Coefficient(mpq_class(0)) : Coefficient(0.0);
}

Coefficient Coefficient::one(Domain d)
{
    return d == Domain::rational ? Coefficient(mpq_class(1)) : Coefficient(1.0);
}

Coefficient Coefficient::from_int(long v, Domain d)
{
    return d == Domain::rational ? Coefficient(mpq_class(v)) : Coefficient(static_cast<double>(v));
}

Coefficient Coefficient::from_rational(const mpq_class& q, Domain d)
{
    return d == Domain::rational ? Coefficient(q) : Coefficient(q.get_d());
}

Coefficient Coefficient::parse(std::string_view text, Domain d)
{
    if (d == Domain::rational) {
        return Coefficient(parse_rational_text(text));
    }
    std::string s(text);
    if (s.find('/') != std::string::npos) {
        return Coefficient(parse_rational_text(text).get_d());
    }
    try {
        std::size_t used = 0;
        double x = std::stod(s, &used);
        if (used != s.size()) {
            throw ValidationError("malformed real '" + s + "'");
        }
        return Coefficient(x);
    } catch (const std::logic_error&) {
        throw ValidationError("malformed real '" + s + "'");
    }
}

bool Coefficient::is_zero() const
{
    if (auto q = std::get_if<mpq_class>(&value_)) {
        return sgn(*q) == 0;
    }
    return std::get<double>(value_) == 0.0;
}

int Coefficient::sign() const
{
    if (auto q = std::get_if<mpq_class>(&value_)) {
        return sgn(*q);
    }
    double x = std::get<double>(value_);
    return (x > 0) - (x < 0);
}

const mpq_class& Coefficient::rational() const
{
    if (auto q = std::get_if<mpq_class>(&value_)) {
        return *q;
    }
    throw PreconditionError("rational value requested from a real coefficient");
}

double Coefficient::real() const
{
    if (auto x = std::get_if<double>(&value_)) {
        return *x;
    }
    throw PreconditionError("real value requested from a rational coefficient");
}

double Coefficient::to_double() const
{
    if (auto q = std::get_if<mpq_class>(&value_)) {
        return q->get_d();
    }
    return std::get<double>(value_);
}

std::string Coefficient::to_string() const
{
    if (auto q = std::get_if<mpq_class>(&value_)) {
        return q->get_num().get_str() + "/" + q->get_den().get_str();
    }
    return format_real(std::get<double>(value_));
}

Coefficient& Coefficient::operator+=(const Coefficient& rhs)
{
    require_same_domain(*this, rhs);
    if (auto q = std::get_if<mpq_class>(&value_)) {
        *q += std::get<mpq_class>(rhs.value_);
    } else {
        std::get<double>(value_) += std::get<double>(rhs.value_);
    }
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& rhs)
{
    require_same_domain(*this, rhs);
    if (auto q = std::get_if<mpq_class>(&value_)) {
        *q -= std::get<mpq_class>(rhs.value_);
    } else {
        std::get<double>(value_) -= std::get<double>(rhs.value_);
    }
    return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& rhs)
{
    require_same_domain(*this, rhs);
    if (auto q = std::get_if<mpq_class>(&value_)) {
        *q *= std::get<mpq_class>(rhs.value_);
    } else {
        std::get<double>(value_) *= std::get<double>(rhs.value_);
    }
    return *this;
}

Coefficient& Coefficient::operator/=(const Coefficient& rhs)
{
    require_same_domain(*this, rhs);
    if (rhs.is_zero()) {
        throw PreconditionError("division by zero");
    }
    if (auto q = std::get_if<mpq_class>(&value_)) {
        *q /= std::get<mpq_class>(rhs.value_);
    } else {
        std::get<double>(value_) /= std::get<double>(rhs.value_);
    }
    return *this;
}

Coefficient Coefficient::operator-() const
{
    if (auto q = std::get_if<mpq_class>(&value_)) {
        return Coefficient(mpq_class(-*q));
    }
    return Coefficient(-std::get<double>(value_));
}

bool operator==(const Coefficient& a, const Coefficient& b)
{
    require_same_domain(a, b);
    if (auto q = std::get_if<mpq_class>(&a.value_)) {
        return *q == std::get<mpq_class>(b.value_);
    }
    return std::get<double>(a.value_) == std::get<double>(b.value_);
}

bool nearly_equal(const Coefficient& a, const Coefficient& b)
{
    require_same_domain(a, b);
    if (a.domain() == Domain::rational) {
        return a == b;
    }
    double x = a.real();
    double y = b.real();
    return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
}

std::string format_real(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos) {
        s += ".0";
    }
    return s;
}

} // namespace jetforge
