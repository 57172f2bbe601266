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

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace jetforge {

// Scalar domain of a coefficient. Exact rationals are canonical; reals exist
// for transcendental expressions and never mix with rationals.
enum class Domain { rational, real };

std::string_view to_string(Domain d);

class Coefficient {
public:
    Coefficient() : value_(mpq_class(0)) {}
    explicit Coefficient(mpq_class q);
    explicit Coefficient(double x) : value_(x) {}

    static Coefficient zero(Domain d);
    static Coefficient one(Domain d);
    static Coefficient from_int(long v, Domain d);
    static Coefficient from_rational(const mpq_class& q, Domain d);

    // Accepts "p", "p/q", and plain decimals ("0.25", "-1.5e-3"). Decimals are
    // converted exactly in the rational domain.
    static Coefficient parse(std::string_view text, Domain d);

    Domain domain() const noexcept
    {
        return std::holds_alternative<mpq_class>(value_) ? Domain::rational : Domain::real;
    }
    bool is_zero() const;
    int sign() const;

    const mpq_class& rational() const;
    double real() const;
    double to_double() const;

    // "p/q" for rationals, 17 significant digits for reals.
    std::string to_string() const;

    Coefficient& operator+=(const Coefficient& rhs);
    Coefficient& operator-=(const Coefficient& rhs);
    Coefficient& operator*=(const Coefficient& rhs);
    Coefficient& operator/=(const Coefficient& rhs);

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
    friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }
    Coefficient operator-() const;

    // Mixed-domain comparison throws.
    friend bool operator==(const Coefficient& a, const Coefficient& b);

private:
    std::variant<mpq_class, double> value_;
};

// Equality used for point matching: exact for rationals, relative 1e-9 for reals.
bool nearly_equal(const Coefficient& a, const Coefficient& b);

std::string format_real(double x);

} // namespace jetforge
