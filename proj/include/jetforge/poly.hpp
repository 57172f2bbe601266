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
#include "jetforge/multiindex.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace jetforge {

// Polynomial in num_vars variables truncated at total degree `order`.
// Stored sparsely; zero coefficients are never kept.
class TruncatedPoly {
public:
    using Terms = std::map<MultiIndex, Coefficient>;

    TruncatedPoly(std::size_t num_vars, unsigned order, Domain domain);

    static TruncatedPoly constant(std::size_t num_vars, unsigned order, const Coefficient& c);
    static TruncatedPoly variable(std::size_t num_vars, unsigned order, std::size_t i, Domain domain);

    std::size_t num_vars() const noexcept { return num_vars_; }
    unsigned order() const noexcept { return order_; }
    Domain domain() const noexcept { return domain_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Coefficient coeff(const MultiIndex& index) const;
    Coefficient constant_term() const;

    // Replaces the coefficient at `index`; zero removes it.
    void set(const MultiIndex& index, Coefficient c);
    void add_to(const MultiIndex& index, const Coefficient& c);

    TruncatedPoly& operator+=(const TruncatedPoly& rhs);
    TruncatedPoly& operator-=(const TruncatedPoly& rhs);
    TruncatedPoly& operator*=(const Coefficient& scalar);

    friend TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly& b) { return a += b; }
    friend TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly& b) { return a -= b; }
    friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b);
    friend TruncatedPoly operator*(TruncatedPoly a, const Coefficient& s) { return a *= s; }
    TruncatedPoly operator-() const;

    TruncatedPoly truncated(unsigned new_order) const;
    TruncatedPoly without_constant() const;
    TruncatedPoly homogeneous_part(unsigned degree) const;
    // Drops every term that involves a variable outside `keep` and renumbers
    // the kept variables in the given order.
    TruncatedPoly restricted_to_variables(std::span<const std::size_t> keep) const;
    // Same polynomial in a larger variable set: old variable i becomes new_positions[i].
    TruncatedPoly embedded(std::size_t new_num_vars, std::span<const std::size_t> new_positions) const;
    // True when some stored term has a positive exponent in one of `vars`.
    bool involves_any(std::span<const std::size_t> vars) const;

    // Comparing different orders, variable counts, or domains is an error.
    friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b);

private:
    void check_compatible(const TruncatedPoly& rhs, const char* what) const;

    std::size_t num_vars_;
    unsigned order_;
    Domain domain_;
    Terms terms_;
};

// sum_k coeffs[k] * u^k truncated at u's order; u must have zero constant term.
TruncatedPoly apply_series(const TruncatedPoly& u, std::span<const Coefficient> coeffs);

// Repeated multiplication, truncated.
TruncatedPoly power(const TruncatedPoly& base, unsigned exponent);

} // namespace jetforge
