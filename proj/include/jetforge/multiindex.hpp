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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jetforge {

// Exponent vector of a monomial in the source variables.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> exponents);

    static MultiIndex zero(std::size_t num_vars) { return MultiIndex(std::vector<unsigned>(num_vars, 0)); }
    static MultiIndex unit(std::size_t num_vars, std::size_t i);

    std::size_t size() const noexcept { return exponents_.size(); }
    unsigned operator[](std::size_t i) const { return exponents_[i]; }
    unsigned total_degree() const noexcept { return degree_; }
    const std::vector<unsigned>& exponents() const noexcept { return exponents_; }

    MultiIndex operator+(const MultiIndex& rhs) const;
    bool divides(const MultiIndex& other) const;

    // Graded lexicographic: total degree first, then exponent vectors.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

private:
    std::vector<unsigned> exponents_;
    unsigned degree_ = 0;
};

// All monomials of total degree <= order in graded-lex order; C(m+r, r) entries.
std::vector<MultiIndex> enumerate_monomials(std::size_t num_vars, unsigned order);

// Monomials of exactly the given total degree, graded-lex order.
std::vector<MultiIndex> monomials_of_degree(std::size_t num_vars, unsigned degree);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Sorted, duplicate-free, 0-based coordinate indices.
using IndexSet = std::vector<std::size_t>;

struct EffectiveOrders {
    std::vector<unsigned> per_component;

    friend bool operator==(const EffectiveOrders&, const EffectiveOrders&) = default;
};

// Component i receives max{ orders[d] : i in groups[d] }, or 0 when uncovered.
EffectiveOrders effective_orders(std::size_t m, std::span<const IndexSet> groups, std::span<const unsigned> orders);

} // namespace jetforge
