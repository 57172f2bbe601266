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

#include "jetforge/multiindex.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace jetforge {

MultiIndex::MultiIndex(std::vector<unsigned> exponents)
    : exponents_(std::move(exponents)),
      degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0u))
{
}

MultiIndex MultiIndex::unit(std::size_t num_vars, std::size_t i)
{
    std::vector<unsigned> e(num_vars, 0);
    e.at(i) = 1;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& rhs) const
{
    if (size() != rhs.size()) {
        throw PreconditionError("multi-index length mismatch");
    }
    std::vector<unsigned> e(exponents_);
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] += rhs.exponents_[i];
    }
    return MultiIndex(std::move(e));
}

bool MultiIndex::divides(const MultiIndex& other) const
{
    if (size() != other.size()) {
        return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (exponents_[i] > other.exponents_[i]) {
            return false;
        }
    }
    return true;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b)
{
    if (auto c = a.degree_ <=> b.degree_; c != 0) {
        return c;
    }
    return a.exponents_ <=> b.exponents_;
}

namespace {

void fill_degree(std::size_t pos, unsigned remaining, std::vector<unsigned>& current, std::vector<MultiIndex>& out)
{
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        out.emplace_back(current);
        return;
    }
    // Ascending exponent in the leading slot yields lexicographic order.
    for (unsigned e = 0; e <= remaining; ++e) {
        current[pos] = e;
        fill_degree(pos + 1, remaining - e, current, out);
    }
    current[pos] = 0;
}

} // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t num_vars, unsigned degree)
{
    std::vector<MultiIndex> out;
    if (num_vars == 0) {
        if (degree == 0) {
            out.emplace_back();
        }
        return out;
    }
    std::vector<unsigned> current(num_vars, 0);
    fill_degree(0, degree, current, out);
    return out;
}

std::vector<MultiIndex> enumerate_monomials(std::size_t num_vars, unsigned order)
{
    std::vector<MultiIndex> out;
    for (unsigned d = 0; d <= order; ++d) {
        auto level = monomials_of_degree(num_vars, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

EffectiveOrders effective_orders(std::size_t m, std::span<const IndexSet> groups, std::span<const unsigned> orders)
{
    if (groups.size() != orders.size()) {
        throw PreconditionError("multiorder has " + std::to_string(orders.size()) + " entries but the multifoliation has "
                                + std::to_string(groups.size()) + " groups");
    }
    EffectiveOrders result{std::vector<unsigned>(m, 0)};
    for (std::size_t d = 0; d < groups.size(); ++d) {
        for (std::size_t i : groups[d]) {
            if (i >= m) {
                throw ValidationError("leaf index " + std::to_string(i + 1) + " exceeds dimension " + std::to_string(m));
            }
            result.per_component[i] = std::max(result.per_component[i], orders[d]);
        }
    }
    return result;
}

} // namespace jetforge
