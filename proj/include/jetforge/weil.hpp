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

#include "jetforge/linalg.hpp"
#include "jetforge/multiindex.hpp"
#include "jetforge/transversal.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jetforge {

// Quotient of K[t_1..t_k] by a monomial ideal, given by the complementary
// monomial basis. Basis elements are kept in graded order, so 1 comes first.
class WeilAlgebra {
public:
    WeilAlgebra(std::size_t generators, std::vector<MultiIndex> basis);

    std::size_t generators() const noexcept { return generators_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<MultiIndex>& basis() const noexcept { return basis_; }
    std::optional<std::size_t> index_of(const MultiIndex& monomial) const;
    // Index of e_i * e_j, or nullopt when the product lies in the ideal.
    std::optional<std::size_t> product(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }
    std::size_t unit() const noexcept { return 0; }
    // Number of degree-one basis monomials.
    std::size_t width() const;
    // Largest degree present in the basis.
    unsigned height() const;

    // Exhaustive associativity and commutativity check of the table.
    bool table_is_consistent() const;

    friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b)
    {
        return a.generators_ == b.generators_ && a.basis_ == b.basis_;
    }

private:
    std::size_t generators_;
    std::vector<MultiIndex> basis_;
    std::map<MultiIndex, std::size_t> index_;
    std::vector<std::optional<std::size_t>> table_;
};

// Algebra of k-dimensional velocities of order r: monomials of degree <= r.
WeilAlgebra algebra_of_profile(std::size_t k, unsigned r);

// Generators of A come first, then those of B.
WeilAlgebra tensor_product(const WeilAlgebra& a, const WeilAlgebra& b);

struct HomReport {
    bool homomorphism = true;
    std::string violation;
};

// L has shape dim B x dim A and maps A to B; exact over the rationals.
HomReport hom_check(const Matrix& l, const WeilAlgebra& a, const WeilAlgebra& b);

struct InductiveSystem {
    Poset poset;
    std::vector<WeilAlgebra> algebras;
    // maps[{beta, alpha}] : A_beta -> A_alpha for beta <= alpha.
    std::map<std::pair<std::size_t, std::size_t>, Matrix> maps;
};

struct InductiveReport {
    bool valid = true;
    std::string violation;
};

InductiveReport validate_inductive_system(const InductiveSystem& s);

} // namespace jetforge
