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

#include "jetforge/jet.hpp"
#include "jetforge/linalg.hpp"
#include "jetforge/multiindex.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jetforge {

// Rational subspace of Q^m given by spanning vectors; stores its reduced
// row-echelon basis.
class Subspace {
public:
    Subspace(std::size_t ambient, const std::vector<std::vector<mpq_class>>& spanning);
    explicit Subspace(const Matrix& spanning_rows);

    // span{ e_i : i in indices }
    static Subspace coordinate(std::size_t ambient, const IndexSet& indices);

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    std::size_t codim() const noexcept { return ambient_ - dim(); }
    const Matrix& basis() const noexcept { return basis_; }
    // Rows span the annihilator { y : y . x = 0 for x in the subspace }.
    Matrix annihilator() const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    std::size_t ambient_;
    Matrix basis_;
};

struct SubspaceDims {
    std::size_t intersection;
    std::size_t sum;
};

// Dimensions of the intersection and sum over the spaces selected by E
// (0-based indices). The sum comes from stacked bases, the intersection from
// the kernel of the stacked annihilators.
SubspaceDims subspace_dims(std::span<const Subspace> spaces, const IndexSet& subset);

enum class TransversalityMode { cap, cup };

struct TransversalityReport {
    bool transversal = true;
    std::size_t subsets_checked = 0;
    std::optional<IndexSet> first_failure;
};

// Checks codim(cap_E) = sum_E codim (cap) or sum_E dim = dim(cup_E) (cup) over
// every non-empty E; requires at least two spaces.
TransversalityReport is_transversal(std::span<const Subspace> spaces, TransversalityMode mode);

// Position-dependent tangent data: one family per sample point. Verdicts must
// agree across points.
TransversalityReport is_transversal_at_points(std::span<const std::vector<Subspace>> families, TransversalityMode mode);

struct FeasibilityReport {
    std::size_t ambient = 0;
    std::size_t sum_dims = 0;
    std::size_t sum_codims = 0;
    bool cap_feasible = false;
    bool cup_feasible = false;
    bool both = false;
    // Both inequalities hold at Delta = 2 with sum codim = sum dim = m.
    bool coincidence = false;
    // Some leaf dimension is 0 or m.
    bool degenerate = false;
    // For Delta >= 3: sum codim + sum dim = Delta * m > 2m, so at most one holds.
    std::string certificate;
};

FeasibilityReport feasibility(std::span<const std::size_t> dims, std::size_t ambient);

struct SubfoliationReport {
    bool subfoliation = false;
    // p - p' for the induced foliation on a leaf; set when subfoliation holds.
    std::size_t restriction_dim = 0;
};

// Coordinate foliations: leaf containment reduces to index containment.
SubfoliationReport is_subfoliation(const IndexSet& sub, const IndexSet& sup, std::size_t ambient);

// Finite partial order on {0..size-1}.
class Poset {
public:
    // Reflexive-transitive closure of the generating pairs (a <= b); rejects
    // cycles, which would break antisymmetry.
    Poset(std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> generating_pairs);

    static Poset chain(std::size_t size);
    static Poset antichain(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool leq(std::size_t a, std::size_t b) const { return leq_[a * size_ + b]; }
    std::vector<std::pair<std::size_t, std::size_t>> relation_pairs() const;

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    std::size_t size_;
    std::vector<bool> leq_;
};

// Surjection p : {0..m-1} -> P.
class PosetMap {
public:
    PosetMap(Poset poset, std::vector<std::size_t> assignment);

    const Poset& poset() const noexcept { return poset_; }
    const std::vector<std::size_t>& assignment() const noexcept { return p_; }
    std::size_t ambient() const noexcept { return p_.size(); }
    // a^i_j may be non-zero only when p(j) >= p(i).
    bool allowed(std::size_t row, std::size_t col) const { return poset_.leq(p_[row], p_[col]); }

private:
    Poset poset_;
    std::vector<std::size_t> p_;
};

bool in_pp_group(const Matrix& a, const PosetMap& pm);

struct PseudogroupReport {
    bool member = true;
    std::size_t samples = 0;
    std::optional<std::size_t> failing_point;

    std::string label() const { return "sampled at " + std::to_string(samples) + " points"; }
};

// Sampled membership of a local diffeomorphism in the (P,p) pseudogroup: every
// supplied jet (order >= 1) must have its Jacobian in GL(m; P, p).
PseudogroupReport pp_pseudogroup_check(std::span<const JetMap> samples, const PosetMap& pm);

} // namespace jetforge
