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

#include "jetforge/transversal.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace jetforge {

namespace {

Matrix nonzero_rows(const Matrix& reduced, std::size_t count)
{
    Matrix out(count, reduced.cols(), reduced.domain());
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t c = 0; c < reduced.cols(); ++c) {
            out(r, c) = reduced(r, c);
        }
    }
    return out;
}

Matrix basis_of(const Matrix& spanning)
{
    if (spanning.domain() != Domain::rational) {
        throw ValidationError("subspaces are exact rational objects");
    }
    std::vector<std::size_t> pivots;
    Matrix reduced = rref(spanning, &pivots);
    return nonzero_rows(reduced, pivots.size());
}

} // namespace

Subspace::Subspace(std::size_t ambient, const std::vector<std::vector<mpq_class>>& spanning)
    : ambient_(ambient)
{
    Matrix rows(spanning.size(), ambient, Domain::rational);
    for (std::size_t r = 0; r < spanning.size(); ++r) {
        if (spanning[r].size() != ambient) {
            throw ValidationError("spanning vector of length " + std::to_string(spanning[r].size())
                                  + " in ambient dimension " + std::to_string(ambient));
        }
        for (std::size_t c = 0; c < ambient; ++c) {
            rows(r, c) = Coefficient(spanning[r][c]);
        }
    }
    basis_ = basis_of(rows);
}

Subspace::Subspace(const Matrix& spanning_rows) : ambient_(spanning_rows.cols()), basis_(basis_of(spanning_rows)) {}

Subspace Subspace::coordinate(std::size_t ambient, const IndexSet& indices)
{
    Matrix rows(indices.size(), ambient, Domain::rational);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= ambient) {
            throw ValidationError("coordinate index " + std::to_string(indices[k] + 1) + " exceeds dimension "
                                  + std::to_string(ambient));
        }
        rows(k, indices[k]) = Coefficient::one(Domain::rational);
    }
    return Subspace(rows);
}

Matrix Subspace::annihilator() const
{
    if (basis_.rows() == 0) {
        return Matrix::identity(ambient_, Domain::rational);
    }
    return nullspace(basis_);
}

SubspaceDims subspace_dims(std::span<const Subspace> spaces, const IndexSet& subset)
{
    if (subset.empty()) {
        throw PreconditionError("subspace_dims needs a non-empty index subset");
    }
    const std::size_t m = spaces[subset.front()].ambient();
    Matrix stacked_bases(0, m, Domain::rational);
    Matrix stacked_constraints(0, m, Domain::rational);
    for (std::size_t e : subset) {
        if (e >= spaces.size()) {
            throw PreconditionError("subset index out of range");
        }
        if (spaces[e].ambient() != m) {
            throw PreconditionError("subspaces live in different ambient dimensions");
        }
        stacked_bases = vstack(stacked_bases, spaces[e].basis());
        stacked_constraints = vstack(stacked_constraints, spaces[e].annihilator());
    }
    return SubspaceDims{m - rank(stacked_constraints), rank(stacked_bases)};
}

TransversalityReport is_transversal(std::span<const Subspace> spaces, TransversalityMode mode)
{
    if (spaces.size() < 2) {
        throw PreconditionError("transversality needs at least two subspaces");
    }
    if (spaces.size() > 20) {
        throw PreconditionError("too many subspaces for exhaustive subset enumeration");
    }
    const std::size_t delta = spaces.size();
    const std::size_t m = spaces.front().ambient();
    TransversalityReport report;
    for (std::size_t mask = 1; mask < (std::size_t{1} << delta); ++mask) {
        IndexSet e;
        for (std::size_t d = 0; d < delta; ++d) {
            if (mask & (std::size_t{1} << d)) {
                e.push_back(d);
            }
        }
        ++report.subsets_checked;
        SubspaceDims dims = subspace_dims(spaces, e);
        bool ok;
        if (mode == TransversalityMode::cap) {
            std::size_t codim_sum = 0;
            for (std::size_t d : e) {
                codim_sum += spaces[d].codim();
            }
            ok = m - dims.intersection == codim_sum;
        } else {
            std::size_t dim_sum = 0;
            for (std::size_t d : e) {
                dim_sum += spaces[d].dim();
            }
            ok = dims.sum == dim_sum;
        }
        if (!ok && report.transversal) {
            report.transversal = false;
            report.first_failure = e;
        }
    }
    return report;
}

TransversalityReport is_transversal_at_points(std::span<const std::vector<Subspace>> families, TransversalityMode mode)
{
    if (families.empty()) {
        throw PreconditionError("no sample points supplied");
    }
    TransversalityReport first = is_transversal(families.front(), mode);
    for (std::size_t k = 1; k < families.size(); ++k) {
        TransversalityReport next = is_transversal(families[k], mode);
        if (next.transversal != first.transversal) {
            throw PreconditionError("transversality verdict changes between sample points 1 and " + std::to_string(k + 1)
                                    + "; tangent data must have constant dimensions");
        }
    }
    return first;
}

FeasibilityReport feasibility(std::span<const std::size_t> dims, std::size_t ambient)
{
    FeasibilityReport r;
    r.ambient = ambient;
    for (std::size_t p : dims) {
        if (p > ambient) {
            throw PreconditionError("leaf dimension " + std::to_string(p) + " exceeds ambient dimension "
                                    + std::to_string(ambient));
        }
        r.sum_dims += p;
        r.sum_codims += ambient - p;
        r.degenerate = r.degenerate || p == 0 || p == ambient;
    }
    r.cap_feasible = r.sum_codims <= ambient;
    r.cup_feasible = r.sum_dims <= ambient;
    r.both = r.cap_feasible && r.cup_feasible;
    const std::size_t delta = dims.size();
    r.coincidence = delta == 2 && r.sum_codims == ambient && r.sum_dims == ambient;
    if (delta >= 3 && ambient > 0) {
        r.certificate = "sum_codim + sum_dim = " + std::to_string(delta) + "*" + std::to_string(ambient) + " = "
                        + std::to_string(delta * ambient) + " > " + std::to_string(2 * ambient)
                        + " = 2m, so the cap and cup bounds cannot both hold";
    } else if (delta == 2) {
        r.certificate = "sum_codim + sum_dim = 2m; both bounds hold iff sum_codim = sum_dim = m";
    }
    return r;
}

SubfoliationReport is_subfoliation(const IndexSet& sub, const IndexSet& sup, std::size_t ambient)
{
    for (std::size_t i : sub) {
        if (i >= ambient) {
            throw ValidationError("leaf index exceeds the ambient dimension");
        }
    }
    for (std::size_t i : sup) {
        if (i >= ambient) {
            throw ValidationError("leaf index exceeds the ambient dimension");
        }
    }
    SubfoliationReport r;
    r.subfoliation = std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
    if (r.subfoliation) {
        r.restriction_dim = sup.size() - sub.size();
    }
    return r;
}

Poset::Poset(std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> generating_pairs)
    : size_(size), leq_(size * size, false)
{
    for (std::size_t a = 0; a < size; ++a) {
        leq_[a * size + a] = true;
    }
    for (const auto& [a, b] : generating_pairs) {
        if (a >= size || b >= size) {
            throw ValidationError("poset relation mentions an element outside 1.." + std::to_string(size));
        }
        leq_[a * size + b] = true;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t i = 0; i < size; ++i) {
            if (!leq_[i * size + k]) {
                continue;
            }
            for (std::size_t j = 0; j < size; ++j) {
                if (leq_[k * size + j]) {
                    leq_[i * size + j] = true;
                }
            }
        }
    }
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            if (leq_[i * size + j] && leq_[j * size + i]) {
                throw ValidationError("relation is not antisymmetric: elements " + std::to_string(i + 1) + " and "
                                      + std::to_string(j + 1) + " are mutually below each other");
            }
        }
    }
}

Poset Poset::chain(std::size_t size)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i + 1 < size; ++i) {
        pairs.emplace_back(i, i + 1);
    }
    return Poset(size, pairs);
}

Poset Poset::antichain(std::size_t size)
{
    return Poset(size, std::span<const std::pair<std::size_t, std::size_t>>{});
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::relation_pairs() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size_; ++a) {
        for (std::size_t b = 0; b < size_; ++b) {
            if (a != b && leq(a, b)) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

PosetMap::PosetMap(Poset poset, std::vector<std::size_t> assignment) : poset_(std::move(poset)), p_(std::move(assignment))
{
    std::vector<bool> hit(poset_.size(), false);
    for (std::size_t v : p_) {
        if (v >= poset_.size()) {
            throw ValidationError("p maps a coordinate outside the poset");
        }
        hit[v] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        throw ValidationError("p : {1..m} -> P must be surjective (m = " + std::to_string(p_.size())
                              + ", |P| = " + std::to_string(poset_.size()) + ")");
    }
}

bool in_pp_group(const Matrix& a, const PosetMap& pm)
{
    if (a.rows() != a.cols() || a.rows() != pm.ambient()) {
        throw PreconditionError("matrix must be square of size m = " + std::to_string(pm.ambient()));
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!pm.allowed(i, j) && !a(i, j).is_zero()) {
                return false;
            }
        }
    }
    return inverse(a).has_value();
}

PseudogroupReport pp_pseudogroup_check(std::span<const JetMap> samples, const PosetMap& pm)
{
    PseudogroupReport report;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const JetMap& jet = samples[k];
        if (jet.min_order() < 1) {
            throw PreconditionError("pseudogroup check needs jets of order at least 1");
        }
        ++report.samples;
        if (!in_pp_group(jet.linear_part(), pm) && report.member) {
            report.member = false;
            report.failing_point = k;
        }
    }
    return report;
}

} // namespace jetforge
