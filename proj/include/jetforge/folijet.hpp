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
#include "jetforge/multiindex.hpp"
#include "jetforge/transversal.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace jetforge {

enum class MultifoliationKind { cap, cup, pp, unchecked };

// Multifoliation in a fixed adapted chart of R^m: group d is the coordinate
// foliation whose leaves move the coordinates in groups[d].
class Multifoliation {
public:
    // Groups are sorted and de-duplicated. cap and cup kinds are validated by
    // exact transversality; pp needs the (P,p) data the groups derive from.
    Multifoliation(std::size_t ambient, std::vector<IndexSet> groups, MultifoliationKind kind,
                   std::optional<PosetMap> structure = std::nullopt);

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t delta() const noexcept { return groups_.size(); }
    const std::vector<IndexSet>& groups() const noexcept { return groups_; }
    std::size_t leaf_dim(std::size_t d) const { return groups_.at(d).size(); }
    std::size_t codim(std::size_t d) const { return ambient_ - leaf_dim(d); }
    MultifoliationKind kind() const noexcept { return kind_; }
    const std::optional<PosetMap>& structure() const noexcept { return structure_; }

    std::vector<Subspace> leaf_spaces() const;

    friend bool operator==(const Multifoliation& a, const Multifoliation& b)
    {
        return a.ambient_ == b.ambient_ && a.groups_ == b.groups_;
    }

private:
    std::size_t ambient_;
    std::vector<IndexSet> groups_;
    MultifoliationKind kind_;
    std::optional<PosetMap> structure_;
};

struct MultiOrder {
    std::vector<unsigned> orders;

    friend bool operator==(const MultiOrder&, const MultiOrder&) = default;
};

// Base coordinates first (0..q-1), fiber coordinates after (q..q+p-1).
// Group 0 is the fiber foliation, group 1 the constant-section foliation.
Multifoliation fibration_multifoliation(std::size_t fiber_dim, std::size_t base_dim);

// One group per element a of P; its leaves move the coordinates i with p(i) not >= a.
Multifoliation pp_multifoliation(const PosetMap& pm);

EffectiveOrders effective_orders(const Multifoliation& f, const MultiOrder& r);

// Class of maps with multiorder contact modulo F; `data` is the canonical
// representative, truncated per component to the effective orders.
class FoliJet {
public:
    FoliJet(Multifoliation f, MultiOrder r, JetMap data);

    const Multifoliation& foliation() const noexcept { return f_; }
    const MultiOrder& multiorder() const noexcept { return r_; }
    const JetMap& data() const noexcept { return data_; }
    const Point& source_point() const noexcept { return data_.source_point(); }
    const Point& target_point() const noexcept { return data_.target_point(); }

private:
    Multifoliation f_;
    MultiOrder r_;
    JetMap data_;
};

FoliJet folijet_of_map(const JetMap& jet, const Multifoliation& f, const MultiOrder& r);

// Exact comparison of canonical representatives. Different F, R, source or
// target points violate the precondition and throw.
bool folijet_equal(const FoliJet& a, const FoliJet& b);

FoliJet restrict_multiorder(const FoliJet& a, const MultiOrder& lower);

// sum_i (C(h + e_i, e_i) - 1) over the effective orders e.
std::size_t folijet_fiber_dim(const Multifoliation& f, const MultiOrder& r, std::size_t source_dim);

struct FiberedShape {
    std::size_t base_dim = 0;
    std::size_t fiber_dim = 0;

    std::size_t total() const noexcept { return base_dim + fiber_dim; }
    friend bool operator==(const FiberedShape&, const FiberedShape&) = default;
};

struct RSQOrders {
    unsigned R = 0;
    unsigned S = 0;
    unsigned Q = 0;

    friend bool operator==(const RSQOrders&, const RSQOrders&) = default;
};

struct RSQJet {
    RSQOrders orders;
    JetMap whole; // order R, all variables
    JetMap fiber; // order S, fiber components in fiber variables
    JetMap base;  // order Q, base components in base variables

    friend bool operator==(const RSQJet& a, const RSQJet& b)
    {
        return a.orders == b.orders && a.whole == b.whole && a.fiber == b.fiber && a.base == b.base;
    }
};

RSQJet rsq_of_morphism(const JetMap& jet, FiberedShape source, FiberedShape target, RSQOrders orders);

// Reads the (R,S,Q)-jet off an (S,Q)-jet modulo the fibration multifoliation.
// Equal FoliJets give equal results; the converse fails in general.
RSQJet rsq_from_folijet(const FoliJet& a, FiberedShape source, unsigned R);

// Chart-dependence probe: compares f and g modulo F before and after
// postcomposing both with `transition`. Reports; asserts nothing.
struct ChartCheck {
    bool equal_before = false;
    bool equal_after = false;
};

ChartCheck experimental_chart_check(const JetMap& f, const JetMap& g, const Multifoliation& F, const MultiOrder& R,
                                    const JetMap& transition);

} // namespace jetforge
