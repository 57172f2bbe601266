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

#include "jetforge/folijet.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace jetforge {

namespace {

IndexSet normalized(IndexSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<IndexSet> groups_from_structure(const PosetMap& pm)
{
    std::vector<IndexSet> groups;
    for (std::size_t a = 0; a < pm.poset().size(); ++a) {
        IndexSet leaf;
        for (std::size_t i = 0; i < pm.ambient(); ++i) {
            if (!pm.poset().leq(a, pm.assignment()[i])) {
                leaf.push_back(i);
            }
        }
        groups.push_back(std::move(leaf));
    }
    return groups;
}

IndexSet iota(std::size_t from, std::size_t count)
{
    IndexSet s(count);
    std::iota(s.begin(), s.end(), from);
    return s;
}

} // namespace

Multifoliation::Multifoliation(std::size_t ambient, std::vector<IndexSet> groups, MultifoliationKind kind,
                               std::optional<PosetMap> structure)
    : ambient_(ambient), kind_(kind), structure_(std::move(structure))
{
    if (ambient == 0) {
        throw ValidationError("multifoliation on a zero-dimensional model");
    }
    if (groups.empty()) {
        throw ValidationError("multifoliation needs at least one foliation");
    }
    for (auto& g : groups) {
        g = normalized(std::move(g));
        if (!g.empty() && g.back() >= ambient) {
            throw ValidationError("leaf index " + std::to_string(g.back() + 1) + " exceeds dimension "
                                  + std::to_string(ambient));
        }
    }
    groups_ = std::move(groups);

    switch (kind_) {
    case MultifoliationKind::cap:
    case MultifoliationKind::cup: {
        const bool cap = kind_ == MultifoliationKind::cap;
        if (groups_.size() < 2) {
            throw ValidationError("cap/cup multifoliations need at least two foliations");
        }
        auto report = is_transversal(leaf_spaces(), cap ? TransversalityMode::cap : TransversalityMode::cup);
        if (!report.transversal) {
            throw ValidationError(std::string("leaf spaces are not ") + (cap ? "cap" : "cup") + "-transversal");
        }
        if (groups_.size() == ambient_) {
            for (std::size_t d = 0; d < groups_.size(); ++d) {
                if ((cap ? codim(d) : leaf_dim(d)) != 1) {
                    throw ValidationError(std::string("total ") + (cap ? "cap" : "cup")
                                          + "-multifoliation requires every leaf " + (cap ? "codimension" : "dimension")
                                          + " to equal 1");
                }
            }
        }
        break;
    }
    case MultifoliationKind::pp:
        if (!structure_) {
            throw ValidationError("pp multifoliation needs its poset and coordinate map");
        }
        if (structure_->ambient() != ambient_) {
            throw ValidationError("poset map covers a different number of coordinates");
        }
        if (groups_from_structure(*structure_) != groups_) {
            throw ValidationError("groups do not match the foliations induced by the poset map");
        }
        break;
    case MultifoliationKind::unchecked:
        break;
    }
}

std::vector<Subspace> Multifoliation::leaf_spaces() const
{
    std::vector<Subspace> spaces;
    for (const auto& g : groups_) {
        spaces.push_back(Subspace::coordinate(ambient_, g));
    }
    return spaces;
}

Multifoliation fibration_multifoliation(std::size_t fiber_dim, std::size_t base_dim)
{
    if (fiber_dim + base_dim == 0) {
        throw PreconditionError("fibration over a zero-dimensional total space");
    }
    return Multifoliation(fiber_dim + base_dim, {iota(base_dim, fiber_dim), iota(0, base_dim)}, MultifoliationKind::cap);
}

Multifoliation pp_multifoliation(const PosetMap& pm)
{
    return Multifoliation(pm.ambient(), groups_from_structure(pm), MultifoliationKind::pp, pm);
}

EffectiveOrders effective_orders(const Multifoliation& f, const MultiOrder& r)
{
    return effective_orders(f.ambient(), f.groups(), r.orders);
}

FoliJet::FoliJet(Multifoliation f, MultiOrder r, JetMap data) : f_(std::move(f)), r_(std::move(r)), data_(std::move(data))
{
    if (data_.target_dim() != f_.ambient()) {
        throw ValidationError("folijet data target dimension differs from the multifoliation dimension");
    }
    EffectiveOrders e = effective_orders(f_, r_);
    if (data_.orders() != e.per_component) {
        throw ValidationError("folijet data is not truncated to the effective orders");
    }
}

FoliJet folijet_of_map(const JetMap& jet, const Multifoliation& f, const MultiOrder& r)
{
    if (jet.target_dim() != f.ambient()) {
        throw PreconditionError("jet target dimension " + std::to_string(jet.target_dim())
                                + " differs from the multifoliation dimension " + std::to_string(f.ambient()));
    }
    EffectiveOrders e = effective_orders(f, r);
    for (std::size_t i = 0; i < e.per_component.size(); ++i) {
        if (jet.component(i).order() < e.per_component[i]) {
            throw PreconditionError("insufficient input order: component " + std::to_string(i + 1) + " has order "
                                    + std::to_string(jet.component(i).order()) + ", needs "
                                    + std::to_string(e.per_component[i]));
        }
    }
    return FoliJet(f, r, restrict_order(jet, e));
}

bool folijet_equal(const FoliJet& a, const FoliJet& b)
{
    if (!(a.foliation() == b.foliation())) {
        throw PreconditionError("comparing folijets modulo different multifoliations");
    }
    if (!(a.multiorder() == b.multiorder())) {
        throw PreconditionError("comparing folijets of different multiorders");
    }
    if (a.data().domain() != b.data().domain()) {
        throw PreconditionError("comparing folijets from different coefficient domains");
    }
    if (a.source_point() != b.source_point() || a.target_point() != b.target_point()) {
        throw PreconditionError("comparing folijets with different source or target points");
    }
    return a.data() == b.data();
}

FoliJet restrict_multiorder(const FoliJet& a, const MultiOrder& lower)
{
    const auto& r = a.multiorder().orders;
    if (lower.orders.size() != r.size()) {
        throw PreconditionError("restricted multiorder has the wrong number of entries");
    }
    for (std::size_t d = 0; d < r.size(); ++d) {
        if (lower.orders[d] > r[d]) {
            throw PreconditionError("restricted order " + std::to_string(lower.orders[d]) + " exceeds order "
                                    + std::to_string(r[d]) + " in slot " + std::to_string(d + 1));
        }
    }
    return FoliJet(a.foliation(), lower, restrict_order(a.data(), effective_orders(a.foliation(), lower)));
}

std::size_t folijet_fiber_dim(const Multifoliation& f, const MultiOrder& r, std::size_t source_dim)
{
    std::size_t total = 0;
    for (unsigned e : effective_orders(f, r).per_component) {
        total += binomial(source_dim + e, e) - 1;
    }
    return total;
}

namespace {

Point slice(const Point& p, std::size_t from, std::size_t count)
{
    return Point(p.begin() + static_cast<std::ptrdiff_t>(from), p.begin() + static_cast<std::ptrdiff_t>(from + count));
}

// Components [from, from+count) restricted to the given source variables.
JetMap sub_jet(const JetMap& jet, std::size_t from, std::size_t count, const IndexSet& vars, unsigned order)
{
    std::vector<TruncatedPoly> comps;
    Point source;
    for (std::size_t v : vars) {
        source.push_back(jet.source_point()[v]);
    }
    for (std::size_t i = from; i < from + count; ++i) {
        comps.push_back(jet.component(i).restricted_to_variables(vars).truncated(order));
    }
    return JetMap(std::move(source), slice(jet.target_point(), from, count), std::move(comps), jet.domain(), order);
}

RSQJet extract_rsq(const JetMap& data, FiberedShape source, FiberedShape target, RSQOrders o)
{
    if (o.R > o.S || o.R > o.Q) {
        throw PreconditionError("(R,S,Q)-jets need R <= S and R <= Q");
    }
    if (data.source_dim() != source.total() || data.target_dim() != target.total()) {
        throw PreconditionError("jet dimensions do not match the fibered shapes");
    }
    const IndexSet base_vars = iota(0, source.base_dim);
    const IndexSet fiber_vars = iota(source.base_dim, source.fiber_dim);
    for (std::size_t i = 0; i < target.base_dim; ++i) {
        if (data.component(i).involves_any(fiber_vars)) {
            throw PreconditionError("non-fibered morphism: base component " + std::to_string(i + 1)
                                    + " depends on fiber variables");
        }
        if (data.component(i).order() < std::max(o.R, o.Q)) {
            throw PreconditionError("order shortfall in base component " + std::to_string(i + 1));
        }
    }
    for (std::size_t i = target.base_dim; i < target.total(); ++i) {
        if (data.component(i).order() < std::max(o.R, o.S)) {
            throw PreconditionError("order shortfall in fiber component " + std::to_string(i + 1));
        }
    }
    return RSQJet{o, restrict_order(data, o.R), sub_jet(data, target.base_dim, target.fiber_dim, fiber_vars, o.S),
                  sub_jet(data, 0, target.base_dim, base_vars, o.Q)};
}

} // namespace

RSQJet rsq_of_morphism(const JetMap& jet, FiberedShape source, FiberedShape target, RSQOrders orders)
{
    if (jet.min_order() < std::max(orders.S, orders.Q)) {
        throw PreconditionError("order shortfall: jet order " + std::to_string(jet.min_order()) + " below max(S,Q)");
    }
    return extract_rsq(jet, source, target, orders);
}

RSQJet rsq_from_folijet(const FoliJet& a, FiberedShape source, unsigned R)
{
    const Multifoliation& f = a.foliation();
    if (f.delta() != 2) {
        throw PreconditionError("expected the two-group fibration multifoliation");
    }
    FiberedShape target{f.leaf_dim(1), f.leaf_dim(0)};
    if (!(f == fibration_multifoliation(target.fiber_dim, target.base_dim))) {
        throw PreconditionError("folijet is not taken modulo a fibration multifoliation");
    }
    const auto& r = a.multiorder().orders;
    return extract_rsq(a.data(), source, target, RSQOrders{R, r[0], r[1]});
}

ChartCheck experimental_chart_check(const JetMap& f, const JetMap& g, const Multifoliation& F, const MultiOrder& R,
                                    const JetMap& transition)
{
    ChartCheck check;
    check.equal_before = folijet_equal(folijet_of_map(f, F, R), folijet_of_map(g, F, R));
    check.equal_after =
        folijet_equal(folijet_of_map(compose_jets(transition, f), F, R), folijet_of_map(compose_jets(transition, g), F, R));
    return check;
}

} // namespace jetforge
