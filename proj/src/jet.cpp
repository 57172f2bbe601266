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

#include "jetforge/jet.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace jetforge {

JetMap::JetMap(Point source_point, Point target_point, std::vector<TruncatedPoly> components, Domain domain,
               unsigned order_if_empty)
    : source_point_(std::move(source_point)),
      target_point_(std::move(target_point)),
      components_(std::move(components)),
      domain_(domain),
      order_if_empty_(order_if_empty)
{
    if (components_.size() != target_point_.size()) {
        throw ValidationError("jet has " + std::to_string(components_.size()) + " components but target dimension "
                              + std::to_string(target_point_.size()));
    }
    for (const auto& c : source_point_) {
        if (c.domain() != domain_) {
            throw ValidationError("source point coordinate outside the jet domain");
        }
    }
    for (const auto& c : target_point_) {
        if (c.domain() != domain_) {
            throw ValidationError("target point coordinate outside the jet domain");
        }
    }
    for (const auto& p : components_) {
        if (p.num_vars() != source_point_.size()) {
            throw ValidationError("jet component variable count differs from the source dimension");
        }
        if (p.domain() != domain_) {
            throw ValidationError("jet component outside the jet domain");
        }
        if (!p.constant_term().is_zero()) {
            throw ValidationError("jet components are displacements and must have no constant term");
        }
    }
}

JetMap JetMap::identity(const Point& point, unsigned order, Domain domain)
{
    std::vector<TruncatedPoly> comps;
    for (std::size_t i = 0; i < point.size(); ++i) {
        comps.push_back(TruncatedPoly::variable(point.size(), order, i, domain));
    }
    return JetMap(point, point, std::move(comps), domain, order);
}

std::vector<unsigned> JetMap::orders() const
{
    std::vector<unsigned> out;
    out.reserve(components_.size());
    for (const auto& p : components_) {
        out.push_back(p.order());
    }
    return out;
}

bool JetMap::is_isotropic() const
{
    return min_order() == max_order();
}

unsigned JetMap::order() const
{
    if (!is_isotropic()) {
        throw PreconditionError("jet has per-component orders; no common order");
    }
    return max_order();
}

unsigned JetMap::min_order() const
{
    if (components_.empty()) {
        return order_if_empty_;
    }
    unsigned r = components_.front().order();
    for (const auto& p : components_) {
        r = std::min(r, p.order());
    }
    return r;
}

unsigned JetMap::max_order() const
{
    if (components_.empty()) {
        return order_if_empty_;
    }
    unsigned r = 0;
    for (const auto& p : components_) {
        r = std::max(r, p.order());
    }
    return r;
}

Matrix JetMap::linear_part() const
{
    Matrix a(target_dim(), source_dim(), domain_);
    for (std::size_t i = 0; i < target_dim(); ++i) {
        for (std::size_t j = 0; j < source_dim(); ++j) {
            a(i, j) = components_[i].coeff(MultiIndex::unit(source_dim(), j));
        }
    }
    return a;
}

bool operator==(const JetMap& a, const JetMap& b)
{
    if (a.domain_ != b.domain_) {
        throw PreconditionError("comparing jets from different coefficient domains");
    }
    if (a.source_dim() != b.source_dim() || a.target_dim() != b.target_dim()) {
        return false;
    }
    if (a.orders() != b.orders() || a.min_order() != b.min_order()) {
        throw PreconditionError("comparing jets of different truncation orders");
    }
    return a.source_point_ == b.source_point_ && a.target_point_ == b.target_point_ && a.components_ == b.components_;
}

namespace {

void require_points_match(const Point& a, const Point& b, const char* what)
{
    if (a.size() != b.size()) {
        throw PreconditionError(std::string(what) + ": dimension mismatch");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!nearly_equal(a[i], b[i])) {
            throw PreconditionError(std::string(what) + ": point mismatch at coordinate " + std::to_string(i + 1));
        }
    }
}

} // namespace

JetMap compose_jets(const JetMap& outer, const JetMap& inner)
{
    if (outer.domain() != inner.domain()) {
        throw PreconditionError("composition across coefficient domains");
    }
    if (inner.target_dim() != outer.source_dim()) {
        throw PreconditionError("composition: inner target dimension " + std::to_string(inner.target_dim())
                                + " differs from outer source dimension " + std::to_string(outer.source_dim()));
    }
    require_points_match(inner.target_point(), outer.source_point(), "composition");

    const Domain domain = outer.domain();
    const std::size_t h = inner.source_dim();
    const unsigned inner_order = inner.min_order();

    std::vector<unsigned> result_orders;
    unsigned work = 0;
    for (unsigned o : outer.orders()) {
        result_orders.push_back(std::min(o, inner_order));
        work = std::max(work, result_orders.back());
    }
    if (outer.target_dim() == 0) {
        work = std::min(outer.min_order(), inner_order);
    }

    // powers[j][k] = inner_j^k truncated at the working order.
    std::vector<std::vector<TruncatedPoly>> powers(inner.target_dim());
    for (std::size_t j = 0; j < inner.target_dim(); ++j) {
        TruncatedPoly base = inner.component(j).truncated(work);
        powers[j].push_back(TruncatedPoly::constant(h, work, Coefficient::one(domain)));
        for (unsigned k = 1; k <= work; ++k) {
            powers[j].push_back(powers[j].back() * base);
        }
    }

    std::map<MultiIndex, TruncatedPoly> monomial_cache;
    auto substituted = [&](const MultiIndex& a) -> const TruncatedPoly& {
        auto it = monomial_cache.find(a);
        if (it != monomial_cache.end()) {
            return it->second;
        }
        TruncatedPoly value = TruncatedPoly::constant(h, work, Coefficient::one(domain));
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] > 0) {
                value = value * powers[j][a[j]];
            }
        }
        return monomial_cache.emplace(a, std::move(value)).first->second;
    };

    std::vector<TruncatedPoly> comps;
    for (std::size_t i = 0; i < outer.target_dim(); ++i) {
        const unsigned r = result_orders[i];
        TruncatedPoly acc(h, work, domain);
        for (const auto& [a, c] : outer.component(i).terms()) {
            if (a.total_degree() > r) {
                break;
            }
            acc += substituted(a) * c;
        }
        comps.push_back(acc.truncated(r));
    }
    return JetMap(inner.source_point(), outer.target_point(), std::move(comps), domain, work);
}

JetMap restrict_order(const JetMap& jet, unsigned order)
{
    return restrict_order(jet, EffectiveOrders{std::vector<unsigned>(jet.target_dim(), order)});
}

JetMap restrict_order(const JetMap& jet, const EffectiveOrders& orders)
{
    if (orders.per_component.size() != jet.target_dim()) {
        throw PreconditionError("restriction needs one order per target component");
    }
    std::vector<TruncatedPoly> comps;
    for (std::size_t i = 0; i < jet.target_dim(); ++i) {
        const unsigned r = orders.per_component[i];
        if (r > jet.component(i).order()) {
            throw PreconditionError("cannot restrict component " + std::to_string(i + 1) + " of order "
                                    + std::to_string(jet.component(i).order()) + " to the higher order "
                                    + std::to_string(r));
        }
        comps.push_back(jet.component(i).truncated(r));
    }
    unsigned empty_order = orders.per_component.empty() ? jet.min_order() : 0;
    return JetMap(jet.source_point(), jet.target_point(), std::move(comps), jet.domain(), empty_order);
}

JetMap invert_jet(const JetMap& jet)
{
    if (jet.source_dim() != jet.target_dim()) {
        throw PreconditionError("only jets between equal dimensions can be inverted");
    }
    const unsigned r = jet.order();
    const std::size_t m = jet.source_dim();
    const Domain domain = jet.domain();

    if (r == 0) {
        std::vector<TruncatedPoly> comps(m, TruncatedPoly(m, 0, domain));
        return JetMap(jet.target_point(), jet.source_point(), std::move(comps), domain, 0);
    }

    auto a_inv = inverse(jet.linear_part());
    if (!a_inv) {
        throw PreconditionError("singular linear part: not a local diffeomorphism at this order");
    }

    std::vector<TruncatedPoly> g(m, TruncatedPoly(m, r, domain));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            g[i].set(MultiIndex::unit(m, j), (*a_inv)(i, j));
        }
    }

    // Degree d of jet o g equals A g_d + (terms from lower-degree parts of g),
    // so g_d = -A^-1 [jet o g_{<d}]_d.
    for (unsigned d = 2; d <= r; ++d) {
        JetMap partial(jet.target_point(), jet.source_point(), g, domain, r);
        JetMap composed = compose_jets(restrict_order(jet, d), restrict_order(partial, d));
        for (const MultiIndex& mono : monomials_of_degree(m, d)) {
            std::vector<Coefficient> residual(m);
            bool any = false;
            for (std::size_t i = 0; i < m; ++i) {
                residual[i] = composed.component(i).coeff(mono);
                any = any || !residual[i].is_zero();
            }
            if (!any) {
                continue;
            }
            std::vector<Coefficient> correction = (*a_inv) * residual;
            for (std::size_t i = 0; i < m; ++i) {
                g[i].set(mono, -correction[i]);
            }
        }
    }
    return JetMap(jet.target_point(), jet.source_point(), std::move(g), domain, r);
}

JetMap prolong_morphism(const JetMap& section, const JetMap& morphism, const JetMap& base_map)
{
    if (base_map.source_dim() != base_map.target_dim()) {
        throw PreconditionError("base map must be between equal dimensions");
    }
    if (section.source_dim() != base_map.source_dim()) {
        throw PreconditionError("section source dimension differs from the base map source dimension");
    }
    require_points_match(section.source_point(), base_map.source_point(), "prolongation (base point)");
    if (section.target_dim() != morphism.source_dim()) {
        throw PreconditionError("section target dimension differs from the morphism source dimension");
    }
    require_points_match(section.target_point(), morphism.source_point(), "prolongation (total space point)");
    JetMap base_inverse = invert_jet(base_map);
    return compose_jets(morphism, compose_jets(section, base_inverse));
}

} // namespace jetforge
