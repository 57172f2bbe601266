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
#include "jetforge/linalg.hpp"
#include "jetforge/multiindex.hpp"
#include "jetforge/poly.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace jetforge {

using Point = std::vector<Coefficient>;

// Jet of a map R^h -> R^m at source_point, stored in displacement coordinates:
// component i is the Taylor polynomial of f_i(x + t) - f_i(x) in t, with
// Taylor-normalized coefficients and no constant term. The value f(x) lives
// in target_point. Components may carry different truncation orders.
class JetMap {
public:
    // `order_if_empty` supplies the order of a jet with no target components.
    JetMap(Point source_point, Point target_point, std::vector<TruncatedPoly> components, Domain domain,
           unsigned order_if_empty = 0);

    static JetMap identity(const Point& point, unsigned order, Domain domain);

    std::size_t source_dim() const noexcept { return source_point_.size(); }
    std::size_t target_dim() const noexcept { return target_point_.size(); }
    Domain domain() const noexcept { return domain_; }
    const Point& source_point() const noexcept { return source_point_; }
    const Point& target_point() const noexcept { return target_point_; }
    const std::vector<TruncatedPoly>& components() const noexcept { return components_; }
    const TruncatedPoly& component(std::size_t i) const { return components_.at(i); }

    std::vector<unsigned> orders() const;
    bool is_isotropic() const;
    // Common order; throws for anisotropic jets.
    unsigned order() const;
    unsigned min_order() const;
    unsigned max_order() const;

    // Jacobian of the displacement components, target_dim x source_dim.
    Matrix linear_part() const;

    // Jets of different truncation orders are not comparable: throws.
    friend bool operator==(const JetMap& a, const JetMap& b);

private:
    Point source_point_;
    Point target_point_;
    std::vector<TruncatedPoly> components_;
    Domain domain_;
    unsigned order_if_empty_;
};

// Jet of outer o inner. Component i of the result has order
// min(outer order i, smallest inner order).
JetMap compose_jets(const JetMap& outer, const JetMap& inner);

// Two-sided inverse, solved degree by degree. Requires a square isotropic
// jet with invertible linear part.
JetMap invert_jet(const JetMap& jet);

JetMap restrict_order(const JetMap& jet, unsigned order);
JetMap restrict_order(const JetMap& jet, const EffectiveOrders& orders);

// j(f) o section o j(f0)^-1: the induced map on jets of sections of a fibered
// manifold under a fibered morphism covering the base diffeomorphism f0.
JetMap prolong_morphism(const JetMap& section, const JetMap& morphism, const JetMap& base_map);

} // namespace jetforge
