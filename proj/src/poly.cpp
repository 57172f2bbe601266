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

#include "jetforge/poly.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <string>

namespace jetforge {

TruncatedPoly::TruncatedPoly(std::size_t num_vars, unsigned order, Domain domain)
    : num_vars_(num_vars), order_(order), domain_(domain)
{
}

TruncatedPoly TruncatedPoly::constant(std::size_t num_vars, unsigned order, const Coefficient& c)
{
    TruncatedPoly p(num_vars, order, c.domain());
    p.set(MultiIndex::zero(num_vars), c);
    return p;
}

TruncatedPoly TruncatedPoly::variable(std::size_t num_vars, unsigned order, std::size_t i, Domain domain)
{
    TruncatedPoly p(num_vars, order, domain);
    if (order >= 1) {
        p.set(MultiIndex::unit(num_vars, i), Coefficient::one(domain));
    }
    return p;
}

Coefficient TruncatedPoly::coeff(const MultiIndex& index) const
{
    auto it = terms_.find(index);
    return it == terms_.end() ? Coefficient::zero(domain_) : it->second;
}

Coefficient TruncatedPoly::constant_term() const
{
    return coeff(MultiIndex::zero(num_vars_));
}

void TruncatedPoly::set(const MultiIndex& index, Coefficient c)
{
    if (index.size() != num_vars_) {
        throw ValidationError("multi-index length " + std::to_string(index.size()) + " does not match "
                              + std::to_string(num_vars_) + " variables");
    }
    if (c.domain() != domain_) {
        throw PreconditionError("coefficient domain differs from polynomial domain");
    }
    if (index.total_degree() > order_) {
        throw ValidationError("term of degree " + std::to_string(index.total_degree()) + " exceeds truncation order "
                              + std::to_string(order_));
    }
    if (c.is_zero()) {
        terms_.erase(index);
    } else {
        terms_.insert_or_assign(index, std::move(c));
    }
}

void TruncatedPoly::add_to(const MultiIndex& index, const Coefficient& c)
{
    if (index.total_degree() > order_) {
        return;
    }
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        if (!c.is_zero()) {
            if (c.domain() != domain_) {
                throw PreconditionError("coefficient domain differs from polynomial domain");
            }
            terms_.emplace(index, c);
        }
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

void TruncatedPoly::check_compatible(const TruncatedPoly& rhs, const char* what) const
{
    if (num_vars_ != rhs.num_vars_) {
        throw PreconditionError(std::string(what) + ": variable count mismatch");
    }
    if (order_ != rhs.order_) {
        throw PreconditionError(std::string(what) + ": truncation order mismatch (" + std::to_string(order_) + " vs "
                                + std::to_string(rhs.order_) + ")");
    }
    if (domain_ != rhs.domain_) {
        throw PreconditionError(std::string(what) + ": coefficient domain mismatch");
    }
}

TruncatedPoly& TruncatedPoly::operator+=(const TruncatedPoly& rhs)
{
    check_compatible(rhs, "addition");
    for (const auto& [index, c] : rhs.terms_) {
        add_to(index, c);
    }
    return *this;
}

TruncatedPoly& TruncatedPoly::operator-=(const TruncatedPoly& rhs)
{
    check_compatible(rhs, "subtraction");
    for (const auto& [index, c] : rhs.terms_) {
        add_to(index, -c);
    }
    return *this;
}

TruncatedPoly& TruncatedPoly::operator*=(const Coefficient& scalar)
{
    if (scalar.domain() != domain_) {
        throw PreconditionError("scalar domain differs from polynomial domain");
    }
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [index, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b)
{
    a.check_compatible(b, "multiplication");
    TruncatedPoly out(a.num_vars_, a.order_, a.domain_);
    for (const auto& [ia, ca] : a.terms_) {
        for (const auto& [ib, cb] : b.terms_) {
            // Terms are graded, so once the degree overflows the rest of b does too.
            if (ia.total_degree() + ib.total_degree() > a.order_) {
                break;
            }
            out.add_to(ia + ib, ca * cb);
        }
    }
    return out;
}

TruncatedPoly TruncatedPoly::operator-() const
{
    TruncatedPoly out(*this);
    for (auto& [index, c] : out.terms_) {
        c = -c;
    }
    return out;
}

TruncatedPoly TruncatedPoly::truncated(unsigned new_order) const
{
    TruncatedPoly out(num_vars_, new_order, domain_);
    for (const auto& [index, c] : terms_) {
        if (index.total_degree() > new_order) {
            break;
        }
        out.terms_.emplace(index, c);
    }
    return out;
}

TruncatedPoly TruncatedPoly::without_constant() const
{
    TruncatedPoly out(*this);
    out.terms_.erase(MultiIndex::zero(num_vars_));
    return out;
}

TruncatedPoly TruncatedPoly::homogeneous_part(unsigned degree) const
{
    TruncatedPoly out(num_vars_, order_, domain_);
    for (const auto& [index, c] : terms_) {
        if (index.total_degree() == degree) {
            out.terms_.emplace(index, c);
        }
    }
    return out;
}

TruncatedPoly TruncatedPoly::restricted_to_variables(std::span<const std::size_t> keep) const
{
    TruncatedPoly out(keep.size(), order_, domain_);
    for (const auto& [index, c] : terms_) {
        unsigned kept_degree = 0;
        std::vector<unsigned> e(keep.size(), 0);
        for (std::size_t k = 0; k < keep.size(); ++k) {
            e[k] = index[keep[k]];
            kept_degree += e[k];
        }
        if (kept_degree != index.total_degree()) {
            continue;
        }
        out.terms_.emplace(MultiIndex(std::move(e)), c);
    }
    return out;
}

TruncatedPoly TruncatedPoly::embedded(std::size_t new_num_vars, std::span<const std::size_t> new_positions) const
{
    if (new_positions.size() != num_vars_) {
        throw PreconditionError("embedding needs one position per variable");
    }
    TruncatedPoly out(new_num_vars, order_, domain_);
    for (const auto& [index, c] : terms_) {
        std::vector<unsigned> e(new_num_vars, 0);
        for (std::size_t i = 0; i < num_vars_; ++i) {
            e.at(new_positions[i]) += index[i];
        }
        out.terms_.emplace(MultiIndex(std::move(e)), c);
    }
    return out;
}

bool TruncatedPoly::involves_any(std::span<const std::size_t> vars) const
{
    for (const auto& [index, c] : terms_) {
        for (std::size_t v : vars) {
            if (index[v] > 0) {
                return true;
            }
        }
    }
    return false;
}

bool operator==(const TruncatedPoly& a, const TruncatedPoly& b)
{
    a.check_compatible(b, "equality");
    return a.terms_ == b.terms_;
}

TruncatedPoly apply_series(const TruncatedPoly& u, std::span<const Coefficient> coeffs)
{
    if (!u.constant_term().is_zero()) {
        throw PreconditionError("series argument must have zero constant term");
    }
    TruncatedPoly result(u.num_vars(), u.order(), u.domain());
    if (coeffs.empty()) {
        return result;
    }
    // Horner; u has no constant term so degrees above order() vanish.
    const std::size_t top = std::min<std::size_t>(coeffs.size() - 1, u.order());
    result = TruncatedPoly::constant(u.num_vars(), u.order(), coeffs[top]);
    for (std::size_t k = top; k-- > 0;) {
        result = result * u;
        result.add_to(MultiIndex::zero(u.num_vars()), coeffs[k]);
    }
    return result;
}

TruncatedPoly power(const TruncatedPoly& base, unsigned exponent)
{
    TruncatedPoly result = TruncatedPoly::constant(base.num_vars(), base.order(), Coefficient::one(base.domain()));
    TruncatedPoly factor = base;
    while (exponent > 0) {
        if (exponent & 1u) {
            result = result * factor;
        }
        exponent >>= 1u;
        if (exponent > 0) {
            factor = factor * factor;
        }
    }
    return result;
}

} // namespace jetforge
