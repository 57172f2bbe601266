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

#include "jetforge/weil.hpp"

#include "jetforge/error.hpp"

#include <algorithm>

namespace jetforge {

namespace {

std::string monomial_text(const MultiIndex& a)
{
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += (i ? "," : "") + std::to_string(a[i]);
    }
    return out + "]";
}

// Image of basis element j of A under L, as a column of B coordinates.
std::vector<Coefficient> column(const Matrix& l, std::size_t j)
{
    std::vector<Coefficient> out;
    out.reserve(l.rows());
    for (std::size_t i = 0; i < l.rows(); ++i) {
        out.push_back(l(i, j));
    }
    return out;
}

std::vector<Coefficient> multiply(const WeilAlgebra& b, const std::vector<Coefficient>& x,
                                  const std::vector<Coefficient>& y, Domain d)
{
    std::vector<Coefficient> out(b.dim(), Coefficient::zero(d));
    for (std::size_t i = 0; i < b.dim(); ++i) {
        if (x[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.dim(); ++j) {
            if (y[j].is_zero()) {
                continue;
            }
            if (auto k = b.product(i, j)) {
                out[*k] += x[i] * y[j];
            }
        }
    }
    return out;
}

std::string pair_text(std::size_t beta, std::size_t alpha)
{
    return "(" + std::to_string(beta + 1) + "," + std::to_string(alpha + 1) + ")";
}

} // namespace

WeilAlgebra::WeilAlgebra(std::size_t generators, std::vector<MultiIndex> basis)
    : generators_(generators), basis_(std::move(basis))
{
    std::sort(basis_.begin(), basis_.end());
    if (std::adjacent_find(basis_.begin(), basis_.end()) != basis_.end()) {
        throw ValidationError("Weil algebra basis has a repeated monomial");
    }
    for (const auto& a : basis_) {
        if (a.size() != generators_) {
            throw ValidationError("basis monomial " + monomial_text(a) + " does not have "
                                  + std::to_string(generators_) + " exponents");
        }
    }
    if (basis_.empty() || basis_.front().total_degree() != 0) {
        throw ValidationError("Weil algebra basis must contain 1");
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        index_.emplace(basis_[i], i);
    }
    for (const auto& a : basis_) {
        for (std::size_t v = 0; v < generators_; ++v) {
            if (a[v] == 0) {
                continue;
            }
            auto exps = a.exponents();
            --exps[v];
            if (!index_.contains(MultiIndex(exps))) {
                throw ValidationError("basis is not closed under divisibility at " + monomial_text(a));
            }
        }
    }
    std::size_t n = basis_.size();
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            table_[i * n + j] = index_of(basis_[i] + basis_[j]);
        }
    }
}

std::optional<std::size_t> WeilAlgebra::index_of(const MultiIndex& monomial) const
{
    auto it = index_.find(monomial);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t WeilAlgebra::width() const
{
    return static_cast<std::size_t>(
        std::count_if(basis_.begin(), basis_.end(), [](const MultiIndex& a) { return a.total_degree() == 1; }));
}

unsigned WeilAlgebra::height() const { return basis_.back().total_degree(); }

bool WeilAlgebra::table_is_consistent() const
{
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (product(unit(), i) != i) {
            return false;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (product(i, j) != product(j, i)) {
                return false;
            }
            for (std::size_t k = 0; k < n; ++k) {
                auto ij = product(i, j);
                auto jk = product(j, k);
                auto left = ij ? product(*ij, k) : std::nullopt;
                auto right = jk ? product(i, *jk) : std::nullopt;
                if (left != right) {
                    return false;
                }
            }
        }
    }
    return true;
}

WeilAlgebra algebra_of_profile(std::size_t k, unsigned r)
{
    return WeilAlgebra(k, enumerate_monomials(k, r));
}

WeilAlgebra tensor_product(const WeilAlgebra& a, const WeilAlgebra& b)
{
    std::vector<MultiIndex> basis;
    basis.reserve(a.dim() * b.dim());
    for (const auto& x : a.basis()) {
        for (const auto& y : b.basis()) {
            auto exps = x.exponents();
            exps.insert(exps.end(), y.exponents().begin(), y.exponents().end());
            basis.emplace_back(std::move(exps));
        }
    }
    return WeilAlgebra(a.generators() + b.generators(), std::move(basis));
}

HomReport hom_check(const Matrix& l, const WeilAlgebra& a, const WeilAlgebra& b)
{
    if (l.rows() != b.dim() || l.cols() != a.dim()) {
        throw ValidationError("homomorphism matrix must be " + std::to_string(b.dim()) + " x " + std::to_string(a.dim())
                              + ", got " + std::to_string(l.rows()) + " x " + std::to_string(l.cols()));
    }
    Domain d = l.domain();
    HomReport report;
    auto image_of_unit = column(l, a.unit());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        if (!(image_of_unit[i] == (i == b.unit() ? Coefficient::one(d) : Coefficient::zero(d)))) {
            report.homomorphism = false;
            report.violation = "L(1) != 1";
            return report;
        }
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto li = column(l, i);
        for (std::size_t j = i; j < a.dim(); ++j) {
            auto lhs = std::vector<Coefficient>(b.dim(), Coefficient::zero(d));
            if (auto k = a.product(i, j)) {
                lhs = column(l, *k);
            }
            if (lhs != multiply(b, li, column(l, j), d)) {
                report.homomorphism = false;
                report.violation = "L(xy) != L(x)L(y) for x=" + monomial_text(a.basis()[i])
                                   + ", y=" + monomial_text(a.basis()[j]);
                return report;
            }
        }
    }
    return report;
}

InductiveReport validate_inductive_system(const InductiveSystem& s)
{
    const Poset& p = s.poset;
    InductiveReport report;
    auto fail = [&](std::string what) {
        report.valid = false;
        report.violation = std::move(what);
        return report;
    };
    if (s.algebras.size() != p.size()) {
        return fail("expected one algebra per poset element");
    }
    for (const auto& [key, m] : s.maps) {
        if (key.first >= p.size() || key.second >= p.size() || !p.leq(key.first, key.second)) {
            return fail("map " + pair_text(key.first, key.second) + " is not indexed by a relation beta <= alpha");
        }
    }
    auto map_of = [&](std::size_t beta, std::size_t alpha) -> std::optional<Matrix> {
        auto it = s.maps.find({beta, alpha});
        if (it != s.maps.end()) {
            return it->second;
        }
        if (beta == alpha) {
            return Matrix::identity(s.algebras[alpha].dim(), Domain::rational);
        }
        return std::nullopt;
    };
    for (std::size_t alpha = 0; alpha < p.size(); ++alpha) {
        if (map_of(alpha, alpha) != Matrix::identity(s.algebras[alpha].dim(), Domain::rational)) {
            return fail("map " + pair_text(alpha, alpha) + " is not the identity");
        }
    }
    for (std::size_t beta = 0; beta < p.size(); ++beta) {
        for (std::size_t alpha = 0; alpha < p.size(); ++alpha) {
            if (beta == alpha || !p.leq(beta, alpha)) {
                continue;
            }
            auto m = map_of(beta, alpha);
            if (!m) {
                return fail("missing map " + pair_text(beta, alpha));
            }
            auto hom = hom_check(*m, s.algebras[beta], s.algebras[alpha]);
            if (!hom.homomorphism) {
                return fail("map " + pair_text(beta, alpha) + " is not a homomorphism: " + hom.violation);
            }
        }
    }
    for (std::size_t gamma = 0; gamma < p.size(); ++gamma) {
        for (std::size_t beta = 0; beta < p.size(); ++beta) {
            for (std::size_t alpha = 0; alpha < p.size(); ++alpha) {
                if (!p.leq(gamma, beta) || !p.leq(beta, alpha)) {
                    continue;
                }
                if (*map_of(beta, alpha) * *map_of(gamma, beta) != *map_of(gamma, alpha)) {
                    return fail("composition fails for " + pair_text(gamma, beta) + " then " + pair_text(beta, alpha));
                }
            }
        }
    }
    return report;
}

} // namespace jetforge
