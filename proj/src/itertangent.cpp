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

#include "jetforge/itertangent.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace jetforge {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp)
{
    std::size_t out = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        out *= base;
    }
    return out;
}

void check_order(unsigned order, bool allow_zero = false)
{
    if ((order == 0 && !allow_zero) || order > max_tangent_order) {
        throw ValidationError("tangent order must be between 1 and " + std::to_string(max_tangent_order));
    }
}

void check_point_domain(const Point& p, Domain d, const char* what)
{
    for (const auto& c : p) {
        if (c.domain() != d) {
            throw PreconditionError(std::string(what) + " has coefficients in the wrong domain");
        }
    }
}

bool same_point(const Point& a, const Point& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!nearly_equal(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

bool close_vectors(const std::vector<Coefficient>& a, const std::vector<Coefficient>& b)
{
    return same_point(a, b);
}

bool close_tensors(const Tensor& a, const Tensor& b)
{
    if (a.rows() != b.rows() || a.dim() != b.dim() || a.arity() != b.arity()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!nearly_equal(a.flat(k), b.flat(k))) {
            return false;
        }
    }
    return true;
}

bool close_quasi(const QuasiJet& a, const QuasiJet& b)
{
    if (a.m() != b.m() || a.n() != b.n() || a.order() != b.order()) {
        return false;
    }
    if (!same_point(a.source_point(), b.source_point()) || !same_point(a.target_point(), b.target_point())) {
        return false;
    }
    for (LevelSet s = 1; s <= all_levels(a.order()); ++s) {
        for (std::size_t k = 0; k < a.partitions(s).size(); ++k) {
            if (!close_tensors(a.coeff(s, k), b.coeff(s, k))) {
                return false;
            }
        }
    }
    return true;
}

// Element of K[e_1..e_r]/(e_i^2), one coefficient per subset of levels.
using Dual = std::vector<Coefficient>;

Dual dual_constant(std::size_t size, const Coefficient& c, Domain d)
{
    Dual out(size, Coefficient::zero(d));
    out[0] = c;
    return out;
}

void dual_add(Dual& a, const Dual& b)
{
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (!b[s].is_zero()) {
            a[s] += b[s];
        }
    }
}

Dual dual_mul(const Dual& a, const Dual& b, Domain d)
{
    Dual out(a.size(), Coefficient::zero(d));
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (a[s].is_zero()) {
            continue;
        }
        std::size_t rest = (a.size() - 1) & ~s;
        for (std::size_t t = rest;; t = (t - 1) & rest) {
            if (!b[t].is_zero()) {
                out[s | t] += a[s] * b[t];
            }
            if (t == 0) {
                break;
            }
        }
    }
    return out;
}

Dual dual_times_eps(const Dual& a, unsigned level, Domain d)
{
    Dual out(a.size(), Coefficient::zero(d));
    std::size_t bit = std::size_t{1} << (level - 1);
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (!(s & bit)) {
            out[s | bit] = a[s];
        }
    }
    return out;
}

using DualTensor = std::vector<Dual>; // flat, rows x dim^arity

// Contracts the last index with w.
DualTensor contract_last(const DualTensor& t, const std::vector<Dual>& w, Domain d)
{
    std::size_t m = w.size();
    DualTensor out(t.size() / m, dual_constant(w.front().size(), Coefficient::zero(d), d));
    for (std::size_t q = 0; q < out.size(); ++q) {
        for (std::size_t a = 0; a < m; ++a) {
            dual_add(out[q], dual_mul(t[q * m + a], w[a], d));
        }
    }
    return out;
}

// blocks[S - 1] and inputs[S - 1] for S within levels 1..k.
std::vector<Dual> mu_recurse(unsigned k, std::vector<DualTensor> blocks, std::vector<Dual> target,
                             std::vector<std::vector<Dual>> inputs, Domain d)
{
    if (k == 0) {
        return target;
    }
    LevelSet top = level_bit(k);
    LevelSet lower = all_levels(k - 1);
    const auto& wk = inputs[top - 1];

    std::vector<DualTensor> next_blocks(lower);
    std::vector<std::vector<Dual>> next_inputs(lower);
    for (LevelSet s = 1; s <= lower; ++s) {
        DualTensor b = blocks[s - 1];
        DualTensor extra = contract_last(blocks[(s | top) - 1], wk, d);
        for (std::size_t q = 0; q < b.size(); ++q) {
            dual_add(b[q], dual_times_eps(extra[q], k, d));
        }
        next_blocks[s - 1] = std::move(b);

        std::vector<Dual> w = inputs[s - 1];
        const auto& wu = inputs[(s | top) - 1];
        for (std::size_t a = 0; a < w.size(); ++a) {
            dual_add(w[a], dual_times_eps(wu[a], k, d));
        }
        next_inputs[s - 1] = std::move(w);
    }
    DualTensor shift = contract_last(blocks[top - 1], wk, d);
    for (std::size_t i = 0; i < target.size(); ++i) {
        dual_add(target[i], dual_times_eps(shift[i], k, d));
    }
    return mu_recurse(k - 1, std::move(next_blocks), std::move(target), std::move(next_inputs), d);
}

Coefficient random_coefficient(std::mt19937_64& rng, Domain d)
{
    if (d == Domain::rational) {
        std::uniform_int_distribution<long> num(-5, 5);
        std::uniform_int_distribution<long> den(1, 3);
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return Coefficient(q);
    }
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return Coefficient(u(rng));
}

IterTangentVector random_vector(std::mt19937_64& rng, unsigned order, const Point& base, Domain d)
{
    auto v = IterTangentVector::zero(order, base, d);
    for (LevelSet s = 1; s <= all_levels(order); ++s) {
        for (auto& c : v.block(s)) {
            c = random_coefficient(rng, d);
        }
    }
    return v;
}

std::string level_set_text(LevelSet s)
{
    std::ostringstream out;
    out << '[';
    bool first = true;
    for (unsigned l : levels_of(s)) {
        out << (first ? "" : ",") << l;
        first = false;
    }
    out << ']';
    return out.str();
}

bool close_iter(const IterTangentVector& a, const IterTangentVector& b, LevelSet skip_containing = 0)
{
    if (a.order() != b.order() || !same_point(a.base_point(), b.base_point())) {
        return false;
    }
    for (LevelSet s = 1; s <= all_levels(a.order()); ++s) {
        if (s & skip_containing) {
            continue;
        }
        if (!close_vectors(a.block(s), b.block(s))) {
            return false;
        }
    }
    return true;
}

void check_shape(const IterTangentVector& out, const EvaluatorShape& shape)
{
    if (out.order() != shape.order || out.dim() != shape.n) {
        throw PreconditionError("evaluator returned a vector of the wrong shape");
    }
}

} // namespace

std::vector<unsigned> levels_of(LevelSet s)
{
    std::vector<unsigned> out;
    for (unsigned l = 1; s != 0; ++l, s >>= 1) {
        if (s & 1u) {
            out.push_back(l);
        }
    }
    return out;
}

std::vector<SetPartition> set_partitions(LevelSet s)
{
    if (s == 0) {
        return {SetPartition{}};
    }
    LevelSet low = s & (~s + 1);
    LevelSet others = s & ~low;
    std::vector<SetPartition> out;
    // Submasks of `others` in increasing order.
    for (LevelSet t = 0;; t = (t - others) & others) {
        LevelSet part = low | t;
        for (auto& rest : set_partitions(others & ~t)) {
            SetPartition p;
            p.push_back(part);
            p.insert(p.end(), rest.begin(), rest.end());
            out.push_back(std::move(p));
        }
        if (t == others) {
            break;
        }
    }
    return out;
}

std::string partition_key(LevelSet s, const SetPartition& p)
{
    std::string out = "S=" + level_set_text(s) + ";P=[";
    for (std::size_t k = 0; k < p.size(); ++k) {
        out += (k ? "," : "") + level_set_text(p[k]);
    }
    return out + "]";
}

Tensor::Tensor(std::size_t rows, std::size_t dim, std::size_t arity, Domain domain)
    : rows_(rows), dim_(dim), arity_(arity), domain_(domain),
      data_(rows * ipow(dim, arity), Coefficient::zero(domain))
{
}

std::size_t Tensor::offset(std::size_t row, std::span<const std::size_t> index) const
{
    if (row >= rows_ || index.size() != arity_) {
        throw PreconditionError("tensor index out of range");
    }
    std::size_t k = row;
    for (std::size_t a : index) {
        if (a >= dim_) {
            throw PreconditionError("tensor index out of range");
        }
        k = k * dim_ + a;
    }
    return k;
}

Coefficient& Tensor::at(std::size_t row, std::span<const std::size_t> index) { return data_[offset(row, index)]; }

const Coefficient& Tensor::at(std::size_t row, std::span<const std::size_t> index) const
{
    return data_[offset(row, index)];
}

IterTangentVector::IterTangentVector(unsigned order, Point base_point, std::vector<std::vector<Coefficient>> blocks,
                                     Domain domain)
    : order_(order), base_point_(std::move(base_point)), blocks_(std::move(blocks)), domain_(domain)
{
    check_order(order, true);
    check_point_domain(base_point_, domain, "base point");
    if (blocks_.size() != all_levels(order)) {
        throw ValidationError("iterated tangent vector of order " + std::to_string(order) + " needs "
                              + std::to_string(all_levels(order)) + " blocks");
    }
    for (const auto& b : blocks_) {
        if (b.size() != base_point_.size()) {
            throw ValidationError("block length differs from the base point dimension");
        }
        check_point_domain(b, domain, "block");
    }
}

IterTangentVector IterTangentVector::zero(unsigned order, const Point& base_point, Domain domain)
{
    std::vector<std::vector<Coefficient>> blocks(all_levels(order),
                                                 std::vector<Coefficient>(base_point.size(), Coefficient::zero(domain)));
    return IterTangentVector(order, base_point, std::move(blocks), domain);
}

namespace {

void check_level(const IterTangentVector& v, unsigned level)
{
    if (level == 0 || level > v.order()) {
        throw PreconditionError("level " + std::to_string(level) + " out of range");
    }
}

} // namespace

IterTangentVector level_add(const IterTangentVector& v, const IterTangentVector& w, unsigned level)
{
    check_level(v, level);
    if (w.order() != v.order() || w.domain() != v.domain()) {
        throw PreconditionError("level sum of vectors of different shape");
    }
    LevelSet bit = level_bit(level);
    if (!close_iter(v, w, bit)) {
        throw PreconditionError("level sum needs vectors that agree off level " + std::to_string(level));
    }
    IterTangentVector out = v;
    for (LevelSet s = 1; s <= all_levels(v.order()); ++s) {
        if (s & bit) {
            for (std::size_t a = 0; a < v.dim(); ++a) {
                out.block(s)[a] += w.block(s)[a];
            }
        }
    }
    return out;
}

IterTangentVector level_scale(const IterTangentVector& v, const Coefficient& lambda, unsigned level)
{
    check_level(v, level);
    LevelSet bit = level_bit(level);
    IterTangentVector out = v;
    for (LevelSet s = 1; s <= all_levels(v.order()); ++s) {
        if (s & bit) {
            for (auto& c : out.block(s)) {
                c *= lambda;
            }
        }
    }
    return out;
}

IterTangentVector level_project(const IterTangentVector& v, unsigned level)
{
    check_level(v, level);
    LevelSet below = level_bit(level) - 1;
    std::vector<std::vector<Coefficient>> blocks;
    for (LevelSet s = 1; s <= all_levels(v.order() - 1); ++s) {
        LevelSet old = (s & below) | ((s & ~below) << 1);
        blocks.push_back(v.block(old));
    }
    return IterTangentVector(v.order() - 1, v.base_point(), std::move(blocks), v.domain());
}

NonholJet::NonholJet(std::size_t m, std::size_t n, unsigned order, Point source, Point target,
                     std::vector<Tensor> blocks, Domain domain)
    : m_(m), n_(n), order_(order), source_(std::move(source)), target_(std::move(target)),
      blocks_(std::move(blocks)), domain_(domain)
{
    check_order(order);
    if (source_.size() != m || target_.size() != n) {
        throw ValidationError("nonholonomic jet points do not match its dimensions");
    }
    check_point_domain(source_, domain, "source point");
    check_point_domain(target_, domain, "target point");
    if (blocks_.size() != all_levels(order)) {
        throw ValidationError("nonholonomic jet of order " + std::to_string(order) + " needs "
                              + std::to_string(all_levels(order)) + " blocks");
    }
    for (LevelSet s = 1; s <= all_levels(order); ++s) {
        const Tensor& t = blocks_[s - 1];
        if (t.rows() != n || t.dim() != m || t.arity() != static_cast<std::size_t>(std::popcount(s))) {
            throw ValidationError("block " + level_set_text(s) + " has the wrong shape");
        }
        if (t.domain() != domain) {
            throw PreconditionError("block " + level_set_text(s) + " is in the wrong domain");
        }
    }
}

NonholJet NonholJet::value_part() const
{
    if (order_ < 2) {
        throw PreconditionError("value part needs order at least 2");
    }
    std::vector<Tensor> blocks(blocks_.begin(), blocks_.begin() + all_levels(order_ - 1));
    return NonholJet(m_, n_, order_ - 1, source_, target_, std::move(blocks), domain_);
}

QuasiJet::QuasiJet(std::size_t m, std::size_t n, unsigned order, Point source, Point target,
                   std::vector<std::vector<Tensor>> coeffs, Domain domain)
    : m_(m), n_(n), order_(order), source_(std::move(source)), target_(std::move(target)),
      coeffs_(std::move(coeffs)), domain_(domain)
{
    check_order(order);
    if (source_.size() != m || target_.size() != n) {
        throw ValidationError("quasijet points do not match its dimensions");
    }
    check_point_domain(source_, domain, "source point");
    check_point_domain(target_, domain, "target point");
    if (coeffs_.size() != all_levels(order)) {
        throw ValidationError("quasijet coefficient table has the wrong number of level sets");
    }
    for (LevelSet s = 1; s <= all_levels(order); ++s) {
        partitions_.push_back(set_partitions(s));
        const auto& parts = partitions_.back();
        if (coeffs_[s - 1].size() != parts.size()) {
            throw ValidationError("level set " + level_set_text(s) + " needs one tensor per partition");
        }
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const Tensor& t = coeffs_[s - 1][k];
            if (t.rows() != n || t.dim() != m || t.arity() != parts[k].size() || t.domain() != domain) {
                throw ValidationError("coefficient " + partition_key(s, parts[k]) + " has the wrong shape");
            }
        }
    }
}

QuasiJet QuasiJet::zero(std::size_t m, std::size_t n, unsigned order, const Point& source, const Point& target,
                        Domain domain)
{
    check_order(order);
    std::vector<std::vector<Tensor>> coeffs;
    for (LevelSet s = 1; s <= all_levels(order); ++s) {
        std::vector<Tensor> row;
        for (const auto& p : set_partitions(s)) {
            row.emplace_back(n, m, p.size(), domain);
        }
        coeffs.push_back(std::move(row));
    }
    return QuasiJet(m, n, order, source, target, std::move(coeffs), domain);
}

QuasiJet QuasiJet::identity(std::size_t m, unsigned order, const Point& point, Domain domain)
{
    QuasiJet q = zero(m, m, order, point, point, domain);
    for (LevelSet s = 1; s <= all_levels(order); ++s) {
        Tensor& t = q.coeff(s, q.partitions(s).size() - 1);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t idx[] = {i};
            t.at(i, idx) = Coefficient::one(domain);
        }
    }
    return q;
}

std::size_t QuasiJet::parameter_count() const
{
    std::size_t total = 0;
    for (const auto& row : coeffs_) {
        for (const auto& t : row) {
            total += t.size();
        }
    }
    return total;
}

NonholJet embed_holonomic(const JetMap& jet)
{
    unsigned r = jet.order();
    check_order(r);
    std::size_t m = jet.source_dim();
    std::size_t n = jet.target_dim();
    Domain d = jet.domain();

    // Derivative tensor of each degree k: entry [i; a_1..a_k] = alpha! c_alpha.
    std::vector<Tensor> derivative;
    for (unsigned k = 1; k <= r; ++k) {
        Tensor t(n, m, k, d);
        std::size_t width = ipow(m, k);
        std::vector<unsigned> exps(m);
        for (std::size_t flat = 0; flat < width; ++flat) {
            std::fill(exps.begin(), exps.end(), 0u);
            for (std::size_t f = flat, j = 0; j < k; ++j, f /= m) {
                ++exps[f % m];
            }
            MultiIndex alpha(exps);
            mpz_class factorial = 1;
            for (unsigned e : exps) {
                for (unsigned x = 2; x <= e; ++x) {
                    factorial *= x;
                }
            }
            Coefficient scale = Coefficient::from_rational(mpq_class(factorial), d);
            for (std::size_t i = 0; i < n; ++i) {
                Coefficient c = jet.component(i).coeff(alpha);
                if (!c.is_zero()) {
                    t.flat(i * width + flat) = c * scale;
                }
            }
        }
        derivative.push_back(std::move(t));
    }
    std::vector<Tensor> blocks;
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        blocks.push_back(derivative[std::popcount(s) - 1]);
    }
    return NonholJet(m, n, r, jet.source_point(), jet.target_point(), std::move(blocks), d);
}

IterTangentVector mu_eval(const NonholJet& jet, const IterTangentVector& v)
{
    if (v.order() != jet.order() || v.dim() != jet.m() || v.domain() != jet.domain()) {
        throw PreconditionError("iterated tangent vector does not match the jet's order, source dimension or domain");
    }
    if (!same_point(v.base_point(), jet.source_point())) {
        throw PreconditionError("iterated tangent vector is not based at the jet's source point");
    }
    unsigned r = jet.order();
    Domain d = jet.domain();
    std::size_t size = std::size_t{1} << r;

    std::vector<DualTensor> blocks;
    std::vector<std::vector<Dual>> inputs;
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        const Tensor& t = jet.block(s);
        DualTensor b;
        b.reserve(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            b.push_back(dual_constant(size, t.flat(k), d));
        }
        blocks.push_back(std::move(b));
        std::vector<Dual> w;
        for (const auto& c : v.block(s)) {
            w.push_back(dual_constant(size, c, d));
        }
        inputs.push_back(std::move(w));
    }
    std::vector<Dual> target;
    for (const auto& c : jet.target_point()) {
        target.push_back(dual_constant(size, c, d));
    }
    auto result = mu_recurse(r, std::move(blocks), std::move(target), std::move(inputs), d);

    auto out = IterTangentVector::zero(r, jet.target_point(), d);
    for (LevelSet s = 1; s <= all_levels(r); ++s) {
        for (std::size_t i = 0; i < jet.n(); ++i) {
            out.block(s)[i] = result[i][s];
        }
    }
    return out;
}

IterTangentVector quasi_eval(const QuasiJet& q, const IterTangentVector& v)
{
    if (v.order() != q.order() || v.dim() != q.m() || v.domain() != q.domain()) {
        throw PreconditionError("iterated tangent vector does not match the quasijet's order, source dimension or domain");
    }
    if (!same_point(v.base_point(), q.source_point())) {
        throw PreconditionError("iterated tangent vector is not based at the quasijet's source point");
    }
    Domain d = q.domain();
    std::size_t m = q.m();
    auto out = IterTangentVector::zero(q.order(), q.target_point(), d);
    for (LevelSet s = 1; s <= all_levels(q.order()); ++s) {
        auto& dest = out.block(s);
        const auto& parts = q.partitions(s);
        for (std::size_t p = 0; p < parts.size(); ++p) {
            const Tensor& t = q.coeff(s, p);
            std::size_t k = parts[p].size();
            std::size_t width = ipow(m, k);
            // Product of the part inputs for each flat multi-index.
            std::vector<Coefficient> weight(width, Coefficient::one(d));
            for (std::size_t flat = 0; flat < width; ++flat) {
                std::size_t f = flat;
                for (std::size_t j = k; j-- > 0; f /= m) {
                    weight[flat] *= v.block(parts[p][j])[f % m];
                }
            }
            for (std::size_t i = 0; i < q.n(); ++i) {
                for (std::size_t flat = 0; flat < width; ++flat) {
                    const Coefficient& c = t.flat(i * width + flat);
                    if (!c.is_zero() && !weight[flat].is_zero()) {
                        dest[i] += c * weight[flat];
                    }
                }
            }
        }
    }
    return out;
}

LinearityReport check_level_linearity(const BlockEvaluator& phi, const EvaluatorShape& shape, std::uint64_t seed,
                                      std::size_t probes_per_level)
{
    std::mt19937_64 rng(seed);
    LinearityReport report;
    auto fail = [&](unsigned level, const std::string& what) {
        report.ok = false;
        report.failure = what + " fails at level " + std::to_string(level);
        return report;
    };
    for (unsigned level = 1; level <= shape.order; ++level) {
        LevelSet bit = level_bit(level);
        for (std::size_t probe = 0; probe < probes_per_level; ++probe) {
            ++report.probes;
            auto v = random_vector(rng, shape.order, shape.source, shape.domain);
            auto w = v;
            for (LevelSet s = 1; s <= all_levels(shape.order); ++s) {
                if (s & bit) {
                    for (auto& c : w.block(s)) {
                        c = random_coefficient(rng, shape.domain);
                    }
                }
            }
            auto fv = phi(v);
            auto fw = phi(w);
            check_shape(fv, shape);
            check_shape(fw, shape);
            if (!same_point(fv.base_point(), shape.target)) {
                return fail(level, "base point preservation");
            }
            if (!close_iter(fv, fw, bit)) {
                return fail(level, "projection compatibility");
            }
            if (!close_iter(phi(level_add(v, w, level)), level_add(fv, fw, level))) {
                return fail(level, "additivity");
            }
            Coefficient lambda = random_coefficient(rng, shape.domain);
            if (!close_iter(phi(level_scale(v, lambda, level)), level_scale(fv, lambda, level))) {
                return fail(level, "homogeneity");
            }
        }
    }
    return report;
}

QuasiJet extract_quasi(const BlockEvaluator& phi, const EvaluatorShape& shape, std::uint64_t seed)
{
    check_order(shape.order);
    auto report = check_level_linearity(phi, shape, seed);
    if (!report.ok) {
        throw PreconditionError("evaluator is not level-linear: " + report.failure);
    }
    Domain d = shape.domain;
    std::size_t m = shape.m;
    QuasiJet q = QuasiJet::zero(m, shape.n, shape.order, shape.source, shape.target, d);
    for (LevelSet s = 1; s <= all_levels(shape.order); ++s) {
        const auto parts = q.partitions(s);
        for (std::size_t p = 0; p < parts.size(); ++p) {
            std::size_t k = parts[p].size();
            std::size_t width = ipow(m, k);
            Tensor& t = q.coeff(s, p);
            for (std::size_t flat = 0; flat < width; ++flat) {
                auto v = IterTangentVector::zero(shape.order, shape.source, d);
                std::size_t f = flat;
                for (std::size_t j = k; j-- > 0; f /= m) {
                    v.block(parts[p][j])[f % m] = Coefficient::one(d);
                }
                auto out = phi(v);
                check_shape(out, shape);
                for (std::size_t i = 0; i < shape.n; ++i) {
                    t.flat(i * width + flat) = out.block(s)[i];
                }
            }
        }
    }
    return q;
}

QuasiJet extract_quasi(const NonholJet& jet, std::uint64_t seed)
{
    EvaluatorShape shape{jet.m(), jet.n(), jet.order(), jet.source_point(), jet.target_point(), jet.domain()};
    return extract_quasi([&jet](const IterTangentVector& v) { return mu_eval(jet, v); }, shape, seed);
}

QuasiJet compose_quasi(const QuasiJet& outer, const QuasiJet& inner, std::uint64_t seed)
{
    if (outer.order() != inner.order()) {
        throw PreconditionError("quasijets of different orders cannot be composed");
    }
    if (outer.domain() != inner.domain()) {
        throw PreconditionError("quasijets over different domains cannot be composed");
    }
    if (inner.n() != outer.m() || !same_point(inner.target_point(), outer.source_point())) {
        throw PreconditionError("inner target does not match outer source");
    }
    EvaluatorShape shape{inner.m(), outer.n(), inner.order(), inner.source_point(), outer.target_point(),
                         inner.domain()};
    return extract_quasi(
        [&](const IterTangentVector& v) { return quasi_eval(outer, quasi_eval(inner, v)); }, shape, seed);
}

NonholJet nonhol_readback(const QuasiJet& q)
{
    std::vector<Tensor> blocks;
    for (LevelSet s = 1; s <= all_levels(q.order()); ++s) {
        blocks.push_back(q.coeff(s, 0));
    }
    return NonholJet(q.m(), q.n(), q.order(), q.source_point(), q.target_point(), std::move(blocks), q.domain());
}

bool is_nonholonomic(const QuasiJet& q, std::uint64_t seed)
{
    return close_quasi(extract_quasi(nonhol_readback(q), seed), q);
}

NonholJet compose_nonhol(const NonholJet& outer, const NonholJet& inner, std::uint64_t seed)
{
    QuasiJet composite = compose_quasi(extract_quasi(outer, seed), extract_quasi(inner, seed), seed);
    NonholJet candidate = nonhol_readback(composite);
    if (!close_quasi(extract_quasi(candidate, seed), composite)) {
        throw Error("composite quasijet is not nonholonomic");
    }
    return candidate;
}

bool is_holonomic(const NonholJet& jet)
{
    std::size_t m = jet.m();
    for (unsigned k = 1; k <= jet.order(); ++k) {
        const Tensor& first = jet.block(all_levels(k));
        for (LevelSet s = 1; s <= all_levels(jet.order()); ++s) {
            if (static_cast<unsigned>(std::popcount(s)) == k && !close_tensors(jet.block(s), first)) {
                return false;
            }
        }
        std::size_t width = ipow(m, k);
        std::vector<std::size_t> idx(k);
        for (std::size_t flat = 0; flat < width; ++flat) {
            std::size_t f = flat;
            for (std::size_t j = k; j-- > 0; f /= m) {
                idx[j] = f % m;
            }
            std::vector<std::size_t> sorted = idx;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == idx) {
                continue;
            }
            for (std::size_t i = 0; i < jet.n(); ++i) {
                if (!nearly_equal(first.at(i, idx), first.at(i, sorted))) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::optional<JetMap> holonomic_representative(const NonholJet& jet)
{
    if (!is_holonomic(jet)) {
        return std::nullopt;
    }
    Domain d = jet.domain();
    std::size_t m = jet.m();
    unsigned r = jet.order();
    std::vector<TruncatedPoly> comps(jet.n(), TruncatedPoly(m, r, d));
    for (const auto& alpha : enumerate_monomials(m, r)) {
        unsigned k = alpha.total_degree();
        if (k == 0) {
            continue;
        }
        std::vector<std::size_t> idx;
        mpz_class factorial = 1;
        for (std::size_t a = 0; a < m; ++a) {
            for (unsigned e = 1; e <= alpha[a]; ++e) {
                idx.push_back(a);
                factorial *= e;
            }
        }
        Coefficient scale = Coefficient::from_rational(mpq_class(1, 1) / mpq_class(factorial), d);
        const Tensor& t = jet.block(all_levels(k));
        for (std::size_t i = 0; i < jet.n(); ++i) {
            comps[i].set(alpha, t.at(i, idx) * scale);
        }
    }
    return JetMap(jet.source_point(), jet.target_point(), std::move(comps), d, r);
}

std::uint64_t stirling2(unsigned n, unsigned k)
{
    if (n == 0 && k == 0) {
        return 1;
    }
    if (n == 0 || k == 0 || k > n) {
        return 0;
    }
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

std::uint64_t holonomic_parameter_count(std::size_t m, std::size_t n, unsigned r)
{
    return n * (binomial(m + r, r) - 1);
}

std::uint64_t nonholonomic_parameter_count(std::size_t m, std::size_t n, unsigned r)
{
    return n * (ipow(m + 1, r) - 1);
}

std::uint64_t quasijet_parameter_count(std::size_t m, std::size_t n, unsigned r)
{
    std::uint64_t total = 0;
    for (unsigned k = 1; k <= r; ++k) {
        std::uint64_t per_set = 0;
        for (unsigned j = 1; j <= k; ++j) {
            per_set += stirling2(k, j) * ipow(m, j);
        }
        total += binomial(r, k) * per_set;
    }
    return n * total;
}

} // namespace jetforge
