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
#include "jetforge/jet.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jetforge {

// Non-empty subset of levels {1..r}; bit (l - 1) stands for level l.
using LevelSet = std::uint32_t;

constexpr unsigned max_tangent_order = 10;

inline LevelSet level_bit(unsigned level) { return LevelSet{1} << (level - 1); }
inline LevelSet all_levels(unsigned order) { return (LevelSet{1} << order) - 1; }
std::vector<unsigned> levels_of(LevelSet s);

// Set partition with parts ordered by ascending minimum.
using SetPartition = std::vector<LevelSet>;

// All set partitions of s in canonical order (the single-part partition last).
std::vector<SetPartition> set_partitions(LevelSet s);

// "S=[1,2];P=[[1],[2]]"
std::string partition_key(LevelSet s, const SetPartition& p);

// Coefficient tensor of shape rows x dim^arity, row-major with the last index
// fastest. Index j pairs with the j-th level (ascending) of a block, or the
// j-th part of a partition.
class Tensor {
public:
    Tensor(std::size_t rows, std::size_t dim, std::size_t arity, Domain domain);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t arity() const noexcept { return arity_; }
    Domain domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return data_.size(); }
    // dim^arity
    std::size_t row_size() const noexcept { return rows_ == 0 ? 0 : data_.size() / rows_; }

    Coefficient& flat(std::size_t k) { return data_[k]; }
    const Coefficient& flat(std::size_t k) const { return data_[k]; }
    Coefficient& at(std::size_t row, std::span<const std::size_t> index);
    const Coefficient& at(std::size_t row, std::span<const std::size_t> index) const;

    friend bool operator==(const Tensor&, const Tensor&) = default;

private:
    std::size_t offset(std::size_t row, std::span<const std::size_t> index) const;

    std::size_t rows_;
    std::size_t dim_;
    std::size_t arity_;
    Domain domain_;
    std::vector<Coefficient> data_;
};

// Element of the r-fold iterated tangent fiber over base_point: one vector
// per non-empty level set.
class IterTangentVector {
public:
    IterTangentVector(unsigned order, Point base_point, std::vector<std::vector<Coefficient>> blocks, Domain domain);

    static IterTangentVector zero(unsigned order, const Point& base_point, Domain domain);

    unsigned order() const noexcept { return order_; }
    std::size_t dim() const noexcept { return base_point_.size(); }
    Domain domain() const noexcept { return domain_; }
    const Point& base_point() const noexcept { return base_point_; }
    const std::vector<Coefficient>& block(LevelSet s) const { return blocks_.at(s - 1); }
    std::vector<Coefficient>& block(LevelSet s) { return blocks_.at(s - 1); }

    friend bool operator==(const IterTangentVector&, const IterTangentVector&) = default;

private:
    unsigned order_;
    Point base_point_;
    std::vector<std::vector<Coefficient>> blocks_;
    Domain domain_;
};

// Vector bundle structure at a level: the sum touches blocks containing the
// level and requires agreement elsewhere; scaling likewise; projection drops
// them and renumbers the higher levels.
IterTangentVector level_add(const IterTangentVector& v, const IterTangentVector& w, unsigned level);
IterTangentVector level_scale(const IterTangentVector& v, const Coefficient& lambda, unsigned level);
IterTangentVector level_project(const IterTangentVector& v, unsigned level);

// Nonholonomic r-jet from R^m to R^n: block S has shape n x m^|S|, no
// symmetry imposed. Blocks containing level r are derivatives of the
// order-(r-1) value part along the last index.
class NonholJet {
public:
    NonholJet(std::size_t m, std::size_t n, unsigned order, Point source, Point target, std::vector<Tensor> blocks,
              Domain domain);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    unsigned order() const noexcept { return order_; }
    Domain domain() const noexcept { return domain_; }
    const Point& source_point() const noexcept { return source_; }
    const Point& target_point() const noexcept { return target_; }
    const Tensor& block(LevelSet s) const { return blocks_.at(s - 1); }
    Tensor& block(LevelSet s) { return blocks_.at(s - 1); }

    // Blocks with the top level removed: the order-(r-1) jet sigma(x).
    NonholJet value_part() const;

    friend bool operator==(const NonholJet&, const NonholJet&) = default;

private:
    std::size_t m_;
    std::size_t n_;
    unsigned order_;
    Point source_;
    Point target_;
    std::vector<Tensor> blocks_;
    Domain domain_;
};

// Quasijet: for each level set S and each set partition P of S, a tensor of
// shape n x m^|P|. Output block S = sum_P coeff(S,P)(v_B1, ..., v_Bk).
class QuasiJet {
public:
    // coeffs[S - 1][k] belongs to the k-th partition of S in set_partitions order.
    QuasiJet(std::size_t m, std::size_t n, unsigned order, Point source, Point target,
             std::vector<std::vector<Tensor>> coeffs, Domain domain);

    static QuasiJet zero(std::size_t m, std::size_t n, unsigned order, const Point& source, const Point& target,
                         Domain domain);
    static QuasiJet identity(std::size_t m, unsigned order, const Point& point, Domain domain);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    unsigned order() const noexcept { return order_; }
    Domain domain() const noexcept { return domain_; }
    const Point& source_point() const noexcept { return source_; }
    const Point& target_point() const noexcept { return target_; }
    const std::vector<SetPartition>& partitions(LevelSet s) const { return partitions_.at(s - 1); }
    const Tensor& coeff(LevelSet s, std::size_t partition_index) const { return coeffs_.at(s - 1).at(partition_index); }
    Tensor& coeff(LevelSet s, std::size_t partition_index) { return coeffs_.at(s - 1).at(partition_index); }
    std::size_t parameter_count() const;

    friend bool operator==(const QuasiJet& a, const QuasiJet& b)
    {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.order_ == b.order_ && a.source_ == b.source_
               && a.target_ == b.target_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::size_t m_;
    std::size_t n_;
    unsigned order_;
    Point source_;
    Point target_;
    std::vector<std::vector<SetPartition>> partitions_;
    std::vector<std::vector<Tensor>> coeffs_;
    Domain domain_;
};

// Embedding of a holonomic jet: block S is the |S|-th derivative tensor.
NonholJet embed_holonomic(const JetMap& jet);

// Recursive action on iterated tangent vectors; order 1 is the linear map,
// order r is the tangent map of the order-(r-1) action of the affine section
// with value part and derivative blocks read from the jet.
IterTangentVector mu_eval(const NonholJet& jet, const IterTangentVector& v);

IterTangentVector quasi_eval(const QuasiJet& q, const IterTangentVector& v);

using BlockEvaluator = std::function<IterTangentVector(const IterTangentVector&)>;

struct EvaluatorShape {
    std::size_t m = 0;
    std::size_t n = 0;
    unsigned order = 1;
    Point source;
    Point target;
    Domain domain = Domain::rational;
};

struct LinearityReport {
    bool ok = true;
    std::size_t probes = 0;
    std::string failure;
};

// Randomized probes of additivity, homogeneity and projection compatibility
// at every level.
LinearityReport check_level_linearity(const BlockEvaluator& phi, const EvaluatorShape& shape, std::uint64_t seed,
                                      std::size_t probes_per_level = 3);

// Polarization: probing with basis vectors on the parts of each partition
// reads off every coefficient. Throws if a linearity probe fails.
QuasiJet extract_quasi(const BlockEvaluator& phi, const EvaluatorShape& shape, std::uint64_t seed);
QuasiJet extract_quasi(const NonholJet& jet, std::uint64_t seed);

// outer o inner, as maps.
QuasiJet compose_quasi(const QuasiJet& outer, const QuasiJet& inner, std::uint64_t seed);

// Candidate nonholonomic blocks: block S = coeff(S, all singletons).
NonholJet nonhol_readback(const QuasiJet& q);

// True when q is the quasijet of some nonholonomic jet.
bool is_nonholonomic(const QuasiJet& q, std::uint64_t seed);

// outer o inner through the quasijet level; throws Error if the composite
// leaves the nonholonomic subset.
NonholJet compose_nonhol(const NonholJet& outer, const NonholJet& inner, std::uint64_t seed);

bool is_holonomic(const NonholJet& jet);

// Holonomic jet whose embedding is `jet`, when one exists.
std::optional<JetMap> holonomic_representative(const NonholJet& jet);

std::uint64_t holonomic_parameter_count(std::size_t m, std::size_t n, unsigned r);
std::uint64_t nonholonomic_parameter_count(std::size_t m, std::size_t n, unsigned r);
std::uint64_t quasijet_parameter_count(std::size_t m, std::size_t n, unsigned r);
std::uint64_t stirling2(unsigned n, unsigned k);

} // namespace jetforge
