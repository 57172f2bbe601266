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

#include <cstddef>
#include <optional>
#include <vector>

namespace jetforge {

// Dense row-major matrix over a single coefficient domain.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Domain domain);
    Matrix(std::vector<std::vector<Coefficient>> rows, std::size_t cols, Domain domain);

    static Matrix identity(std::size_t n, Domain domain);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Domain domain() const noexcept { return domain_; }

    Coefficient& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Coefficient& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Coefficient> row(std::size_t r) const;
    Matrix transposed() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Domain domain_ = Domain::rational;
    std::vector<Coefficient> data_;
};

std::vector<Coefficient> operator*(const Matrix& a, const std::vector<Coefficient>& v);

// Reduced row-echelon form; pivots receives the pivot column of each non-zero row.
// Real matrices pivot on the largest magnitude and treat entries below
// 1e-12 times the largest input entry as zero.
Matrix rref(const Matrix& a, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const Matrix& a);

// Rows form a basis of { x : a x = 0 }.
Matrix nullspace(const Matrix& a);

std::optional<Matrix> inverse(const Matrix& a);

// Stacks the rows of b under a.
Matrix vstack(const Matrix& a, const Matrix& b);

} // namespace jetforge
