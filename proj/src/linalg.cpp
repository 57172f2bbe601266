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

#include "jetforge/linalg.hpp"

#include "jetforge/error.hpp"

#include <algorithm>
#include <cmath>

namespace jetforge {

Matrix::Matrix(std::size_t rows, std::size_t cols, Domain domain)
    : rows_(rows), cols_(cols), domain_(domain), data_(rows * cols, Coefficient::zero(domain))
{
}

Matrix::Matrix(std::vector<std::vector<Coefficient>> rows, std::size_t cols, Domain domain)
    : Matrix(rows.size(), cols, domain)
{
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw ValidationError("ragged matrix rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (rows[r][c].domain() != domain) {
                throw ValidationError("matrix entry outside the matrix domain");
            }
            (*this)(r, c) = std::move(rows[r][c]);
        }
    }
}

Matrix Matrix::identity(std::size_t n, Domain domain)
{
    Matrix m(n, n, domain);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Coefficient::one(domain);
    }
    return m;
}

std::vector<Coefficient> Matrix::row(std::size_t r) const
{
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_, domain_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) {
        throw PreconditionError("matrix shape mismatch in product");
    }
    if (a.domain_ != b.domain_) {
        throw PreconditionError("mixed-domain matrix product");
    }
    Matrix out(a.rows_, b.cols_, a.domain_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Coefficient& aik = a(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.domain_ == b.domain_ && a.data_ == b.data_;
}

std::vector<Coefficient> operator*(const Matrix& a, const std::vector<Coefficient>& v)
{
    if (a.cols() != v.size()) {
        throw PreconditionError("matrix-vector shape mismatch");
    }
    std::vector<Coefficient> out(a.rows(), Coefficient::zero(a.domain()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i] += a(i, j) * v[j];
        }
    }
    return out;
}

Matrix rref(const Matrix& input, std::vector<std::size_t>* pivots)
{
    Matrix a = input;
    const bool exact = a.domain() == Domain::rational;
    double threshold = 0.0;
    if (!exact) {
        double largest = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                largest = std::max(largest, std::abs(a(r, c).real()));
            }
        }
        threshold = 1e-12 * largest;
    }
    auto negligible = [&](const Coefficient& x) { return exact ? x.is_zero() : std::abs(x.real()) <= threshold; };

    if (pivots) {
        pivots->clear();
    }
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t best = a.rows();
        for (std::size_t r = lead_row; r < a.rows(); ++r) {
            if (negligible(a(r, col))) {
                continue;
            }
            if (best == a.rows()) {
                best = r;
                if (exact) {
                    break;
                }
            } else if (std::abs(a(r, col).real()) > std::abs(a(best, col).real())) {
                best = r;
            }
        }
        if (best == a.rows()) {
            continue;
        }
        if (best != lead_row) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                std::swap(a(best, c), a(lead_row, c));
            }
        }
        Coefficient pivot = a(lead_row, col);
        for (std::size_t c = 0; c < a.cols(); ++c) {
            a(lead_row, c) /= pivot;
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row || a(r, col).is_zero()) {
                continue;
            }
            Coefficient factor = a(r, col);
            for (std::size_t c = 0; c < a.cols(); ++c) {
                a(r, c) -= factor * a(lead_row, c);
            }
            if (!exact) {
                a(r, col) = Coefficient::zero(Domain::real);
            }
        }
        if (pivots) {
            pivots->push_back(col);
        }
        ++lead_row;
    }
    if (!exact) {
        for (std::size_t r = lead_row; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                a(r, c) = Coefficient::zero(Domain::real);
            }
        }
    }
    return a;
}

std::size_t rank(const Matrix& a)
{
    std::vector<std::size_t> pivots;
    rref(a, &pivots);
    return pivots.size();
}

Matrix nullspace(const Matrix& a)
{
    std::vector<std::size_t> pivots;
    Matrix reduced = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (!is_pivot[c]) {
            free_cols.push_back(c);
        }
    }
    Matrix basis(free_cols.size(), a.cols(), a.domain());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(k, f) = Coefficient::one(a.domain());
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            basis(k, pivots[r]) = -reduced(r, f);
        }
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw PreconditionError("inverse of a non-square matrix");
    }
    const std::size_t n = a.rows();
    Matrix augmented(n, 2 * n, a.domain());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            augmented(r, c) = a(r, c);
        }
        augmented(r, n + r) = Coefficient::one(a.domain());
    }
    std::vector<std::size_t> pivots;
    Matrix reduced = rref(augmented, &pivots);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
        return std::nullopt;
    }
    Matrix inv(n, n, a.domain());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            inv(r, c) = reduced(r, n + c);
        }
    }
    return inv;
}

Matrix vstack(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols()) {
        throw PreconditionError("column mismatch in vstack");
    }
    Matrix out(a.rows() + b.rows(), a.cols(), a.domain());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            out(a.rows() + r, c) = b(r, c);
        }
    }
    return out;
}

} // namespace jetforge
