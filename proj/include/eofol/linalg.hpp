#pragma once

// Dense linear algebra over F_{p^2}: reduced row echelon form, rank, kernels
// and particular solutions. Vectors are rows; a matrix acting on a column
// vector x is applied as M * x.

#include <optional>
#include <span>
#include <vector>

#include "eofol/gf.hpp"

namespace eofol {

using Vec = std::vector<FqElt>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix from_rows(std::size_t cols, std::span<const Vec> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FqElt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FqElt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;
    std::vector<Vec> row_list() const;
    bool is_zero() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FqElt> data_;
};

struct Echelon {
    Matrix reduced;  // nonzero rows only
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with zero rows dropped.
Echelon rref(const FieldContext& ctx, const Matrix& m);
std::size_t rank(const FieldContext& ctx, const Matrix& m);
/// Basis (as rows) of {x : m * x = 0}.
std::vector<Vec> kernel_basis(const FieldContext& ctx, const Matrix& m);
/// Some x with m * x = rhs, free variables set to zero; nullopt if inconsistent.
std::optional<Vec> solve(const FieldContext& ctx, const Matrix& m, std::span<const FqElt> rhs);

Matrix multiply(const FieldContext& ctx, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Vec apply(const FieldContext& ctx, const Matrix& m, std::span<const FqElt> x);

}  // namespace eofol
