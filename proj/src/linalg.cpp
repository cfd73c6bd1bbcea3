#include "eofol/linalg.hpp"

#include <stdexcept>

namespace eofol {

Matrix Matrix::from_rows(std::size_t cols, std::span<const Vec> rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Matrix::column(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Echelon rref(const FieldContext& ctx, const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
        std::size_t piv = lead;
        while (piv < a.rows() && a.at(piv, c).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a.at(piv, k), a.at(lead, k));
        FqElt s = ctx.inv(a.at(lead, c));
        for (std::size_t k = c; k < a.cols(); ++k) a.at(lead, k) = ctx.mul(s, a.at(lead, k));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead || a.at(r, c).is_zero()) continue;
            FqElt f = a.at(r, c);
            for (std::size_t k = c; k < a.cols(); ++k) {
                a.at(r, k) = ctx.sub(a.at(r, k), ctx.mul(f, a.at(lead, k)));
            }
        }
        pivots.push_back(c);
        ++lead;
    }
    Matrix reduced(pivots.size(), a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) reduced.at(r, k) = a.at(r, k);
    }
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const FieldContext& ctx, const Matrix& m) { return rref(ctx, m).pivots.size(); }

std::vector<Vec> kernel_basis(const FieldContext& ctx, const Matrix& m) {
    Echelon e = rref(ctx, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec x(m.cols(), ctx.zero());
        x[free] = ctx.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = ctx.neg(e.reduced.at(r, free));
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Vec> solve(const FieldContext& ctx, const Matrix& m, std::span<const FqElt> rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = rhs[r];
    }
    Echelon e = rref(ctx, aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols(), ctx.zero());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced.at(r, m.cols());
    return x;
}

Matrix multiply(const FieldContext& ctx, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            FqElt x = a.at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.at(i, j) = ctx.add(out.at(i, j), ctx.mul(x, b.at(k, j)));
            }
        }
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) t.at(c, r) = m.at(r, c);
    }
    return t;
}

Vec apply(const FieldContext& ctx, const Matrix& m, std::span<const FqElt> x) {
    if (x.size() != m.cols()) throw std::invalid_argument("apply: length mismatch");
    Vec y(m.rows(), ctx.zero());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!x[c].is_zero() && !m.at(r, c).is_zero()) y[r] = ctx.add(y[r], ctx.mul(m.at(r, c), x[c]));
        }
    }
    return y;
}

}  // namespace eofol
