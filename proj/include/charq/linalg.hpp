#pragma once

// Dense matrices over GF(2^m), only as large as the geometry needs
// (substitution matrices up to 4x4, rank computations on Macaulay-style
// blocks).  Row-major.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace charq {

class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldCtx* ctx, int rows, int cols)
        : ctx_(ctx), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

    static Matrix identity(const FieldCtx* ctx, int n) {
        Matrix m(ctx, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const FieldCtx* ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::uint32_t at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    void set(int i, int j, FieldElement v) {
        ctx_->check(v);
        at(i, j) = v.bits;
    }
    FieldElement get(int i, int j) const { return {at(i, j), ctx_}; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(ctx_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const std::uint32_t v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) ^= ctx_->mul_raw(v, o.at(k, j));
            }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // Gaussian elimination; returns rank.  If inv != nullptr the matrix must
    // be square and *inv receives the inverse (throws when singular).
    int rank(Matrix* inv = nullptr) const {
        Matrix w = *this;
        Matrix id = inv ? identity(ctx_, rows_) : Matrix();
        int r = 0;
        for (int j = 0; j < cols_ && r < rows_; ++j) {
            int piv = -1;
            for (int i = r; i < rows_; ++i)
                if (w.at(i, j) != 0) { piv = i; break; }
            if (piv < 0) continue;
            w.swap_rows(r, piv);
            if (inv) id.swap_rows(r, piv);
            const std::uint32_t d = ctx_->inv_raw(w.at(r, j));
            w.scale_row(r, d);
            if (inv) id.scale_row(r, d);
            for (int i = 0; i < rows_; ++i) {
                if (i == r || w.at(i, j) == 0) continue;
                const std::uint32_t f = w.at(i, j);
                w.addmul_row(i, r, f);
                if (inv) id.addmul_row(i, r, f);
            }
            ++r;
        }
        if (inv) {
            if (r != rows_ || rows_ != cols_) throw std::domain_error("singular matrix");
            *inv = id;
        }
        return r;
    }

    Matrix inverse() const {
        Matrix inv;
        rank(&inv);
        return inv;
    }

    bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    // Row vector times matrix; the convention used by point transforms.
    std::vector<std::uint32_t> apply_row(const std::vector<std::uint32_t>& v) const {
        if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("vector length mismatch");
        std::vector<std::uint32_t> out(cols_, 0);
        for (int i = 0; i < rows_; ++i) {
            if (v[i] == 0) continue;
            for (int j = 0; j < cols_; ++j)
                out[j] ^= ctx_->mul_raw(v[i], at(i, j));
        }
        return out;
    }

private:
    void swap_rows(int i, int k) {
        for (int j = 0; j < cols_; ++j) std::swap(at(i, j), at(k, j));
    }
    void scale_row(int i, std::uint32_t s) {
        for (int j = 0; j < cols_; ++j) at(i, j) = ctx_->mul_raw(at(i, j), s);
    }
    void addmul_row(int i, int k, std::uint32_t s) {
        for (int j = 0; j < cols_; ++j) at(i, j) ^= ctx_->mul_raw(s, at(k, j));
    }

    const FieldCtx* ctx_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<std::uint32_t> a_;
};

// Rank of a sparse row list over the field; rows are (column, value) pairs.
// Used by the truncated-quotient dimension computation, where building a
// dense Matrix per degree would be wasteful.
class RowReducer {
public:
    RowReducer(const FieldCtx* ctx, int cols) : ctx_(ctx), basis_(cols) {}

    // Reduce a dense row in place against the basis; absorb it if nonzero.
    // Returns true when the row increased the rank.
    bool add_row(std::vector<std::uint32_t>& row) {
        for (int j = 0; j < static_cast<int>(row.size()); ++j) {
            if (row[j] == 0) continue;
            if (basis_[j].empty()) {
                const std::uint32_t d = ctx_->inv_raw(row[j]);
                for (auto& x : row) x = ctx_->mul_raw(x, d);
                basis_[j] = row;
                ++rank_;
                return true;
            }
            const std::uint32_t f = row[j];
            const auto& b = basis_[j];
            for (std::size_t k = j; k < row.size(); ++k)
                row[k] ^= ctx_->mul_raw(f, b[k]);
        }
        return false;
    }

    int rank() const { return rank_; }

private:
    const FieldCtx* ctx_;
    std::vector<std::vector<std::uint32_t>> basis_;  // indexed by pivot column
    int rank_ = 0;
};

}  // namespace charq
