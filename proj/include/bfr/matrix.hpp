#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bfr/gf.hpp"

namespace bfr {

// Dense row-major matrix over any field type F exposing Elem, zero(), one(),
// add, sub, mul, inv, is_zero.
template <class F>
class Matrix {
public:
    using Elem = std::decay_t<decltype(std::declval<const F&>().zero())>;

    Matrix() = default;
    Matrix(const F* f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), a_(rows * cols, f->zero()) {}

    static Matrix identity(const F* f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = f->one();
        return m;
    }

    const F& field() const { return *f_; }
    const F* field_ptr() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Elem& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix operator*(const Matrix& b) const {
        Matrix out(f_, rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& x = (*this)(i, k);
                if (f_->is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) = f_->add(out(i, j), f_->mul(x, b(k, j)));
            }
        return out;
    }

    // v (length rows) times this matrix.
    std::vector<Elem> left_mul(const std::vector<Elem>& v) const {
        std::vector<Elem> out(cols_, f_->zero());
        for (std::size_t i = 0; i < rows_; ++i) {
            if (f_->is_zero(v[i])) continue;
            for (std::size_t j = 0; j < cols_; ++j) out[j] = f_->add(out[j], f_->mul(v[i], (*this)(i, j)));
        }
        return out;
    }

    Matrix select_cols(const std::vector<int>& idx) const {
        Matrix out(f_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
        return out;
    }

    Matrix select_rows(const std::vector<int>& idx) const {
        Matrix out(f_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
        return out;
    }

    Matrix transpose() const {
        Matrix out(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && f_->is_zero((*this)(p, c))) ++p;
            if (p == rows_) continue;
            swap_rows(p, r);
            Elem inv = f_->inv((*this)(r, c));
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) = f_->mul((*this)(r, j), inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || f_->is_zero((*this)(i, c))) continue;
                Elem t = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    (*this)(i, j) = f_->sub((*this)(i, j), f_->mul(t, (*this)(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix t = *this;
        return t.rref().size();
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        Matrix aug(f_, rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = f_->one();
        }
        auto piv = aug.rref();
        if (piv.size() < rows_ || piv.back() >= cols_) return std::nullopt;
        Matrix out(f_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = aug(i, cols_ + j);
        return out;
    }

    // Solve X * this = B for X (X has B.rows() rows). Requires a solution to
    // exist; returns nullopt otherwise. When this has dependent rows any
    // consistent X is returned.
    std::optional<Matrix> solve_left(const Matrix& B) const {
        // X A = B  <=>  A^T X^T = B^T
        auto xt = transpose().solve_right(B.transpose());
        if (!xt) return std::nullopt;
        return xt->transpose();
    }

    // Solve this * X = B for X.
    std::optional<Matrix> solve_right(const Matrix& B) const {
        Matrix aug(f_, rows_, cols_ + B.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < B.cols_; ++j) aug(i, cols_ + j) = B(i, j);
        }
        auto piv = aug.rref();
        Matrix x(f_, cols_, B.cols_);
        std::size_t r = 0;
        for (; r < piv.size(); ++r) {
            if (piv[r] >= cols_) return std::nullopt;  // inconsistent
            for (std::size_t j = 0; j < B.cols_; ++j) x(piv[r], j) = aug(r, cols_ + j);
        }
        return x;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!eq(a_[i], o.a_[i])) return false;
        return true;
    }

private:
    bool eq(const Elem& x, const Elem& y) const { return f_->is_zero(f_->sub(x, y)); }

    const F* f_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> a_;
};

using BaseMatrix = Matrix<gf::Field>;
using ExtMatrix = Matrix<gf::ExtField>;

}  // namespace bfr
