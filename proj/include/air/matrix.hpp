#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "air/rational.hpp"

namespace air {

/// Dense row-major matrix over the rationals. Zero-sized shapes (0×n, n×0) are
/// valid values and compose like ordinary linear maps between trivial spaces.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) fail("ShapeMismatch", "matrix data size does not match shape");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix scalar(const Rational& s) { return Matrix(1, 1, {s}); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = -a.data_[i];
        return m;
    }
    friend Matrix operator*(const Rational& s, const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = s * a.data_[i];
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail("ShapeMismatch", "matrix product of incompatible shapes");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    Matrix& operator+=(const Matrix& b) { return *this = *this + b; }
    Matrix& operator-=(const Matrix& b) { return *this = *this - b; }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Rational trace() const {
        if (!is_square()) fail("ShapeMismatch", "trace of a non-square matrix");
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t p = row;
            while (p < rows_ && (*this)(p, col) == 0) ++p;
            if (p == rows_) continue;
            swap_rows(p, row);
            Rational inv = 1 / Rational((*this)(row, col));
            for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || (*this)(i, col) == 0) continue;
                Rational f = (*this)(i, col);
                for (std::size_t j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    Rational determinant() const {
        if (!is_square()) fail("ShapeMismatch", "determinant of a non-square matrix");
        Matrix m = *this;
        Rational det = 1;
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t p = col;
            while (p < rows_ && m(p, col) == 0) ++p;
            if (p == rows_) return 0;
            if (p != col) {
                m.swap_rows(p, col);
                det = -det;
            }
            det *= m(col, col);
            for (std::size_t i = col + 1; i < rows_; ++i) {
                if (m(i, col) == 0) continue;
                Rational f = m(i, col) / m(col, col);
                for (std::size_t j = col; j < cols_; ++j) m(i, j) -= f * m(col, j);
            }
        }
        return det;
    }

    std::optional<Matrix> inverse() const {
        if (!is_square()) fail("ShapeMismatch", "inverse of a non-square matrix");
        const std::size_t n = rows_;
        Matrix aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = 1;
        }
        auto pivots = aug.rref();
        if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
        return aug.block(0, n, n, n);
    }

    /// Coefficients c_0..c_n of det(λ·I − M), lowest degree first (Faddeev–LeVerrier).
    std::vector<Rational> characteristic_polynomial() const {
        if (!is_square()) fail("ShapeMismatch", "characteristic polynomial of a non-square matrix");
        const std::size_t n = rows_;
        std::vector<Rational> c(n + 1);
        c[n] = 1;
        Matrix acc = Matrix::zero(n, n);
        for (std::size_t k = 1; k <= n; ++k) {
            acc = (*this) * acc;
            for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k + 1];
            Rational tr = ((*this) * acc).trace();
            c[n - k] = -tr / Rational(static_cast<long>(k));
        }
        return c;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << to_string(m(i, j));
        }
        return os << "]";
    }

private:
    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail("ShapeMismatch", "matrix sum of incompatible shapes");
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Affine rank of a point set given as equal-length coordinate vectors (−1 for the empty set).
inline int affine_dimension(const std::vector<std::vector<Rational>>& pts) {
    if (pts.empty()) return -1;
    const std::size_t dim = pts[0].size();
    Matrix m(pts.size() - 1, dim);
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
    return static_cast<int>(m.rank());
}

}  // namespace air
