#pragma once

#include <hilb/rational.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace hilb {

// Dense exact linear algebra over Q.  Everything in this project is small
// (dimensions bounded by a few hundred), so plain Gaussian elimination with
// full pivoting on exact rationals is the right tool.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return e_[size_t(r) * cols_ + c]; }
    const Rational& operator()(int r, int c) const { return e_[size_t(r) * cols_ + c]; }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_) throw shape_error("matrix product shape mismatch");
        QMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                const Rational& a = (*this)(i, j);
                if (a == 0) continue;
                for (int l = 0; l < o.cols_; ++l) r(i, l) += a * o(j, l);
            }
        return r;
    }

    QMatrix operator-(const QMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw shape_error("matrix difference shape mismatch");
        QMatrix r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    QMatrix transposed() const {
        QMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& v : e_) if (v != 0) return false;
        return true;
    }

    // Row echelon form in place; returns pivot column per eliminated row.
    std::vector<int> echelonize() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int piv = -1;
            for (int r = row; r < rows_; ++r)
                if ((*this)(r, col) != 0) { piv = r; break; }
            if (piv < 0) continue;
            swap_rows(piv, row);
            Rational inv = Rational(1) / (*this)(row, col);
            for (int c = col; c < cols_; ++c) (*this)(row, c) *= inv;
            for (int r = 0; r < rows_; ++r) {
                if (r == row) continue;
                const Rational f = (*this)(r, col);
                if (f == 0) continue;
                for (int c = col; c < cols_; ++c) (*this)(r, c) -= f * (*this)(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        QMatrix tmp = *this;
        return int(tmp.echelonize().size());
    }

    std::optional<QMatrix> inverse() const {
        if (rows_ != cols_) throw shape_error("inverse of non-square matrix");
        QMatrix aug(rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = 1;
        }
        auto piv = aug.echelonize();
        if (int(piv.size()) != rows_ || piv.back() >= cols_) return std::nullopt;
        QMatrix inv(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

    // Basis of the right kernel, one column vector per basis element.
    std::vector<std::vector<Rational>> kernel() const {
        QMatrix tmp = *this;
        auto pivots = tmp.echelonize();
        std::vector<bool> is_pivot(cols_, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Rational>> basis;
        for (int free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Rational> v(cols_);
            v[free] = 1;
            for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -tmp(int(r), free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // One solution of A x = b with free variables set to zero, or nullopt.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        if (int(b.size()) != rows_) throw shape_error("solve: rhs size mismatch");
        QMatrix aug(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto pivots = aug.echelonize();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
        std::vector<Rational> x(cols_);
        for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), cols_);
        return x;
    }

  private:
    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    int rows_, cols_;
    std::vector<Rational> e_;
};

}  // namespace hilb
