#pragma once

#include <hilb/polymatrix.hpp>

#include <algorithm>
#include <vector>

namespace hilb {

struct SnfResult {
    std::vector<int> valuations;  // weakly increasing, one per nonzero invariant factor
    int truncation = 0;
};

namespace detail {

// Truncated power series in one variable, coefficients [c0, c1, ..., c_{N-1}].
using Series = std::vector<Rational>;

inline int series_valuation(const Series& s) {
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) return int(i);
    return int(s.size());  // == N means zero mod x^N
}

inline Series series_mul(const Series& a, const Series& b, int n) {
    Series r(size_t(n), Rational(0));
    for (int i = 0; i < n; ++i) {
        if (i >= int(a.size()) || a[size_t(i)] == 0) continue;
        for (int j = 0; j + i < n; ++j) {
            if (j >= int(b.size())) break;
            r[size_t(i + j)] += a[size_t(i)] * b[size_t(j)];
        }
    }
    return r;
}

// Inverse of a unit series (nonzero constant term) by long division.
inline Series series_inverse(const Series& u, int n) {
    if (u.empty() || u[0] == 0) throw error("series_inverse: not a unit");
    Series inv(size_t(n), Rational(0));
    inv[0] = Rational(1) / u[0];
    for (int i = 1; i < n; ++i) {
        Rational acc = 0;
        for (int j = 1; j <= i; ++j) {
            if (j < int(u.size())) acc += u[size_t(j)] * inv[size_t(i - j)];
        }
        inv[size_t(i)] = -acc / u[0];
    }
    return inv;
}

inline Series series_shift_down(const Series& s, int v, int n) {
    Series r(size_t(n), Rational(0));
    for (int i = 0; i + v < int(s.size()) && i < n; ++i) r[size_t(i)] = s[size_t(i + v)];
    return r;
}

// Exact rank of a univariate polynomial matrix over Q(x) by fraction-free
// elimination (entries stay polynomials; sizes here are tiny).
inline int poly_matrix_rank(PolyMatrix m) {
    int rank = 0;
    int rows = m.rows(), cols = m.cols();
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (!m(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < cols; ++c) std::swap(m(piv, c), m(row, c));
        for (int r = row + 1; r < rows; ++r) {
            if (m(r, col).is_zero()) continue;
            Poly f = m(r, col), p = m(row, col);
            for (int c = col; c < cols; ++c) m(r, c) = p * m(r, c) - f * m(row, c);
        }
        ++rank;
        ++row;
    }
    return rank;
}

}  // namespace detail

// Smith normal form of a univariate polynomial matrix over the localization
// of Q[x] at the ideal (x): units are series with nonzero constant term, so
// the invariant factors are powers of x.  Pivots on the entry of minimal
// x-adic valuation and clears with truncated series division at precision N.
// Throws precision_error when N is too small to resolve all nonzero factors.
inline SnfResult snf_dvr(const PolyMatrix& input, int truncation) {
    if (truncation < 1) throw error("snf_dvr: truncation must be >= 1");
    const int n = truncation;
    const CtxPtr& ctx = input.ctx();
    const int xvar = ctx->index_of("x");
    for (int v = 0; v < ctx->nvars(); ++v) {
        if (v == xvar) continue;
        for (int r = 0; r < input.rows(); ++r)
            for (int c = 0; c < input.cols(); ++c)
                if (input(r, c).degree_in(v) > 0)
                    throw variable_mismatch("snf_dvr expects a matrix in x only");
    }

    const int expected = detail::poly_matrix_rank(input);

    // Convert to truncated series.
    int rows = input.rows(), cols = input.cols();
    std::vector<detail::Series> w(size_t(rows) * cols, detail::Series(size_t(n), Rational(0)));
    auto at = [&](int r, int c) -> detail::Series& { return w[size_t(r) * cols + c]; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            for (const auto& [e, coef] : input(r, c).terms()) {
                int p = e[size_t(xvar)];
                if (p < n) at(r, c)[size_t(p)] += coef;
            }

    std::vector<int> vals;
    int top = 0;  // rows/cols below/right of `top` form the active block
    while (top < rows && top < cols) {
        int best_r = -1, best_c = -1, best_v = n;
        for (int r = top; r < rows; ++r)
            for (int c = top; c < cols; ++c) {
                int v = detail::series_valuation(at(r, c));
                if (v < best_v) { best_v = v; best_r = r; best_c = c; }
            }
        if (best_r < 0) break;  // active block vanishes mod x^N
        // Move pivot to (top, top).
        if (best_r != top)
            for (int c = 0; c < cols; ++c) std::swap(at(best_r, c), at(top, c));
        if (best_c != top)
            for (int r = 0; r < rows; ++r) std::swap(at(r, best_c), at(r, top));
        vals.push_back(best_v);
        // All entries of the active block have valuation >= best_v, so the
        // multipliers entry/pivot are honest series of the local ring.
        detail::Series unit = detail::series_shift_down(at(top, top), best_v, n);
        detail::Series unit_inv = detail::series_inverse(unit, n);
        for (int r = top + 1; r < rows; ++r) {
            if (detail::series_valuation(at(r, top)) >= n) continue;
            detail::Series factor =
                detail::series_mul(detail::series_shift_down(at(r, top), best_v, n), unit_inv, n);
            for (int c = top; c < cols; ++c) {
                detail::Series sub = detail::series_mul(factor, at(top, c), n);
                for (int i = 0; i < n; ++i) at(r, c)[size_t(i)] -= sub[size_t(i)];
            }
        }
        for (int c = top + 1; c < cols; ++c) {
            if (detail::series_valuation(at(top, c)) >= n) continue;
            detail::Series factor =
                detail::series_mul(detail::series_shift_down(at(top, c), best_v, n), unit_inv, n);
            for (int r = top; r < rows; ++r) {
                detail::Series sub = detail::series_mul(factor, at(r, top), n);
                for (int i = 0; i < n; ++i) at(r, c)[size_t(i)] -= sub[size_t(i)];
            }
        }
        ++top;
    }

    if (int(vals.size()) < expected)
        throw precision_error("snf_dvr: invariant factor valuation reached truncation " +
                              std::to_string(n) + "; raise N");
    std::sort(vals.begin(), vals.end());
    return SnfResult{vals, n};
}

}  // namespace hilb
