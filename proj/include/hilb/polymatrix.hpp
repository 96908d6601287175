#pragma once

#include <hilb/poly.hpp>

#include <map>
#include <utility>
#include <vector>

namespace hilb {

class PolyMatrix {
  public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(CtxPtr ctx, int rows, int cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(size_t(rows) * cols, Poly(ctx_)) {}

    const CtxPtr& ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Poly& operator()(int r, int c) { return e_[size_t(r) * cols_ + c]; }
    const Poly& operator()(int r, int c) const { return e_[size_t(r) * cols_ + c]; }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols_ != o.rows_) throw shape_error("matrix product shape mismatch");
        PolyMatrix r(ctx_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                const Poly& a = (*this)(i, j);
                if (a.is_zero()) continue;
                for (int l = 0; l < o.cols_; ++l) {
                    if (o(j, l).is_zero()) continue;
                    r(i, l) += a * o(j, l);
                }
            }
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw shape_error("matrix difference shape mismatch");
        PolyMatrix r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    PolyMatrix without_row(int row) const {
        PolyMatrix r(ctx_, rows_ - 1, cols_);
        for (int i = 0, ri = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (int j = 0; j < cols_; ++j) r(ri, j) = (*this)(i, j);
            ++ri;
        }
        return r;
    }

    // Cofactor expansion along the first column; fine for the small sizes
    // this library deals with.
    Poly determinant() const {
        if (rows_ != cols_) throw shape_error("determinant of non-square matrix");
        if (rows_ == 0) return Poly(ctx_, 1);
        if (rows_ == 1) return (*this)(0, 0);
        Poly det(ctx_);
        for (int i = 0; i < rows_; ++i) {
            if ((*this)(i, 0).is_zero()) continue;
            PolyMatrix minor(ctx_, rows_ - 1, cols_ - 1);
            for (int r = 0, mr = 0; r < rows_; ++r) {
                if (r == i) continue;
                for (int c = 1; c < cols_; ++c) minor(mr, c - 1) = (*this)(r, c);
                ++mr;
            }
            Poly t = (*this)(i, 0) * minor.determinant();
            if (i % 2) det -= t; else det += t;
        }
        return det;
    }

  private:
    CtxPtr ctx_;
    int rows_, cols_;
    std::vector<Poly> e_;
};

// Maximal minors with alternating signs: entry j is (-1)^j times the
// determinant of the matrix with row j deleted.  Composing the result with
// the input matrix gives the zero row vector (the Hilbert-Burch relation).
inline std::vector<Poly> signed_maximal_minors(const PolyMatrix& s) {
    if (s.rows() != s.cols() + 1) throw shape_error("signed_maximal_minors expects a (k+1) x k matrix");
    std::vector<Poly> out;
    out.reserve(size_t(s.rows()));
    for (int j = 0; j < s.rows(); ++j) {
        Poly d = s.without_row(j).determinant();
        out.push_back(j % 2 ? -d : d);
    }
    return out;
}

// Formal 2-form sum f du^dv over unordered pairs of variable differentials,
// stored on ordered index pairs u < v with the sign convention
// coeff(u,v) du^dv = -coeff(u,v) dv^du.
class TwoForm {
  public:
    TwoForm() = default;
    explicit TwoForm(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    const CtxPtr& ctx() const { return ctx_; }
    const std::map<std::pair<int, int>, Poly>& coefficients() const { return coeff_; }

    void add(int u, int v, const Poly& c) {
        if (u == v || c.is_zero()) return;
        int a = u, b = v;
        Poly val = c;
        if (a > b) { std::swap(a, b); val = -val; }
        auto key = std::make_pair(a, b);
        auto it = coeff_.find(key);
        if (it == coeff_.end()) {
            coeff_.emplace(key, val);
        } else {
            it->second += val;
            if (it->second.is_zero()) coeff_.erase(it);
        }
    }

    Poly coefficient(int u, int v) const {
        int a = u, b = v;
        bool flip = a > b;
        if (flip) std::swap(a, b);
        auto it = coeff_.find({a, b});
        if (it == coeff_.end()) return Poly(ctx_);
        return flip ? -it->second : it->second;
    }

    bool is_zero() const { return coeff_.empty(); }

    TwoForm& operator+=(const TwoForm& o) {
        for (const auto& [k, c] : o.coeff_) add(k.first, k.second, c);
        return *this;
    }
    TwoForm operator-() const {
        TwoForm r(ctx_);
        for (const auto& [k, c] : coeff_) r.coeff_.emplace(k, -c);
        return r;
    }
    friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a += -b; }
    bool operator==(const TwoForm& o) const { return coeff_ == o.coeff_; }

    std::string str() const {
        if (coeff_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : coeff_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*d" + ctx_->name(k.first) + "^d" + ctx_->name(k.second);
        }
        return out;
    }

  private:
    CtxPtr ctx_;
    std::map<std::pair<int, int>, Poly> coeff_;
};

// Tr(dA ^ dB) expanded in the formal differentials of the context variables.
// For commuting A, B this 2-form is invariant under simultaneous conjugation.
inline TwoForm trace_d_wedge_d(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw shape_error("trace_d_wedge_d expects square matrices of equal size");
    const CtxPtr& ctx = a.ctx();
    TwoForm w(ctx);
    const int n = ctx->nvars();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Poly& aij = a(i, j);
            const Poly& bji = b(j, i);
            if (aij.is_zero() || bji.is_zero()) continue;
            std::vector<Poly> da(size_t(n)), db(size_t(n));
            for (int v = 0; v < n; ++v) {
                da[size_t(v)] = aij.derivative(v);
                db[size_t(v)] = bji.derivative(v);
            }
            for (int u = 0; u < n; ++u) {
                if (da[size_t(u)].is_zero()) continue;
                for (int v = 0; v < n; ++v) {
                    if (u == v || db[size_t(v)].is_zero()) continue;
                    w.add(u, v, da[size_t(u)] * db[size_t(v)]);
                }
            }
        }
    return w;
}

}  // namespace hilb
