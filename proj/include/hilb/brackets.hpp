#pragma once

#include <hilb/charts.hpp>
#include <hilb/polymatrix.hpp>
#include <hilb/threads.hpp>

#include <array>
#include <tuple>
#include <vector>

namespace hilb {

// Poisson structure on the triangular chart: the full skew table of brackets
// {E_alpha, E_beta} as polynomials in the chart coordinates.
struct PoissonStructure {
    int k = 0;
    CtxPtr ctx;                // e_context(k)
    std::vector<Poly> table;   // m*m row-major, table[a*m+b] = {E_a, E_b}

    int dim() const { return coord_count(k); }
    const Poly& entry(int alpha, int beta) const { return table[size_t(alpha) * dim() + beta]; }
    Poly& entry(int alpha, int beta) { return table[size_t(alpha) * dim() + beta]; }
    const Poly& entry(const CoordIndex& a, const CoordIndex& b) const {
        return entry(coord_linear_index(k, a), coord_linear_index(k, b));
    }

    bool is_skew() const {
        int m = dim();
        for (int a = 0; a < m; ++a)
            for (int b = 0; b <= a; ++b)
                if (entry(a, b) != -entry(b, a)) return false;
        return true;
    }

    bool operator==(const PoissonStructure& o) const { return k == o.k && table == o.table; }
};

inline PoissonStructure make_structure(int k) {
    PoissonStructure p;
    p.k = k;
    p.ctx = e_context(k);
    p.table.assign(size_t(coord_count(k)) * coord_count(k), Poly(p.ctx));
    return p;
}

namespace frames {

// The coordinate vector fields of the two systems are related by the constant
// matrix P with d/dC_i^j = d/dE_{j-1}^i - d/dE_j^{i+1} (out-of-range dropped);
// its columns are indexed like the E-variables, via the shared linear index.
inline QMatrix c_frame_in_e_frame(int k) {
    int m = coord_count(k);
    QMatrix p(m, m);
    for (int col = 0; col < m; ++col) {
        CoordIndex c = coord_from_linear(k, col);  // (i, j)
        if (c.j - 1 >= 0 && c.j - 1 < k) p(coord_linear_index(k, {c.j - 1, c.i}), col) += 1;
        if (c.j < k) p(coord_linear_index(k, {c.j, c.i + 1}), col) -= 1;
    }
    return p;
}

// Inverse change of frame, from the split formula for C in terms of E:
// entry (c, e) is the partial of the C-coordinate c by the E-coordinate e.
inline QMatrix e_frame_in_c_frame(int k) {
    int m = coord_count(k);
    QMatrix q(m, m);
    for (int row = 0; row < m; ++row) {
        CoordIndex c = coord_from_linear(k, row);  // C_{c.i}^{c.j}
        int i = c.i, j = c.j;
        if (j >= i + 1) {
            for (int t = 0; t <= i; ++t) q(row, coord_linear_index(k, {j - 1 - t, i - t})) += 1;
        } else {
            for (int t = 0; t <= k - i - 1; ++t) q(row, coord_linear_index(k, {j + t, i + 1 + t})) -= 1;
        }
    }
    return q;
}

}  // namespace frames

struct RecursionOperator {
    int k = 0;
    char axis = 'x';
    CtxPtr ctx;
    std::vector<Poly> mat;  // m*m row-major endomorphism in the E-frame

    int dim() const { return coord_count(k); }
    const Poly& at(int r, int c) const { return mat[size_t(r) * dim() + c]; }
    Poly& at(int r, int c) { return mat[size_t(r) * dim() + c]; }
};

// Recursion operators J_x, J_y: the action of multiplication by x resp. y on
// tangent vectors, expressed in the E-frame.  On the C-frame basis fields,
//   J_x d/dC_i^j = sum_b E_i^b d/dE_{j-1}^b - sum_a E_a^j d/dE_a^{i+1}
//   J_y d/dC_i^j = sum_b E_i^b d/dE_j^b   - sum_a E_a^j d/dE_a^i
// with out-of-range indices dropped; the E-frame matrix follows by the
// constant change of frame.
inline RecursionOperator recursion_operator(int k, char axis) {
    if (axis != 'x' && axis != 'y') throw error("recursion_operator: axis must be 'x' or 'y'");
    int m = coord_count(k);
    CtxPtr ctx = e_context(k);
    auto evar = [&](int i, int j) { return Poly::variable(ctx, coord_linear_index(k, {i, j})); };

    // Columns of Q: images of the C-frame fields, in the E-frame.
    std::vector<Poly> q(size_t(m) * m, Poly(ctx));
    for (int col = 0; col < m; ++col) {
        CoordIndex c = coord_from_linear(k, col);
        int i = c.i, j = c.j;
        int jcol = axis == 'x' ? j - 1 : j;     // target column of the first sum
        int irow = axis == 'x' ? i + 1 : i;     // target row of the second sum
        if (jcol >= 0 && jcol < k)
            for (int b = 0; b <= k; ++b)
                q[size_t(coord_linear_index(k, {jcol, b})) * m + col] += evar(i, b);
        if (irow >= 0 && irow <= k)
            for (int a = 0; a < k; ++a)
                q[size_t(coord_linear_index(k, {a, irow})) * m + col] -= evar(a, j);
    }

    QMatrix pinv = frames::e_frame_in_c_frame(k);
    RecursionOperator op;
    op.k = k;
    op.axis = axis;
    op.ctx = ctx;
    op.mat.assign(size_t(m) * m, Poly(ctx));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            Poly acc(ctx);
            for (int l = 0; l < m; ++l) {
                const Rational& w = pinv(l, c);
                if (w == 0) continue;
                acc += q[size_t(r) * m + l] * w;
            }
            op.mat[size_t(r) * m + c] = std::move(acc);
        }
    return op;
}

namespace detail {

inline std::vector<Poly> poly_mat_mul(const CtxPtr& ctx, int m, const std::vector<Poly>& a,
                                      const std::vector<Poly>& b) {
    std::vector<Poly> r(size_t(m) * m, Poly(ctx));
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) {
            const Poly& v = a[size_t(i) * m + l];
            if (v.is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                if (b[size_t(l) * m + j].is_zero()) continue;
                r[size_t(i) * m + j] += v * b[size_t(l) * m + j];
            }
        }
    return r;
}

}  // namespace detail

// The constant bracket of the nondegenerate case, in pure E coordinates:
// {E_i^j, E_a^b}_0 = delta_{ib} delta_{j,a+1} - delta_{i,b-1} delta_{ja}.
inline PoissonStructure darboux_structure(int k) {
    PoissonStructure p = make_structure(k);
    int m = p.dim();
    for (int al = 0; al < m; ++al) {
        CoordIndex u = coord_from_linear(k, al);
        for (int be = 0; be < m; ++be) {
            CoordIndex v = coord_from_linear(k, be);
            int val = 0;
            if (u.i == v.j && u.j == v.i + 1) val += 1;
            if (u.i == v.j - 1 && u.j == v.i) val -= 1;
            if (val != 0) p.entry(al, be) = Poly(p.ctx, val);
        }
    }
    return p;
}

// The Lie-Poisson bracket of the affine Lie algebra on the chart:
// {E_i^j, E_a^b} = delta_{aj} E_i^b - delta_{bi} E_a^j.
inline PoissonStructure aff_structure(int k) {
    PoissonStructure p = make_structure(k);
    int m = p.dim();
    auto evar = [&](int i, int j) { return Poly::variable(p.ctx, coord_linear_index(k, {i, j})); };
    for (int al = 0; al < m; ++al) {
        CoordIndex u = coord_from_linear(k, al);
        for (int be = 0; be < m; ++be) {
            CoordIndex v = coord_from_linear(k, be);
            Poly e(p.ctx);
            if (v.i == u.j) e += evar(u.i, v.j);
            if (v.j == u.i) e -= evar(v.i, u.j);
            p.entry(al, be) = std::move(e);
        }
    }
    return p;
}

// pi^sharp = f(J_x, J_y) pi_0^sharp, tabulated against the E-coordinate
// differentials.  For f = 1 this reproduces the constant bracket.
inline PoissonStructure structure_from_f(int k, const Poly& f) {
    int m = coord_count(k);
    CtxPtr ctx = e_context(k);
    RecursionOperator jx = recursion_operator(k, 'x');
    RecursionOperator jy = recursion_operator(k, 'y');
    {   // the two operators commute; everything below relies on it
        auto xy = detail::poly_mat_mul(ctx, m, jx.mat, jy.mat);
        auto yx = detail::poly_mat_mul(ctx, m, jy.mat, jx.mat);
        if (xy != yx) throw error("recursion operators failed to commute");
    }

    int degx = 0, degy = 0;
    const CtxPtr& fctx = f.ctx();
    int xv = fctx->index_of("x"), yv = fctx->index_of("y");
    for (const auto& [e, c] : f.terms()) {
        degx = std::max(degx, e[size_t(xv)]);
        degy = std::max(degy, e[size_t(yv)]);
        for (size_t t = 0; t < e.size(); ++t)
            if (int(t) != xv && int(t) != yv && e[t] != 0)
                throw variable_mismatch("structure_from_f: f must be a polynomial in x, y");
    }

    // Powers of J_x and J_y as needed.
    std::vector<std::vector<Poly>> px(1), py(1);
    std::vector<Poly> id(size_t(m) * m, Poly(ctx));
    for (int i = 0; i < m; ++i) id[size_t(i) * m + i] = Poly(ctx, 1);
    px[0] = id;
    py[0] = id;
    for (int d = 1; d <= degx; ++d) px.push_back(detail::poly_mat_mul(ctx, m, px[size_t(d) - 1], jx.mat));
    for (int d = 1; d <= degy; ++d) py.push_back(detail::poly_mat_mul(ctx, m, py[size_t(d) - 1], jy.mat));

    std::vector<Poly> op(size_t(m) * m, Poly(ctx));
    for (const auto& [e, c] : f.terms()) {
        auto term = detail::poly_mat_mul(ctx, m, px[size_t(e[size_t(xv)])], py[size_t(e[size_t(yv)])]);
        for (size_t i = 0; i < op.size(); ++i) op[i] += term[i] * c;
    }

    // pi_0^sharp sends dE_alpha to the C-frame field with the same index.
    QMatrix p0 = frames::c_frame_in_e_frame(k);
    PoissonStructure out = make_structure(k);
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            Poly acc(ctx);
            for (int l = 0; l < m; ++l) {
                const Rational& w = p0(l, al);
                if (w == 0) continue;
                acc += op[size_t(be) * m + l] * w;
            }
            out.entry(al, be) = std::move(acc);
        }
    return out;
}

// The quadratic bracket of the nodal chart, by the closed eight-sum formula;
// indices that leave the coordinate range contribute zero.
inline PoissonStructure quad_nodal_structure(int k) {
    PoissonStructure p = make_structure(k);
    const CtxPtr& ctx = p.ctx;
    auto evar = [&](int i, int j) -> Poly {
        if (!coord_valid(k, i, j)) return Poly(ctx);
        return Poly::variable(ctx, coord_linear_index(k, {i, j}));
    };
    int m = p.dim();
    for (int al = 0; al < m; ++al) {
        CoordIndex u = coord_from_linear(k, al);
        int i = u.i, j = u.j;
        for (int be = 0; be < m; ++be) {
            CoordIndex v = coord_from_linear(k, be);
            int a = v.i, b = v.j;
            Poly acc(ctx);
            if (a >= j)
                for (int q = 0; q <= a; ++q) acc += evar(i, q + j - a) * evar(q, b);
            for (int q = i; q <= a; ++q) acc -= evar(a + i - q, j) * evar(q, b);
            if (a + 1 <= j)
                for (int q = a + 1; q <= k - 1; ++q) acc -= evar(i, q + j - a) * evar(q, b);
            for (int q = a + 1; q <= i - 1; ++q) acc += evar(a + i - q, j) * evar(q, b);
            for (int q = 0; q <= std::min(j, b - 1); ++q) acc += evar(i, b + j - q) * evar(a, q);
            if (b <= i)
                for (int q = 0; q <= b - 1; ++q) acc -= evar(q + i - b, j) * evar(a, q);
            for (int q = std::max(j + 1, b); q <= k; ++q) acc -= evar(i, b + j - q) * evar(a, q);
            if (b - 1 >= i)
                for (int q = b; q <= k; ++q) acc += evar(q + i - b, j) * evar(a, q);
            p.entry(al, be) = std::move(acc);
        }
    }
    return p;
}

// {F, G} = sum pi^{ab} dF/dE_a dG/dE_b over the full skew table.
inline Poly bracket(const PoissonStructure& p, const Poly& f, const Poly& g) {
    if (!f.ctx()->same_as(*p.ctx) || !g.ctx()->same_as(*p.ctx))
        throw variable_mismatch("bracket: operands must live in the chart context");
    int m = p.dim();
    Poly acc(p.ctx);
    std::vector<Poly> df(size_t(m)), dg(size_t(m));
    for (int a = 0; a < m; ++a) {
        df[size_t(a)] = f.derivative(a);
        dg[size_t(a)] = g.derivative(a);
    }
    for (int a = 0; a < m; ++a) {
        if (df[size_t(a)].is_zero()) continue;
        for (int b = 0; b < m; ++b) {
            if (dg[size_t(b)].is_zero() || p.entry(a, b).is_zero()) continue;
            acc += p.entry(a, b) * df[size_t(a)] * dg[size_t(b)];
        }
    }
    return acc;
}

// Every coordinate triple whose cyclic Jacobi sum is nonzero; empty iff the
// Jacobi identity holds.
inline std::vector<std::pair<std::array<int, 3>, Poly>> jacobi_defect(const PoissonStructure& p,
                                                                      int jobs = 0) {
    int m = p.dim();
    // {E_a, h} for coordinate a
    auto coord_bracket = [&](int a, const Poly& h) {
        Poly acc(p.ctx);
        for (int b = 0; b < m; ++b) {
            if (p.entry(a, b).is_zero()) continue;
            Poly dh = h.derivative(b);
            if (dh.is_zero()) continue;
            acc += p.entry(a, b) * dh;
        }
        return acc;
    };
    std::vector<std::array<int, 3>> triples;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) triples.push_back({a, b, c});
    std::vector<Poly> defects(triples.size());
    parallel_for(int(triples.size()), jobs, [&](int t) {
        auto [a, b, c] = triples[size_t(t)];
        Poly s = coord_bracket(a, p.entry(b, c));
        s += coord_bracket(b, p.entry(c, a));
        s += coord_bracket(c, p.entry(a, b));
        defects[size_t(t)] = std::move(s);
    });
    std::vector<std::pair<std::array<int, 3>, Poly>> bad;
    for (size_t t = 0; t < triples.size(); ++t)
        if (!defects[t].is_zero()) bad.push_back({triples[t], defects[t]});
    return bad;
}

// Coadjoint action of the affine group on chart points: E -> psi(g,v) E g^{-1}
// with psi(g,v) the block embedding [[g, v], [0, 1]].
inline ChartPoint coadjoint_action(const QMatrix& g, const std::vector<Rational>& v,
                                   const ChartPoint& e) {
    e.check();
    int k = e.k;
    if (g.rows() != k || g.cols() != k || int(v.size()) != k)
        throw shape_error("coadjoint_action: group element has wrong shape");
    auto ginv = g.inverse();
    if (!ginv) throw error("coadjoint_action: singular group element");
    QMatrix psi(k + 1, k + 1);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) psi(r, c) = g(r, c);
        psi(r, k) = v[size_t(r)];
    }
    psi(k, k) = 1;
    QMatrix em(k + 1, k);
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) em(j, i) = e.at(j, i);
    QMatrix res = psi * em * (*ginv);
    ChartPoint out = ChartPoint::zero(k);
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) out.at(j, i) = res(j, i);
    return out;
}

// Multiplication operators by x and y on the chart quotient ring in the
// triangular monomial basis, with fully symbolic Haiman coefficients
// c[j][a][b]; the basis is ordered by total degree, then by x-exponent.
struct HaimanSymbols {
    int k = 0;
    CtxPtr ctx;
    std::vector<std::pair<int, int>> basis;  // exponent pairs (a, b), a+b <= k-1

    int var(int j, int a, int b) const {
        return ctx->index_of("c[" + std::to_string(j) + "][" + std::to_string(a) + "][" +
                             std::to_string(b) + "]");
    }
    int cvar(int i, int j) const { return var(j, i, k - 1 - i); }  // leading block C_i^j
};

inline HaimanSymbols haiman_symbols(int k) {
    HaimanSymbols h;
    h.k = k;
    std::vector<std::string> names;
    for (int j = 0; j <= k; ++j)
        for (int a = 0; a <= k - 1; ++a)
            for (int b = 0; a + b <= k - 1; ++b)
                names.push_back("c[" + std::to_string(j) + "][" + std::to_string(a) + "][" +
                                std::to_string(b) + "]");
    h.ctx = make_context(std::move(names));
    for (int d = 0; d <= k - 1; ++d)
        for (int a = d; a >= 0; --a) h.basis.push_back({a, d - a});
    return h;
}

inline std::pair<PolyMatrix, PolyMatrix> haiman_multiplication_matrices(const HaimanSymbols& h) {
    int k = h.k;
    int n = int(h.basis.size());
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < n; ++i) index[h.basis[size_t(i)]] = i;
    PolyMatrix mx(h.ctx, n, n), my(h.ctx, n, n);
    for (int col = 0; col < n; ++col) {
        auto [a, b] = h.basis[size_t(col)];
        if (a + b <= k - 2) {
            mx(index.at({a + 1, b}), col) = Poly(h.ctx, 1);
            my(index.at({a, b + 1}), col) = Poly(h.ctx, 1);
        } else {
            // x x^a y^{k-1-a} = x^{a+1} y^{k-(a+1)} reduces through f_{a+1},
            // y x^a y^{k-1-a} = x^a y^{k-a} reduces through f_a.
            for (int row = 0; row < n; ++row) {
                auto [c, d] = h.basis[size_t(row)];
                mx(row, col) = Poly::variable(h.ctx, h.var(a + 1, c, d));
                my(row, col) = Poly::variable(h.ctx, h.var(a, c, d));
            }
        }
    }
    return {mx, my};
}

// Tr(dM_y ^ dM_x) on the triangular staircase; equals the sum over the
// leading Haiman block sum_{i,a} dC_a^i ^ dC_i^{a+1}.
inline TwoForm mult_matrix_symplectic_form(int k) {
    HaimanSymbols h = haiman_symbols(k);
    auto [mx, my] = haiman_multiplication_matrices(h);
    TwoForm w = trace_d_wedge_d(my, mx);
    TwoForm expected(h.ctx);
    for (int i = 0; i <= k - 1; ++i)
        for (int a = 0; a <= k - 1; ++a)
            expected.add(h.cvar(a, i), h.cvar(i, a + 1), Poly(h.ctx, 1));
    if (!(w == expected))
        throw error("mult_matrix_symplectic_form: trace form differs from the Darboux sum");
    return w;
}

}  // namespace hilb
