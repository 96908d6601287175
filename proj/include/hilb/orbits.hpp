#pragma once

#include <hilb/charts.hpp>
#include <hilb/groebner.hpp>
#include <hilb/snf.hpp>
#include <hilb/young.hpp>

#include <algorithm>
#include <vector>

namespace hilb {

// Orbit datum at a smooth point of the divisor: the diagram of positive
// x-adic invariant-factor valuations of the syzygy matrix restricted to y=0.
struct OrbitDatum {
    YoungDiagram diagram;
    bool operator==(const OrbitDatum& o) const { return diagram == o.diagram; }
};

inline OrbitDatum orbit_datum_smooth(int k, const ChartPoint& e) {
    PolyMatrix s = syzygy_matrix(k, e);
    PolyMatrix restricted(s.ctx(), s.rows(), s.cols());
    int yvar = s.ctx()->index_of("y");
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c) {
            Poly p = s(r, c);
            restricted(r, c) = p.substitute(yvar, Poly(s.ctx()));
        }
    int n = k + 2;  // minor degrees bound the factor valuations for chart points
    const int cap = k * (k + 1) / 2 + 2;
    for (;;) {
        try {
            SnfResult res = snf_dvr(restricted, n);
            std::vector<long> parts;
            for (int v : res.valuations)
                if (v > 0) parts.push_back(v);
            std::sort(parts.rbegin(), parts.rend());
            return OrbitDatum{YoungDiagram(std::move(parts))};
        } catch (const precision_error&) {
            if (n > cap) throw;
            n *= 2;
        }
    }
}

// Jordan type of the x-action on ker(y : O_Z -> O_Z), restricted to its
// nilpotent generalized eigenspace; block sizes come from the rank sequence
// of the powers, never from eigenvalue numerics.
inline YoungDiagram torsion_jordan_type(const GroebnerBasis& ideal) {
    QMatrix my = multiplication_matrix(ideal, 'y');
    QMatrix mx = multiplication_matrix(ideal, 'x');
    auto ker = my.kernel();
    int dim = int(ker.size());
    if (dim == 0) return YoungDiagram();
    int n = my.rows();
    // Matrix of x on the kernel: solve K a = M_x k for each basis vector.
    QMatrix kmat(n, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < n; ++i) kmat(i, j) = ker[size_t(j)][size_t(i)];
    QMatrix act(dim, dim);
    for (int j = 0; j < dim; ++j) {
        std::vector<Rational> img(size_t(n), Rational(0));
        for (int i = 0; i < n; ++i) {
            Rational acc = 0;
            for (int l = 0; l < n; ++l) acc += mx(i, l) * kmat(l, j);
            img[size_t(i)] = acc;
        }
        auto coords = kmat.solve(img);
        if (!coords) throw error("torsion_jordan_type: kernel is not x-invariant");
        for (int i = 0; i < dim; ++i) act(i, j) = (*coords)[size_t(i)];
    }
    // Nilpotent part: restrict to ker(act^dim), then read block sizes off the
    // rank sequence r_t = rank(act^t) on that subspace.
    QMatrix power = QMatrix::identity(dim);
    for (int t = 0; t < dim; ++t) power = power * act;
    auto nil = power.kernel();
    int nd = int(nil.size());
    if (nd == 0) return YoungDiagram();
    QMatrix nmat(dim, nd);
    for (int j = 0; j < nd; ++j)
        for (int i = 0; i < dim; ++i) nmat(i, j) = nil[size_t(j)][size_t(i)];
    QMatrix restricted(nd, nd);
    for (int j = 0; j < nd; ++j) {
        std::vector<Rational> img(size_t(dim), Rational(0));
        for (int i = 0; i < dim; ++i) {
            Rational acc = 0;
            for (int l = 0; l < dim; ++l) acc += act(i, l) * nmat(l, j);
            img[size_t(i)] = acc;
        }
        auto coords = nmat.solve(img);
        if (!coords) throw error("torsion_jordan_type: generalized eigenspace is not invariant");
        for (int i = 0; i < nd; ++i) restricted(i, j) = (*coords)[size_t(i)];
    }
    std::vector<long> ranks;  // r_0 = nd, r_1, ..., down to zero
    ranks.push_back(nd);
    QMatrix pw = QMatrix::identity(nd);
    while (ranks.back() != 0) {
        pw = pw * restricted;
        ranks.push_back(pw.rank());
    }
    auto rank_at = [&](size_t t) { return t < ranks.size() ? ranks[t] : 0; };
    std::vector<long> parts;
    // blocks of size exactly s: r_{s-1} - 2 r_s + r_{s+1}
    for (size_t s = 1; s < ranks.size(); ++s) {
        long count = rank_at(s - 1) - 2 * rank_at(s) + rank_at(s + 1);
        for (long i = 0; i < count; ++i) parts.push_back(long(s));
    }
    std::sort(parts.rbegin(), parts.rend());
    return YoungDiagram(std::move(parts));
}

// Ideal of minors of the Smith-form matrix of mu perturbed by y M; contained
// in the monomial scheme ideal of mu.
inline GroebnerBasis perturbed_syzygy_ideal(const YoungDiagram& mu,
                                            const std::vector<std::vector<Rational>>& m) {
    int k = mu.length();
    if (int(m.size()) != k + 1) throw shape_error("perturbed_syzygy_ideal: M must have k+1 rows");
    for (const auto& row : m)
        if (int(row.size()) != k) throw shape_error("perturbed_syzygy_ideal: M must have k columns");
    CtxPtr ctx = xy_context();
    PolyMatrix s(ctx, k + 1, k);
    Poly y = Poly::variable(ctx, "y");
    for (int r = 0; r <= k; ++r)
        for (int c = 0; c < k; ++c) {
            Poly v = y * Poly(ctx, m[size_t(r)][size_t(c)]);
            if (r == c) {
                Poly xp(ctx);
                xp.add_term({int(mu.part(r)), 0}, 1);
                v += xp;
            }
            s(r, c) = std::move(v);
        }
    return groebner(signed_maximal_minors(s));
}

// Nodal series constructors: normal forms of the modules over the node with
// projective dimension at most one, exactly as displayed.
struct NodalSeriesSpec {
    enum class Kind { continuous, discrete } kind;
    std::vector<std::pair<int, int>> d;  // continuous: (nu_i, mu_i); discrete: (nu_i, mu_i)
    int block = 1;                       // continuous only: Jordan block size
    Rational eigenvalue = 1;             // continuous only: u != 0
};

namespace detail {

inline bool is_periodic(const std::vector<std::pair<int, int>>& d) {
    int l = int(d.size());
    for (int p = 1; p < l; ++p) {
        if (l % p != 0) continue;
        bool rep = true;
        for (int i = 0; i < l && rep; ++i)
            if (d[size_t(i)] != d[size_t(i % p)]) rep = false;
        if (rep) return true;
    }
    return false;
}

}  // namespace detail

inline PolyMatrix nodal_series_matrix(const NodalSeriesSpec& spec) {
    CtxPtr ctx = xy_context();
    for (const auto& [nu, mu] : spec.d)
        if (nu <= 0 || mu <= 0) throw error("nodal series: exponents must be positive");
    auto xpow = [&](int p) {
        Poly q(ctx);
        q.add_term({p, 0}, 1);
        return q;
    };
    auto ypow = [&](int p) {
        Poly q(ctx);
        q.add_term({0, p}, 1);
        return q;
    };
    if (spec.kind == NodalSeriesSpec::Kind::discrete) {
        int k = int(spec.d.size());
        PolyMatrix m(ctx, k + 1, k);  // 1 x 0 for the trivial module
        for (int c = 0; c < k; ++c) {
            m(c, c) = xpow(spec.d[size_t(c)].first);
            m(c + 1, c) = ypow(spec.d[size_t(c)].second);
        }
        return m;
    }
    // Continuous series.
    if (spec.eigenvalue == 0) throw error("nodal series: eigenvalue must be nonzero");
    if (spec.d.empty()) throw error("nodal series: empty continuous sequence");
    if (detail::is_periodic(spec.d)) throw error("nodal series: sequence must be non-periodic");
    int l = int(spec.d.size());
    int kb = spec.block;
    if (kb < 1) throw error("nodal series: block size must be positive");
    int n = kb * l;
    PolyMatrix m(ctx, n, n);
    for (int blk = 0; blk < l; ++blk) {
        const auto [nu, mu] = spec.d[size_t(blk)];
        // diagonal block x^{nu_{blk+1}} I_k
        for (int i = 0; i < kb; ++i) m(blk * kb + i, blk * kb + i) += xpow(nu);
        if (blk + 1 < l) {
            for (int i = 0; i < kb; ++i) m((blk + 1) * kb + i, blk * kb + i) += ypow(mu);
        }
    }
    // top-right corner: y^{mu_l} J_k(u); in the degenerate case l = 1 the
    // corner coincides with the diagonal block and enters with a minus sign.
    const int mu_l = spec.d.back().second;
    Rational sign = (l == 1) ? Rational(-1) : Rational(1);
    for (int i = 0; i < kb; ++i) {
        m(i, (l - 1) * kb + i) += sign * spec.eigenvalue * ypow(mu_l);
        if (i + 1 < kb) m(i, (l - 1) * kb + i + 1) += sign * ypow(mu_l);
    }
    return m;
}

// Dimension of Hom(I_Z, O_Z) at a chart point: unknowns are the images of
// the k+1 presentation generators in the staircase basis, constrained by the
// columns of the syzygy matrix; equals k(k+1) on the whole chart.
inline int hom_tangent_dim(int k, const ChartPoint& e) {
    GroebnerBasis g = hilbert_burch_ideal(k, e);
    auto [st, len] = staircase_and_colength(g);
    if (len == COLENGTH_INFINITE) throw infinite_dimension("hom_tangent_dim: ideal not zero-dimensional");
    const int n = int(len);
    PolyMatrix s = syzygy_matrix(k, e);
    // Multiplication operator on O_Z by an arbitrary polynomial.
    auto mult_op = [&](const Poly& p) {
        QMatrix op(n, n);
        for (int j = 0; j < n; ++j) {
            auto [a, b] = st.monomials[size_t(j)];
            Poly m = gb::mono_poly(g.ctx, {a, b}, 1) * p;
            Poly nf = normal_form(m, g);
            for (const auto& [expo, c] : nf.terms()) {
                auto it = std::find(st.monomials.begin(), st.monomials.end(), gb::mono_of(expo));
                if (it == st.monomials.end()) throw error("hom_tangent_dim: normal form left staircase");
                op(int(it - st.monomials.begin()), j) = c;
            }
        }
        return op;
    };
    // Constraint matrix: for each syzygy column c, sum_j S[j][c] phi_j = 0.
    QMatrix constraints(k * n, (k + 1) * n);
    for (int c = 0; c < k; ++c)
        for (int j = 0; j <= k; ++j) {
            if (s(j, c).is_zero()) continue;
            QMatrix op = mult_op(s(j, c));
            for (int r = 0; r < n; ++r)
                for (int l = 0; l < n; ++l) constraints(c * n + r, j * n + l) = op(r, l);
        }
    return (k + 1) * n - constraints.rank();
}

// Colength of I + (g).
inline long long divisor_intersection_length(const GroebnerBasis& ideal, const Poly& g) {
    std::vector<Poly> gens = ideal.gens;
    gens.push_back(g.renamed(ideal.ctx));
    return colength(groebner(std::move(gens), ideal.order));
}

}  // namespace hilb
