#pragma once

#include <hilb/linalg.hpp>
#include <hilb/poly.hpp>

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace hilb {

// Bivariate Groebner engine over Q.  All ideal-theoretic computation in this
// library happens in the two variables x, y.

enum class MonomialOrder { degrevlex, lex };

namespace gb {

using Mono = std::pair<int, int>;  // (exponent of x, exponent of y)

inline bool less(MonomialOrder ord, const Mono& a, const Mono& b) {
    if (ord == MonomialOrder::lex) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    }
    int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.second > b.second;  // degrevlex with x > y
}

inline bool divides(const Mono& a, const Mono& b) {
    return a.first <= b.first && a.second <= b.second;
}
inline Mono quotient(const Mono& a, const Mono& b) {
    return {a.first - b.first, a.second - b.second};
}
inline Mono lcm(const Mono& a, const Mono& b) {
    return {std::max(a.first, b.first), std::max(a.second, b.second)};
}

inline Mono mono_of(const Exponents& e) { return {e[0], e[1]}; }

inline Poly mono_poly(const CtxPtr& ctx, const Mono& m, const Rational& c) {
    Poly p(ctx);
    p.add_term({m.first, m.second}, c);
    return p;
}

inline std::pair<Mono, Rational> leading_term(const Poly& p, MonomialOrder ord) {
    if (p.is_zero()) throw error("leading term of zero polynomial");
    bool first = true;
    Mono best{0, 0};
    Rational coeff;
    for (const auto& [e, c] : p.terms()) {
        Mono m = mono_of(e);
        if (first || less(ord, best, m)) { best = m; coeff = c; first = false; }
    }
    return {best, coeff};
}

}  // namespace gb

struct GroebnerBasis {
    CtxPtr ctx;
    std::vector<Poly> gens;  // reduced basis, monic, sorted by leading term
    MonomialOrder order = MonomialOrder::degrevlex;
};

// Remainder of multivariate division by the basis; also exposes the
// quotients, which the syzygy computation needs.
inline Poly normal_form(const Poly& p, const std::vector<Poly>& gens, MonomialOrder ord,
                        std::vector<Poly>* quotients = nullptr) {
    const CtxPtr& ctx = p.ctx();
    if (quotients) quotients->assign(gens.size(), Poly(ctx));
    Poly rem(ctx), work = p;
    std::vector<std::pair<gb::Mono, Rational>> lts;
    lts.reserve(gens.size());
    for (const auto& g : gens) lts.push_back(gb::leading_term(g, ord));
    while (!work.is_zero()) {
        auto [m, c] = gb::leading_term(work, ord);
        bool reduced = false;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (!gb::divides(lts[i].first, m)) continue;
            gb::Mono q = gb::quotient(m, lts[i].first);
            Poly factor = gb::mono_poly(ctx, q, c / lts[i].second);
            work -= factor * gens[i];
            if (quotients) (*quotients)[i] += factor;
            reduced = true;
            break;
        }
        if (!reduced) {
            Poly t = gb::mono_poly(ctx, m, c);
            rem += t;
            work -= t;
        }
    }
    return rem;
}

inline Poly normal_form(const Poly& p, const GroebnerBasis& g) {
    return normal_form(p, g.gens, g.order);
}

inline bool contains(const GroebnerBasis& g, const Poly& p) {
    return normal_form(p, g).is_zero();
}

// Buchberger with the sugar strategy, followed by inter-reduction to the
// unique reduced basis with monic leading coefficients.
inline GroebnerBasis groebner(std::vector<Poly> gens, MonomialOrder ord = MonomialOrder::degrevlex) {
    if (gens.empty()) throw error("groebner: empty generator list");
    CtxPtr ctx = gens.front().ctx();
    for (const auto& g : gens)
        if (g.ctx()->nvars() != 2) throw variable_mismatch("groebner: expects bivariate input");

    std::vector<Poly> basis;
    std::vector<int> sugar;
    for (auto& g : gens)
        if (!g.is_zero()) {
            sugar.push_back(g.total_degree());
            basis.push_back(std::move(g));
        }
    if (basis.empty()) return GroebnerBasis{ctx, {}, ord};

    struct Pair {
        size_t i, j;
        int sugar;
        gb::Mono lcm;
    };
    auto lt = [&](const Poly& p) { return gb::leading_term(p, ord); };
    std::vector<Pair> pairs;
    auto push_pairs = [&](size_t j) {
        auto [mj, cj] = lt(basis[j]);
        for (size_t i = 0; i < j; ++i) {
            auto [mi, ci] = lt(basis[i]);
            gb::Mono l = gb::lcm(mi, mj);
            // Buchberger's first criterion: coprime leading monomials.
            if (l.first == mi.first + mj.first && l.second == mi.second + mj.second) continue;
            int s = std::max(sugar[i] + (l.first - mi.first) + (l.second - mi.second),
                             sugar[j] + (l.first - mj.first) + (l.second - mj.second));
            pairs.push_back({i, j, s, l});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            if (a.sugar != b.sugar) return a.sugar < b.sugar;
            return gb::less(ord, a.lcm, b.lcm);
        });
        Pair pr = *best;
        pairs.erase(best);
        auto [mi, ci] = lt(basis[pr.i]);
        auto [mj, cj] = lt(basis[pr.j]);
        Poly spoly = gb::mono_poly(ctx, gb::quotient(pr.lcm, mi), Rational(1) / ci) * basis[pr.i] -
                     gb::mono_poly(ctx, gb::quotient(pr.lcm, mj), Rational(1) / cj) * basis[pr.j];
        Poly rem = normal_form(spoly, basis, ord);
        if (!rem.is_zero()) {
            sugar.push_back(pr.sugar);
            basis.push_back(rem);
            push_pairs(basis.size() - 1);
        }
    }

    // Minimalize: drop generators whose leading term is divisible by another's.
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        auto [mi, ci] = lt(basis[i]);
        bool redundant = false;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            auto [mj, cj] = lt(basis[j]);
            if (gb::divides(mj, mi) && (mj != mi || j < i)) { redundant = true; break; }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Reduce each generator against the others and normalize to monic.
    std::vector<Poly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = others.empty() ? minimal[i] : normal_form(minimal[i], others, ord);
        auto [m, c] = lt(r);
        r *= Rational(1) / c;
        reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return gb::less(ord, gb::leading_term(a, ord).first, gb::leading_term(b, ord).first);
    });
    return GroebnerBasis{ctx, std::move(reduced), ord};
}

struct Staircase {
    std::vector<std::pair<int, int>> monomials;  // exponent pairs under the staircase
};

constexpr long long COLENGTH_INFINITE = -1;

// Monomials outside the leading-term ideal and their count; the count is the
// colength of the ideal, INFINITE when the ideal is not zero-dimensional.
inline std::pair<Staircase, long long> staircase_and_colength(const GroebnerBasis& g) {
    if (g.gens.empty()) return {Staircase{}, COLENGTH_INFINITE};  // zero ideal
    int bound_x = -1, bound_y = -1;
    std::vector<gb::Mono> lts;
    for (const auto& p : g.gens) {
        auto [m, c] = gb::leading_term(p, g.order);
        lts.push_back(m);
        if (m == gb::Mono{0, 0}) return {Staircase{}, 0};  // unit ideal
        if (m.second == 0) bound_x = bound_x < 0 ? m.first : std::min(bound_x, m.first);
        if (m.first == 0) bound_y = bound_y < 0 ? m.second : std::min(bound_y, m.second);
    }
    if (bound_x < 0 || bound_y < 0) return {Staircase{}, COLENGTH_INFINITE};
    Staircase st;
    for (int a = 0; a < bound_x; ++a)
        for (int b = 0; b < bound_y; ++b) {
            bool inside = false;
            for (const auto& m : lts)
                if (gb::divides(m, {a, b})) { inside = true; break; }
            if (!inside) st.monomials.push_back({a, b});
        }
    std::sort(st.monomials.begin(), st.monomials.end(), [&](const gb::Mono& a, const gb::Mono& b) {
        return gb::less(g.order, a, b);
    });
    return {st, (long long)st.monomials.size()};
}

inline long long colength(const GroebnerBasis& g) { return staircase_and_colength(g).second; }

// Matrix of multiplication by x or y on the quotient ring in the staircase
// basis.  Requires finite colength.
inline QMatrix multiplication_matrix(const GroebnerBasis& g, char var) {
    auto [st, len] = staircase_and_colength(g);
    if (len == COLENGTH_INFINITE) throw infinite_dimension("multiplication_matrix: ideal is not zero-dimensional");
    const int n = int(st.monomials.size());
    QMatrix m(n, n);
    std::map<gb::Mono, int> index;
    for (int i = 0; i < n; ++i) index[st.monomials[size_t(i)]] = i;
    int vx = var == 'x' ? 1 : 0, vy = var == 'y' ? 1 : 0;
    if (!vx && !vy) throw error("multiplication_matrix: var must be 'x' or 'y'");
    for (int j = 0; j < n; ++j) {
        auto [a, b] = st.monomials[size_t(j)];
        Poly p = gb::mono_poly(g.ctx, {a + vx, b + vy}, 1);
        Poly nf = normal_form(p, g);
        for (const auto& [e, c] : nf.terms()) {
            auto it = index.find(gb::mono_of(e));
            if (it == index.end()) throw error("normal form left the staircase");
            m(it->second, j) = c;
        }
    }
    return m;
}

// Generators of the syzygy module of a (reduced) Groebner basis, by
// Schreyer's theorem: one syzygy per S-pair, recording the cofactors of the
// reduction to zero.  Each syzygy is a vector of polynomials (u_1,...,u_r)
// with sum u_i g_i = 0.
inline std::vector<std::vector<Poly>> syzygies(const GroebnerBasis& g) {
    const auto& gens = g.gens;
    const CtxPtr& ctx = g.ctx;
    std::vector<std::vector<Poly>> result;
    for (size_t i = 0; i < gens.size(); ++i) {
        auto [mi, ci] = gb::leading_term(gens[i], g.order);
        for (size_t j = i + 1; j < gens.size(); ++j) {
            auto [mj, cj] = gb::leading_term(gens[j], g.order);
            gb::Mono l = gb::lcm(mi, mj);
            Poly ui = gb::mono_poly(ctx, gb::quotient(l, mi), Rational(1) / ci);
            Poly uj = gb::mono_poly(ctx, gb::quotient(l, mj), Rational(1) / cj);
            Poly spoly = ui * gens[i] - uj * gens[j];
            std::vector<Poly> q;
            Poly rem = normal_form(spoly, gens, g.order, &q);
            if (!rem.is_zero()) throw error("syzygies: input is not a Groebner basis");
            std::vector<Poly> syz(gens.size(), Poly(ctx));
            syz[i] = ui;
            syz[j] = -uj;
            for (size_t l2 = 0; l2 < gens.size(); ++l2) syz[l2] -= q[l2];
            result.push_back(std::move(syz));
        }
    }
    return result;
}

}  // namespace hilb
