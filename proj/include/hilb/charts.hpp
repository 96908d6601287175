#pragma once

#include <hilb/groebner.hpp>
#include <hilb/linalg.hpp>
#include <hilb/polymatrix.hpp>

#include <map>
#include <string>
#include <vector>

namespace hilb {

// Index of a chart coordinate: column i in 0..k-1, row j in 0..k, matching
// the (j,i)-entry convention of the (k+1) x k coordinate matrices.
struct CoordIndex {
    int i = 0;  // column
    int j = 0;  // row
    friend bool operator==(const CoordIndex&, const CoordIndex&) = default;
};

inline int coord_count(int k) { return k * (k + 1); }
inline int coord_linear_index(int k, const CoordIndex& c) { return c.j * k + c.i; }
inline CoordIndex coord_from_linear(int k, int idx) { return CoordIndex{idx % k, idx / k}; }
inline bool coord_valid(int k, int i, int j) { return i >= 0 && i < k && j >= 0 && j <= k; }

inline std::string e_var_name(int i, int j) {
    return "E[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}
inline std::string c_var_name(int i, int j) {
    return "C[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

// Context holding the chart coordinates E[i][j], ordered by linear index.
inline CtxPtr e_context(int k) {
    std::vector<std::string> names;
    for (int idx = 0; idx < coord_count(k); ++idx) {
        CoordIndex c = coord_from_linear(k, idx);
        names.push_back(e_var_name(c.i, c.j));
    }
    return make_context(std::move(names));
}

// Context with x, y first and then the chart coordinates, for syzygy matrices
// with symbolic entries.
inline CtxPtr xye_context(int k) {
    std::vector<std::string> names = {"x", "y"};
    for (int idx = 0; idx < coord_count(k); ++idx) {
        CoordIndex c = coord_from_linear(k, idx);
        names.push_back(e_var_name(c.i, c.j));
    }
    return make_context(std::move(names));
}

// A rational point of the triangular chart: a (k+1) x k matrix of values,
// addressed as value(j, i) = row j, column i.
struct ChartPoint {
    int k = 0;
    std::vector<std::vector<Rational>> values;  // (k+1) rows of k entries

    static ChartPoint zero(int k) {
        ChartPoint p;
        p.k = k;
        p.values.assign(size_t(k) + 1, std::vector<Rational>(size_t(k), Rational(0)));
        return p;
    }
    const Rational& at(int j, int i) const { return values[size_t(j)][size_t(i)]; }
    Rational& at(int j, int i) { return values[size_t(j)][size_t(i)]; }

    void check() const {
        if (int(values.size()) != k + 1) throw shape_error("chart point must have k+1 rows");
        for (const auto& row : values)
            if (int(row.size()) != k) throw shape_error("chart point must have k columns");
    }
    bool operator==(const ChartPoint& o) const { return k == o.k && values == o.values; }
};

// The linear transforms between the two coordinate systems on the chart,
// written for a generic entry type so they apply to values and to symbols.
//
//   E_i^j = C_j^{i+1} - C_{j-1}^i           (C_{-1}^j = C_k^j = 0)
//   C_i^j = sum_{t=0..i}       E_{j-1-t}^{i-t}      for j >= i+1
//   C_i^j = -sum_{t=0..k-i-1}  E_{j+t}^{i+1+t}      for j <= i
template <class T, class Zero>
std::vector<std::vector<T>> haiman_to_es_generic(int k, const std::vector<std::vector<T>>& c, Zero zero) {
    std::vector<std::vector<T>> e(size_t(k) + 1, std::vector<T>(size_t(k), zero()));
    auto cval = [&](int sub, int sup) -> T {
        if (sub < 0 || sub >= k) return zero();
        return c[size_t(sup)][size_t(sub)];
    };
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) e[size_t(j)][size_t(i)] = cval(j, i + 1) - cval(j - 1, i);
    return e;
}

template <class T, class Zero>
std::vector<std::vector<T>> es_to_haiman_generic(int k, const std::vector<std::vector<T>>& e, Zero zero) {
    std::vector<std::vector<T>> c(size_t(k) + 1, std::vector<T>(size_t(k), zero()));
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) {
            T acc = zero();
            if (j >= i + 1) {
                for (int t = 0; t <= i; ++t) acc = acc + e[size_t(i - t)][size_t(j - 1 - t)];
            } else {
                for (int t = 0; t <= k - i - 1; ++t) acc = acc - e[size_t(i + 1 + t)][size_t(j + t)];
            }
            c[size_t(j)][size_t(i)] = acc;
        }
    return c;
}

inline ChartPoint es_to_haiman(const ChartPoint& e) {
    e.check();
    ChartPoint c;
    c.k = e.k;
    c.values = es_to_haiman_generic(e.k, e.values, [] { return Rational(0); });
    return c;
}

inline ChartPoint haiman_to_es(const ChartPoint& c) {
    c.check();
    ChartPoint e;
    e.k = c.k;
    e.values = haiman_to_es_generic(c.k, c.values, [] { return Rational(0); });
    return e;
}

// S_E(x,y) = E - x (I_k over 0) + y (0 over I_k), with entries over the given
// context; `entries` supplies the E values as polynomials in that context.
inline PolyMatrix syzygy_matrix_from(const CtxPtr& ctx, int k,
                                     const std::vector<std::vector<Poly>>& entries) {
    PolyMatrix s(ctx, k + 1, k);
    Poly x = Poly::variable(ctx, "x"), y = Poly::variable(ctx, "y");
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) {
            Poly v = entries[size_t(j)][size_t(i)];
            if (j == i) v -= x;
            if (j == i + 1) v += y;
            s(j, i) = std::move(v);
        }
    return s;
}

// Syzygy matrix of a rational chart point, over the plain x,y context.
inline PolyMatrix syzygy_matrix(int k, const ChartPoint& e) {
    e.check();
    CtxPtr ctx = xy_context();
    std::vector<std::vector<Poly>> entries(size_t(k) + 1, std::vector<Poly>(size_t(k), Poly(ctx)));
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) entries[size_t(j)][size_t(i)] = Poly(ctx, e.at(j, i));
    return syzygy_matrix_from(ctx, k, entries);
}

// Syzygy matrix with symbolic E entries, over the x,y,E context.
inline PolyMatrix syzygy_matrix_symbolic(int k) {
    CtxPtr ctx = xye_context(k);
    std::vector<std::vector<Poly>> entries(size_t(k) + 1, std::vector<Poly>(size_t(k), Poly(ctx)));
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i)
            entries[size_t(j)][size_t(i)] = Poly::variable(ctx, e_var_name(i, j));
    return syzygy_matrix_from(ctx, k, entries);
}

// Ideal of maximal minors of S_E: the point of the Hilbert scheme named by E.
inline GroebnerBasis hilbert_burch_ideal(int k, const ChartPoint& e,
                                         MonomialOrder ord = MonomialOrder::degrevlex) {
    return groebner(signed_maximal_minors(syzygy_matrix(k, e)), ord);
}

// Generators f_j = x^j y^{k-j} - sum c^j_{ab} x^a y^b from a coefficient
// assignment; keys are (j, a, b).  Coefficients not supplied are zero, so the
// leading Haiman block alone is a valid input.
inline std::vector<Poly> haiman_generators(int k,
                                           const std::map<std::tuple<int, int, int>, Rational>& coeff) {
    CtxPtr ctx = xy_context();
    for (const auto& [key, val] : coeff) {
        auto [j, a, b] = key;
        if (j < 0 || j > k || a < 0 || b < 0 || a + b > k - 1)
            throw error("haiman_generators: coefficient index out of range");
    }
    std::vector<Poly> gens;
    for (int j = 0; j <= k; ++j) {
        Poly f(ctx);
        f.add_term({j, k - j}, 1);
        for (int a = 0; a + 0 <= k - 1; ++a)
            for (int b = 0; a + b <= k - 1; ++b) {
                auto it = coeff.find({j, a, b});
                if (it != coeff.end()) f.add_term({a, b}, -it->second);
            }
        gens.push_back(std::move(f));
    }
    return gens;
}

// Convenience: generators from the leading Haiman block C_i^j = c^j_{i,k-1-i}.
inline std::vector<Poly> haiman_generators(const ChartPoint& c) {
    c.check();
    std::map<std::tuple<int, int, int>, Rational> coeff;
    for (int j = 0; j <= c.k; ++j)
        for (int i = 0; i < c.k; ++i)
            if (c.at(j, i) != 0) coeff[{j, i, c.k - 1 - i}] = c.at(j, i);
    return haiman_generators(c.k, coeff);
}

}  // namespace hilb
