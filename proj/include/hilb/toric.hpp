#pragma once

#include <hilb/brackets.hpp>
#include <hilb/linalg.hpp>

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

namespace hilb {

// Torus weight of a monomial bivector on the chart, kept as a (k+1) x k
// integer matrix: +1 at the position of each coordinate factor, -1 at the
// position of each derivative.
struct WeightMatrix {
    int k = 0;
    std::vector<std::vector<long>> entries;  // (k+1) rows of k columns

    static WeightMatrix zero(int k) {
        WeightMatrix w;
        w.k = k;
        w.entries.assign(size_t(k) + 1, std::vector<long>(size_t(k), 0));
        return w;
    }
    long& at(int row, int col) { return entries[size_t(row)][size_t(col)]; }
    long at(int row, int col) const { return entries[size_t(row)][size_t(col)]; }

    bool is_zero() const {
        for (const auto& r : entries)
            for (long v : r)
                if (v) return false;
        return true;
    }
    bool operator==(const WeightMatrix& o) const { return k == o.k && entries == o.entries; }

    // Entrywise dot product with another integer matrix of the same shape.
    long dot(const WeightMatrix& o) const {
        long s = 0;
        for (int r = 0; r <= k; ++r)
            for (int c = 0; c < k; ++c) s += at(r, c) * o.at(r, c);
        return s;
    }

    std::vector<long> flattened(const std::vector<CoordIndex>& order) const {
        std::vector<long> v;
        v.reserve(order.size());
        for (const auto& p : order) v.push_back(at(p.j, p.i));
        return v;
    }
};

// Weight of E_{f1} E_{f2} d/dE_{d1} ^ d/dE_{d2}.
inline WeightMatrix weight_of_term(int k, const CoordIndex& f1, const CoordIndex& f2,
                                   const CoordIndex& d1, const CoordIndex& d2) {
    for (const CoordIndex& c : {f1, f2, d1, d2})
        if (!coord_valid(k, c.i, c.j)) throw shape_error("weight_of_term: index out of range");
    WeightMatrix w = WeightMatrix::zero(k);
    w.at(f1.j, f1.i) += 1;
    w.at(f2.j, f2.i) += 1;
    w.at(d1.j, d1.i) -= 1;
    w.at(d2.j, d2.i) -= 1;
    return w;
}

// Weight of a general monomial exponent vector sitting in entry (alpha, beta)
// of a bracket table.
inline WeightMatrix weight_of_monomial(int k, const Exponents& expo, int alpha, int beta) {
    WeightMatrix w = WeightMatrix::zero(k);
    for (size_t v = 0; v < expo.size(); ++v) {
        if (expo[v] == 0) continue;
        CoordIndex c = coord_from_linear(k, int(v));
        w.at(c.j, c.i) += expo[v];
    }
    CoordIndex a = coord_from_linear(k, alpha), b = coord_from_linear(k, beta);
    w.at(a.j, a.i) -= 1;
    w.at(b.j, b.i) -= 1;
    return w;
}

// ---------------------------------------------------------------------------
// Dominoes and the weight taxonomy.

struct Domino {
    std::pair<int, int> head;  // (row, col) of the +1
    std::pair<int, int> tail;  // (row, col) of the -1
    char orientation() const {
        if (head.second == tail.second) return head.first < tail.first ? 'N' : 'S';
        return head.second > tail.second ? 'E' : 'W';
    }
    int size() const {
        return std::abs(head.first - tail.first) + std::abs(head.second - tail.second);
    }
    // Valuation: N/S measure rows to the top edge; E/W measure columns to the
    // left edge, offset by one half (returned doubled to stay integral).
    int twice_valuation() const {
        char o = orientation();
        if (o == 'N' || o == 'S') return 2 * std::min(head.first, tail.first);
        return 2 * std::min(head.second, tail.second) + 1;
    }
    bool operator==(const Domino& o) const { return head == o.head && tail == o.tail; }
};

enum class SmoothableType { I, IIa, IIb };

struct Rectangular {
    int r1, c1, r2, c2;  // +1 at (r1,c1) and (r2,c2), -1 at the other corners
};
struct AdmissiblePair {
    Domino first, second;
};
struct Smoothable {
    SmoothableType type;
    WeightMatrix weight;
};
struct OtherWeight {};

using WeightClass = std::variant<Rectangular, AdmissiblePair, Smoothable, OtherWeight>;

inline WeightMatrix domino_matrix(int k, const Domino& d) {
    WeightMatrix w = WeightMatrix::zero(k);
    w.at(d.head.first, d.head.second) += 1;
    w.at(d.tail.first, d.tail.second) -= 1;
    return w;
}

inline std::vector<Domino> all_dominoes(int k) {
    std::vector<Domino> out;
    for (int r = 0; r <= k; ++r)
        for (int c = 0; c < k; ++c) {
            for (int r2 = 0; r2 <= k; ++r2)
                if (r2 != r) out.push_back({{r, c}, {r2, c}});
            for (int c2 = 0; c2 < k; ++c2)
                if (c2 != c) out.push_back({{r, c}, {r, c2}});
        }
    return out;
}

inline WeightMatrix smoothable_type_i(int k, int r, int c) {
    WeightMatrix w = WeightMatrix::zero(k);
    w.at(r, c) = 1;
    w.at(r, c + 1) = -1;
    w.at(r + 1, c) = -1;
    w.at(r + 1, c + 1) = 1;
    return w;
}
// Type IIa, diagonal parameter d in 1..k-1: a south domino in the leftmost
// column with tail on the diagonal of the head of an east domino in the top row.
inline WeightMatrix smoothable_type_iia(int k, int d) {
    WeightMatrix w = WeightMatrix::zero(k);
    w.at(d + 1, 0) += 1;
    w.at(d, 0) -= 1;
    w.at(0, d) += 1;
    w.at(0, d - 1) -= 1;
    return w;
}
// Type IIb, parameter e in 0..k-2: a west domino in the bottom row whose head
// shares a diagonal with the tail of a north domino in the rightmost column.
inline WeightMatrix smoothable_type_iib(int k, int e) {
    WeightMatrix w = WeightMatrix::zero(k);
    w.at(k, e) += 1;
    w.at(k, e + 1) -= 1;
    w.at(e, k - 1) += 1;
    w.at(e + 1, k - 1) -= 1;
    return w;
}

// The smoothable weights named by the taxonomy: k(k-1) of Type I and k-1 each
// of Types IIa and IIb.
inline std::vector<Smoothable> smoothable_weights(int k) {
    std::vector<Smoothable> out;
    for (int r = 0; r <= k - 1; ++r)
        for (int c = 0; c + 1 <= k - 1; ++c)
            out.push_back({SmoothableType::I, smoothable_type_i(k, r, c)});
    for (int d = 1; d <= k - 1; ++d) out.push_back({SmoothableType::IIa, smoothable_type_iia(k, d)});
    for (int e = 0; e + 1 <= k - 1; ++e) out.push_back({SmoothableType::IIb, smoothable_type_iib(k, e)});
    return out;
}

inline WeightClass classify_weight(const WeightMatrix& w) {
    int k = w.k;
    for (const auto& s : smoothable_weights(k))
        if (s.weight == w) return s;

    // Rectangular: +1 at two opposite corners (top-left, bottom-right), -1 at
    // the other two.
    {
        std::vector<std::pair<int, int>> plus, minus;
        bool clean = true;
        for (int r = 0; r <= k && clean; ++r)
            for (int c = 0; c < k && clean; ++c) {
                if (w.at(r, c) == 1) plus.push_back({r, c});
                else if (w.at(r, c) == -1) minus.push_back({r, c});
                else if (w.at(r, c) != 0) clean = false;
            }
        if (clean && plus.size() == 2 && minus.size() == 2) {
            auto [p1, p2] = std::pair{plus[0], plus[1]};
            if (p2 < p1) std::swap(p1, p2);
            int r1 = p1.first, c1 = p1.second, r2 = p2.first, c2 = p2.second;
            if (r1 < r2 && c1 < c2) {
                bool corners = (minus[0] == std::pair{r1, c2} && minus[1] == std::pair{r2, c1}) ||
                               (minus[1] == std::pair{r1, c2} && minus[0] == std::pair{r2, c1});
                if (corners) return Rectangular{r1, c1, r2, c2};
            }
        }
    }

    // Admissible pair: an ordered sum of two equal-length dominoes, the first
    // west or south, the second east or north, with strictly larger valuation
    // on the first.
    for (const Domino& d1 : all_dominoes(k)) {
        char o1 = d1.orientation();
        if (o1 != 'W' && o1 != 'S') continue;
        WeightMatrix rest = w;
        rest.at(d1.head.first, d1.head.second) -= 1;
        rest.at(d1.tail.first, d1.tail.second) += 1;
        for (const Domino& d2 : all_dominoes(k)) {
            char o2 = d2.orientation();
            if (o2 != 'E' && o2 != 'N') continue;
            if (d2.size() != d1.size()) continue;
            if (d1.twice_valuation() <= d2.twice_valuation()) continue;
            if (rest == domino_matrix(k, d2)) return AdmissiblePair{d1, d2};
        }
    }
    return OtherWeight{};
}

// ---------------------------------------------------------------------------
// The torus-invariant part of the quadratic bracket.

// Six-delta coefficient of the invariant bracket {E_i^j, E_a^b} = Pi E_i^j E_a^b.
inline long pi_delta_coefficient(const CoordIndex& u, const CoordIndex& v) {
    int i = u.i, j = u.j, a = v.i, b = v.j;
    long pi = 0;
    if (a >= j) pi += 1;
    if (a >= i) pi -= 1;
    if (b == j && a >= i + 1) pi -= 1;
    if (b >= j + 1 && a == i) pi += 1;
    if (b >= j + 1) pi -= 1;
    if (b >= i + 1) pi += 1;
    return pi;
}

inline PoissonStructure pi_delta(int k) {
    PoissonStructure p = make_structure(k);
    int m = p.dim();
    auto evar = [&](const CoordIndex& c) {
        return Poly::variable(p.ctx, coord_linear_index(k, c));
    };
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            CoordIndex u = coord_from_linear(k, al), v = coord_from_linear(k, be);
            long pi = pi_delta_coefficient(u, v);
            if (pi != 0) p.entry(al, be) = Rational(pi) * evar(u) * evar(v);
        }
    return p;
}

// Keeps exactly the zero-weight monomials of an (at most) quadratic
// structure.  Monomials of degree below two always carry nonzero weight, so
// for the constant bracket the projection is zero.
inline PoissonStructure invariant_projection(const PoissonStructure& p) {
    int k = p.k, m = p.dim();
    PoissonStructure out = make_structure(k);
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            const Poly& e = p.entry(al, be);
            if (e.is_zero()) continue;
            if (e.total_degree() > 2)
                throw error("invariant_projection: structure is not quadratic");
            Poly keep(p.ctx);
            for (const auto& [expo, c] : e.terms()) {
                if (weight_of_monomial(k, expo, al, be).is_zero()) keep.add_term(expo, c);
            }
            out.entry(al, be) = std::move(keep);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Biresidue matrix.

// Coordinate positions ordered by the sum of the indices, ties broken by the
// column index: (j,i) sorted by (i+j, i).
inline std::vector<CoordIndex> biresidue_ordering(int k) {
    std::vector<CoordIndex> order;
    for (int idx = 0; idx < coord_count(k); ++idx) order.push_back(coord_from_linear(k, idx));
    std::sort(order.begin(), order.end(), [](const CoordIndex& a, const CoordIndex& b) {
        if (a.i + a.j != b.i + b.j) return a.i + a.j < b.i + b.j;
        return a.i < b.i;
    });
    return order;
}

struct BiresidueMatrix {
    int k = 0;
    std::vector<CoordIndex> ordering;
    std::vector<std::vector<long>> entries;  // m x m, skew

    int m() const { return int(ordering.size()); }
    long at(int r, int c) const { return entries[size_t(r)][size_t(c)]; }
    std::vector<long> row(int r) const { return entries[size_t(r)]; }
};

// Four-delta biresidue of the inverse of the invariant log symplectic
// structure along a pair of coordinate hyperplanes.  The overall orientation
// is normalized to reproduce the tabulated k=2 matrix; see the k=2 test.
inline long biresidue_entry(const CoordIndex& u, const CoordIndex& v) {
    int i = u.i, j = u.j, a = v.i, b = v.j;
    long s = 0;
    if (a + b == i + j && a >= i + 1) s -= 1;
    if (a + b == i + j + 1 && a <= i) s -= 1;
    if (a + b == i + j && a <= i - 1) s += 1;
    if (a + b == i + j - 1 && a >= i) s += 1;
    return -s;
}

inline BiresidueMatrix biresidue_matrix(int k) {
    BiresidueMatrix b;
    b.k = k;
    b.ordering = biresidue_ordering(k);
    int m = b.m();
    b.entries.assign(size_t(m), std::vector<long>(size_t(m), 0));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) b.entries[size_t(r)][size_t(c)] = biresidue_entry(b.ordering[size_t(r)], b.ordering[size_t(c)]);
    return b;
}

// Verifies that the coefficient matrix of the invariant bracket and the
// biresidue matrix multiply to a scalar matrix in the ordered log bases, and
// returns the scalar.
inline Rational inverse_relation_check(int k) {
    BiresidueMatrix b = biresidue_matrix(k);
    int m = b.m();
    QMatrix pi(m, m), bm(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            pi(r, c) = pi_delta_coefficient(b.ordering[size_t(r)], b.ordering[size_t(c)]);
            bm(r, c) = b.at(r, c);
        }
    QMatrix prod = pi * bm;
    Rational scalar = prod(0, 0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            if (r == c && prod(r, c) != scalar)
                throw error("inverse_relation_check: product is not scalar");
            if (r != c && prod(r, c) != 0)
                throw error("inverse_relation_check: product is not diagonal");
        }
    return scalar;
}

// ---------------------------------------------------------------------------
// Deformation-weight basis and decomposition.

// Differences of consecutive rows of the biresidue matrix, reshaped into
// weight matrices through the ordering.  These k(k+1)-1 weights are linearly
// independent; all but one are the smoothable weights of the taxonomy, the
// remaining one is the weight that smooths the node itself.
inline std::vector<WeightMatrix> smoothable_basis(int k) {
    BiresidueMatrix b = biresidue_matrix(k);
    int m = b.m();
    std::vector<WeightMatrix> out;
    for (int r = 0; r + 1 < m; ++r) {
        WeightMatrix w = WeightMatrix::zero(k);
        for (int c = 0; c < m; ++c) {
            const CoordIndex& pos = b.ordering[size_t(c)];
            w.at(pos.j, pos.i) = b.at(r + 1, c) - b.at(r, c);
        }
        out.push_back(std::move(w));
    }
    return out;
}

struct NotDecomposable : error {
    using error::error;
};
struct NegativeCoefficient : error {
    using error::error;
};

// Unique decomposition of a weight over the independent basis, by exact
// linear solve; coefficients are checked to be non-negative integers.
inline std::vector<std::pair<WeightMatrix, long>> decompose_weight(const WeightMatrix& w, int k) {
    auto basis = smoothable_basis(k);
    auto order = biresidue_ordering(k);
    int m = int(order.size());
    QMatrix a(m, int(basis.size()));
    for (int col = 0; col < int(basis.size()); ++col) {
        auto flat = basis[size_t(col)].flattened(order);
        for (int row = 0; row < m; ++row) a(row, col) = flat[size_t(row)];
    }
    auto target = w.flattened(order);
    std::vector<Rational> rhs(target.begin(), target.end());
    auto sol = a.solve(rhs);
    if (!sol) throw NotDecomposable("weight is outside the span of the smoothable basis");
    // solve() leaves free variables at zero; the basis is independent, so the
    // solution is unique, but confirm it reproduces the target exactly.
    for (int row = 0; row < m; ++row) {
        Rational acc = 0;
        for (int col = 0; col < int(basis.size()); ++col) acc += a(row, col) * (*sol)[size_t(col)];
        if (acc != rhs[size_t(row)])
            throw NotDecomposable("weight is outside the span of the smoothable basis");
    }
    std::vector<std::pair<WeightMatrix, long>> out;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Rational& c = (*sol)[i];
        if (c == 0) continue;
        if (denominator(c) != 1 || c < 0)
            throw NegativeCoefficient("decomposition coefficient " + to_string(c) +
                                      " is not a non-negative integer");
        out.push_back({basis[i], long(numerator(c))});
    }
    return out;
}

// Integer coweight pairing strictly positively with every basis weight:
// solve <w, s> = 1 on the basis, zero on free coordinates, clear denominators.
inline WeightMatrix find_coweight(int k) {
    auto basis = smoothable_basis(k);
    auto order = biresidue_ordering(k);
    int m = int(order.size());
    QMatrix a(int(basis.size()), m);
    for (int row = 0; row < int(basis.size()); ++row) {
        auto flat = basis[size_t(row)].flattened(order);
        for (int col = 0; col < m; ++col) a(row, col) = flat[size_t(col)];
    }
    std::vector<Rational> one(basis.size(), Rational(1));
    auto sol = a.solve(one);
    if (!sol) throw error("find_coweight: infeasible system contradicts basis independence");
    Int lcm = 1;
    for (const auto& v : *sol) lcm = boost::multiprecision::lcm(lcm, denominator(v));
    WeightMatrix w = WeightMatrix::zero(k);
    for (int c = 0; c < m; ++c) {
        Rational scaled = (*sol)[size_t(c)] * lcm;
        w.at(order[size_t(c)].j, order[size_t(c)].i) = long(numerator(scaled));
    }
    for (const auto& s : basis)
        if (w.dot(s) <= 0) throw error("find_coweight: pairing check failed");
    return w;
}

// ---------------------------------------------------------------------------
// Constructive decomposition: the game of dominoes.  Replays the moves of the
// reduction proof (push to an edge, turn through Type IIa/IIb, push north),
// collecting the subtracted smoothable weights.  Agrees with the linear
// solve; kept as an inspectable trace.

struct GameMove {
    std::string description;
    WeightMatrix subtracted;
    long multiplicity = 1;
};

namespace game {

inline void emit(std::vector<GameMove>& moves, std::string what, WeightMatrix w, long mult = 1) {
    if (mult != 0) moves.push_back({std::move(what), std::move(w), mult});
}

// A rectangle decomposes as the telescoping sum of the unit squares inside it.
inline void subtract_rectangle(int k, int r1, int c1, int r2, int c2,
                               std::vector<GameMove>& moves) {
    if (!(0 <= r1 && r1 < r2 && r2 <= k && 0 <= c1 && c1 < c2 && c2 <= k - 1))
        throw error("domino game: rectangle outside the grid");
    for (int r = r1; r < r2; ++r)
        for (int c = c1; c < c2; ++c)
            emit(moves, "type I at (" + std::to_string(r) + "," + std::to_string(c) + ")",
                 smoothable_type_i(k, r, c));
}

}  // namespace game

// Trace-mode decomposition for rectangular weights and admissible pairs.
inline std::vector<GameMove> decompose_weight_game(const WeightMatrix& w, int k) {
    std::vector<GameMove> moves;
    WeightClass cls = classify_weight(w);
    if (std::holds_alternative<Smoothable>(cls)) {
        game::emit(moves, "already smoothable", w);
        return moves;
    }
    if (auto* rect = std::get_if<Rectangular>(&cls)) {
        game::subtract_rectangle(k, rect->r1, rect->c1, rect->r2, rect->c2, moves);
        return moves;
    }
    auto* pair = std::get_if<AdmissiblePair>(&cls);
    if (!pair) throw NotDecomposable("domino game: weight is neither rectangular nor an admissible pair");

    Domino first = pair->first, second = pair->second;
    const int L = first.size();

    // Normal form: first domino south in the leftmost column or west in the
    // bottom row; second east in the top row or north in the rightmost column.
    auto push_south_to_col0 = [&](Domino d) {
        int t = std::min(d.head.first, d.tail.first), c = d.head.second;
        if (c > 0) game::subtract_rectangle(k, t, 0, t + L, c, moves);
        return Domino{{t + L, 0}, {t, 0}};
    };
    auto push_west_to_bottom = [&](Domino d) {
        int r = d.head.first, cl = d.head.second;
        if (r < k) game::subtract_rectangle(k, r, cl, k, cl + L, moves);
        return Domino{{k, cl}, {k, cl + L}};
    };
    auto push_east_to_top = [&](Domino d) {
        int r = d.head.first, c1 = d.tail.second;
        if (r > 0) game::subtract_rectangle(k, 0, c1, r, c1 + L, moves);
        return Domino{{0, c1 + L}, {0, c1}};
    };
    auto push_north_to_rightcol = [&](Domino d) {
        int h = d.head.first, c = d.head.second;
        if (c < k - 1) game::subtract_rectangle(k, h, c, h + L, k - 1, moves);
        return Domino{{h, k - 1}, {h + L, k - 1}};
    };
    // south(col 0, tail T) = sum IIa(T..T+L-1) + west(top row, head col T-1)
    auto turn_south_to_west = [&](Domino d) {
        int t = d.tail.first;
        for (int dd = t; dd <= t + L - 1; ++dd)
            game::emit(moves, "type IIa at diagonal " + std::to_string(dd), smoothable_type_iia(k, dd));
        return Domino{{0, t - 1}, {0, t - 1 + L}};
    };
    // west(bottom row, head col e) = sum IIb(e..e+L-1) + south(right col, tail row e)
    auto turn_west_to_south = [&](Domino d) {
        int e = d.head.second;
        for (int ee = e; ee <= e + L - 1; ++ee)
            game::emit(moves, "type IIb at offset " + std::to_string(ee), smoothable_type_iib(k, ee));
        return Domino{{e + L, k - 1}, {e, k - 1}};
    };
    // north(right col, head row h) = sum IIb(h..h+L-1) + east(bottom row, tail col h)
    auto turn_north_to_east = [&](Domino d) {
        int h = d.head.first;
        for (int ee = h; ee <= h + L - 1; ++ee)
            game::emit(moves, "type IIb at offset " + std::to_string(ee), smoothable_type_iib(k, ee));
        return Domino{{k, h + L}, {k, h}};
    };
    // east(top row, tail col c) = sum IIa(c+1..c+L) + north(col 0, head row c+1)
    auto turn_east_to_north = [&](Domino d) {
        int c = d.tail.second;
        for (int dd = c + 1; dd <= c + L; ++dd)
            game::emit(moves, "type IIa at diagonal " + std::to_string(dd), smoothable_type_iia(k, dd));
        return Domino{{c + 1, 0}, {c + 1 + L, 0}};
    };

    char o1 = first.orientation(), o2 = second.orientation();
    if (o1 == 'S') first = push_south_to_col0(first);
    if (o1 == 'W') first = push_west_to_bottom(first);
    if (o2 == 'E') second = push_east_to_top(second);
    if (o2 == 'N') second = push_north_to_rightcol(second);

    if (o1 == 'S' && o2 == 'N') {  // turn the south domino west: west-north pair
        first = turn_south_to_west(first);
        first = push_west_to_bottom(first);
        o1 = 'W';
    } else if (o1 == 'W' && o2 == 'E') {  // turn the west domino south: south-east pair
        first = turn_west_to_south(first);
        first = push_south_to_col0(first);
        o1 = 'S';
    }

    if (o1 == 'S' && o2 == 'E') {
        // March the south domino north until the telescoping IIa sum remains.
        int target = second.tail.second + 1;  // minimal admissible valuation
        while (first.tail.first > target) {
            Domino w1 = turn_south_to_west(first);
            w1 = push_west_to_bottom(w1);
            Domino s1 = turn_west_to_south(w1);
            first = push_south_to_col0(s1);
        }
        if (first.tail.first != target) throw error("domino game: south-east reduction failed");
        for (int dd = target; dd <= target + L - 1; ++dd)
            game::emit(moves, "terminal type IIa at diagonal " + std::to_string(dd),
                       smoothable_type_iia(k, dd));
    } else if (o1 == 'W' && o2 == 'N') {
        // March the north domino south until the telescoping IIb sum remains.
        int target = first.head.second;  // maximal admissible valuation
        while (second.head.first < target) {
            Domino e1 = turn_north_to_east(second);
            e1 = push_east_to_top(e1);
            Domino n1 = turn_east_to_north(e1);
            second = push_north_to_rightcol(n1);
        }
        if (second.head.first != target) throw error("domino game: west-north reduction failed");
        for (int ee = target; ee <= target + L - 1; ++ee)
            game::emit(moves, "terminal type IIb at offset " + std::to_string(ee),
                       smoothable_type_iib(k, ee));
    } else {
        throw error("domino game: unexpected pair orientation");
    }
    return moves;
}

struct DegenerationReport {
    bool already_invariant = false;
    long min_positive_exponent = 0;  // over non-invariant monomials
    long monomials_checked = 0;
};

// Confirms that scaling E_i^j by t^{w_ij} sends every non-invariant monomial
// of the quadratic bracket to a strictly positive power of t and fixes the
// invariant part, so the bracket degenerates onto it as t -> 0.
inline DegenerationReport verify_degeneration(int k) {
    PoissonStructure p = quad_nodal_structure(k);
    WeightMatrix w = find_coweight(k);
    DegenerationReport rep;
    bool have_min = false;
    int m = p.dim();
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            for (const auto& [expo, c] : p.entry(al, be).terms()) {
                WeightMatrix wt = weight_of_monomial(k, expo, al, be);
                ++rep.monomials_checked;
                if (wt.is_zero()) continue;  // fixed by the scaling
                long ex = w.dot(wt);
                if (ex <= 0) throw error("verify_degeneration: non-invariant monomial with non-positive weight");
                if (!have_min || ex < rep.min_positive_exponent) {
                    rep.min_positive_exponent = ex;
                    have_min = true;
                }
            }
        }
    rep.already_invariant = !have_min;
    return rep;
}

}  // namespace hilb
