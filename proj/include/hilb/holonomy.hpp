#pragma once

#include <hilb/linalg.hpp>
#include <hilb/threads.hpp>

#include <functional>
#include <utility>
#include <vector>

namespace hilb {

// Skew integer matrices and the linear-algebra holonomicity criterion.
struct CMMatrix {
    std::vector<std::vector<long>> entries;  // m x m, skew

    int m() const { return int(entries.size()); }
    long at(int r, int c) const { return entries[size_t(r)][size_t(c)]; }

    static CMMatrix zero(int m) {
        CMMatrix b;
        b.entries.assign(size_t(m), std::vector<long>(size_t(m), 0));
        return b;
    }
    bool is_skew() const {
        for (int r = 0; r < m(); ++r)
            for (int c = 0; c < m(); ++c)
                if (at(r, c) != -at(c, r)) return false;
        return true;
    }
    bool operator==(const CMMatrix& o) const { return entries == o.entries; }
};

namespace detail {

// Row chain b_{a,a+1} >= b_{a,a+2} >= ... >= b_{a,m} >= b_{a,1} >= ... >= b_{a,a-1},
// with entries optionally negated.
inline bool row_chain_holds(const CMMatrix& b, int row, int sign) {
    const int m = b.m();
    long prev = 0;
    bool first = true;
    for (int step = 1; step < m; ++step) {
        int col = (row + step) % m;
        long v = sign * b.at(row, col);
        if (!first && prev < v) return false;
        prev = v;
        first = false;
    }
    return true;
}

}  // namespace detail

// Cyclic monotonicity, allowing one global sign flip of all entries.
inline bool is_cyclically_monotone(const CMMatrix& b) {
    if (!b.is_skew()) throw shape_error("is_cyclically_monotone: input is not skew-symmetric");
    bool plus = true, minus = true;
    for (int r = 0; r < b.m() && (plus || minus); ++r) {
        if (plus) plus = detail::row_chain_holds(b, r, +1);
        if (minus) minus = detail::row_chain_holds(b, r, -1);
    }
    return plus || minus;
}

// Exact test whether (1,...,1) lies in the row span.
inline bool constant_in_rowspan(const CMMatrix& b) {
    const int m = b.m();
    QMatrix a(m, m), aug(m + 1, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            a(r, c) = b.at(r, c);
            aug(r, c) = b.at(r, c);
        }
    for (int c = 0; c < m; ++c) aug(m, c) = 1;
    return aug.rank() == a.rank();
}

// Tuple of open intervals with pairwise distinct endpoints.
struct IntervalTuple {
    std::vector<std::pair<Rational, Rational>> intervals;  // (c, d), c < d

    int m() const { return int(intervals.size()); }
    void check() const {
        std::vector<Rational> ends;
        for (const auto& [c, d] : intervals) {
            if (!(c < d)) throw error("interval with non-positive length");
            ends.push_back(c);
            ends.push_back(d);
        }
        std::sort(ends.begin(), ends.end());
        for (size_t i = 0; i + 1 < ends.size(); ++i)
            if (ends[i] == ends[i + 1]) throw error("interval endpoints must be pairwise distinct");
    }
};

// Overlap matrix: entry (a,b) is 1 when J_a overlaps J_b on the left
// (c_a < c_b < d_a < d_b), -1 for the mirror, 0 otherwise (disjoint or nested).
inline CMMatrix interval_matrix(const IntervalTuple& j) {
    j.check();
    const int m = j.m();
    CMMatrix b = CMMatrix::zero(m);
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
            if (a == c) continue;
            const auto& [ca, da] = j.intervals[size_t(a)];
            const auto& [cb, db] = j.intervals[size_t(c)];
            if (ca < cb && cb < da && da < db) b.entries[size_t(a)][size_t(c)] = 1;
            else if (cb < ca && ca < db && db < da) b.entries[size_t(a)][size_t(c)] = -1;
        }
    return b;
}

// Realizes a cyclically monotone matrix with 0/1 entries above the diagonal
// as the overlap matrix of unit intervals: k_b is the row of the uppermost 1
// in column b (k_b = b when the column has none above the diagonal); left
// endpoints are chosen in the prescribed open ranges, at midpoints for
// determinism.  The undefined c_0 term of the lower bound is omitted.
inline IntervalTuple realize_intervals(const CMMatrix& b) {
    const int m = b.m();
    if (!b.is_skew()) throw shape_error("realize_intervals: input is not skew-symmetric");
    for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c)
            if (b.at(r, c) != 0 && b.at(r, c) != 1)
                throw error("realize_intervals: entries above the diagonal must be 0 or 1");
    if (!is_cyclically_monotone(b)) throw error("realize_intervals: input is not cyclically monotone");

    std::vector<Rational> left(size_t(m));
    left[0] = 0;
    for (int beta = 1; beta < m; ++beta) {
        int kb = beta;
        for (int r = 0; r < beta; ++r)
            if (b.at(r, beta) == 1) { kb = r; break; }
        if (kb == beta) {
            left[size_t(beta)] = left[size_t(beta) - 1] + 2;  // anything > c_{beta-1} + 1
        } else {
            // Range (max{c_{beta-1}, c_{k_b - 1} + 1}, c_{k_b} + 1); when k_b
            // is the very first interval the second lower-bound term refers
            // to an interval before it and is omitted.
            Rational lo = left[size_t(beta) - 1];
            if (kb >= 1) lo = std::max(lo, left[size_t(kb) - 1] + 1);
            Rational hi = left[size_t(kb)] + 1;
            if (!(lo < hi)) throw error("realize_intervals: empty range for left endpoint");
            left[size_t(beta)] = (lo + hi) / 2;
        }
    }
    IntervalTuple j;
    for (int i = 0; i < m; ++i) j.intervals.push_back({left[size_t(i)], left[size_t(i)] + 1});
    j.check();
    if (!(interval_matrix(j) == b)) throw error("realize_intervals: realization failed");
    return j;
}

// All skew matrices of size m with 0/1 above the diagonal passing the cyclic
// monotonicity test; the row chains are checked row by row during the
// backtracking, and the search can be sharded on the first row's bit pattern.
inline std::vector<CMMatrix> enumerate_cm_01(int m, int jobs = 0) {
    if (m < 1) return {};
    const int first_row_bits = m - 1;
    const long shards = 1L << first_row_bits;
    std::vector<std::vector<CMMatrix>> found(size_t(shards));

    parallel_for(int(shards), jobs, [&](int shard) {
        CMMatrix b = CMMatrix::zero(m);
        for (int c = 1; c < m; ++c) {
            long bit = (shard >> (c - 1)) & 1;
            b.entries[0][size_t(c)] = bit;
            b.entries[size_t(c)][0] = -bit;
        }
        // Rows are completed in order; a finished row's chain never changes
        // afterwards, because later bits only affect later rows.
        std::function<void(int, bool, bool)> rec = [&](int row, bool plus, bool minus) {
            // rows 0..row-1 are fully determined and already checked
            if (!plus && !minus) return;
            if (row == m) {
                found[size_t(shard)].push_back(b);
                return;
            }
            std::function<void(int)> fill = [&](int col) {
                if (col == m) {
                    bool p2 = plus && detail::row_chain_holds(b, row, +1);
                    bool m2 = minus && detail::row_chain_holds(b, row, -1);
                    if (row == m - 1) {
                        if (p2 || m2) found[size_t(shard)].push_back(b);
                    } else {
                        rec(row + 1, p2, m2);
                    }
                    return;
                }
                for (long bit = 0; bit <= 1; ++bit) {
                    b.entries[size_t(row)][size_t(col)] = bit;
                    b.entries[size_t(col)][size_t(row)] = -bit;
                    fill(col + 1);
                }
                b.entries[size_t(row)][size_t(col)] = 0;
                b.entries[size_t(col)][size_t(row)] = 0;
            };
            if (row == 0) {
                // first row was fixed by the shard index
                bool p2 = plus && detail::row_chain_holds(b, 0, +1);
                bool m2 = minus && detail::row_chain_holds(b, 0, -1);
                rec(1, p2, m2);
            } else {
                fill(row + 1);
            }
        };
        rec(0, true, true);
    });

    std::vector<CMMatrix> all;
    for (auto& f : found)
        for (auto& b : f) all.push_back(std::move(b));
    return all;
}

// One step of the interval exchange: gamma is the maximal index overlapping
// the last interval on the left; the three segments between the endpoints of
// J_gamma and J_m are permuted by translation, J_gamma and J_m are removed,
// and the remaining intervals are transported.  Educational trace of the
// inductive argument; lengths of untouched intervals are preserved.
inline IntervalTuple interval_exchange(const IntervalTuple& j, int gamma, int last) {
    j.check();
    const int m = j.m();
    if (last != m - 1) throw error("interval_exchange: last index must name the final interval");
    if (gamma < 0 || gamma >= last) throw error("interval_exchange: invalid gamma");
    const auto [cg, dg] = j.intervals[size_t(gamma)];
    const auto [cm, dm] = j.intervals[size_t(last)];
    if (!(cg < cm && cm < dg && dg < dm))
        throw error("interval_exchange: J_gamma must overlap J_last on the left");
    for (int a = gamma + 1; a < last; ++a) {
        const auto& [ca, da] = j.intervals[size_t(a)];
        if (ca < cm && cm < da && da < dm)
            throw error("interval_exchange: gamma is not maximal");
    }
    // Segments A = [cg, cm], B = [cm, dg], C = [dg, dm] are rearranged to
    // C B A; a point in each segment translates by a fixed amount.
    Rational la = cm - cg, lb = dg - cm, lc = dm - dg;
    auto t = [&](const Rational& x) -> Rational {
        if (x <= cg || x >= dm) return x;
        if (x <= cm) return x + lb + lc;   // A to the right end
        if (x <= dg) return x + lc - la;   // B shifts
        return x - la - lb;                // C to the left end
    };
    IntervalTuple out;
    for (int a = 0; a < m; ++a) {
        if (a == gamma || a == last) continue;
        const auto& [ca, da] = j.intervals[size_t(a)];
        out.intervals.push_back({t(ca), t(da)});
    }
    for (auto& [c, d] : out.intervals)
        if (!(c < d)) throw error("interval_exchange: transform broke an interval");
    return out;
}

}  // namespace hilb
