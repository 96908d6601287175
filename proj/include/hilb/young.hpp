#pragma once

#include <hilb/groebner.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

namespace hilb {

// Young diagram: weakly decreasing tuple of positive integers, with parts
// beyond the length read as zero.
class YoungDiagram {
  public:
    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<long> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw error("Young diagram parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw error("Young diagram parts must be weakly decreasing");
        }
    }

    const std::vector<long>& parts() const { return parts_; }
    int length() const { return int(parts_.size()); }
    long part(int j) const { return j >= 0 && j < length() ? parts_[size_t(j)] : 0; }  // 0-based
    long size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }
    bool empty() const { return parts_.empty(); }

    bool operator==(const YoungDiagram& o) const { return parts_ == o.parts_; }
    bool operator!=(const YoungDiagram& o) const { return !(*this == o); }
    bool operator<(const YoungDiagram& o) const { return parts_ < o.parts_; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

  private:
    std::vector<long> parts_;
};

// hc(mu): the unique diagram lambda with consecutive differences
// lambda_j - lambda_{j+1} = mu_j, i.e. the tail sums lambda_j = sum_{l>=j} mu_l.
inline YoungDiagram hc(const YoungDiagram& mu) {
    std::vector<long> lam(size_t(mu.length()), 0);
    long acc = 0;
    for (int j = mu.length() - 1; j >= 0; --j) {
        acc += mu.part(j);
        lam[size_t(j)] = acc;
    }
    return YoungDiagram(std::move(lam));
}

// Weakly decreasing consecutive differences (with zero tail).
inline bool is_horizontally_convex(const YoungDiagram& lam) {
    for (int i = 0; i + 1 < lam.length() + 1; ++i)
        if (lam.part(i) - lam.part(i + 1) < lam.part(i + 1) - lam.part(i + 2)) return false;
    return true;
}

inline YoungDiagram hc_inverse(const YoungDiagram& lam) {
    if (!is_horizontally_convex(lam)) throw error("hc_inverse: diagram is not horizontally convex");
    std::vector<long> mu;
    for (int j = 0; j < lam.length(); ++j) mu.push_back(lam.part(j) - lam.part(j + 1));
    return YoungDiagram(std::move(mu));  // convexity puts any zero differences at the tail
}

inline YoungDiagram transpose(const YoungDiagram& mu) {
    if (mu.empty()) return YoungDiagram();
    std::vector<long> t(size_t(mu.part(0)), 0);
    for (int j = 1; j <= int(mu.part(0)); ++j) {
        long count = 0;
        for (int l = 0; l < mu.length(); ++l)
            if (mu.part(l) >= j) ++count;
        t[size_t(j - 1)] = count;
    }
    return YoungDiagram(std::move(t));
}

// Dominance order via inclusion of the hc images (the closure-order form).
inline bool dominance_le(const YoungDiagram& mu, const YoungDiagram& nu) {
    YoungDiagram a = hc(mu), b = hc(nu);
    for (int j = 0; j < std::max(a.length(), b.length()); ++j)
        if (a.part(j) > b.part(j)) return false;
    return true;
}

// Stabilizer dimension sum_j mu_j + sum_{j,l} min(mu_j, mu_l) and the orbit
// codimension 2|hc(mu)|; the two agree.
inline std::pair<long, long> stabilizer_and_codim(const YoungDiagram& mu) {
    long stab = mu.size();
    for (int j = 0; j < mu.length(); ++j)
        for (int l = 0; l < mu.length(); ++l) stab += std::min(mu.part(j), mu.part(l));
    long codim = 2 * hc(mu).size();
    return {stab, codim};
}

// The monomial ideal (x^{lambda_{l+1}} y^l, l = 0..length(lambda)) with
// lambda = hc(mu); its colength is |hc(mu)|.
inline GroebnerBasis monomial_scheme_ideal(const YoungDiagram& mu) {
    YoungDiagram lam = hc(mu);
    CtxPtr ctx = xy_context();
    std::vector<Poly> gens;
    for (int l = 0; l <= lam.length(); ++l) {
        Poly g(ctx);
        g.add_term({int(lam.part(l)), l}, 1);
        gens.push_back(std::move(g));
    }
    return groebner(std::move(gens));
}

// All partitions of n, for exhaustive small-size checks.
inline std::vector<YoungDiagram> partitions_of(int n) {
    std::vector<YoungDiagram> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, int rest, long maxpart) -> void {
        if (rest == 0) {
            out.push_back(YoungDiagram(cur));
            return;
        }
        for (long p = std::min<long>(maxpart, rest); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - int(p), p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

}  // namespace hilb
