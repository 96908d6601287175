#pragma once

#include <hilb/rational.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace hilb {

// A fixed, immutable set of variable names.  Polynomials store dense exponent
// vectors indexed against their context; contexts are shared by pointer and
// compared by identity or by name list.
class VarContext {
  public:
    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
        for (size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = int(i);
        if (index_.size() != names_.size()) throw error("duplicate variable name in context");
    }

    int nvars() const { return int(names_.size()); }
    const std::string& name(int i) const { return names_[size_t(i)]; }
    const std::vector<std::string>& names() const { return names_; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw variable_mismatch("undeclared variable: " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) > 0; }

    bool same_as(const VarContext& o) const { return this == &o || names_ == o.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

using CtxPtr = std::shared_ptr<const VarContext>;

inline CtxPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VarContext>(std::move(names));
}

inline CtxPtr xy_context() {
    static CtxPtr ctx = make_context({"x", "y"});
    return ctx;
}

using Exponents = std::vector<int>;

// Sparse multivariate polynomial with rational coefficients.  Terms are kept
// in a map keyed by exponent vector; zero coefficients are never stored.
class Poly {
  public:
    Poly() = default;
    explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    Poly(CtxPtr ctx, const Rational& c) : ctx_(std::move(ctx)) {
        if (c != 0) terms_[Exponents(size_t(ctx_->nvars()), 0)] = c;
    }

    static Poly variable(CtxPtr ctx, int var, int power = 1) {
        Poly p(ctx);
        Exponents e(size_t(ctx->nvars()), 0);
        e[size_t(var)] = power;
        p.terms_[std::move(e)] = 1;
        return p;
    }
    static Poly variable(const CtxPtr& ctx, const std::string& name) {
        return variable(ctx, ctx->index_of(name));
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }
    Rational constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw error("polynomial is not constant");
        return terms_.begin()->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;  // -1 for the zero polynomial
    }
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[size_t(var)]);
        return d;
    }

    bool operator==(const Poly& o) const {
        check_ctx(o);
        return terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check_ctx(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_ctx(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_ctx(b);
        Poly r(a.ctx_);
        Exponents e(a.ctx_ ? size_t(a.ctx_->nvars()) : 0, 0);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [e, v] : terms_) v *= c;
        }
        return *this;
    }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

    Poly pow(int n) const {
        if (n < 0) throw error("negative polynomial power");
        Poly r(ctx_, 1);
        Poly base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    Poly derivative(int var) const {
        Poly r(ctx_);
        for (const auto& [e, c] : terms_) {
            int p = e[size_t(var)];
            if (p == 0) continue;
            Exponents ne = e;
            ne[size_t(var)] = p - 1;
            r.add_term(ne, c * p);
        }
        return r;
    }
    Poly derivative(const std::string& name) const { return derivative(ctx_->index_of(name)); }

    // Substitutes `value` (same context) for the given variable.
    Poly substitute(int var, const Poly& value) const {
        check_ctx(value);
        Poly r(ctx_);
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            int p = rest[size_t(var)];
            rest[size_t(var)] = 0;
            Poly t(ctx_, c);
            Poly m(ctx_);
            m.add_term(rest, 1);
            t = t * m * value.pow(p);
            r += t;
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (ctx_ && int(point.size()) != ctx_->nvars())
            throw variable_mismatch("evaluation point has wrong dimension");
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int p = 0; p < e[i]; ++p) t *= point[i];
            acc += t;
        }
        return acc;
    }

    // Maps this polynomial into another context by variable name; every
    // variable that actually occurs must exist in the target context.
    Poly renamed(const CtxPtr& target) const {
        Poly r(target);
        std::vector<int> map(size_t(ctx_->nvars()), -1);
        for (const auto& [e, c] : terms_) {
            Exponents ne(size_t(target->nvars()), 0);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (map[i] < 0) map[i] = target->index_of(ctx_->name(int(i)));
                ne[size_t(map[i])] = e[i];
            }
            r.add_term(ne, c);
        }
        return r;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::string str() const;

  private:
    void check_ctx(const Poly& o) const {
        if (ctx_ && o.ctx_ && !ctx_->same_as(*o.ctx_))
            throw variable_mismatch("polynomial contexts differ");
    }

    CtxPtr ctx_;
    std::map<Exponents, Rational> terms_;
};

inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    // Display order: total degree descending, then reverse lexicographic.
    std::vector<const std::pair<const Exponents, Rational>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    auto deg = [](const Exponents& e) {
        int s = 0;
        for (int v : e) s += v;
        return s;
    };
    std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
        int da = deg(a->first), db = deg(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : ts) {
        Rational c = t->second;
        if (first) {
            if (c < 0) { out << "-"; c = -c; }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::string mono;
        for (size_t i = 0; i < t->first.size(); ++i) {
            int p = t->first[i];
            if (p == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ctx_->name(int(i));
            if (p > 1) mono += "^" + std::to_string(p);
        }
        if (mono.empty()) {
            out << to_string(c);
        } else if (c == 1) {
            out << mono;
        } else {
            out << to_string(c) << "*" << mono;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Polynomial text grammar: rational coefficients, declared variable names,
// operators + - * / ^ and parentheses; whitespace insensitive.  Division is
// only allowed by nonzero constants.
class PolyParser {
  public:
    PolyParser(std::string text, CtxPtr ctx) : s_(std::move(text)), ctx_(std::move(ctx)) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("unexpected trailing input at '" + s_.substr(pos_) + "'");
        return p;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr() {
        Poly acc = eat('-') ? -term() : (void(eat('+')), term());
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = power();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc *= power();
            } else if (eat('/')) {
                Poly d = power();
                if (!d.is_constant() || d.constant_value() == 0)
                    throw parse_error("division only by nonzero constants");
                acc *= Rational(1) / d.constant_value();
            } else {
                // implicit multiplication: "2x", "x(y+1)", "E[0][0]E[0][1]"
                char c = peek();
                if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
                    std::isdigit(static_cast<unsigned char>(c)))
                    acc *= power();
                else
                    return acc;
            }
        }
    }

    Poly power() {
        Poly base = atom();
        if (eat('^')) {
            skip_ws();
            int n = read_int();
            return base.pow(n);
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw parse_error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) throw parse_error("missing ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly(ctx_, read_number());
        if (std::isalpha(static_cast<unsigned char>(c))) return Poly::variable(ctx_, read_name());
        throw parse_error(std::string("unexpected character '") + c + "'");
    }

    int read_int() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw parse_error("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    Rational read_number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Int num(s_.substr(start, pos_ - start));
        return Rational(num);
    }

    // Variable tokens: a name possibly followed by bracketed indices, which
    // are folded into the name, e.g. "E[0][1]".
    std::string read_name() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        while (pos_ < s_.size() && s_[pos_] == '[') {
            size_t close = s_.find(']', pos_);
            if (close == std::string::npos) throw parse_error("missing ']' in variable name");
            name += s_.substr(pos_, close - pos_ + 1);
            pos_ = close + 1;
        }
        return name;
    }

    std::string s_;
    size_t pos_ = 0;
    CtxPtr ctx_;
};

inline Poly parse_poly(const std::string& text, const CtxPtr& ctx) {
    return PolyParser(text, ctx).parse();
}

}  // namespace hilb
