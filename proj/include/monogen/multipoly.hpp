#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"

namespace monogen {

// ---------------------------------------------------------------------------
// Sparse exact multivariate polynomials over any RingDesc.
//
// Term order everywhere (iteration, printing, serialization): graded by total
// degree descending, ties broken lexicographically descending on the exponent
// vectors.  This makes renderings byte-stable.
// ---------------------------------------------------------------------------

struct Monomial {
    // (variable index, exponent > 0), sorted by variable index
    std::vector<std::pair<int, int>> e;

    static Monomial one() { return {}; }

    static Monomial var(int v, int exp = 1) {
        Monomial m;
        if (exp < 0) throw structural_error("Monomial: negative exponent");
        if (exp > 0) m.e.push_back({v, exp});
        return m;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, x] : e) d += x;
        return d;
    }

    int exp_of(int v) const {
        for (const auto& [w, x] : e)
            if (w == v) return x;
        return 0;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < e.size() || j < o.e.size()) {
            if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first))
                r.e.push_back(e[i++]);
            else if (i == e.size() || o.e[j].first < e[i].first)
                r.e.push_back(o.e[j++]);
            else {
                r.e.push_back({e[i].first, e[i].second + o.e[j].second});
                ++i;
                ++j;
            }
        }
        return r;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
};

/// True when `a` precedes `b` in the canonical order.
inline bool monomial_before(const Monomial& a, const Monomial& b) {
    const int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    // lexicographic descending on full exponent vectors
    std::size_t i = 0, j = 0;
    while (i < a.e.size() && j < b.e.size()) {
        if (a.e[i].first != b.e[j].first) {
            // the earlier variable index with a positive exponent is lex-larger
            return a.e[i].first < b.e[j].first;
        }
        if (a.e[i].second != b.e[j].second) return a.e[i].second > b.e[j].second;
        ++i;
        ++j;
    }
    if (i < a.e.size()) return true;   // a has an extra variable, lex-larger
    return false;                       // equal, or b strictly larger
}

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_before(a, b); }
};

struct PolyContext {
    RingPtr coeff;
    std::vector<std::string> vars;
};
using PolyCtxPtr = std::shared_ptr<const PolyContext>;

inline PolyCtxPtr make_poly_context(RingPtr coeff, std::vector<std::string> vars) {
    return std::make_shared<PolyContext>(PolyContext{std::move(coeff), std::move(vars)});
}

inline bool context_equal(const PolyCtxPtr& a, const PolyCtxPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return a->vars == b->vars && ring_equal(a->coeff, b->coeff);
}

class MultiPoly {
public:
    using TermMap = std::map<Monomial, RingElem, MonomialOrder>;

    MultiPoly() = default;

    static MultiPoly zero(PolyCtxPtr ctx) {
        MultiPoly p;
        p.ctx_ = std::move(ctx);
        return p;
    }

    static MultiPoly constant(PolyCtxPtr ctx, const RingElem& c) {
        if (!ring_equal(c.ring, ctx->coeff))
            throw structural_error("MultiPoly::constant: coefficient outside the context ring");
        MultiPoly p = zero(std::move(ctx));
        if (!ring_is_zero(c)) p.t_.emplace(Monomial::one(), c);
        return p;
    }

    static MultiPoly from_integer(PolyCtxPtr ctx, const Int& n) {
        RingElem c = ring_from_integer(ctx->coeff, n);
        return constant(std::move(ctx), c);
    }

    static MultiPoly variable(PolyCtxPtr ctx, int v, int exp = 1) {
        if (v < 0 || v >= static_cast<int>(ctx->vars.size()))
            throw structural_error("MultiPoly::variable: index out of range");
        MultiPoly p = zero(ctx);
        if (exp == 0) return from_integer(std::move(ctx), 1);
        p.t_.emplace(Monomial::var(v, exp), ring_one(ctx->coeff));
        return p;
    }

    const PolyCtxPtr& context() const { return ctx_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    int total_degree() const {
        if (t_.empty()) throw domain_error("total_degree of the zero polynomial");
        return t_.begin()->first.total_degree();  // first term has maximal degree
    }

    int degree_in(int v) const {
        int d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, m.exp_of(v));
        return d;
    }

    void add_term(const Monomial& m, const RingElem& c) {
        if (!ring_equal(c.ring, ctx_->coeff))
            throw structural_error("MultiPoly::add_term: coefficient outside the context ring");
        if (ring_is_zero(c)) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            RingElem s = it->second + c;
            if (ring_is_zero(s))
                t_.erase(it);
            else
                it->second = std::move(s);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        require_same_context(a, b, "poly add");
        MultiPoly r = a;
        for (const auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r = MultiPoly::zero(a.ctx_);
        for (const auto& [m, c] : a.t_) r.t_.emplace(m, -c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        require_same_context(a, b, "poly mul");
        MultiPoly r = MultiPoly::zero(a.ctx_);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }

    MultiPoly scaled(const RingElem& s) const {
        if (!ring_equal(s.ring, ctx_->coeff))
            throw structural_error("MultiPoly::scaled: scalar outside the context ring");
        MultiPoly r = MultiPoly::zero(ctx_);
        for (const auto& [m, c] : t_) {
            RingElem p = c * s;
            if (!ring_is_zero(p)) r.t_.emplace(m, std::move(p));
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (!context_equal(a.ctx_, b.ctx_)) return false;
        if (a.t_.size() != b.t_.size()) return false;
        auto ia = a.t_.begin();
        auto ib = b.t_.begin();
        for (; ia != a.t_.end(); ++ia, ++ib) {
            if (!(ia->first == ib->first)) return false;
            if (!payload_equal(ia->second, ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(int k) const {
        if (k < 0) throw structural_error("MultiPoly::pow: negative exponent");
        MultiPoly acc = from_integer(ctx_, 1);
        MultiPoly base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = (k >>= 1) ? base * base : base;
        }
        return acc;
    }

private:
    static void require_same_context(const MultiPoly& a, const MultiPoly& b, const char* op) {
        if (!context_equal(a.ctx_, b.ctx_))
            throw structural_error(std::string(op) + ": mismatched polynomial contexts");
    }

    PolyCtxPtr ctx_;
    TermMap t_;
};

/// (true, common total degree) iff all terms share one total degree.
inline std::pair<bool, int> poly_is_homogeneous(const MultiPoly& p) {
    if (p.is_zero()) throw domain_error("homogeneity of the zero polynomial is undefined");
    const int d = p.terms().begin()->first.total_degree();
    for (const auto& [m, c] : p.terms())
        if (m.total_degree() != d) return {false, 0};
    return {true, d};
}

/// Exact evaluation, Horner-style one variable at a time in index order.
inline RingElem poly_evaluate(const MultiPoly& p, const std::vector<RingElem>& point) {
    const PolyCtxPtr& ctx = p.context();
    for (int v = 0; v < static_cast<int>(ctx->vars.size()); ++v)
        if (p.degree_in(v) > 0) {
            if (v >= static_cast<int>(point.size()))
                throw structural_error("poly_evaluate: missing assignment for " + ctx->vars[v]);
            if (!ring_equal(point[static_cast<std::size_t>(v)].ring, ctx->coeff))
                throw structural_error("poly_evaluate: value outside the coefficient ring");
        }

    struct Term {
        Monomial m;
        RingElem c;
    };
    std::vector<Term> terms;
    terms.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) terms.push_back({m, c});

    // collapse variables from the highest index down; each step is a Horner
    // evaluation in that variable with the remaining terms as coefficients
    for (int v = static_cast<int>(ctx->vars.size()) - 1; v >= 0; --v) {
        int maxd = 0;
        for (const auto& t : terms) maxd = std::max(maxd, t.m.exp_of(v));
        if (maxd == 0) continue;
        const RingElem& x = point[static_cast<std::size_t>(v)];
        // bucket terms by exponent of v with the variable stripped
        std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(maxd) + 1);
        for (auto& t : terms) {
            const int d = t.m.exp_of(v);
            Monomial stripped;
            for (const auto& [w, xofw] : t.m.e)
                if (w != v) stripped.e.push_back({w, xofw});
            buckets[static_cast<std::size_t>(d)].push_back({std::move(stripped), std::move(t.c)});
        }
        // Horner: acc = (((b_maxd) x + b_{maxd-1}) x + ...) with term-list addition
        std::map<Monomial, RingElem, MonomialOrder> acc;
        for (int d = maxd; d >= 0; --d) {
            if (d < maxd) {
                for (auto& [m, c] : acc) c = c * x;
            }
            for (auto& t : buckets[static_cast<std::size_t>(d)]) {
                auto it = acc.find(t.m);
                if (it == acc.end())
                    acc.emplace(std::move(t.m), std::move(t.c));
                else
                    it->second = it->second + t.c;
            }
        }
        terms.clear();
        for (auto& [m, c] : acc)
            if (!ring_is_zero(c)) terms.push_back({m, c});
    }

    RingElem result = ring_zero(ctx->coeff);
    for (const auto& t : terms) {
        if (!t.m.e.empty()) throw internal_error("poly_evaluate: unresolved variable");
        result = result + t.c;
    }
    return result;
}

/// Substitute polynomials for variables; variables without an entry map to themselves.
inline MultiPoly poly_substitute(const MultiPoly& p, const std::vector<std::pair<int, MultiPoly>>& subs) {
    const PolyCtxPtr& ctx = p.context();
    PolyCtxPtr outCtx = subs.empty() ? ctx : subs.front().second.context();
    for (const auto& [v, q] : subs) {
        if (v < 0 || v >= static_cast<int>(ctx->vars.size()))
            throw structural_error("poly_substitute: variable index out of range");
        if (!context_equal(q.context(), outCtx))
            throw structural_error("poly_substitute: mismatched substitution contexts");
    }
    if (!ring_equal(outCtx->coeff, ctx->coeff))
        throw structural_error("poly_substitute: substitution changes the coefficient ring");

    auto image_of = [&](int v) -> MultiPoly {
        for (const auto& [w, q] : subs)
            if (w == v) return q;
        return MultiPoly::variable(outCtx, v);
    };

    MultiPoly result = MultiPoly::zero(outCtx);
    for (const auto& [m, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(outCtx, c);
        for (const auto& [v, e] : m.e) term = term * image_of(v).pow(e);
        result = result + term;
    }
    return result;
}

/// Termwise coefficient map; terms whose coefficient maps to zero are dropped.
inline MultiPoly poly_map_coefficients(const MultiPoly& p, const RingHom& f) {
    if (!ring_equal(p.context()->coeff, f.source()))
        throw structural_error("poly_map_coefficients: map does not start at the coefficient ring");
    PolyCtxPtr outCtx = make_poly_context(f.target(), p.context()->vars);
    MultiPoly r = MultiPoly::zero(outCtx);
    for (const auto& [m, c] : p.terms()) r.add_term(m, f(c));
    return r;
}

/// quotient monomial a / b, or nullopt when some exponent would go negative
inline std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b) {
    Monomial q;
    std::size_t i = 0;
    for (const auto& [v, e] : b.e) {
        while (i < a.e.size() && a.e[i].first < v) q.e.push_back(a.e[i++]);
        if (i == a.e.size() || a.e[i].first != v || a.e[i].second < e) return std::nullopt;
        if (a.e[i].second > e) q.e.push_back({v, a.e[i].second - e});
        ++i;
    }
    while (i < a.e.size()) q.e.push_back(a.e[i++]);
    return q;
}

/// Exact division a / b; requires the division to be exact (as it is at every
/// step of Bareiss elimination over an integral domain) and coefficientwise
/// exact division in the coefficient ring.  Throws domain_error otherwise.
inline MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw domain_error("poly_exact_div by zero");
    MultiPoly q = MultiPoly::zero(a.context());
    MultiPoly r = a;
    const auto& ltbM = b.terms().begin()->first;
    const auto& ltbC = b.terms().begin()->second;
    while (!r.is_zero()) {
        const auto& ltrM = r.terms().begin()->first;
        const auto& ltrC = r.terms().begin()->second;
        auto qm = monomial_div(ltrM, ltbM);
        if (!qm) throw domain_error("poly_exact_div: not exactly divisible");
        RingElem qc = ring_exact_div(ltrC, ltbC);
        MultiPoly t = MultiPoly::zero(a.context());
        t.add_term(*qm, qc);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

/// Canonical rendering, e.g. "-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3".
inline std::string poly_to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    const PolyCtxPtr& ctx = p.context();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::string cs = ring_to_string(c);
        bool neg = false;
        if (ring_display_negative(c)) {
            neg = true;
            cs = cs.substr(1);
        }
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;

        std::string varpart;
        for (const auto& [v, e] : m.e) {
            if (!varpart.empty()) varpart += "*";
            varpart += ctx->vars[static_cast<std::size_t>(v)];
            if (e > 1) varpart += "^" + std::to_string(e);
        }
        const bool composite = detail::display_composite(cs);
        if (varpart.empty()) {
            out += composite ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            out += varpart;
        } else {
            out += (composite ? "(" + cs + ")" : cs) + "*" + varpart;
        }
    }
    return out;
}

/// Flip the overall sign so the canonically-first term has a positive
/// coefficient; only meaningful over ZZ and QQ.
inline MultiPoly poly_normalize_sign(const MultiPoly& p) {
    const RingKind k = p.context()->coeff->kind;
    if (k != RingKind::Integers && k != RingKind::Rationals)
        throw unsupported_error("sign normalization is only defined over ZZ and QQ");
    if (p.is_zero()) return p;
    return ring_display_negative(p.terms().begin()->second) ? -p : p;
}

} // namespace monogen
