#pragma once

// Shared builders for the worked-example algebras and random-value
// generators used across the test suites.

#include <random>
#include <string>
#include <vector>

#include "monogen/indexform.hpp"
#include "monogen/search.hpp"

namespace corpus {

using namespace monogen;

inline RingPtr ZZ() { return ring_integers(); }
inline RingPtr QQ() { return ring_rationals(); }
inline RingPtr Fp(long long p) { return ring_integers_mod(Int(p)); }
inline RingPtr F3alpha_poly() { return ring_poly(Fp(3), "alpha"); }
inline RingPtr F3alpha() { return ring_fraction_field(F3alpha_poly()); }
inline RingPtr F3beta() { return ring_fraction_field(ring_poly(Fp(3), "beta")); }
inline RingPtr Qi() {
    auto P = ring_poly(QQ(), "i");
    return ring_quotient_field(P, {ring_one(QQ()), ring_zero(QQ()), ring_one(QQ())});
}

inline RingElem zi(long long v) { return ring_from_integer(ZZ(), Int(v)); }
inline RingElem qq(long long p, long long q = 1) { return RingElem(QQ(), Rat(Int(p), Int(q))); }

/// ZZ[i] = ZZ[t]/(t^2+1)
inline AlgPtr gauss() { return from_monic_quotient(ZZ(), {zi(1), zi(0), zi(1)}, "i"); }

/// ZZ[t]/(t^2-d)
inline AlgPtr quad_sqrt(long long d) { return from_monic_quotient(ZZ(), {zi(-d), zi(0), zi(1)}, "s"); }

/// Dedekind's non-monogenic cubic order with basis {1, (eta+eta^2)/2, eta^2}.
inline AlgPtr dedekind() {
    std::vector<RingElem> amb{qq(-8), qq(-2), qq(-1), qq(1)};
    Mat<RingElem> rows(3, 3, ring_zero(QQ()));
    rows.at(0, 0) = qq(1);
    rows.at(1, 1) = qq(1, 2);
    rows.at(1, 2) = qq(1, 2);
    rows.at(2, 2) = qq(1);
    return from_order(amb, rows, {"1", "beta", "gamma"});
}

/// ZZ[sqrt2, sqrt3] with basis {1, sqrt2, sqrt3, sqrt6}.
inline AlgPtr sqrt23() {
    auto Z = ZZ();
    const RingElem z0 = ring_zero(Z);
    std::vector<RingElem> c(64, z0);
    auto idx = [](int i, int j, int k) { return (i * 4 + j) * 4 + k; };
    auto put = [&](int i, int j, int k, long long v) {
        c[static_cast<std::size_t>(idx(i, j, k))] = zi(v);
        c[static_cast<std::size_t>(idx(j, i, k))] = zi(v);
    };
    for (int j = 0; j < 4; ++j) put(0, j, j, 1);  // 1 * e_j
    put(1, 1, 0, 2);                              // sqrt2^2 = 2
    put(2, 2, 0, 3);                              // sqrt3^2 = 3
    put(3, 3, 0, 6);                              // sqrt6^2 = 6
    put(1, 2, 3, 1);                              // sqrt2 sqrt3 = sqrt6
    put(1, 3, 2, 2);                              // sqrt2 sqrt6 = 2 sqrt3
    put(2, 3, 1, 3);                              // sqrt3 sqrt6 = 3 sqrt2
    std::vector<RingElem> unit{ring_one(Z), z0, z0, z0};
    return make_algebra(Z, 4, {"1", "sqrt2", "sqrt3", "sqrt6"}, std::move(c), std::move(unit));
}

/// Maximal order of QQ(sqrt2, sqrt3): ZZ[t]/(t^4 - 4 t^2 + 1).
inline AlgPtr maxorder() { return from_monic_quotient(ZZ(), {zi(1), zi(0), zi(-4), zi(0), zi(1)}, "r"); }

/// Ring of integers of QQ(cbrt(175)) with basis {1, cbrt(175), cbrt(245)}:
/// alpha^2 = 5 beta, beta^2 = 7 alpha, alpha beta = 35.
inline AlgPtr cbrt175() {
    auto Z = ZZ();
    const RingElem z0 = ring_zero(Z);
    std::vector<RingElem> c(27, z0);
    auto idx = [](int i, int j, int k) { return (i * 3 + j) * 3 + k; };
    auto put = [&](int i, int j, int k, long long v) {
        c[static_cast<std::size_t>(idx(i, j, k))] = zi(v);
        c[static_cast<std::size_t>(idx(j, i, k))] = zi(v);
    };
    for (int j = 0; j < 3; ++j) put(0, j, j, 1);
    put(1, 1, 2, 5);
    put(2, 2, 1, 7);
    put(1, 2, 0, 35);
    std::vector<RingElem> unit{ring_one(Z), z0, z0};
    return make_algebra(Z, 3, {"1", "alpha", "beta"}, std::move(c), std::move(unit));
}

/// F3(alpha)[beta]/(beta^3 - alpha), a purely inseparable cubic.
inline AlgPtr inseparable() {
    auto F = F3alpha();
    return from_monic_quotient(F, {-ring_generator(F), ring_zero(F), ring_zero(F), ring_one(F)}, "beta");
}

/// F3[alpha][beta]/(beta^3 - alpha), the function-field integers analogue.
inline AlgPtr ffint() {
    auto P = F3alpha_poly();
    return from_monic_quotient(P, {-ring_generator(P), ring_zero(P), ring_zero(P), ring_one(P)}, "beta");
}

struct CorpusAlgebra {
    std::string name;
    AlgPtr alg;
    std::vector<std::string> vars;  // empty = default x1..xn
};

/// The index-form corpus: every worked example plus the split/jet families.
inline std::vector<CorpusAlgebra> index_form_corpus() {
    std::vector<CorpusAlgebra> v;
    v.push_back({"gauss", gauss(), {"a", "b"}});
    v.push_back({"dedekind", dedekind(), {"a", "b", "c"}});
    v.push_back({"sqrt23", sqrt23(), {"a", "b", "c", "d"}});
    v.push_back({"maxorder", maxorder(), {"a", "b", "c", "d"}});
    v.push_back({"cbrt175", cbrt175(), {"a", "b", "c"}});
    v.push_back({"inseparable", inseparable(), {"a", "b", "c"}});
    v.push_back({"ffint", ffint(), {"a", "b", "c"}});
    for (int n = 2; n <= 5; ++n)
        v.push_back({"split" + std::to_string(n), split_algebra(QQ(), n), {}});
    for (int n = 2; n <= 6; ++n)
        v.push_back({"jet" + std::to_string(n), jet_algebra(ZZ(), n), {}});
    return v;
}

// ---------------------------------------------------------------------------
// Random values, deterministic across runs
// ---------------------------------------------------------------------------

inline RingElem random_elem(const RingPtr& r, std::mt19937_64& rng) {
    auto small = [&](long long lo, long long hi) {
        return static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1)) + lo;
    };
    switch (r->kind) {
        case RingKind::Integers: return ring_from_integer(r, Int(small(-999, 999)));
        case RingKind::Rationals: return RingElem(r, Rat(Int(small(-999, 999)), Int(small(1, 99))));
        case RingKind::IntegersMod: {
            const unsigned long long m = r->modulus.convert_to<unsigned long long>();
            return ring_from_integer(r, Int(rng() % m));
        }
        case RingKind::PolyRing: {
            std::vector<RingElem> cs;
            const int d = static_cast<int>(rng() % 4);
            for (int i = 0; i <= d; ++i) cs.push_back(random_elem(r->base, rng));
            return poly_value(r, std::move(cs));
        }
        case RingKind::QuotientField: {
            const RingPtr cr = coefficient_ring(r);
            std::vector<RingElem> cs;
            const int n = static_cast<int>(r->quotient_modulus.size()) - 1;
            for (int i = 0; i < n; ++i) cs.push_back(random_elem(cr, rng));
            return quotient_value(r, std::move(cs));
        }
        case RingKind::FractionField: {
            const RingPtr cr = coefficient_ring(r);
            std::vector<RingElem> num, den;
            const int dn = static_cast<int>(rng() % 3);
            for (int i = 0; i <= dn; ++i) num.push_back(random_elem(cr, rng));
            while (true) {
                den.clear();
                const int dd = static_cast<int>(rng() % 3);
                for (int i = 0; i <= dd; ++i) den.push_back(random_elem(cr, rng));
                bool nonzero = false;
                for (const auto& x : den) nonzero = nonzero || !ring_is_zero(x);
                if (nonzero) break;
            }
            return fraction_value(r, std::move(num), std::move(den));
        }
    }
    throw internal_error("random_elem: bad kind");
}

inline MultiPoly random_poly(const PolyCtxPtr& ctx, std::mt19937_64& rng, int maxTerms = 5, int maxDeg = 3) {
    MultiPoly p = MultiPoly::zero(ctx);
    const int terms = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxTerms));
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int v = 0; v < static_cast<int>(ctx->vars.size()); ++v) {
            const int e = static_cast<int>(rng() % static_cast<unsigned>(maxDeg + 1));
            if (e > 0) m.e.push_back({v, e});
        }
        p.add_term(m, random_elem(ctx->coeff, rng));
    }
    return p;
}

/// All coordinate vectors over ZZ/m of the given length, lexicographic.
inline std::vector<std::vector<RingElem>> all_vectors(const RingPtr& zm, int len) {
    const unsigned long long m = zm->modulus.convert_to<unsigned long long>();
    std::vector<std::vector<RingElem>> out;
    std::vector<unsigned long long> cur(static_cast<std::size_t>(len), 0);
    while (true) {
        std::vector<RingElem> v;
        for (auto x : cur) v.push_back(ring_from_integer(zm, Int(x)));
        out.push_back(std::move(v));
        std::size_t i = cur.size();
        bool adv = false;
        while (i > 0) {
            --i;
            if (cur[i] + 1 < m) {
                ++cur[i];
                for (std::size_t j = i + 1; j < cur.size(); ++j) cur[j] = 0;
                adv = true;
                break;
            }
        }
        if (!adv) return out;
    }
}

} // namespace corpus
