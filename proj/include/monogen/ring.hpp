#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace monogen {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Ring descriptors
//
// A ring is a tower built from the leaves Integers / Rationals / IntegersMod
// by the constructors PolyRing, FractionField and QuotientField.  Descriptors
// are immutable and shared; values carry a pointer to their descriptor.
// ---------------------------------------------------------------------------

enum class RingKind { Integers, Rationals, IntegersMod, PolyRing, FractionField, QuotientField };

struct RingDesc;
using RingPtr = std::shared_ptr<const RingDesc>;

struct RingElem;

/// Dense univariate polynomial payload: coefficients ascending, top trimmed.
/// The zero polynomial is the empty vector.
struct UPoly {
    std::vector<RingElem> c;
};

/// Reduced fraction of univariate polynomials, denominator monic and nonzero.
struct Frac {
    UPoly num;
    UPoly den;
};

struct RingElem {
    RingPtr ring;
    std::variant<Int, Rat, UPoly, Frac> v;

    RingElem() = default;
    RingElem(RingPtr r, Int x) : ring(std::move(r)), v(std::move(x)) {}
    RingElem(RingPtr r, Rat x) : ring(std::move(r)), v(std::move(x)) {}
    RingElem(RingPtr r, UPoly x) : ring(std::move(r)), v(std::move(x)) {}
    RingElem(RingPtr r, Frac x) : ring(std::move(r)), v(std::move(x)) {}
};

struct RingDesc {
    RingKind kind = RingKind::Integers;
    Int modulus = 0;                          // IntegersMod
    RingPtr base;                             // PolyRing / FractionField / QuotientField
    std::string var;                          // PolyRing
    std::vector<RingElem> quotient_modulus;   // QuotientField: monic, over the coefficient field
    // Irreducibility of quotient_modulus is the caller's responsibility.  A reducible
    // modulus yields a ring with zero divisors, where inversion raises domain_error.
    bool irreducibility_checked = false;
};

inline bool is_probable_prime(const Int& m) {
    if (m < 2) return false;
    if (m < (Int(1) << 20)) {
        for (Int d = 2; d * d <= m; ++d)
            if (m % d == 0) return false;
        return true;
    }
    return boost::multiprecision::miller_rabin_test(m, 32);
}

inline bool ring_is_field(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Rationals: return true;
        case RingKind::IntegersMod: return is_probable_prime(r->modulus);
        case RingKind::FractionField: return true;
        case RingKind::QuotientField: return true;  // under the recorded irreducibility assumption
        default: return false;
    }
}

inline bool ring_is_integral_domain(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Integers:
        case RingKind::Rationals:
        case RingKind::FractionField:
        case RingKind::QuotientField: return true;
        case RingKind::IntegersMod: return is_probable_prime(r->modulus);
        case RingKind::PolyRing: return ring_is_integral_domain(r->base);
    }
    return false;
}

/// The ring in which the univariate coefficients of values of `r` live.
inline RingPtr coefficient_ring(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::PolyRing: return r->base;
        case RingKind::FractionField:
        case RingKind::QuotientField: return r->base->base;
        default: throw structural_error("coefficient_ring: ring has no coefficient ring");
    }
}

/// The polynomial variable printed for values of `r`.
inline const std::string& payload_var(const RingPtr& r) {
    return r->kind == RingKind::PolyRing ? r->var : r->base->var;
}

bool payload_equal(const RingElem& a, const RingElem& b);

inline bool ring_equal(const RingPtr& a, const RingPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::IntegersMod: return a->modulus == b->modulus;
        case RingKind::PolyRing: return a->var == b->var && ring_equal(a->base, b->base);
        case RingKind::FractionField: return ring_equal(a->base, b->base);
        case RingKind::QuotientField: {
            if (!ring_equal(a->base, b->base)) return false;
            if (a->quotient_modulus.size() != b->quotient_modulus.size()) return false;
            for (std::size_t i = 0; i < a->quotient_modulus.size(); ++i)
                if (!payload_equal(a->quotient_modulus[i], b->quotient_modulus[i])) return false;
            return true;
        }
    }
    return false;
}

inline bool payload_equal(const UPoly& a, const UPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!payload_equal(a.c[i], b.c[i])) return false;
    return true;
}

inline bool payload_equal(const RingElem& a, const RingElem& b) {
    if (a.v.index() != b.v.index()) return false;
    if (const auto* x = std::get_if<Int>(&a.v)) return *x == std::get<Int>(b.v);
    if (const auto* x = std::get_if<Rat>(&a.v)) return *x == std::get<Rat>(b.v);
    if (const auto* x = std::get_if<UPoly>(&a.v)) return payload_equal(*x, std::get<UPoly>(b.v));
    const auto& x = std::get<Frac>(a.v);
    const auto& y = std::get<Frac>(b.v);
    return payload_equal(x.num, y.num) && payload_equal(x.den, y.den);
}

inline bool operator==(const RingElem& a, const RingElem& b) {
    return ring_equal(a.ring, b.ring) && payload_equal(a, b);
}
inline bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Descriptor factories
// ---------------------------------------------------------------------------

inline RingPtr ring_integers() {
    static const RingPtr z = [] {
        RingDesc d;
        d.kind = RingKind::Integers;
        return std::make_shared<RingDesc>(std::move(d));
    }();
    return z;
}

inline RingPtr ring_rationals() {
    static const RingPtr q = [] {
        RingDesc d;
        d.kind = RingKind::Rationals;
        return std::make_shared<RingDesc>(std::move(d));
    }();
    return q;
}

inline RingPtr ring_integers_mod(const Int& m) {
    if (m < 2) throw domain_error("IntegersMod modulus must be >= 2");
    RingDesc d;
    d.kind = RingKind::IntegersMod;
    d.modulus = m;
    return std::make_shared<RingDesc>(std::move(d));
}

inline RingPtr ring_poly(RingPtr base, std::string var) {
    if (var.empty()) throw structural_error("PolyRing variable name must be nonempty");
    RingDesc d;
    d.kind = RingKind::PolyRing;
    d.base = std::move(base);
    d.var = std::move(var);
    return std::make_shared<RingDesc>(std::move(d));
}

inline RingPtr ring_fraction_field(RingPtr polyring) {
    if (polyring->kind != RingKind::PolyRing || !ring_is_field(polyring->base))
        throw structural_error("FractionField requires a PolyRing over a field");
    RingDesc d;
    d.kind = RingKind::FractionField;
    d.base = std::move(polyring);
    return std::make_shared<RingDesc>(std::move(d));
}

RingPtr ring_quotient_field(RingPtr polyring, std::vector<RingElem> monicModulus);

// ---------------------------------------------------------------------------
// Element construction and arithmetic
// ---------------------------------------------------------------------------

RingElem ring_zero(const RingPtr& r);
RingElem ring_one(const RingPtr& r);
RingElem ring_from_integer(const RingPtr& r, const Int& n);
RingElem operator+(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a, const RingElem& b);
RingElem operator*(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a);
bool ring_is_zero(const RingElem& a);
bool ring_is_one(const RingElem& a);
bool ring_is_unit(const RingElem& a);
RingElem ring_inverse(const RingElem& a);
std::string ring_to_string(const RingElem& a);
std::string ring_describe(const RingPtr& r);

namespace detail {

inline void require_same_ring(const RingElem& a, const RingElem& b, const char* op) {
    if (!ring_equal(a.ring, b.ring))
        throw structural_error(std::string(op) + ": operands belong to different rings");
}

inline Int mod_reduce(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

// -- dense univariate helpers; coefficients are elements of `cr` ------------

inline void up_trim(UPoly& p) {
    while (!p.c.empty() && ring_is_zero(p.c.back())) p.c.pop_back();
}

inline bool up_is_zero(const UPoly& p) { return p.c.empty(); }

inline int up_degree(const UPoly& p) { return static_cast<int>(p.c.size()) - 1; }

inline UPoly up_constant(const RingElem& x) {
    UPoly p;
    if (!ring_is_zero(x)) p.c.push_back(x);
    return p;
}

inline UPoly up_one(const RingPtr& cr) { return up_constant(ring_one(cr)); }

inline UPoly up_add(const RingPtr& cr, const UPoly& a, const UPoly& b) {
    UPoly r;
    const std::size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < a.c.size() && i < b.c.size())
            r.c.push_back(a.c[i] + b.c[i]);
        else
            r.c.push_back(i < a.c.size() ? a.c[i] : b.c[i]);
    }
    (void)cr;
    up_trim(r);
    return r;
}

inline UPoly up_neg(const UPoly& a) {
    UPoly r;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(-x);
    return r;
}

inline UPoly up_sub(const RingPtr& cr, const UPoly& a, const UPoly& b) {
    return up_add(cr, a, up_neg(b));
}

inline UPoly up_mul(const RingPtr& cr, const UPoly& a, const UPoly& b) {
    UPoly r;
    if (up_is_zero(a) || up_is_zero(b)) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, ring_zero(cr));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    up_trim(r);
    return r;
}

inline UPoly up_scale(const UPoly& a, const RingElem& s) {
    UPoly r;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(x * s);
    up_trim(r);
    return r;
}

/// Division with remainder; requires the leading coefficient of `b` to be a unit.
inline std::pair<UPoly, UPoly> up_divmod(const RingPtr& cr, UPoly a, const UPoly& b) {
    if (up_is_zero(b)) throw domain_error("polynomial division by zero");
    const RingElem lcInv = ring_inverse(b.c.back());
    UPoly q;
    const int db = up_degree(b);
    while (!up_is_zero(a) && up_degree(a) >= db) {
        const int shift = up_degree(a) - db;
        RingElem coef = a.c.back() * lcInv;
        if (static_cast<int>(q.c.size()) < shift + 1) q.c.resize(shift + 1, ring_zero(cr));
        q.c[shift] = q.c[shift] + coef;
        for (int i = 0; i <= db; ++i) {
            const std::size_t k = static_cast<std::size_t>(i + shift);
            a.c[k] = a.c[k] - coef * b.c[static_cast<std::size_t>(i)];
        }
        up_trim(a);
    }
    up_trim(q);
    return {std::move(q), std::move(a)};
}

inline UPoly up_make_monic(const RingPtr& cr, const UPoly& a) {
    (void)cr;
    if (up_is_zero(a)) return a;
    if (ring_is_one(a.c.back())) return a;
    return up_scale(a, ring_inverse(a.c.back()));
}

/// Monic gcd over a coefficient field.
inline UPoly up_gcd(const RingPtr& cr, UPoly a, UPoly b) {
    while (!up_is_zero(b)) {
        UPoly r = up_divmod(cr, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return up_make_monic(cr, a);
}

/// Extended Euclid over a coefficient field: returns (g, s) with s*a = g (mod m),
/// g monic (or zero).  Only the Bezout factor of `a` is needed for inversion.
inline std::pair<UPoly, UPoly> up_ext_gcd_first(const RingPtr& cr, UPoly a, UPoly m) {
    UPoly s0 = up_one(cr), s1;  // s1 = 0
    while (!up_is_zero(m)) {
        auto [q, r] = up_divmod(cr, a, m);
        a = std::move(m);
        m = std::move(r);
        UPoly s2 = up_sub(cr, s0, up_mul(cr, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!up_is_zero(a) && !ring_is_one(a.c.back())) {
        const RingElem inv = ring_inverse(a.c.back());
        a = up_scale(a, inv);
        s0 = up_scale(s0, inv);
    }
    return {std::move(a), std::move(s0)};
}

inline Frac frac_normalize(const RingPtr& cr, UPoly num, UPoly den) {
    if (up_is_zero(den)) throw domain_error("fraction with zero denominator");
    if (up_is_zero(num)) return Frac{UPoly{}, up_one(cr)};
    UPoly g = up_gcd(cr, num, den);
    if (up_degree(g) > 0 || !ring_is_one(g.c.back())) {
        num = up_divmod(cr, num, g).first;
        den = up_divmod(cr, den, g).first;
    }
    if (!ring_is_one(den.c.back())) {
        const RingElem inv = ring_inverse(den.c.back());
        num = up_scale(num, inv);
        den = up_scale(den, inv);
    }
    return Frac{std::move(num), std::move(den)};
}

} // namespace detail

inline RingPtr ring_quotient_field(RingPtr polyring, std::vector<RingElem> monicModulus) {
    if (polyring->kind != RingKind::PolyRing || !ring_is_field(polyring->base))
        throw structural_error("QuotientField requires a PolyRing over a field");
    UPoly m{std::move(monicModulus)};
    detail::up_trim(m);
    if (detail::up_degree(m) < 1) throw structural_error("QuotientField modulus must have degree >= 1");
    for (auto& coef : m.c)
        if (!ring_equal(coef.ring, polyring->base))
            throw structural_error("QuotientField modulus coefficients must lie in the coefficient field");
    if (!ring_is_one(m.c.back())) throw structural_error("QuotientField modulus must be monic");
    RingDesc d;
    d.kind = RingKind::QuotientField;
    d.base = std::move(polyring);
    d.quotient_modulus = std::move(m.c);
    return std::make_shared<RingDesc>(std::move(d));
}

inline RingElem ring_zero(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, Int(0));
        case RingKind::Rationals: return RingElem(r, Rat(0));
        case RingKind::IntegersMod: return RingElem(r, Int(0));
        case RingKind::PolyRing:
        case RingKind::QuotientField: return RingElem(r, UPoly{});
        case RingKind::FractionField:
            return RingElem(r, Frac{UPoly{}, detail::up_one(coefficient_ring(r))});
    }
    throw internal_error("ring_zero: bad kind");
}

inline RingElem ring_one(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, Int(1));
        case RingKind::Rationals: return RingElem(r, Rat(1));
        case RingKind::IntegersMod:
            return RingElem(r, detail::mod_reduce(Int(1), r->modulus));
        case RingKind::PolyRing:
        case RingKind::QuotientField: return RingElem(r, detail::up_one(coefficient_ring(r)));
        case RingKind::FractionField: {
            const RingPtr cr = coefficient_ring(r);
            return RingElem(r, Frac{detail::up_one(cr), detail::up_one(cr)});
        }
    }
    throw internal_error("ring_one: bad kind");
}

inline RingElem ring_from_integer(const RingPtr& r, const Int& n) {
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, n);
        case RingKind::Rationals: return RingElem(r, Rat(n));
        case RingKind::IntegersMod: return RingElem(r, detail::mod_reduce(n, r->modulus));
        case RingKind::PolyRing:
        case RingKind::QuotientField:
            return RingElem(r, detail::up_constant(ring_from_integer(coefficient_ring(r), n)));
        case RingKind::FractionField: {
            const RingPtr cr = coefficient_ring(r);
            return RingElem(r, Frac{detail::up_constant(ring_from_integer(cr, n)), detail::up_one(cr)});
        }
    }
    throw internal_error("ring_from_integer: bad kind");
}

/// Value of a PolyRing: coefficients ascending over the base ring.
inline RingElem poly_value(const RingPtr& polyring, std::vector<RingElem> coeffsAscending) {
    if (polyring->kind != RingKind::PolyRing) throw structural_error("poly_value: not a PolyRing");
    UPoly p{std::move(coeffsAscending)};
    for (auto& coef : p.c)
        if (!ring_equal(coef.ring, polyring->base))
            throw structural_error("poly_value: coefficient outside the base ring");
    detail::up_trim(p);
    return RingElem(polyring, std::move(p));
}

/// Value of a QuotientField: residue from ascending coefficients, reduced mod the modulus.
inline RingElem quotient_value(const RingPtr& qf, std::vector<RingElem> coeffsAscending) {
    if (qf->kind != RingKind::QuotientField) throw structural_error("quotient_value: not a QuotientField");
    const RingPtr cr = coefficient_ring(qf);
    UPoly p{std::move(coeffsAscending)};
    detail::up_trim(p);
    UPoly m{qf->quotient_modulus};
    p = detail::up_divmod(cr, std::move(p), m).second;
    return RingElem(qf, std::move(p));
}

/// Value of a FractionField from numerator/denominator coefficient lists.
inline RingElem fraction_value(const RingPtr& ff, std::vector<RingElem> num, std::vector<RingElem> den) {
    if (ff->kind != RingKind::FractionField) throw structural_error("fraction_value: not a FractionField");
    const RingPtr cr = coefficient_ring(ff);
    UPoly n{std::move(num)}, d{std::move(den)};
    detail::up_trim(n);
    detail::up_trim(d);
    return RingElem(ff, detail::frac_normalize(cr, std::move(n), std::move(d)));
}

/// The generator of a PolyRing / FractionField / QuotientField tower level.
inline RingElem ring_generator(const RingPtr& r) {
    const RingPtr cr = coefficient_ring(r);
    std::vector<RingElem> xc{ring_zero(cr), ring_one(cr)};
    switch (r->kind) {
        case RingKind::PolyRing: return poly_value(r, std::move(xc));
        case RingKind::QuotientField: return quotient_value(r, std::move(xc));
        case RingKind::FractionField: return fraction_value(r, std::move(xc), {ring_one(cr)});
        default: throw structural_error("ring_generator: ring has no generator");
    }
}

inline bool ring_is_zero(const RingElem& a) {
    switch (a.ring->kind) {
        case RingKind::Integers: return std::get<Int>(a.v) == 0;
        case RingKind::Rationals: return std::get<Rat>(a.v) == 0;
        case RingKind::IntegersMod: return std::get<Int>(a.v) == 0;
        case RingKind::PolyRing:
        case RingKind::QuotientField: return detail::up_is_zero(std::get<UPoly>(a.v));
        case RingKind::FractionField: return detail::up_is_zero(std::get<Frac>(a.v).num);
    }
    throw internal_error("ring_is_zero: bad kind");
}

inline bool ring_is_one(const RingElem& a) { return payload_equal(a, ring_one(a.ring)); }

inline RingElem operator+(const RingElem& a, const RingElem& b) {
    detail::require_same_ring(a, b, "add");
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, Int(std::get<Int>(a.v) + std::get<Int>(b.v)));
        case RingKind::Rationals: return RingElem(r, Rat(std::get<Rat>(a.v) + std::get<Rat>(b.v)));
        case RingKind::IntegersMod:
            return RingElem(r, detail::mod_reduce(std::get<Int>(a.v) + std::get<Int>(b.v), r->modulus));
        case RingKind::PolyRing:
        case RingKind::QuotientField:
            return RingElem(r, detail::up_add(coefficient_ring(r), std::get<UPoly>(a.v), std::get<UPoly>(b.v)));
        case RingKind::FractionField: {
            const RingPtr cr = coefficient_ring(r);
            const Frac& x = std::get<Frac>(a.v);
            const Frac& y = std::get<Frac>(b.v);
            UPoly num = detail::up_add(cr, detail::up_mul(cr, x.num, y.den), detail::up_mul(cr, y.num, x.den));
            UPoly den = detail::up_mul(cr, x.den, y.den);
            return RingElem(r, detail::frac_normalize(cr, std::move(num), std::move(den)));
        }
    }
    throw internal_error("add: bad kind");
}

inline RingElem operator-(const RingElem& a) {
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, Int(-std::get<Int>(a.v)));
        case RingKind::Rationals: return RingElem(r, Rat(-std::get<Rat>(a.v)));
        case RingKind::IntegersMod:
            return RingElem(r, detail::mod_reduce(-std::get<Int>(a.v), r->modulus));
        case RingKind::PolyRing:
        case RingKind::QuotientField: return RingElem(r, detail::up_neg(std::get<UPoly>(a.v)));
        case RingKind::FractionField: {
            const Frac& x = std::get<Frac>(a.v);
            return RingElem(r, Frac{detail::up_neg(x.num), x.den});
        }
    }
    throw internal_error("neg: bad kind");
}

inline RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

inline RingElem operator*(const RingElem& a, const RingElem& b) {
    detail::require_same_ring(a, b, "mul");
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, Int(std::get<Int>(a.v) * std::get<Int>(b.v)));
        case RingKind::Rationals: return RingElem(r, Rat(std::get<Rat>(a.v) * std::get<Rat>(b.v)));
        case RingKind::IntegersMod:
            return RingElem(r, detail::mod_reduce(std::get<Int>(a.v) * std::get<Int>(b.v), r->modulus));
        case RingKind::PolyRing:
            return RingElem(r, detail::up_mul(coefficient_ring(r), std::get<UPoly>(a.v), std::get<UPoly>(b.v)));
        case RingKind::QuotientField: {
            const RingPtr cr = coefficient_ring(r);
            UPoly prod = detail::up_mul(cr, std::get<UPoly>(a.v), std::get<UPoly>(b.v));
            UPoly m{r->quotient_modulus};
            return RingElem(r, detail::up_divmod(cr, std::move(prod), m).second);
        }
        case RingKind::FractionField: {
            const RingPtr cr = coefficient_ring(r);
            const Frac& x = std::get<Frac>(a.v);
            const Frac& y = std::get<Frac>(b.v);
            return RingElem(r, detail::frac_normalize(cr, detail::up_mul(cr, x.num, y.num),
                                                      detail::up_mul(cr, x.den, y.den)));
        }
    }
    throw internal_error("mul: bad kind");
}

inline bool ring_is_unit(const RingElem& a) {
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: {
            const Int& x = std::get<Int>(a.v);
            return x == 1 || x == -1;
        }
        case RingKind::Rationals: return std::get<Rat>(a.v) != 0;
        case RingKind::IntegersMod: return gcd(std::get<Int>(a.v), r->modulus) == 1;
        case RingKind::PolyRing: {
            const UPoly& p = std::get<UPoly>(a.v);
            if (detail::up_is_zero(p)) return false;
            if (detail::up_degree(p) == 0) return ring_is_unit(p.c[0]);
            if (ring_is_integral_domain(r->base)) return false;
            throw unsupported_error(
                "unit test for nonconstant polynomials over a non-domain coefficient ring");
        }
        case RingKind::FractionField:
        case RingKind::QuotientField: return !ring_is_zero(a);
    }
    throw internal_error("is_unit: bad kind");
}

inline RingElem ring_inverse(const RingElem& a) {
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: {
            const Int& x = std::get<Int>(a.v);
            if (x == 1 || x == -1) return a;
            throw domain_error("inverse of a non-unit integer");
        }
        case RingKind::Rationals: {
            const Rat& x = std::get<Rat>(a.v);
            if (x == 0) throw domain_error("inverse of zero");
            return RingElem(r, Rat(Rat(1) / x));
        }
        case RingKind::IntegersMod: {
            // extended Euclid on (x, m)
            Int x = std::get<Int>(a.v), m = r->modulus;
            Int r0 = x, r1 = m, s0 = 1, s1 = 0;
            while (r1 != 0) {
                Int q = r0 / r1;
                Int r2 = r0 - q * r1;
                r0 = r1; r1 = r2;
                Int s2 = s0 - q * s1;
                s0 = s1; s1 = s2;
            }
            if (r0 != 1) throw domain_error("inverse of a non-unit residue");
            return RingElem(r, detail::mod_reduce(s0, r->modulus));
        }
        case RingKind::PolyRing: {
            const UPoly& p = std::get<UPoly>(a.v);
            if (detail::up_degree(p) == 0)
                return RingElem(r, detail::up_constant(ring_inverse(p.c[0])));
            throw domain_error("inverse of a non-constant polynomial");
        }
        case RingKind::FractionField: {
            if (ring_is_zero(a)) throw domain_error("inverse of zero");
            const RingPtr cr = coefficient_ring(r);
            const Frac& x = std::get<Frac>(a.v);
            return RingElem(r, detail::frac_normalize(cr, x.den, x.num));
        }
        case RingKind::QuotientField: {
            if (ring_is_zero(a)) throw domain_error("inverse of zero");
            const RingPtr cr = coefficient_ring(r);
            auto [g, s] = detail::up_ext_gcd_first(cr, std::get<UPoly>(a.v), UPoly{r->quotient_modulus});
            if (detail::up_degree(g) != 0)
                throw domain_error("zero divisor in quotient ring (modulus not irreducible?)");
            UPoly m{r->quotient_modulus};
            UPoly res = detail::up_divmod(cr, std::move(s), m).second;
            return RingElem(r, std::move(res));
        }
    }
    throw internal_error("inverse: bad kind");
}

/// Exact division in an integral domain; throws when `b` does not divide `a`.
/// Supported where the Bareiss fast path needs it: ZZ and fields.
inline RingElem ring_exact_div(const RingElem& a, const RingElem& b) {
    detail::require_same_ring(a, b, "exact_div");
    switch (a.ring->kind) {
        case RingKind::Integers: {
            const Int& x = std::get<Int>(a.v);
            const Int& y = std::get<Int>(b.v);
            if (y == 0) throw domain_error("exact_div by zero");
            Int q = x / y;
            if (q * y != x) throw domain_error("exact_div: not divisible");
            return RingElem(a.ring, std::move(q));
        }
        case RingKind::Rationals:
        case RingKind::FractionField:
        case RingKind::QuotientField: return a * ring_inverse(b);
        case RingKind::IntegersMod:
            if (ring_is_field(a.ring)) return a * ring_inverse(b);
            throw unsupported_error("exact_div over a composite residue ring");
        case RingKind::PolyRing: {
            if (!ring_is_field(a.ring->base))
                throw unsupported_error("exact_div over " + ring_describe(a.ring));
            if (ring_is_zero(b)) throw domain_error("exact_div by zero");
            auto [q, r] = detail::up_divmod(a.ring->base, std::get<UPoly>(a.v), std::get<UPoly>(b.v));
            if (!detail::up_is_zero(r)) throw domain_error("exact_div: not divisible");
            return RingElem(a.ring, std::move(q));
        }
        default: throw unsupported_error("exact_div over " + ring_describe(a.ring));
    }
}

/// Re-derives the canonical payload; constructed values are already canonical,
/// so this is the identity on anything produced by this header.
inline RingElem canonicalize(const RingElem& a) {
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return a;  // cpp_rational keeps lowest terms, positive denominator
        case RingKind::IntegersMod: return RingElem(r, detail::mod_reduce(std::get<Int>(a.v), r->modulus));
        case RingKind::PolyRing: {
            UPoly p = std::get<UPoly>(a.v);
            for (auto& coef : p.c) coef = canonicalize(coef);
            detail::up_trim(p);
            return RingElem(r, std::move(p));
        }
        case RingKind::QuotientField: {
            UPoly p = std::get<UPoly>(a.v);
            for (auto& coef : p.c) coef = canonicalize(coef);
            detail::up_trim(p);
            UPoly m{r->quotient_modulus};
            return RingElem(r, detail::up_divmod(coefficient_ring(r), std::move(p), m).second);
        }
        case RingKind::FractionField: {
            Frac f = std::get<Frac>(a.v);
            for (auto& coef : f.num.c) coef = canonicalize(coef);
            for (auto& coef : f.den.c) coef = canonicalize(coef);
            detail::up_trim(f.num);
            detail::up_trim(f.den);
            return RingElem(r, detail::frac_normalize(coefficient_ring(r), std::move(f.num), std::move(f.den)));
        }
    }
    throw internal_error("canonicalize: bad kind");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

inline bool display_composite(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char ch = s[i];
        if (ch == '+' || ch == '*' || ch == '/' || ch == '^') return true;
        if (ch == '-' && i > 0) return true;
    }
    return false;
}

inline std::string up_to_string(const UPoly& p, const std::string& var);

inline std::string term_to_string(const RingElem& coef, int exp, const std::string& var, bool first) {
    std::string cs = ring_to_string(coef);
    bool neg = false;
    if (!cs.empty() && cs[0] == '-' && !display_composite(cs.substr(1))) {
        neg = true;
        cs = cs.substr(1);
    }
    std::string out = first ? (neg ? "-" : "") : (neg ? "-" : "+");
    std::string varpart;
    if (exp == 1) varpart = var;
    else if (exp > 1) varpart = var + "^" + std::to_string(exp);
    if (varpart.empty()) {
        out += display_composite(cs) ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
        out += varpart;
    } else {
        out += (display_composite(cs) ? "(" + cs + ")" : cs) + "*" + varpart;
    }
    return out;
}

inline std::string up_to_string(const UPoly& p, const std::string& var) {
    if (up_is_zero(p)) return "0";
    std::string out;
    bool first = true;
    for (int e = up_degree(p); e >= 0; --e) {
        const RingElem& coef = p.c[static_cast<std::size_t>(e)];
        if (ring_is_zero(coef)) continue;
        out += term_to_string(coef, e, var, first);
        first = false;
    }
    return out;
}

} // namespace detail

inline std::string ring_to_string(const RingElem& a) {
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return std::get<Int>(a.v).str();
        case RingKind::Rationals: {
            const Rat& x = std::get<Rat>(a.v);
            if (denominator(x) == 1) return numerator(x).str();
            return numerator(x).str() + "/" + denominator(x).str();
        }
        case RingKind::IntegersMod: return std::get<Int>(a.v).str();
        case RingKind::PolyRing:
        case RingKind::QuotientField:
            return detail::up_to_string(std::get<UPoly>(a.v), payload_var(r));
        case RingKind::FractionField: {
            const Frac& f = std::get<Frac>(a.v);
            const std::string& var = payload_var(r);
            std::string ns = detail::up_to_string(f.num, var);
            if (detail::up_degree(f.den) == 0 && ring_is_one(f.den.c[0])) return ns;
            std::string ds = detail::up_to_string(f.den, var);
            if (detail::display_composite(ns)) ns = "(" + ns + ")";
            return ns + "/(" + ds + ")";
        }
    }
    throw internal_error("to_string: bad kind");
}

/// True when the canonical string of `a` would begin with '-' (used by
/// polynomial renderers to pull signs out of integer/rational coefficients).
inline bool ring_display_negative(const RingElem& a) {
    switch (a.ring->kind) {
        case RingKind::Integers: return std::get<Int>(a.v) < 0;
        case RingKind::Rationals: return std::get<Rat>(a.v) < 0;
        default: return false;
    }
}

inline std::string ring_describe(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Integers: return "ZZ";
        case RingKind::Rationals: return "QQ";
        case RingKind::IntegersMod: return "ZZ/" + r->modulus.str();
        case RingKind::PolyRing: return ring_describe(r->base) + "[" + r->var + "]";
        case RingKind::FractionField: return ring_describe(r->base->base) + "(" + r->base->var + ")";
        case RingKind::QuotientField: {
            UPoly m{r->quotient_modulus};
            return ring_describe(r->base) + "/(" + detail::up_to_string(m, r->base->var) + ")";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Ring homomorphisms
//
// Supported shapes: reduction ZZ -> ZZ/m, inclusion ZZ -> QQ, one-level
// constant embeddings up a tower, coefficientwise lifts through
// PolyRing / FractionField / QuotientField, generator substitutions
// (e.g. F3(a) -> F3(b), a |-> b^3), and compositions of these.
// ---------------------------------------------------------------------------

class RingHom {
    enum class Kind { Identity, IntToMod, IntToRat, ConstEmbed, Lift, Subst, Compose };

    struct Impl {
        Kind kind;
        RingPtr source, target;
        std::shared_ptr<const Impl> inner;   // Lift / Subst coefficient map
        std::shared_ptr<const Impl> first, second;  // Compose
        RingElem image;                      // Subst generator image
    };

    std::shared_ptr<const Impl> impl_;
    explicit RingHom(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static RingElem apply(const Impl& h, const RingElem& x);

public:
    const RingPtr& source() const { return impl_->source; }
    const RingPtr& target() const { return impl_->target; }

    RingElem operator()(const RingElem& x) const {
        if (!ring_equal(x.ring, impl_->source))
            throw structural_error("ring_map: value not in the source ring");
        return apply(*impl_, x);
    }

    static RingHom identity(RingPtr r) {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::Identity;
        impl->source = r;
        impl->target = std::move(r);
        return RingHom(std::move(impl));
    }

    static RingHom reduction_mod(const Int& m) {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::IntToMod;
        impl->source = ring_integers();
        impl->target = ring_integers_mod(m);
        return RingHom(std::move(impl));
    }

    static RingHom rational_inclusion() {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::IntToRat;
        impl->source = ring_integers();
        impl->target = ring_rationals();
        return RingHom(std::move(impl));
    }

    /// One-level embedding: base ring into PolyRing over it, or a PolyRing
    /// into its FractionField / a QuotientField of it.
    static RingHom constant_embed(RingPtr src, RingPtr tgt) {
        bool ok = false;
        if (tgt->kind == RingKind::PolyRing) ok = ring_equal(src, tgt->base);
        else if (tgt->kind == RingKind::FractionField || tgt->kind == RingKind::QuotientField)
            ok = ring_equal(src, tgt->base);
        if (!ok) throw structural_error("constant_embed: target is not built on the source ring");
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::ConstEmbed;
        impl->source = std::move(src);
        impl->target = std::move(tgt);
        return RingHom(std::move(impl));
    }

    /// Chain of constant embeddings from `src` to a tower level of `tgt`.
    static RingHom natural_embed(const RingPtr& src, const RingPtr& tgt) {
        if (ring_equal(src, tgt)) return identity(tgt);
        RingPtr below;
        switch (tgt->kind) {
            case RingKind::PolyRing:
            case RingKind::FractionField:
            case RingKind::QuotientField: below = tgt->base; break;
            default: throw structural_error("natural_embed: no embedding of " + ring_describe(src) +
                                            " into " + ring_describe(tgt));
        }
        return natural_embed(src, below).then(constant_embed(below, tgt));
    }

    /// Coefficientwise lift of `inner` through one PolyRing / FractionField /
    /// QuotientField layer; the target descriptor is derived from the source.
    static RingHom coefficient_lift(const RingHom& inner, const RingPtr& srcOuter) {
        RingPtr tgtOuter;
        switch (srcOuter->kind) {
            case RingKind::PolyRing: {
                if (!ring_equal(srcOuter->base, inner.source()))
                    throw structural_error("coefficient_lift: inner map does not start at the coefficient ring");
                tgtOuter = ring_poly(inner.target(), srcOuter->var);
                break;
            }
            case RingKind::FractionField: {
                if (!ring_equal(srcOuter->base->base, inner.source()))
                    throw structural_error("coefficient_lift: inner map does not start at the coefficient ring");
                tgtOuter = ring_fraction_field(ring_poly(inner.target(), srcOuter->base->var));
                break;
            }
            case RingKind::QuotientField: {
                if (!ring_equal(srcOuter->base->base, inner.source()))
                    throw structural_error("coefficient_lift: inner map does not start at the coefficient ring");
                std::vector<RingElem> m;
                m.reserve(srcOuter->quotient_modulus.size());
                for (const auto& coef : srcOuter->quotient_modulus) m.push_back(inner(coef));
                tgtOuter = ring_quotient_field(ring_poly(inner.target(), srcOuter->base->var), std::move(m));
                break;
            }
            default: throw structural_error("coefficient_lift: source is not a tower constructor");
        }
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::Lift;
        impl->source = srcOuter;
        impl->target = std::move(tgtOuter);
        impl->inner = inner.impl_;
        return RingHom(std::move(impl));
    }

    /// Variable-substitution map sending the generator of `src` to `image`,
    /// coefficients along the natural embedding into image's ring.
    static RingHom generator_subst(const RingPtr& src, const RingElem& image) {
        if (src->kind != RingKind::PolyRing && src->kind != RingKind::FractionField &&
            src->kind != RingKind::QuotientField)
            throw structural_error("generator_subst: source has no generator");
        RingHom inner = natural_embed(coefficient_ring(src), image.ring);
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::Subst;
        impl->source = src;
        impl->target = image.ring;
        impl->inner = inner.impl_;
        impl->image = image;
        return RingHom(std::move(impl));
    }

    RingHom then(const RingHom& next) const {
        if (!ring_equal(impl_->target, next.impl_->source))
            throw structural_error("RingHom::then: maps do not compose");
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::Compose;
        impl->source = impl_->source;
        impl->target = next.impl_->target;
        impl->first = impl_;
        impl->second = next.impl_;
        return RingHom(std::move(impl));
    }
};

inline RingElem RingHom::apply(const Impl& h, const RingElem& x) {
    switch (h.kind) {
        case Kind::Identity: return x;
        case Kind::IntToMod:
            return RingElem(h.target, detail::mod_reduce(std::get<Int>(x.v), h.target->modulus));
        case Kind::IntToRat: return RingElem(h.target, Rat(std::get<Int>(x.v)));
        case Kind::ConstEmbed: {
            switch (h.target->kind) {
                case RingKind::PolyRing: {
                    UPoly p = detail::up_constant(x);
                    return RingElem(h.target, std::move(p));
                }
                case RingKind::FractionField: {
                    const UPoly& p = std::get<UPoly>(x.v);
                    return RingElem(h.target,
                                    detail::frac_normalize(coefficient_ring(h.target), p,
                                                           detail::up_one(coefficient_ring(h.target))));
                }
                case RingKind::QuotientField: {
                    UPoly p = std::get<UPoly>(x.v);
                    UPoly m{h.target->quotient_modulus};
                    return RingElem(h.target,
                                    detail::up_divmod(coefficient_ring(h.target), std::move(p), m).second);
                }
                default: throw internal_error("constant_embed: bad target");
            }
        }
        case Kind::Lift: {
            auto mapCoeffs = [&](const UPoly& p) {
                UPoly q;
                q.c.reserve(p.c.size());
                for (const auto& coef : p.c) q.c.push_back(apply(*h.inner, coef));
                detail::up_trim(q);
                return q;
            };
            switch (h.source->kind) {
                case RingKind::PolyRing: return RingElem(h.target, mapCoeffs(std::get<UPoly>(x.v)));
                case RingKind::QuotientField: {
                    UPoly q = mapCoeffs(std::get<UPoly>(x.v));
                    UPoly m{h.target->quotient_modulus};
                    return RingElem(h.target,
                                    detail::up_divmod(coefficient_ring(h.target), std::move(q), m).second);
                }
                case RingKind::FractionField: {
                    const Frac& f = std::get<Frac>(x.v);
                    UPoly num = mapCoeffs(f.num);
                    UPoly den = mapCoeffs(f.den);
                    if (detail::up_is_zero(den))
                        throw domain_error("ring_map: denominator maps to zero");
                    return RingElem(h.target,
                                    detail::frac_normalize(coefficient_ring(h.target), std::move(num),
                                                           std::move(den)));
                }
                default: throw internal_error("lift: bad source");
            }
        }
        case Kind::Subst: {
            auto evalPoly = [&](const UPoly& p) {
                RingElem acc = ring_zero(h.target);
                for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
                    acc = acc * h.image + apply(*h.inner, *it);
                return acc;
            };
            switch (h.source->kind) {
                case RingKind::PolyRing:
                case RingKind::QuotientField: return evalPoly(std::get<UPoly>(x.v));
                case RingKind::FractionField: {
                    const Frac& f = std::get<Frac>(x.v);
                    RingElem num = evalPoly(f.num);
                    RingElem den = evalPoly(f.den);
                    if (!ring_is_unit(den))
                        throw domain_error("ring_map: denominator maps to a non-unit");
                    return num * ring_inverse(den);
                }
                default: throw internal_error("subst: bad source");
            }
        }
        case Kind::Compose: return apply(*h.second, apply(*h.first, x));
    }
    throw internal_error("RingHom::apply: bad kind");
}

} // namespace monogen
