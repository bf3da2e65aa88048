#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "indexform.hpp"

namespace monogen {

// ---------------------------------------------------------------------------
// Exhaustive box search for monogenerators over ZZ, modular obstruction
// certificates, and function-field searches over F_p[alpha].
// ---------------------------------------------------------------------------

struct SearchBox {
    std::vector<long long> lo, hi;  // inclusive, one range per scanned variable
    bool skip_first = false;        // exploit x1-independence; ranges then cover x2..xn
};

inline SearchBox default_box(int vars, bool skipFirst, long long lo = -10, long long hi = 10) {
    SearchBox b;
    b.skip_first = skipFirst;
    const int m = skipFirst ? vars - 1 : vars;
    b.lo.assign(static_cast<std::size_t>(m), lo);
    b.hi.assign(static_cast<std::size_t>(m), hi);
    return b;
}

struct SearchHit {
    std::vector<Int> coords;  // scanned variables only, in variable order
    RingElem value;
    // function-field hits carry the coordinate values themselves (coords then
    // holds the flattened coefficient tuples used for ordering)
    std::vector<RingElem> coord_values;
};

struct SearchReport {
    std::string algebra_digest;
    SearchBox box;
    bool first_variable_free = false;  // hits omit x1; any x1 completes a monogenerator
    std::vector<SearchHit> hits;       // sorted lexicographically by coords
    unsigned long long scanned = 0;
    double elapsed_ms = 0;  // wall time; excluded from canonical serializations
    std::optional<Int> minimal_nonzero_abs_index;
};

namespace detail {

inline bool coords_lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

struct BoxScanResult {
    std::vector<SearchHit> hits;
    unsigned long long scanned = 0;
    std::optional<Int> min_abs;
};

inline BoxScanResult scan_box_chunk(const IndexForm& form, const RingPtr& base,
                                    const std::vector<int>& scanVars, const std::vector<long long>& lo,
                                    const std::vector<long long>& hi) {
    BoxScanResult out;
    const std::size_t m = lo.size();
    for (std::size_t i = 0; i < m; ++i)
        if (lo[i] > hi[i]) return out;  // empty chunk
    std::vector<long long> cur(lo);
    const int nvars = static_cast<int>(form.poly.context()->vars.size());
    std::vector<RingElem> point(static_cast<std::size_t>(nvars), ring_zero(base));
    while (true) {
        for (std::size_t i = 0; i < m; ++i)
            point[static_cast<std::size_t>(scanVars[i])] = ring_from_integer(base, Int(cur[i]));
        RingElem v = poly_evaluate(form.poly, point);
        ++out.scanned;
        const Int& vi = std::get<Int>(v.v);
        if (vi == 1 || vi == -1) {
            std::vector<Int> c;
            c.reserve(m);
            for (auto x : cur) c.push_back(Int(x));
            out.hits.push_back({std::move(c), v, {}});
        }
        if (vi != 0) {
            Int a = abs(vi);
            if (!out.min_abs || a < *out.min_abs) out.min_abs = a;
        }
        // lexicographic odometer, last variable fastest
        std::size_t i = m;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (cur[i] < hi[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < m; ++j) cur[j] = lo[j];
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

} // namespace detail

/// Exhaustive scan of an integer box.  Hits are the points where the index
/// form evaluates to 1 or -1 (the units of ZZ).  With skip_first and e1 = 1,
/// the first variable is reported as a free parameter.  Sharding over
/// `threads` workers splits the range of the highest-index variable; the
/// merged report does not depend on the shard count.
inline SearchReport box_search(const AlgPtr& alg, const IndexForm& form, const SearchBox& box,
                               int threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    if (alg->base->kind != RingKind::Integers) throw unsupported_error("box_search requires base ZZ");
    const int n = alg->rank;
    const bool skip = box.skip_first && form.unit_is_first_basis_vector;
    const int m = skip ? n - 1 : n;
    if (static_cast<int>(box.lo.size()) != m || static_cast<int>(box.hi.size()) != m)
        throw structural_error("box_search: box has " + std::to_string(box.lo.size()) +
                               " ranges, expected " + std::to_string(m));
    for (std::size_t i = 0; i < box.lo.size(); ++i)
        if (box.lo[i] > box.hi[i]) throw domain_error("box_search: empty box range");

    std::vector<int> scanVars;
    for (int v = skip ? 1 : 0; v < n; ++v) scanVars.push_back(v);

    if (m == 0) {  // rank 1 with the first variable skipped: the form is constant
        SearchReport rep;
        rep.algebra_digest = algebra_digest(*alg);
        rep.box = box;
        rep.first_variable_free = skip;
        RingElem v = poly_evaluate(form.poly, {});
        rep.scanned = 1;
        const Int& vi = std::get<Int>(v.v);
        if (vi == 1 || vi == -1) rep.hits.push_back({{}, v, {}});
        if (vi != 0) rep.minimal_nonzero_abs_index = abs(vi);
        return rep;
    }

    // shard on the highest-index variable
    const std::size_t last = static_cast<std::size_t>(m) - 1;
    const long long span = box.hi[last] - box.lo[last] + 1;
    const int nshards = std::max(1, std::min<int>(threads, static_cast<int>(span)));
    std::vector<detail::BoxScanResult> results(static_cast<std::size_t>(nshards));
    {
        std::vector<std::thread> workers;
        const long long chunk = (span + nshards - 1) / nshards;
        for (int s = 0; s < nshards; ++s) {
            std::vector<long long> lo = box.lo, hi = box.hi;
            lo[last] = box.lo[last] + s * chunk;
            hi[last] = std::min(box.hi[last], lo[last] + chunk - 1);
            if (lo[last] > box.hi[last]) {
                lo[last] = 1;
                hi[last] = 0;  // empty chunk
            }
            workers.emplace_back([&, s, lo, hi]() {
                results[static_cast<std::size_t>(s)] =
                    detail::scan_box_chunk(form, alg->base, scanVars, lo, hi);
            });
        }
        for (auto& w : workers) w.join();
    }

    SearchReport rep;
    rep.algebra_digest = algebra_digest(*alg);
    rep.box = box;
    rep.first_variable_free = skip;
    for (auto& r : results) {
        rep.scanned += r.scanned;
        for (auto& h : r.hits) rep.hits.push_back(std::move(h));
        if (r.min_abs && (!rep.minimal_nonzero_abs_index || *r.min_abs < *rep.minimal_nonzero_abs_index))
            rep.minimal_nonzero_abs_index = r.min_abs;
    }
    std::sort(rep.hits.begin(), rep.hits.end(),
              [](const SearchHit& a, const SearchHit& b) { return detail::coords_lex_less(a.coords, b.coords); });
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline SearchReport box_search(const AlgPtr& alg, const SearchBox& box, int threads = 1) {
    UniversalContext u = make_universal_context(alg);
    return box_search(alg, local_index_form(u), box, threads);
}

/// Box-relative minimum of |index value| excluding zeros; 0 only when the box
/// contains no nonzero value.  Never a proven global minimal index.
inline Int minimal_index_scan(const AlgPtr& alg, const IndexForm& form, const SearchBox& box,
                              int threads = 1) {
    SearchReport rep = box_search(alg, form, box, threads);
    return rep.minimal_nonzero_abs_index ? *rep.minimal_nonzero_abs_index : Int(0);
}

inline Int minimal_index_scan(const AlgPtr& alg, const SearchBox& box, int threads = 1) {
    return box_search(alg, box, threads).minimal_nonzero_abs_index.value_or(Int(0));
}

// ---------------------------------------------------------------------------
// Modular obstruction certificates
// ---------------------------------------------------------------------------

enum class ObstructionVerdict { Obstructed, Inconclusive };

struct ObstructionCertificate {
    Int modulus;
    std::string residue_table_digest;  // FNV-1a over the canonical residue table
    ObstructionVerdict verdict = ObstructionVerdict::Inconclusive;
    unsigned long long residues_checked = 0;
    std::optional<std::vector<Int>> witness;  // residues reaching +-1 mod m, if any
};

/// Reduces the index form mod m and enumerates all residue vectors (x1 is
/// omitted when the form does not involve it).  Over ZZ the only unit values
/// are +-1, so the certificate checks whether any residue vector evaluates to
/// +-1 mod m; if none does, no integer point can make the form a unit, which
/// proves non-monogenicity over ZZ.
inline ObstructionCertificate modular_obstruction(const AlgPtr& alg, const IndexForm& form, const Int& m) {
    if (alg->base->kind != RingKind::Integers)
        throw unsupported_error("modular_obstruction requires base ZZ");
    if (m < 2) throw domain_error("modulus must be >= 2");
    const RingHom red = RingHom::reduction_mod(m);
    const MultiPoly fm = poly_map_coefficients(form.poly, red);
    const RingPtr zm = red.target();

    const int n = alg->rank;
    std::vector<int> scanVars;
    for (int v = 0; v < n; ++v)
        if (!(v == 0 && form.poly.degree_in(0) == 0 && form.unit_is_first_basis_vector)) scanVars.push_back(v);

    const Int plusOne = 1;
    const Int minusOne = m - 1;

    ObstructionCertificate cert;
    cert.modulus = m;
    cert.verdict = ObstructionVerdict::Obstructed;

    std::string table;
    std::vector<Int> cur(scanVars.size(), 0);
    std::vector<RingElem> point(static_cast<std::size_t>(n), ring_zero(zm));
    while (true) {
        for (std::size_t i = 0; i < scanVars.size(); ++i)
            point[static_cast<std::size_t>(scanVars[i])] = ring_from_integer(zm, cur[i]);
        RingElem v = poly_evaluate(fm, point);
        ++cert.residues_checked;
        const Int& vi = std::get<Int>(v.v);
        for (std::size_t i = 0; i < cur.size(); ++i) table += (i ? "," : "") + cur[i].str();
        table += "->" + vi.str() + ";";
        if (vi == plusOne || vi == minusOne) {
            if (cert.verdict == ObstructionVerdict::Obstructed) {
                cert.verdict = ObstructionVerdict::Inconclusive;
                cert.witness = cur;
            }
        }
        std::size_t i = cur.size();
        bool advanced = false;
        while (i > 0) {
            --i;
            if (cur[i] + 1 < m) {
                ++cur[i];
                for (std::size_t j = i + 1; j < cur.size(); ++j) cur[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(table)));
    cert.residue_table_digest = buf;
    return cert;
}

inline ObstructionCertificate modular_obstruction(const AlgPtr& alg, const Int& m) {
    UniversalContext u = make_universal_context(alg);
    return modular_obstruction(alg, local_index_form(u), m);
}

// ---------------------------------------------------------------------------
// Function-field search over F_p[alpha]
// ---------------------------------------------------------------------------

/// Enumerates coordinate vectors whose entries are polynomials of degree <= d
/// over F_p[alpha]; hits are the points where the index value is a nonzero
/// constant (a unit of F_p[alpha]).  The x1 coordinate is skipped when the
/// form does not involve it.
inline SearchReport function_field_search(const AlgPtr& alg, const IndexForm& form, int degreeBound,
                                          unsigned long long enumerationGuard = 10000000ull) {
    const auto t0 = std::chrono::steady_clock::now();
    const RingPtr& base = alg->base;
    if (base->kind != RingKind::PolyRing || base->base->kind != RingKind::IntegersMod ||
        !is_probable_prime(base->base->modulus))
        throw unsupported_error("function_field_search requires base F_p[alpha]");
    if (degreeBound < 0) throw domain_error("degree bound must be >= 0");
    const Int p = base->base->modulus;
    const int n = alg->rank;

    std::vector<int> scanVars;
    for (int v = 0; v < n; ++v)
        if (!(v == 0 && form.poly.degree_in(0) == 0 && form.unit_is_first_basis_vector)) scanVars.push_back(v);

    const unsigned long long perVar = [&] {
        unsigned long long t = 1;
        for (int i = 0; i <= degreeBound; ++i) {
            if (t > enumerationGuard) return t;  // already hopeless, avoid overflow
            t *= p.convert_to<unsigned long long>();
        }
        return t;
    }();
    if (perVar > enumerationGuard) throw resource_error("function_field_search guard", perVar);
    unsigned long long total = 1;
    for (std::size_t i = 0; i < scanVars.size(); ++i) {
        if (total > enumerationGuard / perVar + 1) throw resource_error("function_field_search guard", total);
        total *= perVar;
    }
    if (total > enumerationGuard) throw resource_error("function_field_search guard", total);

    const RingPtr fp = base->base;
    // value of a coefficient tuple as an element of F_p[alpha]
    auto make_poly_elem = [&](const std::vector<Int>& coeffs) {
        std::vector<RingElem> cs;
        cs.reserve(coeffs.size());
        for (const auto& x : coeffs) cs.push_back(ring_from_integer(fp, x));
        return poly_value(base, std::move(cs));
    };

    SearchReport rep;
    rep.algebra_digest = algebra_digest(*alg);
    rep.first_variable_free = scanVars.size() + 1 == static_cast<std::size_t>(n);

    const std::size_t m = scanVars.size();
    std::vector<std::vector<Int>> cur(m, std::vector<Int>(static_cast<std::size_t>(degreeBound) + 1, 0));
    std::vector<RingElem> point(static_cast<std::size_t>(n), ring_zero(base));
    while (true) {
        for (std::size_t i = 0; i < m; ++i)
            point[static_cast<std::size_t>(scanVars[i])] = make_poly_elem(cur[i]);
        RingElem v = poly_evaluate(form.poly, point);
        ++rep.scanned;
        if (ring_is_unit(v)) {
            SearchHit h;
            for (std::size_t i = 0; i < m; ++i)
                for (const auto& coef : cur[i]) h.coords.push_back(coef);
            h.value = v;
            for (std::size_t i = 0; i < m; ++i) h.coord_values.push_back(point[static_cast<std::size_t>(scanVars[i])]);
            rep.hits.push_back(std::move(h));
        }
        // odometer over all coefficient slots; the full coefficient space is
        // enumerated, hits are lex-sorted afterwards
        std::size_t slot = m * (static_cast<std::size_t>(degreeBound) + 1);
        bool advanced = false;
        while (slot > 0) {
            --slot;
            const std::size_t vi = slot / (static_cast<std::size_t>(degreeBound) + 1);
            const std::size_t ci = slot % (static_cast<std::size_t>(degreeBound) + 1);
            if (cur[vi][ci] + 1 < p) {
                ++cur[vi][ci];
                for (std::size_t s = slot + 1; s < m * (static_cast<std::size_t>(degreeBound) + 1); ++s)
                    cur[s / (static_cast<std::size_t>(degreeBound) + 1)][s % (static_cast<std::size_t>(degreeBound) + 1)] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    std::sort(rep.hits.begin(), rep.hits.end(),
              [](const SearchHit& a, const SearchHit& b) { return detail::coords_lex_less(a.coords, b.coords); });
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline SearchReport function_field_search(const AlgPtr& alg, int degreeBound) {
    UniversalContext u = make_universal_context(alg);
    return function_field_search(alg, local_index_form(u), degreeBound);
}

} // namespace monogen
