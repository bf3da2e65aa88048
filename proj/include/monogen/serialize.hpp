#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "search.hpp"

namespace monogen {

using json = nlohmann::json;

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Ring descriptors
// ---------------------------------------------------------------------------

json value_to_json(const RingElem& x);
RingElem value_from_json(const RingPtr& r, const json& j);

inline json ring_to_json(const RingPtr& r) {
    json j;
    switch (r->kind) {
        case RingKind::Integers: j["kind"] = "Integers"; break;
        case RingKind::Rationals: j["kind"] = "Rationals"; break;
        case RingKind::IntegersMod:
            j["kind"] = "IntegersMod";
            j["modulus"] = r->modulus.str();
            break;
        case RingKind::PolyRing:
            j["kind"] = "PolyRing";
            j["base"] = ring_to_json(r->base);
            j["var"] = r->var;
            break;
        case RingKind::FractionField:
            j["kind"] = "FractionField";
            j["base"] = ring_to_json(r->base);
            break;
        case RingKind::QuotientField: {
            j["kind"] = "QuotientField";
            j["base"] = ring_to_json(r->base);
            json mp = json::array();
            const auto& m = r->quotient_modulus;
            for (std::size_t e = 0; e < m.size(); ++e)
                if (!ring_is_zero(m[e])) mp.push_back(json::array({e, value_to_json(m[e])}));
            j["modulusPoly"] = mp;
            break;
        }
    }
    return j;
}

namespace detail {

inline Int int_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_string()) return Int(j.get<std::string>());
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad integer: ") + e.what());
    }
    throw parse_error("expected an integer (number or decimal string)");
}

inline Rat rat_from_string(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception& e) {
        throw parse_error("bad rational '" + s + "': " + e.what());
    }
}

/// [[exponent, coefficient], ...] with coefficients in `cr`, any order.
inline std::vector<RingElem> coeff_pairs_from_json(const RingPtr& cr, const json& j) {
    if (!j.is_array()) throw parse_error("expected a list of [exponent, coefficient] pairs");
    std::vector<RingElem> coeffs;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) throw parse_error("expected [exponent, coefficient]");
        const Int e = int_from_json(pair[0]);
        if (e < 0 || e > 4096) throw parse_error("exponent out of range");
        const std::size_t ei = static_cast<std::size_t>(e.convert_to<long long>());
        if (coeffs.size() <= ei) coeffs.resize(ei + 1, ring_zero(cr));
        coeffs[ei] = coeffs[ei] + value_from_json(cr, pair[1]);
    }
    return coeffs;
}

inline json coeffs_to_pairs_json(const std::vector<RingElem>& coeffs) {
    json out = json::array();
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        if (!ring_is_zero(coeffs[e])) out.push_back(json::array({e, value_to_json(coeffs[e])}));
    return out;
}

} // namespace detail

inline RingPtr ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw parse_error("ring descriptor must have a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Integers") return ring_integers();
    if (kind == "Rationals") return ring_rationals();
    if (kind == "IntegersMod") {
        if (!j.contains("modulus")) throw parse_error("IntegersMod needs 'modulus'");
        return ring_integers_mod(detail::int_from_json(j.at("modulus")));
    }
    if (kind == "PolyRing") {
        if (!j.contains("base") || !j.contains("var")) throw parse_error("PolyRing needs 'base' and 'var'");
        return ring_poly(ring_from_json(j.at("base")), j.at("var").get<std::string>());
    }
    if (kind == "FractionField") {
        if (!j.contains("base")) throw parse_error("FractionField needs 'base'");
        return ring_fraction_field(ring_from_json(j.at("base")));
    }
    if (kind == "QuotientField") {
        if (!j.contains("base") || !j.contains("modulusPoly"))
            throw parse_error("QuotientField needs 'base' and 'modulusPoly'");
        RingPtr base = ring_from_json(j.at("base"));
        if (base->kind != RingKind::PolyRing) throw parse_error("QuotientField base must be a PolyRing");
        return ring_quotient_field(base, detail::coeff_pairs_from_json(base->base, j.at("modulusPoly")));
    }
    throw parse_error("unknown ring kind '" + kind + "'");
}

inline json value_to_json(const RingElem& x) {
    switch (x.ring->kind) {
        case RingKind::Integers: return std::get<Int>(x.v).str();
        case RingKind::Rationals: {
            const Rat& q = std::get<Rat>(x.v);
            return numerator(q).str() + "/" + denominator(q).str();
        }
        case RingKind::IntegersMod: return std::get<Int>(x.v).str();
        case RingKind::PolyRing:
        case RingKind::QuotientField: return detail::coeffs_to_pairs_json(std::get<UPoly>(x.v).c);
        case RingKind::FractionField: {
            const Frac& f = std::get<Frac>(x.v);
            json j;
            j["num"] = detail::coeffs_to_pairs_json(f.num.c);
            j["den"] = detail::coeffs_to_pairs_json(f.den.c);
            return j;
        }
    }
    throw internal_error("value_to_json: bad kind");
}

inline RingElem value_from_json(const RingPtr& r, const json& j) {
    switch (r->kind) {
        case RingKind::Integers: return RingElem(r, detail::int_from_json(j));
        case RingKind::Rationals: {
            if (j.is_number_integer()) return RingElem(r, Rat(j.get<long long>()));
            if (j.is_string()) return RingElem(r, detail::rat_from_string(j.get<std::string>()));
            throw parse_error("expected a rational as 'p/q' or integer");
        }
        case RingKind::IntegersMod: return ring_from_integer(r, detail::int_from_json(j));
        case RingKind::PolyRing: return poly_value(r, detail::coeff_pairs_from_json(r->base, j));
        case RingKind::QuotientField:
            return quotient_value(r, detail::coeff_pairs_from_json(coefficient_ring(r), j));
        case RingKind::FractionField: {
            const RingPtr cr = coefficient_ring(r);
            if (j.is_object()) {
                std::vector<RingElem> num = detail::coeff_pairs_from_json(cr, j.at("num"));
                std::vector<RingElem> den = j.contains("den")
                                                ? detail::coeff_pairs_from_json(cr, j.at("den"))
                                                : std::vector<RingElem>{ring_one(cr)};
                return fraction_value(r, std::move(num), std::move(den));
            }
            if (j.is_array())  // bare polynomial = fraction with denominator 1
                return fraction_value(r, detail::coeff_pairs_from_json(cr, j), {ring_one(cr)});
            throw parse_error("expected a fraction object {num, den} or a coefficient list");
        }
    }
    throw internal_error("value_from_json: bad kind");
}

// ---------------------------------------------------------------------------
// Algebra files
// ---------------------------------------------------------------------------

struct ParsedAlgebra {
    AlgPtr alg;
    std::vector<std::string> aliases;  // index-variable names for printing
};

inline std::vector<std::string> default_aliases(int n) {
    // a, b, c, ... for small ranks, matching the usual presentation
    if (n <= 26) {
        std::vector<std::string> v;
        for (int i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('a' + i)));
        return v;
    }
    return default_index_vars(n);
}

inline ParsedAlgebra algebra_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("algebra file must be a JSON object");
    RingPtr base = j.contains("base") ? ring_from_json(j.at("base")) : ring_integers();
    if (!j.contains("rank")) throw parse_error("algebra file needs 'rank'");
    const int rank = j.at("rank").get<int>();
    if (rank < 1) throw parse_error("rank must be >= 1");
    std::vector<std::string> names;
    if (j.contains("basisNames")) {
        for (const auto& s : j.at("basisNames")) names.push_back(s.get<std::string>());
        if (static_cast<int>(names.size()) != rank) throw parse_error("basisNames size != rank");
    }
    if (!j.contains("presentation")) throw parse_error("algebra file needs 'presentation'");
    const json& p = j.at("presentation");
    const std::string kind = p.at("kind").get<std::string>();

    ParsedAlgebra out;
    if (kind == "structure_constants") {
        const json& c = p.at("c");
        const std::size_t n = static_cast<std::size_t>(rank);
        if (!c.is_array() || c.size() != n) throw parse_error("'c' must be a rank^3 nested array");
        std::vector<RingElem> tensor;
        tensor.reserve(n * n * n);
        for (const auto& ci : c) {
            if (!ci.is_array() || ci.size() != n) throw parse_error("'c' must be a rank^3 nested array");
            for (const auto& cij : ci) {
                if (!cij.is_array() || cij.size() != n) throw parse_error("'c' must be a rank^3 nested array");
                for (const auto& v : cij) tensor.push_back(value_from_json(base, v));
            }
        }
        std::vector<RingElem> unit;
        for (const auto& v : p.at("unitCoords")) unit.push_back(value_from_json(base, v));
        if (names.empty())
            for (int i = 1; i <= rank; ++i) names.push_back("e" + std::to_string(i));
        out.alg = make_algebra(base, rank, names, std::move(tensor), std::move(unit));
    } else if (kind == "monic_quotient") {
        std::vector<RingElem> f = detail::coeff_pairs_from_json(base, p.at("poly"));
        const std::string var = p.contains("var") ? p.at("var").get<std::string>() : "t";
        out.alg = from_monic_quotient(base, std::move(f), var);
        if (static_cast<int>(out.alg->rank) != rank) throw parse_error("rank does not match the modulus degree");
        if (!names.empty()) {
            auto a = *out.alg;
            a.basis_names = names;
            out.alg = std::make_shared<FreeAlgebra>(std::move(a));
        }
    } else if (kind == "split") {
        out.alg = split_algebra(base, rank);
    } else if (kind == "jet") {
        out.alg = jet_algebra(base, rank);
    } else if (kind == "order") {
        if (base->kind != RingKind::Integers) throw parse_error("order presentation requires base Integers");
        const RingPtr Q = ring_rationals();
        std::vector<RingElem> ambient = detail::coeff_pairs_from_json(Q, p.at("ambientPoly"));
        const json& rowsJ = p.at("basisRows");
        const std::size_t n = static_cast<std::size_t>(rank);
        if (!rowsJ.is_array() || rowsJ.size() != n) throw parse_error("basisRows must be rank x rank");
        Mat<RingElem> rows(n, n, ring_zero(Q));
        for (std::size_t i = 0; i < n; ++i) {
            if (!rowsJ[i].is_array() || rowsJ[i].size() != n) throw parse_error("basisRows must be rank x rank");
            for (std::size_t jj = 0; jj < n; ++jj) rows.at(i, jj) = value_from_json(Q, rowsJ[i][jj]);
        }
        out.alg = from_order(ambient, rows, names);
    } else {
        throw parse_error("unknown presentation kind '" + kind + "'");
    }

    if (j.contains("variableAliases")) {
        for (const auto& s : j.at("variableAliases")) out.aliases.push_back(s.get<std::string>());
        if (static_cast<int>(out.aliases.size()) != rank) throw parse_error("variableAliases size != rank");
    } else {
        out.aliases = default_aliases(rank);
    }
    return out;
}

inline ParsedAlgebra algebra_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return algebra_from_json(j);
}

/// Serializes to the structure_constants presentation; re-parsing yields an
/// algebra with the identical structure tensor.
inline json algebra_to_json(const FreeAlgebra& a, const std::vector<std::string>& aliases = {}) {
    json j;
    j["base"] = ring_to_json(a.base);
    j["rank"] = a.rank;
    j["basisNames"] = a.basis_names;
    json c = json::array();
    const std::size_t n = static_cast<std::size_t>(a.rank);
    for (std::size_t i = 0; i < n; ++i) {
        json ci = json::array();
        for (std::size_t jj = 0; jj < n; ++jj) {
            json cij = json::array();
            for (std::size_t k = 0; k < n; ++k)
                cij.push_back(value_to_json(a.sc(static_cast<int>(i), static_cast<int>(jj), static_cast<int>(k))));
            ci.push_back(cij);
        }
        c.push_back(ci);
    }
    json unit = json::array();
    for (const auto& u : a.unit_coords) unit.push_back(value_to_json(u));
    j["presentation"] = json{{"kind", "structure_constants"}, {"c", c}, {"unitCoords", unit}};
    if (!aliases.empty()) j["variableAliases"] = aliases;
    return j;
}

// ---------------------------------------------------------------------------
// Search reports
// ---------------------------------------------------------------------------

/// Canonical report serialization: deterministic for fixed input and flags
/// (wall time deliberately excluded so reports are byte-stable across runs
/// and shard counts).
inline json report_to_json(const SearchReport& r) {
    json j;
    j["algebra"] = r.algebra_digest;
    json box;
    box["lo"] = r.box.lo;
    box["hi"] = r.box.hi;
    box["skipFirst"] = r.box.skip_first;
    j["box"] = box;
    j["firstVariableFree"] = r.first_variable_free;
    json hits = json::array();
    for (const auto& h : r.hits) {
        json hj;
        json cs = json::array();
        if (h.coord_values.empty())
            for (const auto& c : h.coords) cs.push_back(c.str());
        else
            for (const auto& c : h.coord_values) cs.push_back(ring_to_string(c));
        hj["coords"] = cs;
        hj["value"] = ring_to_string(h.value);
        hits.push_back(hj);
    }
    j["hits"] = hits;
    j["scanned"] = r.scanned;
    if (r.minimal_nonzero_abs_index) j["boxMinimumAbsIndex"] = r.minimal_nonzero_abs_index->str();
    return j;
}

inline std::string report_to_text(const SearchReport& r) {
    std::string out;
    out += "algebra " + r.algebra_digest + "\n";
    if (!r.box.lo.empty()) {
        out += "box";
        for (std::size_t i = 0; i < r.box.lo.size(); ++i)
            out += " [" + std::to_string(r.box.lo[i]) + "," + std::to_string(r.box.hi[i]) + "]";
        if (r.first_variable_free) out += " (x1 free)";
        out += "\n";
    } else if (r.first_variable_free) {
        out += "x1 free\n";
    }
    out += "scanned " + std::to_string(r.scanned) + "\n";
    out += "hits " + std::to_string(r.hits.size()) + "\n";
    for (const auto& h : r.hits) {
        out += "  (";
        if (h.coord_values.empty()) {
            for (std::size_t i = 0; i < h.coords.size(); ++i) out += (i ? "," : "") + h.coords[i].str();
        } else {
            for (std::size_t i = 0; i < h.coord_values.size(); ++i)
                out += (i ? "," : "") + ring_to_string(h.coord_values[i]);
        }
        out += ") -> " + ring_to_string(h.value) + "\n";
    }
    if (r.minimal_nonzero_abs_index)
        out += "box minimum |index| " + r.minimal_nonzero_abs_index->str() + "\n";
    return out;
}

} // namespace monogen
