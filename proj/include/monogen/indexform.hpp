#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "multipoly.hpp"

namespace monogen {

// ---------------------------------------------------------------------------
// The universal element theta = x_1 e_1 + ... + x_n e_n over the coordinate
// ring A[x_1..x_n], its matrix of coefficients, the local index form
// i(e_1..e_n) = det M, the universal minimal polynomial, and the k-generator
// minor systems.
// ---------------------------------------------------------------------------

struct UniversalContext {
    AlgPtr alg;
    PolyCtxPtr ctx;
    std::vector<MultiPoly> theta;  // coordinates of the universal element
};

inline std::vector<std::string> default_index_vars(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

inline UniversalContext make_universal_context(AlgPtr alg, std::vector<std::string> varNames = {}) {
    const int n = alg->rank;
    if (varNames.empty()) varNames = default_index_vars(n);
    if (static_cast<int>(varNames.size()) != n)
        throw structural_error("universal context needs one variable per basis element");
    PolyCtxPtr ctx = make_poly_context(alg->base, std::move(varNames));
    UniversalContext u;
    u.alg = std::move(alg);
    u.ctx = ctx;
    for (int i = 0; i < n; ++i) u.theta.push_back(MultiPoly::variable(ctx, i));
    return u;
}

inline MultiPoly lift_constant(const PolyCtxPtr& ctx, const RingElem& c) {
    return MultiPoly::constant(ctx, c);
}

/// Columns j = 0..n-1 hold the basis coordinates of theta^j; column 0 is the
/// coordinate vector of 1.
inline Mat<MultiPoly> coefficient_matrix(const UniversalContext& u) {
    const FreeAlgebra& A = *u.alg;
    const int n = A.rank;
    const MultiPoly zero = MultiPoly::zero(u.ctx);
    Mat<MultiPoly> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), zero);
    std::vector<MultiPoly> pw;
    pw.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) pw.push_back(lift_constant(u.ctx, A.unit_coords[static_cast<std::size_t>(k)]));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = pw[static_cast<std::size_t>(k)];
        if (j + 1 < n)
            pw = mul_coords(A, pw, u.theta, zero,
                            [&](const RingElem& c) { return lift_constant(u.ctx, c); });
    }
    return m;
}

struct IndexForm {
    MultiPoly poly;
    std::vector<std::string> basis_names;
    int expected_degree = 0;  // n(n-1)/2
    bool unit_is_first_basis_vector = false;
};

inline IndexForm local_index_form(const UniversalContext& u) {
    const FreeAlgebra& A = *u.alg;
    const int n = A.rank;
    Mat<MultiPoly> m = coefficient_matrix(u);
    const MultiPoly zero = MultiPoly::zero(u.ctx);
    const MultiPoly one = MultiPoly::from_integer(u.ctx, 1);
    IndexForm f;
    f.poly = berkowitz_det(m, zero, one);
    f.basis_names = A.basis_names;
    f.expected_degree = n * (n - 1) / 2;
    f.unit_is_first_basis_vector = A.unit_is_first;
    if (!f.poly.is_zero()) {
        auto [hom, deg] = poly_is_homogeneous(f.poly);
        if (!hom || deg != f.expected_degree)
            throw internal_error("index form is not homogeneous of degree n(n-1)/2");
        if (f.unit_is_first_basis_vector && f.poly.degree_in(0) != 0)
            throw internal_error("index form involves x1 although e1 = 1");
    }
    return f;
}

inline IndexForm local_index_form(AlgPtr alg, std::vector<std::string> varNames = {}) {
    return local_index_form(make_universal_context(std::move(alg), std::move(varNames)));
}

// ---------------------------------------------------------------------------
// Universal minimal polynomial m(t) = t^n + b_{n-1} t^{n-1} + ... + b_0
// ---------------------------------------------------------------------------

struct UniversalMinPoly {
    std::vector<MultiPoly> b;  // b[0] = b_0, ..., b[n-1] = b_{n-1}; leading 1 implicit
    int degree() const { return static_cast<int>(b.size()); }
};

inline UniversalMinPoly universal_min_poly(const UniversalContext& u) {
    const FreeAlgebra& A = *u.alg;
    const int n = A.rank;
    const MultiPoly zero = MultiPoly::zero(u.ctx);
    const MultiPoly one = MultiPoly::from_integer(u.ctx, 1);
    // multiplication-by-theta matrix over the coordinate ring
    Mat<MultiPoly> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), zero);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            MultiPoly acc = zero;
            for (int j = 0; j < n; ++j) {
                const RingElem& cjik = A.sc(j, i, k);
                if (!ring_is_zero(cjik))
                    acc = acc + u.theta[static_cast<std::size_t>(j)] * lift_constant(u.ctx, cjik);
            }
            m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = std::move(acc);
        }
    std::vector<MultiPoly> desc = berkowitz_charpoly(m, zero, one);  // descending, leading 1
    UniversalMinPoly out;
    for (int i = n; i >= 1; --i) out.b.push_back(desc[static_cast<std::size_t>(i)]);
    return out;
}

inline UniversalMinPoly universal_min_poly(AlgPtr alg, std::vector<std::string> varNames = {}) {
    return universal_min_poly(make_universal_context(std::move(alg), std::move(varNames)));
}

/// Substitutes theta into m(t) and reduces in B tensor A[x_I]; true iff the
/// result is the zero element.
inline bool min_poly_annihilates(const UniversalContext& u, const UniversalMinPoly& mp) {
    const FreeAlgebra& A = *u.alg;
    const int n = A.rank;
    const MultiPoly zero = MultiPoly::zero(u.ctx);
    auto lift = [&](const RingElem& c) { return lift_constant(u.ctx, c); };
    std::vector<MultiPoly> acc(static_cast<std::size_t>(n), zero);
    // Horner: acc = theta^n + b_{n-1} theta^{n-1} + ... + b_0, coordinatewise
    std::vector<MultiPoly> unit;
    for (int k = 0; k < n; ++k) unit.push_back(lift(A.unit_coords[static_cast<std::size_t>(k)]));
    acc = unit;  // leading coefficient 1
    for (int i = n - 1; i >= 0; --i) {
        acc = mul_coords(A, acc, u.theta, zero, lift);
        for (int k = 0; k < n; ++k)
            acc[static_cast<std::size_t>(k)] =
                acc[static_cast<std::size_t>(k)] + mp.b[static_cast<std::size_t>(i)] * unit[static_cast<std::size_t>(k)];
    }
    for (const auto& p : acc)
        if (!p.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Concrete monogenicity tests
// ---------------------------------------------------------------------------

inline RingElem index_value(const IndexForm& f, const std::vector<RingElem>& coords) {
    return poly_evaluate(f.poly, coords);
}

inline RingElem index_value(AlgPtr alg, const std::vector<RingElem>& coords) {
    return index_value(local_index_form(std::move(alg)), coords);
}

inline bool is_monogenerator(const IndexForm& f, const std::vector<RingElem>& coords) {
    return ring_is_unit(index_value(f, coords));
}

inline bool is_monogenerator(AlgPtr alg, const std::vector<RingElem>& coords) {
    return is_monogenerator(local_index_form(std::move(alg)), coords);
}

// ---------------------------------------------------------------------------
// k-generator systems
// ---------------------------------------------------------------------------

struct KGenSystem {
    int k = 1;
    AlgPtr alg;
    PolyCtxPtr ctx;                                  // variables x_{ij}, j-th generator block
    Mat<MultiPoly> matrix;                           // n rows, n^k columns
    std::vector<std::vector<int>> column_monomials;  // exponent tuples (r_1..r_k), lex ascending
};

inline unsigned long long binomial_count(unsigned long long n, unsigned long long k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        // guard against overflow: saturate far above any usable threshold
        if (r > (1ull << 62) / (n - k + i)) return ~0ull;
        r = r * (n - k + i) / i;
    }
    return r;
}

constexpr unsigned long long kMinorGuard = 1000000;

/// Variable names for the k copies of the coordinate block: basis aliases
/// suffixed with the generator number.
inline std::vector<std::string> k_gen_vars(const std::vector<std::string>& baseVars, int k) {
    std::vector<std::string> v;
    for (int j = 1; j <= k; ++j)
        for (const auto& name : baseVars) v.push_back(name + std::to_string(j));
    return v;
}

inline KGenSystem k_gen_system(AlgPtr alg, int k, std::vector<std::string> baseVars = {}, bool force = false) {
    if (k < 1) throw structural_error("k_gen_system: k must be >= 1");
    const FreeAlgebra& A = *alg;
    const int n = A.rank;
    unsigned long long ncols = 1;
    for (int j = 0; j < k; ++j) {
        ncols *= static_cast<unsigned long long>(n);
        if (ncols > (1ull << 40)) throw resource_error("k_gen_system: too many columns", ncols);
    }
    const unsigned long long minors = binomial_count(ncols, static_cast<unsigned long long>(n));
    if (!force && minors > kMinorGuard)
        throw resource_error("k_gen_system would require " + std::to_string(minors) +
                                 " minors (guard " + std::to_string(kMinorGuard) + "); pass force to override",
                             minors);

    if (baseVars.empty()) baseVars = default_index_vars(n);
    PolyCtxPtr ctx = make_poly_context(A.base, k_gen_vars(baseVars, k));

    // universal generators theta_j = sum_i x_{ij} e_i
    std::vector<std::vector<MultiPoly>> theta;
    for (int j = 0; j < k; ++j) {
        std::vector<MultiPoly> t;
        for (int i = 0; i < n; ++i) t.push_back(MultiPoly::variable(ctx, j * n + i));
        theta.push_back(std::move(t));
    }

    const MultiPoly zero = MultiPoly::zero(ctx);
    auto lift = [&](const RingElem& c) { return MultiPoly::constant(ctx, c); };

    // powers theta_j^r for r = 0..n-1
    std::vector<std::vector<std::vector<MultiPoly>>> pw(static_cast<std::size_t>(k));
    std::vector<MultiPoly> unitLift;
    for (int t = 0; t < n; ++t) unitLift.push_back(lift(A.unit_coords[static_cast<std::size_t>(t)]));
    for (int j = 0; j < k; ++j) {
        pw[static_cast<std::size_t>(j)].push_back(unitLift);
        for (int r = 1; r < n; ++r)
            pw[static_cast<std::size_t>(j)].push_back(
                mul_coords(A, pw[static_cast<std::size_t>(j)].back(), theta[static_cast<std::size_t>(j)], zero, lift));
    }

    KGenSystem sys;
    sys.k = k;
    sys.alg = alg;
    sys.ctx = ctx;
    sys.matrix = Mat<MultiPoly>(static_cast<std::size_t>(n), static_cast<std::size_t>(ncols), zero);

    // columns in lexicographic order of (r_1, ..., r_k)
    std::vector<int> r(static_cast<std::size_t>(k), 0);
    for (unsigned long long col = 0; col < ncols; ++col) {
        std::vector<MultiPoly> prod = unitLift;
        for (int j = 0; j < k; ++j)
            if (r[static_cast<std::size_t>(j)] > 0)
                prod = mul_coords(A, prod, pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(r[static_cast<std::size_t>(j)])],
                                  zero, lift);
        for (int t = 0; t < n; ++t)
            sys.matrix.at(static_cast<std::size_t>(t), static_cast<std::size_t>(col)) = prod[static_cast<std::size_t>(t)];
        sys.column_monomials.push_back(r);
        // increment the tuple, last coordinate fastest
        for (int j = k - 1; j >= 0; --j) {
            if (++r[static_cast<std::size_t>(j)] < n) break;
            r[static_cast<std::size_t>(j)] = 0;
        }
    }
    return sys;
}

/// Streams (columnSubset, det(M_C)) for all n-column subsets in lexicographic
/// order; `fn` returns false to stop early.
template <class Fn>
void for_each_minor(const KGenSystem& sys, Fn fn) {
    const std::size_t n = sys.matrix.rows();
    const std::size_t ncols = sys.matrix.cols();
    const MultiPoly zero = MultiPoly::zero(sys.ctx);
    const MultiPoly one = MultiPoly::from_integer(sys.ctx, 1);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        Mat<MultiPoly> sub(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sub.at(i, j) = sys.matrix.at(i, idx[j]);
        if (!fn(idx, berkowitz_det(sub, zero, one))) return;
        // next lexicographic subset
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (idx[i] + (n - i) < ncols) {
                ++idx[i];
                for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

inline std::vector<std::pair<std::vector<std::size_t>, MultiPoly>> all_minors(const KGenSystem& sys) {
    std::vector<std::pair<std::vector<std::size_t>, MultiPoly>> out;
    for_each_minor(sys, [&](const std::vector<std::size_t>& idx, MultiPoly det) {
        out.push_back({idx, std::move(det)});
        return true;
    });
    return out;
}

/// True iff some n x n minor of the evaluated k-generator matrix is a unit;
/// evaluation short-circuits on the first unit minor.
inline bool is_k_generating(const AlgPtr& alg, const std::vector<std::vector<RingElem>>& tuples,
                            std::vector<std::size_t>* witness = nullptr) {
    const FreeAlgebra& A = *alg;
    const int n = A.rank;
    const int k = static_cast<int>(tuples.size());
    if (k < 1) throw structural_error("is_k_generating: empty tuple");
    for (const auto& t : tuples)
        if (static_cast<int>(t.size()) != n) throw structural_error("is_k_generating: wrong coordinate count");

    const RingElem zero = ring_zero(A.base), one = ring_one(A.base);
    // numeric powers of each generator
    std::vector<std::vector<std::vector<RingElem>>> pw(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        pw[static_cast<std::size_t>(j)].push_back(A.unit_coords);
        for (int r = 1; r < n; ++r)
            pw[static_cast<std::size_t>(j)].push_back(mul_coords(
                A, pw[static_cast<std::size_t>(j)].back(), tuples[static_cast<std::size_t>(j)], zero,
                [](const RingElem& c) { return c; }));
    }
    unsigned long long ncols = 1;
    for (int j = 0; j < k; ++j) ncols *= static_cast<unsigned long long>(n);
    Mat<RingElem> m(static_cast<std::size_t>(n), static_cast<std::size_t>(ncols), zero);
    std::vector<int> r(static_cast<std::size_t>(k), 0);
    for (unsigned long long col = 0; col < ncols; ++col) {
        std::vector<RingElem> prod = A.unit_coords;
        for (int j = 0; j < k; ++j)
            if (r[static_cast<std::size_t>(j)] > 0)
                prod = mul_coords(A, prod, pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(r[static_cast<std::size_t>(j)])],
                                  zero, [](const RingElem& c) { return c; });
        for (int t = 0; t < n; ++t)
            m.at(static_cast<std::size_t>(t), static_cast<std::size_t>(col)) = prod[static_cast<std::size_t>(t)];
        for (int j = k - 1; j >= 0; --j) {
            if (++r[static_cast<std::size_t>(j)] < n) break;
            r[static_cast<std::size_t>(j)] = 0;
        }
    }

    // lexicographic n-subsets of columns, short-circuit on the first unit minor
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t un = static_cast<std::size_t>(n);
    while (true) {
        Mat<RingElem> sub(un, un, zero);
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = 0; j < un; ++j) sub.at(i, j) = m.at(i, idx[j]);
        RingElem det = berkowitz_det(sub, zero, one);
        bool unitDet = false;
        try {
            unitDet = ring_is_unit(det);
        } catch (const unsupported_error&) {
            unitDet = false;  // undecidable minors are skipped; some other minor must witness
        }
        if (unitDet) {
            if (witness) *witness = idx;
            return true;
        }
        std::size_t i = un;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (idx[i] + (un - i) < static_cast<std::size_t>(ncols)) {
                ++idx[i];
                for (std::size_t j = i + 1; j < un; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return false;
    }
}

// ---------------------------------------------------------------------------
// Change-of-basis transport and the discriminant identity
// ---------------------------------------------------------------------------

struct BasisTransportResult {
    IndexForm new_form;
    RingElem unit_ratio;  // det(P); i_old(P^T x) = det(P) * i_new(x) exactly
};

/// Computes the index form in the basis etilde = P e and verifies the exact
/// identity det(P) * i_new(x) = i_old(P^T x).
inline BasisTransportResult change_basis_transport(const AlgPtr& alg, const Mat<RingElem>& p,
                                                   std::vector<std::string> varNames = {}) {
    const FreeAlgebra& A = *alg;
    const int n = A.rank;
    BasisChange bc = change_basis(A, p);
    UniversalContext uold = make_universal_context(alg, varNames);
    UniversalContext unew = make_universal_context(bc.algebra, std::move(varNames));
    IndexForm fold = local_index_form(uold);
    IndexForm fnew = local_index_form(unew);

    // substitution x_j -> sum_i P[i][j] x_i  (old coordinates of sum x~_i etilde_i)
    std::vector<std::pair<int, MultiPoly>> subs;
    for (int j = 0; j < n; ++j) {
        MultiPoly s = MultiPoly::zero(unew.ctx);
        for (int i = 0; i < n; ++i) {
            const RingElem& pij = p.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (!ring_is_zero(pij))
                s = s + MultiPoly::variable(unew.ctx, i).scaled(pij);
        }
        subs.push_back({j, std::move(s)});
    }
    MultiPoly rhs = poly_substitute(fold.poly, subs);
    RingElem detP = berkowitz_det(p, ring_zero(A.base), ring_one(A.base));
    MultiPoly lhs = fnew.poly.scaled(detP);
    if (lhs != rhs)
        throw internal_error("change of basis did not scale the index form by det(P)");
    return BasisTransportResult{std::move(fnew), std::move(detP)};
}

/// Exact polynomial identity det[tr(theta^{i+j-2})] = i(x)^2 * disc(B/A).
inline bool discriminant_identity_check(const AlgPtr& alg) {
    const FreeAlgebra& A = *alg;
    const int n = A.rank;
    UniversalContext u = make_universal_context(alg);
    const MultiPoly zero = MultiPoly::zero(u.ctx);
    const MultiPoly one = MultiPoly::from_integer(u.ctx, 1);
    auto lift = [&](const RingElem& c) { return lift_constant(u.ctx, c); };

    // traces of theta^m for m = 0 .. 2n-2
    std::vector<RingElem> trE(static_cast<std::size_t>(n), ring_zero(A.base));
    for (int j = 0; j < n; ++j) {
        RingElem tj = ring_zero(A.base);
        for (int k = 0; k < n; ++k) tj = tj + A.sc(j, k, k);
        trE[static_cast<std::size_t>(j)] = std::move(tj);
    }
    std::vector<MultiPoly> cur;
    for (int k = 0; k < n; ++k) cur.push_back(lift(A.unit_coords[static_cast<std::size_t>(k)]));
    std::vector<MultiPoly> traces;
    for (int m = 0; m <= 2 * n - 2; ++m) {
        MultiPoly tr = zero;
        for (int j = 0; j < n; ++j)
            if (!ring_is_zero(trE[static_cast<std::size_t>(j)]))
                tr = tr + cur[static_cast<std::size_t>(j)] * lift(trE[static_cast<std::size_t>(j)]);
        traces.push_back(std::move(tr));
        if (m < 2 * n - 2) cur = mul_coords(A, cur, u.theta, zero, lift);
    }

    Mat<MultiPoly> gram(static_cast<std::size_t>(n), static_cast<std::size_t>(n), zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = traces[static_cast<std::size_t>(i + j)];
    MultiPoly lhs = berkowitz_det(gram, zero, one);

    IndexForm f = local_index_form(u);
    MultiPoly rhs = f.poly * f.poly * lift(trace_form_disc(A));
    return lhs == rhs;
}

} // namespace monogen
