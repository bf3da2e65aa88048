#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "ring.hpp"

namespace monogen {

// ---------------------------------------------------------------------------
// Finite free rank-n algebras B over a base ring A, presented by the
// structure tensor c[i][j][k] with e_i e_j = sum_k c[i][j][k] e_k and the
// coordinates of 1 in the basis.  Immutable after construction.
// ---------------------------------------------------------------------------

struct FreeAlgebra {
    RingPtr base;
    int rank = 0;
    std::vector<std::string> basis_names;
    std::vector<RingElem> c;            // flattened (i*n + j)*n + k
    std::vector<RingElem> unit_coords;  // 1 = sum_k unit_coords[k] e_k
    bool unit_is_first = false;         // unit_coords == (1, 0, ..., 0)

    const RingElem& sc(int i, int j, int k) const {
        return c[static_cast<std::size_t>((i * rank + j) * rank + k)];
    }
};

using AlgPtr = std::shared_ptr<const FreeAlgebra>;

struct AlgebraElement {
    AlgPtr alg;
    std::vector<RingElem> coords;
};

/// Raised by from_order when the candidate basis is not multiplicatively closed.
struct not_an_order_error : domain_error {
    not_an_order_error(const std::string& what, int i, int j) : domain_error(what), i(i), j(j) {}
    int i, j;  // 1-based indices of the offending product e_i * e_j
};

namespace detail {

inline bool unit_coords_are_e1(const std::vector<RingElem>& u) {
    if (u.empty() || !ring_is_one(u[0])) return false;
    for (std::size_t k = 1; k < u.size(); ++k)
        if (!ring_is_zero(u[k])) return false;
    return true;
}

} // namespace detail

inline AlgPtr make_algebra(RingPtr base, int rank, std::vector<std::string> basisNames,
                           std::vector<RingElem> structure, std::vector<RingElem> unitCoords) {
    if (rank < 1) throw structural_error("algebra rank must be >= 1");
    const std::size_t n = static_cast<std::size_t>(rank);
    if (basisNames.size() != n) throw structural_error("basisNames size != rank");
    if (structure.size() != n * n * n) throw structural_error("structure tensor size != rank^3");
    if (unitCoords.size() != n) throw structural_error("unitCoords size != rank");
    for (const auto& x : structure)
        if (!ring_equal(x.ring, base)) throw structural_error("structure constant outside the base ring");
    for (const auto& x : unitCoords)
        if (!ring_equal(x.ring, base)) throw structural_error("unit coordinate outside the base ring");
    auto a = std::make_shared<FreeAlgebra>();
    a->base = std::move(base);
    a->rank = rank;
    a->basis_names = std::move(basisNames);
    a->c = std::move(structure);
    a->unit_coords = std::move(unitCoords);
    a->unit_is_first = detail::unit_coords_are_e1(a->unit_coords);
    return a;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
    std::string identity;  // "commutativity" | "associativity" | "unit"
    int i = 0, j = 0, k = 0;  // 1-based indices of the violated instance
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
};

/// Generic coordinate product under the structure tensor.  `lift` embeds a
/// structure constant into the scalar type T (identity for RingElem,
/// constant-polynomial embedding for MultiPoly coordinates).
template <class T, class Lift>
std::vector<T> mul_coords(const FreeAlgebra& A, const std::vector<T>& x, const std::vector<T>& y,
                          const T& zero, Lift lift) {
    const int n = A.rank;
    std::vector<T> z(static_cast<std::size_t>(n), zero);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            T xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            for (int k = 0; k < n; ++k) {
                const RingElem& cijk = A.sc(i, j, k);
                if (ring_is_zero(cijk)) continue;
                z[static_cast<std::size_t>(k)] = z[static_cast<std::size_t>(k)] + xy * lift(cijk);
            }
        }
    }
    return z;
}

inline ValidationReport validate(const FreeAlgebra& A) {
    ValidationReport rep;
    const int n = A.rank;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!payload_equal(A.sc(i, j, k), A.sc(j, i, k)))
                    rep.issues.push_back({"commutativity", i + 1, j + 1, k + 1,
                                          "c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                              std::to_string(k + 1) + ") != c(" + std::to_string(j + 1) + "," +
                                              std::to_string(i + 1) + "," + std::to_string(k + 1) + ")"});
    // (e_i e_j) e_l == e_i (e_j e_l), componentwise
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                bool ok = true;
                for (int k = 0; k < n && ok; ++k) {
                    RingElem lhs = ring_zero(A.base), rhs = ring_zero(A.base);
                    for (int m = 0; m < n; ++m) {
                        lhs = lhs + A.sc(i, j, m) * A.sc(m, l, k);
                        rhs = rhs + A.sc(j, l, m) * A.sc(i, m, k);
                    }
                    ok = payload_equal(lhs, rhs);
                }
                if (!ok)
                    rep.issues.push_back({"associativity", i + 1, j + 1, l + 1,
                                          "(e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) +
                                              ") e" + std::to_string(l + 1) + " != e" + std::to_string(i + 1) +
                                              " (e" + std::to_string(j + 1) + " e" + std::to_string(l + 1) + ")"});
            }
    // 1 * e_i == e_i
    for (int i = 0; i < n; ++i) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            RingElem lhs = ring_zero(A.base);
            for (int m = 0; m < n; ++m) lhs = lhs + A.unit_coords[static_cast<std::size_t>(m)] * A.sc(m, i, k);
            ok = payload_equal(lhs, k == i ? ring_one(A.base) : ring_zero(A.base));
        }
        if (!ok)
            rep.issues.push_back({"unit", i + 1, 0, 0, "1 * e" + std::to_string(i + 1) + " != e" + std::to_string(i + 1)});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Constructors for the presentations used in practice
// ---------------------------------------------------------------------------

/// A[t]/(f) with the power basis 1, t, ..., t^{n-1}; `f` is given by ascending
/// coefficients over the base and must be monic of degree n >= 1.
inline AlgPtr from_monic_quotient(const RingPtr& base, std::vector<RingElem> f, const std::string& varName) {
    while (!f.empty() && ring_is_zero(f.back())) f.pop_back();
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1) throw structural_error("monic quotient modulus must have degree >= 1");
    if (!ring_is_one(f.back())) throw structural_error("monic quotient modulus must be monic");
    for (const auto& x : f)
        if (!ring_equal(x.ring, base)) throw structural_error("modulus coefficient outside the base ring");

    const std::size_t un = static_cast<std::size_t>(n);
    // powers t^m for m = 0 .. 2n-2, reduced mod f
    std::vector<std::vector<RingElem>> pow(2 * un - 1, std::vector<RingElem>(un, ring_zero(base)));
    pow[0][0] = ring_one(base);
    for (std::size_t m = 1; m < 2 * un - 1; ++m) {
        // shift previous power by t, then reduce the overflow via t^n = -(f_0 + ... + f_{n-1} t^{n-1})
        RingElem top = pow[m - 1][un - 1];
        for (std::size_t k = un - 1; k > 0; --k) pow[m][k] = pow[m - 1][k - 1];
        pow[m][0] = ring_zero(base);
        if (!ring_is_zero(top))
            for (std::size_t k = 0; k < un; ++k) pow[m][k] = pow[m][k] - top * f[k];
    }

    std::vector<RingElem> c(un * un * un, ring_zero(base));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j)
            for (std::size_t k = 0; k < un; ++k) c[(i * un + j) * un + k] = pow[i + j][k];

    std::vector<std::string> names{"1"};
    for (int i = 1; i < n; ++i)
        names.push_back(i == 1 ? varName : varName + "^" + std::to_string(i));
    std::vector<RingElem> unit(un, ring_zero(base));
    unit[0] = ring_one(base);
    return make_algebra(base, n, std::move(names), std::move(c), std::move(unit));
}

/// A^n with the idempotent basis: e_i e_j = delta_ij e_i, unit (1, ..., 1).
inline AlgPtr split_algebra(const RingPtr& base, int n) {
    if (n < 1) throw structural_error("split algebra rank must be >= 1");
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<RingElem> c(un * un * un, ring_zero(base));
    for (std::size_t i = 0; i < un; ++i) c[(i * un + i) * un + i] = ring_one(base);
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
    std::vector<RingElem> unit(un, ring_one(base));
    return make_algebra(base, n, std::move(names), std::move(c), std::move(unit));
}

/// A[eps]/eps^n with basis 1, eps, ..., eps^{n-1}.
inline AlgPtr jet_algebra(const RingPtr& base, int n) {
    if (n < 1) throw structural_error("jet algebra rank must be >= 1");
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<RingElem> c(un * un * un, ring_zero(base));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j)
            if (i + j < un) c[(i * un + j) * un + (i + j)] = ring_one(base);
    std::vector<std::string> names{"1"};
    for (int i = 1; i < n; ++i) names.push_back(i == 1 ? "eps" : "eps^" + std::to_string(i));
    std::vector<RingElem> unit(un, ring_zero(base));
    unit[0] = ring_one(base);
    return make_algebra(base, n, std::move(names), std::move(c), std::move(unit));
}

/// Order in QQ[t]/(ambient): row i of `basisRows` gives the power-basis
/// coordinates of the i-th basis element (row 0 must represent 1).  Structure
/// constants are computed by exact rational linear algebra and must all be
/// integers; otherwise the lattice is not multiplicatively closed and
/// not_an_order_error is raised citing the offending product.
inline AlgPtr from_order(const std::vector<RingElem>& ambientMonicQQ, const Mat<RingElem>& basisRows,
                         std::vector<std::string> basisNames = {}) {
    const RingPtr Q = ring_rationals();
    const RingPtr Z = ring_integers();
    std::vector<RingElem> f = ambientMonicQQ;
    while (!f.empty() && ring_is_zero(f.back())) f.pop_back();
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1 || !ring_is_one(f.back())) throw structural_error("ambient polynomial must be monic of degree >= 1");
    const std::size_t un = static_cast<std::size_t>(n);
    if (basisRows.rows() != un || basisRows.cols() != un)
        throw structural_error("basisRows must be rank x rank");
    for (std::size_t j = 0; j < un; ++j)
        if (!payload_equal(basisRows.at(0, j), j == 0 ? ring_one(Q) : ring_zero(Q)))
            throw structural_error("first basis row must represent 1");

    // multiply two power-basis coordinate vectors mod f
    auto mul_mod = [&](const std::vector<RingElem>& x, const std::vector<RingElem>& y) {
        std::vector<RingElem> prod(2 * un - 1, ring_zero(Q));
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = 0; j < un; ++j) prod[i + j] = prod[i + j] + x[i] * y[j];
        for (std::size_t d = 2 * un - 2; d >= un; --d) {
            RingElem top = prod[d];
            if (!ring_is_zero(top))
                for (std::size_t k = 0; k < un; ++k) prod[d - un + k] = prod[d - un + k] - top * f[k];
            prod[d] = ring_zero(Q);
        }
        prod.resize(un);
        return prod;
    };

    const Mat<RingElem> wt = basisRows.transposed();  // solve W^T y = v for omega-basis coords
    auto inv = [](const RingElem& x) { return ring_inverse(x); };

    std::vector<RingElem> c(un * un * un, ring_zero(Z));
    for (std::size_t i = 0; i < un; ++i) {
        std::vector<RingElem> wi(basisRows.cols(), ring_zero(Q));
        for (std::size_t t = 0; t < un; ++t) wi[t] = basisRows.at(i, t);
        for (std::size_t j = i; j < un; ++j) {
            std::vector<RingElem> wj(basisRows.cols(), ring_zero(Q));
            for (std::size_t t = 0; t < un; ++t) wj[t] = basisRows.at(j, t);
            std::vector<RingElem> prod = mul_mod(wi, wj);
            auto sol = solve_field(wt, prod, ring_zero(Q), inv);
            if (!sol) throw structural_error("basisRows is not invertible over QQ");
            for (std::size_t k = 0; k < un; ++k) {
                const Rat& q = std::get<Rat>((*sol)[k].v);
                if (denominator(q) != 1)
                    throw not_an_order_error(
                        "not an order w.r.t. this basis: e" + std::to_string(i + 1) + "*e" +
                            std::to_string(j + 1) + " has non-integral coordinate " + ring_to_string((*sol)[k]),
                        static_cast<int>(i + 1), static_cast<int>(j + 1));
                RingElem z(Z, numerator(q));
                c[(i * un + j) * un + k] = z;
                c[(j * un + i) * un + k] = std::move(z);
            }
        }
    }

    if (basisNames.empty())
        for (int i = 1; i <= n; ++i) basisNames.push_back("w" + std::to_string(i));
    std::vector<RingElem> unit(un, ring_zero(Z));
    unit[0] = ring_one(Z);
    return make_algebra(Z, n, std::move(basisNames), std::move(c), std::move(unit));
}

/// Block product with componentwise multiplication; unit (1, 1).
inline AlgPtr product_algebra(const FreeAlgebra& a1, const FreeAlgebra& a2) {
    if (!ring_equal(a1.base, a2.base)) throw structural_error("product_algebra: different base rings");
    const int n1 = a1.rank, n2 = a2.rank, n = n1 + n2;
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<RingElem> c(un * un * un, ring_zero(a1.base));
    auto put = [&](int i, int j, int k, const RingElem& v) { c[(static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)) * un + static_cast<std::size_t>(k)] = v; };
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            for (int k = 0; k < n1; ++k) put(i, j, k, a1.sc(i, j, k));
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n2; ++k) put(n1 + i, n1 + j, n1 + k, a2.sc(i, j, k));
    std::vector<std::string> names;
    for (const auto& s : a1.basis_names) names.push_back(s + ".1");
    for (const auto& s : a2.basis_names) names.push_back(s + ".2");
    std::vector<RingElem> unit;
    unit.insert(unit.end(), a1.unit_coords.begin(), a1.unit_coords.end());
    unit.insert(unit.end(), a2.unit_coords.begin(), a2.unit_coords.end());
    return make_algebra(a1.base, n, std::move(names), std::move(c), std::move(unit));
}

/// Entrywise image of the structure tensor under a base-ring map.
inline AlgPtr base_change(const FreeAlgebra& a, const RingHom& f) {
    if (!ring_equal(a.base, f.source())) throw structural_error("base_change: map does not start at the base ring");
    std::vector<RingElem> c;
    c.reserve(a.c.size());
    for (const auto& x : a.c) c.push_back(f(x));
    std::vector<RingElem> unit;
    unit.reserve(a.unit_coords.size());
    for (const auto& x : a.unit_coords) unit.push_back(f(x));
    return make_algebra(f.target(), a.rank, a.basis_names, std::move(c), std::move(unit));
}

// ---------------------------------------------------------------------------
// Change of basis.  Rows of P are the new basis vectors in old coordinates
// (etilde = P e); coordinates of elements transform by the inverse transpose.
// ---------------------------------------------------------------------------

struct BasisChange {
    AlgPtr algebra;
    Mat<RingElem> P;     // rows = new basis in old coordinates
    Mat<RingElem> Pinv;  // P^{-1}, exact over the base ring

    /// Old coordinates -> new coordinates: w = (P^T)^{-1} v = (P^{-1})^T v.
    std::vector<RingElem> transport(const std::vector<RingElem>& v) const {
        const std::size_t n = Pinv.rows();
        std::vector<RingElem> w(n, ring_zero(algebra->base));
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k) w[l] = w[l] + Pinv.at(k, l) * v[k];
        return w;
    }
};

inline BasisChange change_basis(const FreeAlgebra& a, const Mat<RingElem>& p) {
    const std::size_t n = static_cast<std::size_t>(a.rank);
    if (p.rows() != n || p.cols() != n) throw structural_error("change_basis: P must be rank x rank");
    const RingElem zero = ring_zero(a.base), one = ring_one(a.base);
    auto pinv = inverse_over_ring(
        p, zero, one, [](const RingElem& x) { return ring_is_unit(x); },
        [](const RingElem& x) { return ring_inverse(x); });
    if (!pinv) throw domain_error("change_basis: det(P) is not a unit of the base ring");

    // c~(i,j,l) = sum_{a,b,k} P[i][a] P[j][b] c(a,b,k) Pinv[k][l]
    std::vector<RingElem> ct(n * n * n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<RingElem> prod(n, zero);  // e-coords of etilde_i * etilde_j
            for (std::size_t ia = 0; ia < n; ++ia) {
                if (ring_is_zero(p.at(i, ia))) continue;
                for (std::size_t ib = 0; ib < n; ++ib) {
                    if (ring_is_zero(p.at(j, ib))) continue;
                    RingElem f = p.at(i, ia) * p.at(j, ib);
                    for (std::size_t k = 0; k < n; ++k) {
                        const RingElem& cabk = a.sc(static_cast<int>(ia), static_cast<int>(ib), static_cast<int>(k));
                        if (!ring_is_zero(cabk)) prod[k] = prod[k] + f * cabk;
                    }
                }
            }
            for (std::size_t l = 0; l < n; ++l) {
                RingElem acc = zero;
                for (std::size_t k = 0; k < n; ++k) acc = acc + prod[k] * pinv->at(k, l);
                ct[(i * n + j) * n + l] = std::move(acc);
            }
        }

    std::vector<RingElem> unit(n, zero);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k)
            unit[l] = unit[l] + a.unit_coords[k] * pinv->at(k, l);

    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("f" + std::to_string(i + 1));
    BasisChange out;
    out.algebra = make_algebra(a.base, a.rank, std::move(names), std::move(ct), std::move(unit));
    out.P = p;
    out.Pinv = *pinv;
    return out;
}

// ---------------------------------------------------------------------------
// Element operations
// ---------------------------------------------------------------------------

inline AlgebraElement element(AlgPtr alg, std::vector<RingElem> coords) {
    if (static_cast<int>(coords.size()) != alg->rank) throw structural_error("element: wrong coordinate count");
    for (const auto& x : coords)
        if (!ring_equal(x.ring, alg->base)) throw structural_error("element: coordinate outside the base ring");
    return AlgebraElement{std::move(alg), std::move(coords)};
}

inline AlgebraElement element_from_integers(AlgPtr alg, const std::vector<Int>& coords) {
    std::vector<RingElem> c;
    c.reserve(coords.size());
    for (const auto& v : coords) c.push_back(ring_from_integer(alg->base, v));
    return element(std::move(alg), std::move(c));
}

inline bool same_algebra(const FreeAlgebra& a, const FreeAlgebra& b) {
    if (&a == &b) return true;
    if (a.rank != b.rank || !ring_equal(a.base, b.base)) return false;
    for (std::size_t t = 0; t < a.c.size(); ++t)
        if (!payload_equal(a.c[t], b.c[t])) return false;
    for (std::size_t t = 0; t < a.unit_coords.size(); ++t)
        if (!payload_equal(a.unit_coords[t], b.unit_coords[t])) return false;
    return true;
}

inline AlgebraElement elem_mul(const AlgebraElement& x, const AlgebraElement& y) {
    if (!same_algebra(*x.alg, *y.alg)) throw structural_error("elem_mul: elements of different algebras");
    auto z = mul_coords(*x.alg, x.coords, y.coords, ring_zero(x.alg->base),
                        [](const RingElem& c) { return c; });
    return AlgebraElement{x.alg, std::move(z)};
}

inline AlgebraElement elem_add(const AlgebraElement& x, const AlgebraElement& y) {
    if (!same_algebra(*x.alg, *y.alg)) throw structural_error("elem_add: elements of different algebras");
    std::vector<RingElem> z;
    z.reserve(x.coords.size());
    for (std::size_t k = 0; k < x.coords.size(); ++k) z.push_back(x.coords[k] + y.coords[k]);
    return AlgebraElement{x.alg, std::move(z)};
}

inline AlgebraElement elem_one(AlgPtr alg) { return AlgebraElement{alg, alg->unit_coords}; }

/// Matrix of multiplication by x: column i holds the basis coordinates of x * e_i.
inline Mat<RingElem> mult_matrix(const FreeAlgebra& a, const std::vector<RingElem>& coords) {
    const int n = a.rank;
    Mat<RingElem> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ring_zero(a.base));
    // entry (k, i) = coefficient of e_k in x * e_i = sum_j x_j c(j, i, k)
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            RingElem acc = ring_zero(a.base);
            for (int j = 0; j < n; ++j) {
                const RingElem& cjik = a.sc(j, i, k);
                if (!ring_is_zero(cjik)) acc = acc + coords[static_cast<std::size_t>(j)] * cjik;
            }
            m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = std::move(acc);
        }
    return m;
}

inline RingElem trace(const FreeAlgebra& a, const std::vector<RingElem>& coords) {
    RingElem t = ring_zero(a.base);
    // tr(x) = sum_j x_j tr(e_j .), with tr(e_j .) = sum_k c(j, k, k)
    for (int j = 0; j < a.rank; ++j) {
        RingElem tj = ring_zero(a.base);
        for (int k = 0; k < a.rank; ++k) tj = tj + a.sc(j, k, k);
        t = t + coords[static_cast<std::size_t>(j)] * tj;
    }
    return t;
}

/// Monic univariate polynomial over the base, ascending coefficients.
struct MonicPoly {
    std::vector<RingElem> coeffs;  // size n+1, coeffs[n] = 1
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// The canonical monic degree-n annihilator det(t I - mult_matrix(x)),
/// computed division-free.
inline MonicPoly min_poly_element(const FreeAlgebra& a, const std::vector<RingElem>& coords) {
    Mat<RingElem> m = mult_matrix(a, coords);
    std::vector<RingElem> desc = berkowitz_charpoly(m, ring_zero(a.base), ring_one(a.base));
    std::vector<RingElem> asc(desc.rbegin(), desc.rend());
    return MonicPoly{std::move(asc)};
}

/// Evaluate a base-coefficient polynomial at an algebra element.
inline AlgebraElement eval_poly_at_element(const MonicPoly& p, const AlgebraElement& x) {
    const AlgPtr& alg = x.alg;
    std::vector<RingElem> acc(static_cast<std::size_t>(alg->rank), ring_zero(alg->base));
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        acc = mul_coords(*alg, acc, x.coords, ring_zero(alg->base), [](const RingElem& c) { return c; });
        for (std::size_t k = 0; k < acc.size(); ++k)
            acc[k] = acc[k] + *it * alg->unit_coords[k];
    }
    return AlgebraElement{alg, std::move(acc)};
}

inline bool elem_is_zero(const AlgebraElement& x) {
    for (const auto& c : x.coords)
        if (!ring_is_zero(c)) return false;
    return true;
}

/// Determinant of the trace Gram matrix [tr(e_i e_j)].
inline RingElem trace_form_disc(const FreeAlgebra& a) {
    const int n = a.rank;
    std::vector<RingElem> trE(static_cast<std::size_t>(n), ring_zero(a.base));
    for (int j = 0; j < n; ++j) {
        RingElem tj = ring_zero(a.base);
        for (int k = 0; k < n; ++k) tj = tj + a.sc(j, k, k);
        trE[static_cast<std::size_t>(j)] = std::move(tj);
    }
    Mat<RingElem> g(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ring_zero(a.base));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RingElem acc = ring_zero(a.base);
            for (int k = 0; k < n; ++k) {
                const RingElem& cijk = a.sc(i, j, k);
                if (!ring_is_zero(cijk)) acc = acc + cijk * trE[static_cast<std::size_t>(k)];
            }
            g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = std::move(acc);
        }
    return berkowitz_det(g, ring_zero(a.base), ring_one(a.base));
}

// ---------------------------------------------------------------------------
// Brute-force generation oracle over finite bases
// ---------------------------------------------------------------------------

struct ClosureReport {
    bool spans_all = false;
    std::size_t span_size = 0;
    Int module_size = 0;
    std::size_t products_used = 0;
    std::string description;
};

/// Iteratively closes the A-module generated by all monomials in `gens`
/// (including 1) under multiplication by the generators, then checks whether
/// the closure is all of B.  Requires a finite base ring (IntegersMod).
inline ClosureReport subalgebra_closure(const FreeAlgebra& a, const std::vector<std::vector<RingElem>>& gens) {
    if (a.base->kind != RingKind::IntegersMod)
        throw unsupported_error("subalgebra_closure requires a finite base ring");
    const Int m = a.base->modulus;
    const std::size_t n = static_cast<std::size_t>(a.rank);

    auto to_ints = [&](const std::vector<RingElem>& v) {
        std::vector<Int> r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = std::get<Int>(v[k].v);
        return r;
    };
    std::set<std::vector<Int>> span;
    span.insert(std::vector<Int>(n, 0));
    auto extend_span = [&](const std::vector<Int>& g) {
        if (span.count(g)) return false;
        std::vector<std::vector<Int>> snapshot(span.begin(), span.end());
        for (const auto& s : snapshot)
            for (Int t = 1; t < m; ++t) {
                std::vector<Int> w(n);
                for (std::size_t k = 0; k < n; ++k) w[k] = detail::mod_reduce(s[k] + t * g[k], m);
                span.insert(std::move(w));
            }
        return true;
    };

    const std::size_t cap =
        static_cast<std::size_t>(a.rank) * std::max<std::size_t>(gens.size(), 1) * n * n;
    std::size_t products = 0;

    std::vector<std::vector<RingElem>> worklist{a.unit_coords};
    extend_span(to_ints(a.unit_coords));
    while (!worklist.empty()) {
        std::vector<RingElem> v = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& g : gens) {
            if (++products > cap)
                throw internal_error("subalgebra_closure: iteration cap exceeded (invalid algebra?)");
            auto w = mul_coords(a, v, g, ring_zero(a.base), [](const RingElem& c) { return c; });
            if (extend_span(to_ints(w))) worklist.push_back(std::move(w));
        }
    }

    ClosureReport rep;
    rep.span_size = span.size();
    rep.module_size = 1;
    for (std::size_t k = 0; k < n; ++k) rep.module_size *= m;
    rep.products_used = products;
    rep.spans_all = true;
    for (std::size_t i = 0; i < n && rep.spans_all; ++i) {
        std::vector<Int> ei(n, 0);
        ei[i] = 1;
        rep.spans_all = span.count(ei) > 0;
    }
    rep.description = "span size " + std::to_string(rep.span_size) + " of module size " + rep.module_size.str();
    return rep;
}

// ---------------------------------------------------------------------------
// Stable digest of an algebra presentation (used in search reports)
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string algebra_digest(const FreeAlgebra& a) {
    std::string blob = ring_describe(a.base) + "#" + std::to_string(a.rank) + "#";
    for (const auto& x : a.c) blob += ring_to_string(x) + ",";
    blob += "#";
    for (const auto& x : a.unit_coords) blob += ring_to_string(x) + ",";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(blob)));
    return std::string(buf);
}

} // namespace monogen
