#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace monogen {

/// Dense rectangular matrix over an arbitrary commutative-ring value type.
/// T needs +, -, *, unary - and ==; no division is assumed.
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    Mat transposed() const {
        Mat r(cols_, rows_, d_.empty() ? T{} : d_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> d_;
};

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b, const T& zero) {
    if (a.cols() != b.rows()) throw structural_error("mat_mul: dimension mismatch");
    Mat<T> r(a.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
    return r;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& x, const T& zero) {
    if (a.cols() != x.size()) throw structural_error("mat_vec: dimension mismatch");
    std::vector<T> r(a.rows(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] = r[i] + a.at(i, j) * x[j];
    return r;
}

/// Berkowitz division-free characteristic polynomial of a square matrix.
/// Returns the coefficients of det(tI - A) by descending power of t, so the
/// result has length n+1 and leading entry `one`.  Valid over any commutative
/// ring, zero divisors included.
template <class T>
std::vector<T> berkowitz_charpoly(const Mat<T>& a, const T& zero, const T& one) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw structural_error("charpoly: matrix not square");
    if (n == 0) return {one};

    std::vector<T> coeffs{one, -a.at(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // principal (r+1)x(r+1) block: leading r x r block M, row R, column C, corner d
        const T& d = a.at(r, r);
        // s_k = R * M^k * C for k = 0..r-1
        std::vector<T> mkc(r, zero);
        for (std::size_t i = 0; i < r; ++i) mkc[i] = a.at(i, r);
        std::vector<T> s(r, zero);
        for (std::size_t k = 0; k < r; ++k) {
            T acc = zero;
            for (std::size_t i = 0; i < r; ++i) acc = acc + a.at(r, i) * mkc[i];
            s[k] = acc;
            if (k + 1 < r) {
                std::vector<T> next(r, zero);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a.at(i, j) * mkc[j];
                mkc = std::move(next);
            }
        }
        // multiply by the (r+2)x(r+1) lower-triangular Toeplitz matrix whose
        // first column is (1, -d, -s_0, ..., -s_{r-1})
        std::vector<T> first{one, -d};
        for (std::size_t k = 0; k < r; ++k) first.push_back(-s[k]);
        std::vector<T> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j < coeffs.size(); ++j)
                if (i >= j && i - j < first.size()) next[i] = next[i] + first[i - j] * coeffs[j];
        coeffs = std::move(next);
    }
    return coeffs;
}

/// det(A) from the Berkowitz characteristic polynomial: det = (-1)^n charpoly(0).
template <class T>
T berkowitz_det(const Mat<T>& a, const T& zero, const T& one) {
    const std::vector<T> cp = berkowitz_charpoly(a, zero, one);
    const T& c0 = cp.back();
    return (a.rows() % 2 == 0) ? c0 : -c0;
}

/// Bareiss fraction-free determinant; `exact_div` must implement exact
/// division in an integral domain.  Optional fast path, sound only over
/// integral domains.
template <class T, class ExactDiv>
T bareiss_det(Mat<T> m, const T& zero, const T& one, ExactDiv exact_div) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw structural_error("bareiss_det: matrix not square");
    if (n == 0) return one;
    T prev = one;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == zero) {
            std::size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == zero) ++piv;
            if (piv == n) return zero;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
            m.at(i, k) = zero;
        }
        prev = m.at(k, k);
    }
    const T& det = m.at(n - 1, n - 1);
    return negate ? -det : det;
}

/// Determinant of the minor dropping row `di` and column `dj`.
template <class T>
T minor_det(const Mat<T>& a, std::size_t di, std::size_t dj, const T& zero, const T& one) {
    const std::size_t n = a.rows();
    Mat<T> m(n - 1, n - 1, zero);
    for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == di) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
            if (j == dj) continue;
            m.at(mi, mj) = a.at(i, j);
            ++mj;
        }
        ++mi;
    }
    return berkowitz_det(m, zero, one);
}

/// Adjugate matrix via cofactors; adj(A) * A = det(A) * I over any commutative ring.
template <class T>
Mat<T> adjugate(const Mat<T>& a, const T& zero, const T& one) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw structural_error("adjugate: matrix not square");
    Mat<T> adj(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            T c = minor_det(a, j, i, zero, one);
            adj.at(i, j) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

/// Inverse over a commutative ring: adj(A) * det(A)^{-1}.  `inv` inverts a
/// unit of the entry ring; returns nullopt when det is not a unit.
template <class T, class IsUnit, class Inv>
std::optional<Mat<T>> inverse_over_ring(const Mat<T>& a, const T& zero, const T& one, IsUnit is_unit,
                                        Inv inv) {
    T det = berkowitz_det(a, zero, one);
    if (!is_unit(det)) return std::nullopt;
    T dinv = inv(det);
    Mat<T> adj = adjugate(a, zero, one);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) adj.at(i, j) = adj.at(i, j) * dinv;
    return adj;
}

/// Gaussian solve A x = b over a field; `inv` inverts nonzero entries.
/// Returns nullopt when A is singular.
template <class T, class Inv>
std::optional<std::vector<T>> solve_field(Mat<T> a, std::vector<T> b, const T& zero, Inv inv) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw structural_error("solve_field: dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a.at(piv, k) == zero) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            std::swap(b[k], b[piv]);
        }
        T pinv = inv(a.at(k, k));
        for (std::size_t j = k; j < n; ++j) a.at(k, j) = a.at(k, j) * pinv;
        b[k] = b[k] * pinv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a.at(i, k) == zero) continue;
            T f = a.at(i, k);
            for (std::size_t j = k; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(k, j);
            b[i] = b[i] - f * b[k];
        }
    }
    return b;
}

} // namespace monogen
