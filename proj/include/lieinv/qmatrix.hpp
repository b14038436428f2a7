#pragma once

#include <cstddef>
#include <vector>

#include "lieinv/rational.hpp"

namespace lieinv {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

/// Reduced row echelon form in place. Returns the rank; pivots are
/// normalized to 1 and pivot columns are cleared above and below, so the
/// result is the unique canonical form of the row space.
inline std::size_t rref(QMat& m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        Rational inv = Rational(1) / m[rank][col];
        for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    m.resize(rank);
    return rank;
}

namespace detail {

/// Clears denominators row by row; fills `scale` with the factor applied to
/// each row (the determinant of the integer matrix is det * prod(scale)).
inline std::vector<std::vector<BigInt>> clear_denominators(const QMat& m, std::vector<BigInt>& scale) {
    std::vector<std::vector<BigInt>> z(m.size());
    scale.assign(m.size(), BigInt(1));
    for (std::size_t r = 0; r < m.size(); ++r) {
        BigInt l(1);
        for (const auto& x : m[r]) l = lcm(l, x.den());
        scale[r] = l;
        z[r].reserve(m[r].size());
        for (const auto& x : m[r]) z[r].push_back(x.num() * BigInt::div_exact(l, x.den()));
    }
    return z;
}

}  // namespace detail

/// Rank by Bareiss fraction-free elimination on the denominator-cleared
/// integer matrix. Exact; row scaling does not change the rank.
inline std::size_t rank_fraction_free(const QMat& m) {
    if (m.empty() || m[0].empty()) return 0;
    std::vector<BigInt> scale;
    auto a = detail::clear_denominators(m, scale);
    const std::size_t rows = a.size(), cols = a[0].size();
    BigInt prev(1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a[r][j] = BigInt::div_exact(a[rank][col] * a[r][j] - a[r][col] * a[rank][j], prev);
            a[r][col] = BigInt(0);
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

/// Exact determinant of a square rational matrix via Bareiss elimination.
inline Rational det_fraction_free(const QMat& m) {
    const std::size_t n = m.size();
    if (n == 0) return Rational(1);
    std::vector<BigInt> scale;
    auto a = detail::clear_denominators(m, scale);
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) return Rational(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[r][j] = BigInt::div_exact(a[k][k] * a[r][j] - a[r][k] * a[k][j], prev);
            a[r][k] = BigInt(0);
        }
        prev = a[k][k];
    }
    BigInt det_int = sign < 0 ? -a[n - 1][n - 1] : a[n - 1][n - 1];
    BigInt denom(1);
    for (const auto& s : scale) denom = denom * s;
    return Rational(det_int, denom);
}

/// Basis of the right nullspace {x : m x = 0}, one vector per free column,
/// derived from the reduced row echelon form.
inline QMat nullspace(QMat m, std::size_t cols) {
    for (auto& row : m) row.resize(cols, Rational(0));
    std::size_t rank = rref(m);
    std::vector<long> pivot_of_col(cols, -1);
    {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rank; ++c) {
            if (!m[r][c].is_zero()) {
                pivot_of_col[c] = static_cast<long>(r);
                ++r;
            }
        }
    }
    QMat basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        QVec v(cols, Rational(0));
        v[free_col] = Rational(1);
        for (std::size_t c = 0; c < cols; ++c) {
            long r = pivot_of_col[c];
            if (r >= 0) v[c] = -m[static_cast<std::size_t>(r)][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace lieinv
