#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "okb/error.hpp"
#include "okb/rational.hpp"

namespace okb {

using Vector = std::vector<Rational>;

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of vectors of different length");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(std::span<const Rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// All rows must have the same length.
    static Matrix from_rows(const std::vector<Vector>& rows)
    {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vector operator*(std::span<const Rational> v) const
    {
        if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
        Vector out(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), v);
        return out;
    }

    /// Principal submatrix on the given index set.
    Matrix principal(std::span<const std::size_t> idx) const
    {
        Matrix m(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = (*this)(idx[a], idx[b]);
        return m;
    }

    bool is_symmetric() const
    {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Determinant by fraction-free (Bareiss) elimination.
inline Rational determinant(const Matrix& a)
{
    if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Matrix m = a;
    Rational prev = 1;
    int sgn_flip = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sgn_flip = -sgn_flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sgn_flip * m(n - 1, n - 1);
}

/// Solves a square system exactly with Bareiss elimination on the augmented matrix.
/// Returns nullopt when the matrix is singular.
inline std::optional<Vector> solve(const Matrix& a, std::span<const Rational> b)
{
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw Error(ErrorKind::DimensionMismatch, "solve expects a square system");
    const std::size_t n = a.rows();
    if (n == 0) return Vector{};
    Matrix m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n) = b[i];
    }
    Rational prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return std::nullopt;
            for (std::size_t j = 0; j <= n; ++j) std::swap(m(k, j), m(p, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Vector x(n, Rational(0));
    for (std::size_t ii = n; ii-- > 0;) {
        Rational s = m(ii, n);
        for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x[j];
        x[ii] = s / m(ii, ii);
    }
    return x;
}

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
inline Matrix rref(const Matrix& a, std::vector<std::size_t>* pivots = nullptr)
{
    Matrix m = a;
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

inline std::size_t rank(const Matrix& a)
{
    std::vector<std::size_t> piv;
    rref(a, &piv);
    return piv.size();
}

/// Basis of the row space (nonzero rows of the RREF).
inline std::vector<Vector> row_space_basis(const Matrix& a)
{
    std::vector<std::size_t> piv;
    Matrix r = rref(a, &piv);
    std::vector<Vector> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row_vector(i));
    return out;
}

/// Basis of { x : a x = 0 }.
inline std::vector<Vector> nullspace(const Matrix& a)
{
    std::vector<std::size_t> piv;
    Matrix r = rref(a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<Vector> out;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(a.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

/// Sylvester inertia of a symmetric matrix via exact congruence diagonalization.
inline Inertia inertia(const Matrix& sym)
{
    if (!sym.is_symmetric()) throw Error(ErrorKind::InvalidInput, "inertia of a non-symmetric matrix");
    Matrix m = sym;
    const std::size_t n = m.rows();
    Inertia out;
    auto swap_index = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(m(k, i), m(k, j));
    };
    std::size_t k = 0;
    for (; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, p) == 0) ++p;
        if (p == n) {
            // All remaining diagonal entries vanish: x_i -> x_i + x_j creates a nonzero pivot.
            std::size_t ii = n, jj = n;
            for (std::size_t i = k; i < n && ii == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (m(i, j) != 0) { ii = i; jj = j; break; }
            if (ii == n) break;
            for (std::size_t c = 0; c < n; ++c) m(ii, c) += m(jj, c);
            for (std::size_t r = 0; r < n; ++r) m(r, ii) += m(r, jj);
            p = ii;
        }
        if (p != k) swap_index(p, k);
        const Rational piv = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational f = m(i, k) / piv;
            for (std::size_t c = k; c < n; ++c) m(i, c) -= f * m(k, c);
            for (std::size_t r = k; r < n; ++r) m(r, i) -= f * m(r, k);
        }
        if (piv > 0) ++out.positive; else ++out.negative;
    }
    out.zero = n - out.positive - out.negative;
    return out;
}

/// Sylvester's criterion: (-1)^k * det(leading k x k block) > 0 for every k.
inline bool is_negative_definite(const Matrix& sym)
{
    if (!sym.is_symmetric()) return false;
    for (std::size_t k = 1; k <= sym.rows(); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        Rational d = determinant(sym.principal(idx));
        if ((k % 2 == 1 ? -d : d) <= 0) return false;
    }
    return true;
}

/// Finds lambda >= 0 with a * lambda = b by an exact phase-one simplex (Bland's rule).
/// Returns nullopt when infeasible.
inline std::optional<Vector> nonnegative_solution(const Matrix& a, std::span<const Rational> b)
{
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m) throw Error(ErrorKind::DimensionMismatch, "nonnegative_solution: rhs size");
    // Tableau columns: n structural, m artificial, 1 rhs.
    Matrix t(m, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const int s = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = s * a(i, j);
        t(i, n + i) = 1;
        t(i, n + m) = s * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    // Reduced costs of the phase-one objective (minimize sum of artificials).
    auto reduced_cost = [&](std::size_t j) {
        Rational c = j >= n ? Rational(1) : Rational(0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n) c -= t(i, j);
        return c;
    };
    for (;;) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
            if (reduced_cost(j) < 0) { enter = j; break; }
        }
        if (enter == n + m) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rational ratio = t(i, n + m) / t(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur in phase one
        Rational piv = t(leave, enter);
        for (std::size_t j = 0; j <= n + m; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            Rational f = t(i, enter);
            for (std::size_t j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }
    Vector x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) {
            if (t(i, n + m) != 0) return std::nullopt;
        } else {
            x[basis[i]] = t(i, n + m);
        }
    }
    return x;
}

/// Extreme rays of the pointed cone { y : a y >= 0 } by the double description method.
/// Requires rank(a) == a.cols(). Rays are returned as primitive integer vectors.
inline std::vector<Vector> extreme_rays(const Matrix& a)
{
    const std::size_t k = a.cols();
    if (k == 0) return {};
    if (rank(a) != k) throw Error(ErrorKind::InvalidInput, "extreme_rays: constraint matrix must have full column rank");

    // Greedy choice of k independent rows to seed the iteration.
    std::vector<std::size_t> seed;
    {
        std::vector<Vector> chosen;
        for (std::size_t i = 0; i < a.rows() && seed.size() < k; ++i) {
            chosen.push_back(a.row_vector(i));
            if (rank(Matrix::from_rows(chosen)) == chosen.size()) seed.push_back(i);
            else chosen.pop_back();
        }
    }
    std::vector<Vector> rays;
    {
        Matrix s(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) s(r, c) = a(seed[r], c);
        for (std::size_t j = 0; j < k; ++j) {
            Vector e(k, Rational(0));
            e[j] = 1;
            auto col = solve(s, e);
            rays.push_back(primitive_ray(*col));
        }
    }
    std::vector<std::size_t> processed = seed;

    auto tight_rows = [&](const Vector& r) {
        std::vector<std::size_t> z;
        for (auto i : processed)
            if (dot(a.row(i), r) == 0) z.push_back(i);
        std::sort(z.begin(), z.end());
        return z;
    };

    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (std::find(seed.begin(), seed.end(), i) != seed.end()) continue;
        const auto row = a.row(i);
        std::vector<Vector> pos, neg, zer;
        std::vector<Rational> pos_val, neg_val;
        for (auto& r : rays) {
            Rational v = dot(row, r);
            if (v > 0) { pos.push_back(r); pos_val.push_back(v); }
            else if (v < 0) { neg.push_back(r); neg_val.push_back(v); }
            else zer.push_back(r);
        }
        std::vector<Vector> next = pos;
        next.insert(next.end(), zer.begin(), zer.end());
        for (std::size_t p = 0; p < pos.size(); ++p) {
            auto zp = tight_rows(pos[p]);
            for (std::size_t q = 0; q < neg.size(); ++q) {
                auto zq = tight_rows(neg[q]);
                std::vector<std::size_t> common;
                std::set_intersection(zp.begin(), zp.end(), zq.begin(), zq.end(), std::back_inserter(common));
                std::size_t rk = 0;
                if (!common.empty()) {
                    std::vector<Vector> rows;
                    for (auto c : common) rows.push_back(a.row_vector(c));
                    rk = rank(Matrix::from_rows(rows));
                }
                if (k < 2 || rk != k - 2) continue;
                Vector nr(k);
                for (std::size_t c = 0; c < k; ++c) nr[c] = pos_val[p] * neg[q][c] - neg_val[q] * pos[p][c];
                next.push_back(primitive_ray(nr));
            }
        }
        rays = std::move(next);
        processed.push_back(i);
        std::sort(processed.begin(), processed.end());
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

}  // namespace okb
