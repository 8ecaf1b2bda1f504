#pragma once

#include "divalg/numeric.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace divalg {

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) throw InputError("from_rows: shape needed for empty list");
        return from_rows(rows, rows[0].size());
    }

    static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InputError("from_rows: ragged row");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<Vec>& cols) {
        if (cols.empty()) throw InputError("from_columns: shape needed for empty list");
        return from_columns(cols, cols[0].size());
    }

    static IntMatrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
        IntMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw InputError("from_columns: ragged column");
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec row(std::size_t i) const {
        Vec r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    Vec column(std::size_t j) const {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Vec> row_list() const {
        std::vector<Vec> r;
        r.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
        return r;
    }

    std::vector<Vec> column_list() const {
        std::vector<Vec> c;
        c.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) c.push_back(column(j));
        return c;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix mul(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw InputError("matrix mul: dimension mismatch");
        IntMatrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, j) += a * o.at(k, j);
            }
        return m;
    }

    Vec mul_vec(const Vec& v) const {
        if (cols_ != v.size()) throw InputError("matrix-vector mul: dimension mismatch");
        Vec r(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }

    Int determinant() const {
        if (rows_ != cols_) throw InputError("determinant: not square");
        // Fraction-free Gaussian elimination (Bareiss).
        IntMatrix m = *this;
        Int sign = 1, prev = 1;
        std::size_t n = rows_;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (m.at(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < n && m.at(p, k) == 0) ++p;
                if (p == n) return 0;
                m.swap_rows(k, p);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            prev = m.at(k, k);
        }
        return n == 0 ? Int(1) : Int(sign * m.at(n - 1, n - 1));
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

// ---- Exact rational linear algebra helpers ----

inline std::size_t q_rank(std::vector<QVec> m) {
    std::size_t rank = 0;
    if (m.empty()) return 0;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::size_t int_rank(const std::vector<Vec>& m) {
    std::vector<QVec> q;
    q.reserve(m.size());
    for (const Vec& v : m) q.emplace_back(v.begin(), v.end());
    return q_rank(q);
}

/// Solves A x = b over the rationals. Returns a solution iff the system is
/// consistent; `unique` reports whether the solution space is a point.
inline std::optional<QVec> q_solve(std::vector<QVec> a, QVec b, bool* unique = nullptr) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        std::swap(b[p], b[rank]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    if (unique) *unique = (rank == cols);
    QVec x(cols, Rat(0));
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

inline std::optional<QVec> q_solve_int(const std::vector<Vec>& a, const Vec& b,
                                       bool* unique = nullptr) {
    std::vector<QVec> aq;
    aq.reserve(a.size());
    for (const Vec& r : a) aq.emplace_back(r.begin(), r.end());
    return q_solve(std::move(aq), QVec(b.begin(), b.end()), unique);
}

/// Basis of the rational null space {x : A x = 0}, columns as primitive
/// integer vectors.
inline std::vector<Vec> null_space(const std::vector<Vec>& a, std::size_t cols) {
    std::vector<QVec> m;
    m.reserve(a.size());
    for (const Vec& r : a) m.emplace_back(r.begin(), r.end());
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[rank][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec x(cols, Rat(0));
        x[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = -m[i][f] / m[i][pivot_col[i]];
        Int den = 1;
        for (const Rat& q : x) den = int_lcm(den, denominator(q));
        Vec v(cols);
        for (std::size_t j = 0; j < cols; ++j) v[j] = numerator(x[j]) * (den / denominator(x[j]));
        basis.push_back(make_primitive(std::move(v)));
    }
    return basis;
}

/// Inverse of a square rational matrix; throws InputError when singular.
inline std::vector<QVec> q_inverse(std::vector<QVec> m) {
    std::size_t n = m.size();
    std::vector<QVec> inv(n, QVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw InputError("q_inverse: singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rat d = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace divalg
