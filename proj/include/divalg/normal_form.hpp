#pragma once

#include "divalg/matrix.hpp"

#include <numeric>
#include <optional>
#include <tuple>

namespace divalg {

namespace detail {

// Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(const Int& a, const Int& b) {
    if (b == 0) {
        if (a < 0) return {-a, -1, 0};
        return {a, 1, 0};
    }
    auto [g, x, y] = ext_gcd(b, a % b);
    return {g, y, x - (a / b) * y};
}

// Combine rows i and k of (m, u) so that m(i, col) becomes gcd and m(k, col) zero.
inline void gcd_rows(IntMatrix& m, IntMatrix& u, std::size_t i, std::size_t k, std::size_t col) {
    const Int a = m.at(i, col), b = m.at(k, col);
    if (b == 0) return;
    if (a == 0) {
        m.swap_rows(i, k);
        u.swap_rows(i, k);
        return;
    }
    if (b % a == 0) {
        // Pivot divides: plain subtraction, pivot row untouched.
        const Int q = b / a;
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(k, j) -= q * m.at(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(k, j) -= q * u.at(i, j);
        return;
    }
    auto [g, x, y] = ext_gcd(a, b);
    Int ag = a / g, bg = b / g;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Int mi = m.at(i, j), mk = m.at(k, j);
        m.at(i, j) = x * mi + y * mk;
        m.at(k, j) = ag * mk - bg * mi;
    }
    for (std::size_t j = 0; j < u.cols(); ++j) {
        Int ui = u.at(i, j), uk = u.at(k, j);
        u.at(i, j) = x * ui + y * uk;
        u.at(k, j) = ag * uk - bg * ui;
    }
}

inline void add_row_multiple(IntMatrix& m, IntMatrix& u, std::size_t dst, std::size_t src,
                             const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += c * m.at(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(dst, j) += c * u.at(src, j);
}

}  // namespace detail

/// Row-style Hermite normal form: returns (H, U) with U unimodular and
/// U*M = H in echelon form, pivots positive, entries above each pivot
/// reduced into [0, pivot).
inline std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix& m_in) {
    IntMatrix h = m_in;
    IntMatrix u = IntMatrix::identity(h.rows());
    std::size_t prow = 0;
    for (std::size_t col = 0; col < h.cols() && prow < h.rows(); ++col) {
        for (std::size_t k = prow + 1; k < h.rows(); ++k) detail::gcd_rows(h, u, prow, k, col);
        if (h.at(prow, col) == 0) continue;
        if (h.at(prow, col) < 0) {
            for (std::size_t j = 0; j < h.cols(); ++j) h.at(prow, j) = -h.at(prow, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u.at(prow, j) = -u.at(prow, j);
        }
        const Int p = h.at(prow, col);
        for (std::size_t i = 0; i < prow; ++i)
            detail::add_row_multiple(h, u, i, prow, -floor_div(h.at(i, col), p));
        ++prow;
    }
    return {h, u};
}

/// Smith normal form: returns (D, U, V) with U, V unimodular and
/// U*M*V = D diagonal, entries non-negative with d_1 | d_2 | ..., zeros last.
inline std::tuple<IntMatrix, IntMatrix, IntMatrix> smith_normal_form(const IntMatrix& m_in) {
    IntMatrix d = m_in;
    IntMatrix u = IntMatrix::identity(d.rows());
    IntMatrix vt = IntMatrix::identity(d.cols());  // accumulate V as row ops on M^T
    const std::size_t n = std::min(d.rows(), d.cols());

    auto col_step = [&](std::size_t k) {
        // One pass of column elimination at k, via the transpose.
        IntMatrix dt = d.transpose();
        for (std::size_t c = k + 1; c < dt.rows(); ++c) detail::gcd_rows(dt, vt, k, c, k);
        d = dt.transpose();
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& c) {
        IntMatrix dt = d.transpose();
        detail::add_row_multiple(dt, vt, dst, src, c);
        d = dt.transpose();
    };

    for (std::size_t k = 0; k < n; ++k) {
        // Bring a nonzero entry of the trailing block to (k, k).
        std::size_t pi = k, pj = k;
        bool found = false;
        for (std::size_t i = k; i < d.rows() && !found; ++i)
            for (std::size_t j = k; j < d.cols() && !found; ++j)
                if (d.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        if (pi != k) {
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
        }
        if (pj != k) add_col(k, pj, Int(1));
        while (true) {
            // Alternate row/column elimination until the cross at k is clear.
            while (true) {
                for (std::size_t i = k + 1; i < d.rows(); ++i) detail::gcd_rows(d, u, k, i, k);
                col_step(k);
                bool row_clear = true;
                for (std::size_t i = k + 1; i < d.rows(); ++i)
                    if (d.at(i, k) != 0) row_clear = false;
                if (row_clear) break;
            }
            // Fold in any trailing entry the pivot does not divide; the
            // pivot's absolute value strictly decreases each round.
            bool fixed = true;
            for (std::size_t i = k + 1; i < d.rows() && fixed; ++i)
                for (std::size_t j = k + 1; j < d.cols() && fixed; ++j)
                    if (d.at(i, j) % d.at(k, k) != 0) {
                        detail::add_row_multiple(d, u, k, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
    }
    // Normalize signs.
    for (std::size_t k = 0; k < n; ++k) {
        if (d.at(k, k) < 0) {
            for (std::size_t j = 0; j < u.cols(); ++j) u.at(k, j) = -u.at(k, j);
            for (std::size_t j = 0; j < d.cols(); ++j) d.at(k, j) = -d.at(k, j);
        }
    }
    return {d, u, vt.transpose()};
}

/// Solves M x = b over the integers; absent when b is outside the column
/// lattice of M.
inline std::optional<Vec> lattice_solve(const IntMatrix& m, const Vec& b) {
    if (m.rows() != b.size()) throw InputError("lattice_solve: dimension mismatch");
    // Column HNF via the transpose: Ht = Ut * M^T, i.e. M * Ut^T^... we use
    // H^T = M * V with V = Ut^T, H^T column-echelon.
    auto [ht, ut] = hermite_normal_form(m.transpose());
    IntMatrix h = ht.transpose();  // m * ut^T = h, columns in echelon form
    std::size_t ncols = h.cols();
    Vec y(ncols, Int(0));
    Vec r = b;
    for (std::size_t c = 0; c < ncols; ++c) {
        // Pivot row of column c = first nonzero entry.
        std::size_t p = 0;
        while (p < h.rows() && h.at(p, c) == 0) ++p;
        if (p == h.rows()) break;  // zero column; later columns are zero too
        if (r[p] % h.at(p, c) != 0) return std::nullopt;
        y[c] = r[p] / h.at(p, c);
        if (y[c] != 0)
            for (std::size_t i = 0; i < h.rows(); ++i) r[i] -= y[c] * h.at(i, c);
    }
    if (!is_zero(r)) return std::nullopt;
    return ut.transpose().mul_vec(y);
}

/// Finitely generated abelian group Z^s / L presented by invariant factors
/// and a free rank, with an explicit projection/section pair.
struct AbelianPresentation {
    std::vector<Int> invariant_factors;  // each >= 2, d_i | d_{i+1}
    std::size_t free_rank = 0;
    IntMatrix projection;  // (k + f) x s
    IntMatrix section;     // s x (k + f)

    std::size_t coord_count() const { return invariant_factors.size() + free_rank; }
    bool is_trivial() const { return coord_count() == 0; }

    Int torsion_order() const {
        Int t = 1;
        for (const Int& d : invariant_factors) t *= d;
        return t;
    }

    /// Reduces coordinates: torsion entries into [0, d_i).
    Vec reduce(Vec c) const {
        if (c.size() != coord_count()) throw InputError("class coordinates: wrong length");
        for (std::size_t i = 0; i < invariant_factors.size(); ++i)
            c[i] -= invariant_factors[i] * floor_div(c[i], invariant_factors[i]);
        return c;
    }

    Vec project(const Vec& v) const { return reduce(projection.mul_vec(v)); }

    Vec lift(const Vec& c) const {
        if (c.size() != coord_count()) throw InputError("class coordinates: wrong length");
        return section.mul_vec(c);
    }

    Vec add(const Vec& a, const Vec& b) const { return reduce(vec_add(a, b)); }
    Vec negate(const Vec& a) const { return reduce(vec_neg(a)); }

    Vec scale(const Int& j, const Vec& a) const { return reduce(vec_scale(j, a)); }

    /// Order of the element; absent means infinite.
    std::optional<Int> element_order(const Vec& c_in) const {
        Vec c = reduce(c_in);
        for (std::size_t i = invariant_factors.size(); i < c.size(); ++i)
            if (c[i] != 0) return std::nullopt;
        Int ord = 1;
        for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
            if (c[i] == 0) continue;
            ord = int_lcm(ord, invariant_factors[i] / int_gcd(invariant_factors[i], c[i]));
        }
        return ord;
    }
};

/// Presentation of Z^s / columnspan(L).
inline AbelianPresentation quotient_presentation(const IntMatrix& l) {
    const std::size_t s = l.rows();
    auto [d, u, v] = smith_normal_form(l);
    (void)v;
    const std::size_t n = std::min(d.rows(), d.cols());
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (d.at(k, k) != 0) ++rank;

    std::vector<std::size_t> kept;  // rows of U that survive in the quotient
    AbelianPresentation pres;
    for (std::size_t k = 0; k < rank; ++k) {
        if (d.at(k, k) >= 2) {
            pres.invariant_factors.push_back(d.at(k, k));
            kept.push_back(k);
        }
    }
    for (std::size_t k = rank; k < s; ++k) kept.push_back(k);
    pres.free_rank = s - rank;

    pres.projection = IntMatrix(kept.size(), s);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < s; ++j) pres.projection.at(i, j) = u.at(kept[i], j);

    // Section: the corresponding columns of U^{-1}, solved exactly.
    IntMatrix uinv(s, s);
    {
        std::vector<QVec> uq;
        for (std::size_t i = 0; i < s; ++i) {
            QVec row(s);
            for (std::size_t j = 0; j < s; ++j) row[j] = Rat(u.at(i, j));
            uq.push_back(std::move(row));
        }
        std::vector<QVec> inv = q_inverse(std::move(uq));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                if (denominator(inv[i][j]) != 1)
                    throw std::logic_error("unimodular inverse not integral");
                uinv.at(i, j) = numerator(inv[i][j]);
            }
    }
    pres.section = IntMatrix(s, kept.size());
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < kept.size(); ++j) pres.section.at(i, j) = uinv.at(i, kept[j]);
    return pres;
}

}  // namespace divalg
