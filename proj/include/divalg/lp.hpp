#pragma once

#include "divalg/matrix.hpp"

#include <optional>

namespace divalg {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rat value = 0;
    QVec point;  // an optimal point when status == Optimal
};

namespace detail {

// Tableau simplex with Bland's rule on: minimize c.z, M z = rhs, z >= 0,
// rhs >= 0, starting from phase-1 artificials. Exact rational arithmetic.
class SimplexTableau {
public:
    SimplexTableau(std::vector<QVec> m, QVec rhs) : m_(std::move(m)), rhs_(std::move(rhs)) {
        rows_ = m_.size();
        cols_ = rows_ ? m_[0].size() : 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (rhs_[i] < 0) {
                rhs_[i] = -rhs_[i];
                for (auto& e : m_[i]) e = -e;
            }
        }
        // Append artificial columns; initial basis = artificials.
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < rows_; ++k) m_[i].push_back(i == k ? Rat(1) : Rat(0));
            basis_[i] = cols_ + i;
        }
        total_ = cols_ + rows_;
    }

    // Phase 1: drive artificials out. Returns false when infeasible.
    bool phase1() {
        QVec cost(total_, Rat(0));
        for (std::size_t j = cols_; j < total_; ++j) cost[j] = 1;
        run(cost);
        Rat obj = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] >= cols_) obj += rhs_[i];
        if (obj != 0) return false;
        // Pivot remaining basic artificials out (degenerate rows).
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            bool pivoted = false;
            for (std::size_t j = 0; j < cols_ && !pivoted; ++j) {
                if (m_[i][j] != 0) {
                    pivot(i, j);
                    pivoted = true;
                }
            }
            // If the whole row is zero the constraint was redundant; it can
            // keep its artificial at value zero harmlessly.
        }
        return true;
    }

    // Phase 2: minimize cost over the first cols_ variables. Returns false
    // when unbounded.
    bool phase2(QVec cost) {
        cost.resize(total_, Rat(0));
        // Forbid re-entry of artificials.
        artificial_locked_ = true;
        return run(cost);
    }

    QVec solution() const {
        QVec z(cols_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) z[basis_[i]] = rhs_[i];
        return z;
    }

private:
    void pivot(std::size_t r, std::size_t c) {
        Rat p = m_[r][c];
        for (auto& e : m_[r]) e /= p;
        rhs_[r] /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || m_[i][c] == 0) continue;
            Rat f = m_[i][c];
            for (std::size_t j = 0; j < total_; ++j) m_[i][j] -= f * m_[r][j];
            rhs_[i] -= f * rhs_[r];
        }
        basis_[r] = c;
    }

    // Returns false on unboundedness.
    bool run(const QVec& cost) {
        while (true) {
            // Reduced costs: rc_j = c_j - y . col_j with y from the basis.
            QVec dual(rows_);
            for (std::size_t i = 0; i < rows_; ++i) dual[i] = cost[basis_[i]];
            std::size_t enter = total_;
            for (std::size_t j = 0; j < total_; ++j) {
                if (artificial_locked_ && j >= cols_) continue;
                bool basic = false;
                for (std::size_t i = 0; i < rows_; ++i)
                    if (basis_[i] == j) basic = true;
                if (basic) continue;
                Rat rc = cost[j];
                for (std::size_t i = 0; i < rows_; ++i) rc -= dual[i] * m_[i][j];
                if (rc < 0) {  // Bland: first improving index
                    enter = j;
                    break;
                }
            }
            if (enter == total_) return true;
            // Ratio test, Bland tie-break on smallest basis index.
            std::size_t leave = rows_;
            Rat best = 0;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (m_[i][enter] <= 0) continue;
                Rat ratio = rhs_[i] / m_[i][enter];
                if (leave == rows_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_) return false;
            pivot(leave, enter);
        }
    }

    std::vector<QVec> m_;
    QVec rhs_;
    std::vector<std::size_t> basis_;
    std::size_t rows_ = 0, cols_ = 0, total_ = 0;
    bool artificial_locked_ = false;
};

}  // namespace detail

/// Exact LP over the rationals: optimize c.x subject to A x >= b, x free.
inline LPResult rational_lp(const std::vector<QVec>& a, const QVec& b, const QVec& c,
                            bool maximize) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (b.size() != m) throw InputError("rational_lp: bound length mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw InputError("rational_lp: row length mismatch");
    // Standard form: x = u - v, surplus s: A u - A v - s = b, all >= 0.
    std::vector<QVec> t(m, QVec(2 * n + m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t[i][j] = a[i][j];
            t[i][n + j] = -a[i][j];
        }
        t[i][2 * n + i] = -1;
    }
    detail::SimplexTableau tab(std::move(t), b);
    LPResult res;
    if (!tab.phase1()) {
        res.status = LPStatus::Infeasible;
        return res;
    }
    QVec cost(2 * n + m, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = maximize ? -c[j] : c[j];
        cost[n + j] = maximize ? c[j] : -c[j];
    }
    if (!tab.phase2(std::move(cost))) {
        res.status = LPStatus::Unbounded;
        return res;
    }
    QVec z = tab.solution();
    res.status = LPStatus::Optimal;
    res.point.resize(n);
    res.value = 0;
    for (std::size_t j = 0; j < n; ++j) {
        res.point[j] = z[j] - z[n + j];
        res.value += c[j] * res.point[j];
    }
    return res;
}

/// Tests whether {x : A x > b strictly} is nonempty, by maximizing a slack
/// eps with A x - eps >= b and eps <= 1. Returns a witness point when it is.
inline std::optional<QVec> strict_feasibility(const std::vector<QVec>& a, const QVec& b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<QVec> aa;
    QVec bb;
    for (std::size_t i = 0; i < m; ++i) {
        QVec row = a[i];
        row.push_back(Rat(-1));  // A x - eps >= b
        aa.push_back(std::move(row));
        bb.push_back(b[i]);
    }
    {
        QVec row(n + 1, Rat(0));
        row[n] = -1;  // eps <= 1
        aa.push_back(std::move(row));
        bb.push_back(Rat(-1));
    }
    QVec c(n + 1, Rat(0));
    c[n] = 1;
    LPResult r = rational_lp(aa, bb, c, /*maximize=*/true);
    if (r.status != LPStatus::Optimal || r.value <= 0) return std::nullopt;
    QVec x(r.point.begin(), r.point.begin() + static_cast<std::ptrdiff_t>(n));
    return x;
}

/// Tests whether {x : A x > b strictly, C x >= d} is nonempty, by the same
/// eps-slack trick applied to the strict rows only.
inline std::optional<QVec> mixed_feasibility(const std::vector<QVec>& a, const QVec& b,
                                             const std::vector<QVec>& c, const QVec& d) {
    std::size_t n = 0;
    for (const auto& row : a) n = std::max(n, row.size());
    for (const auto& row : c) n = std::max(n, row.size());
    std::vector<QVec> aa;
    QVec bb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        QVec row = a[i];
        row.push_back(Rat(-1));  // strict: A x - eps >= b
        aa.push_back(std::move(row));
        bb.push_back(b[i]);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        QVec row = c[i];
        row.push_back(Rat(0));
        aa.push_back(std::move(row));
        bb.push_back(d[i]);
    }
    {
        QVec row(n + 1, Rat(0));
        row[n] = -1;  // eps <= 1
        aa.push_back(std::move(row));
        bb.push_back(Rat(-1));
    }
    QVec obj(n + 1, Rat(0));
    obj[n] = 1;
    LPResult r = rational_lp(aa, bb, obj, /*maximize=*/true);
    if (r.status != LPStatus::Optimal || r.value <= 0) return std::nullopt;
    QVec x(r.point.begin(), r.point.begin() + static_cast<std::ptrdiff_t>(n));
    return x;
}

}  // namespace divalg
