#pragma once

#include "divalg/divisor.hpp"

#include <map>
#include <random>

namespace divalg {

/// Combinatorial depth bounds for a positive semigroup.
struct DepthBounds {
    std::size_t grade_mP = 0;  // least number of facets meeting only at 0
    std::size_t lambda = 0;    // max packing of disjoint positive supports
    std::vector<std::size_t> grade_witness;      // facet indices
    std::vector<Vec> lambda_witness;             // Hilbert basis elements
};

/// True when the facets indexed by J intersect only in the origin: no
/// nonzero cone point, equivalently no Hilbert basis element, vanishes on
/// every sigma_i with i in J.
inline bool facets_meet_trivially(const AffineSemigroup& s, const std::vector<std::size_t>& j) {
    for (const Vec& h : s.hilbert) {
        bool all_zero = true;
        for (std::size_t i : j)
            if (dot(s.support_forms()[i], h) != 0) all_zero = false;
        if (all_zero) return false;
    }
    return true;
}

inline DepthBounds depth_bounds(const AffineSemigroup& s) {
    DepthBounds out;
    const std::size_t ns = s.support_forms().size();
    // grade: smallest facet subset meeting only at zero.
    bool found = false;
    for (std::size_t u = 1; u <= ns && !found; ++u) {
        detail::for_each_subset(ns, u, [&](const std::vector<std::size_t>& idx) {
            if (found) return;
            if (facets_meet_trivially(s, idx)) {
                out.grade_mP = u;
                out.grade_witness = idx;
                found = true;
            }
        });
    }
    if (!found) throw HypothesisError("no facet subset meets trivially; semigroup not positive");
    // lambda: maximum number of Hilbert basis elements whose positive
    // support sets Z(h) = {i : sigma_i(h) > 0} are pairwise disjoint.
    std::vector<std::pair<std::uint64_t, Vec>> supports;
    for (const Vec& h : s.hilbert) {
        std::uint64_t z = 0;
        for (std::size_t i = 0; i < ns; ++i)
            if (dot(s.support_forms()[i], h) > 0) z |= std::uint64_t(1) << i;
        supports.emplace_back(z, h);
    }
    std::sort(supports.begin(), supports.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    supports.erase(std::unique(supports.begin(), supports.end(),
                               [](const auto& a, const auto& b) { return a.first == b.first; }),
                   supports.end());
    std::vector<Vec> best;
    std::vector<Vec> cur;
    std::function<void(std::size_t, std::uint64_t)> pack = [&](std::size_t i,
                                                               std::uint64_t used) {
        if (cur.size() > best.size()) best = cur;
        for (std::size_t k = i; k < supports.size(); ++k) {
            if (supports[k].first & used) continue;
            cur.push_back(supports[k].second);
            pack(k + 1, used | supports[k].first);
            cur.pop_back();
        }
    };
    pack(0, 0);
    out.lambda = best.size();
    out.lambda_witness = best;
    return out;
}

/// Hilbert--Samuel data for the module T(a): chi(n) = #{x : ord(x) <= n},
/// where ord is the order of x in the maximal-ideal filtration, computed by
/// dynamic programming in increasing total degree tau.
struct HilbertSamuelReport {
    std::vector<Int> chi;  // chi(0..window)
    Int multiplicity = 0;  // stabilized rank-th finite difference
};

inline HilbertSamuelReport hilbert_samuel(const AffineSemigroup& s, const Vec& a,
                                          std::size_t window = 30) {
    const std::vector<Vec>& sigma = s.support_forms();
    if (a.size() != sigma.size()) throw InputError("bound vector length mismatch");
    const RationalPolyhedron region = module_region(s, sigma, a);
    // Certified enumeration bound: any point of order <= window has
    // tau <= T0 + window * Tmax.
    Int t0 = 0, tmax = 0;
    for (const Vec& g : minimal_generators(s, a)) t0 = std::max(t0, s.cone.tau(g));
    for (const Vec& h : s.hilbert) tmax = std::max(tmax, s.cone.tau(h));
    const Int cap = t0 + Int(window) * tmax;
    RationalPolyhedron slab = region;
    {
        Vec neg_tau(s.rank, Int(0));
        for (const Vec& f : sigma)
            for (std::size_t k = 0; k < s.rank; ++k) neg_tau[k] -= f[k];
        slab.forms.push_back(std::move(neg_tau));
        slab.bounds.push_back(-cap);
    }
    std::vector<Vec> pts = lattice_points(slab, Int(20000000));
    std::sort(pts.begin(), pts.end(), [&](const Vec& x, const Vec& y) {
        Int tx = s.cone.tau(x), ty = s.cone.tau(y);
        return tx < ty || (tx == ty && x < y);
    });
    std::map<Vec, std::size_t> ord;
    std::vector<Int> chi(window + 1, Int(0));
    const std::size_t big = window + 1;
    for (const Vec& x : pts) {
        std::size_t o = 0;
        bool minimal = true;
        for (const Vec& h : s.hilbert) {
            Vec rem = vec_sub(x, h);
            if (!region.contains(rem)) continue;
            minimal = false;
            auto it = ord.find(rem);
            std::size_t prev = it == ord.end() ? big : it->second;
            o = std::max(o, prev == big ? big : prev + 1);
            if (o >= big) break;
        }
        if (minimal) o = 0;
        ord[x] = std::min(o, big);
        if (o <= window)
            for (std::size_t n = o; n <= window; ++n) ++chi[n];
    }
    HilbertSamuelReport rep;
    rep.chi = chi;
    // rank-th finite differences over the top of the window.
    std::vector<Int> diff(chi.begin(), chi.end());
    for (std::size_t k = 0; k < s.rank; ++k)
        for (std::size_t i = diff.size(); i-- > 1;) diff[i] -= diff[i - 1];
    const std::size_t need = 5;
    if (diff.size() < s.rank + need)
        throw ResourceError("window too small for stabilization");
    for (std::size_t i = diff.size() - need; i < diff.size(); ++i)
        if (diff[i] != diff[diff.size() - 1])
            throw ResourceError("window too small -- differences not stabilized: tail " +
                                diff[i].str() + " vs " + diff.back().str());
    rep.multiplicity = diff.back();
    return rep;
}

/// A homogeneous system of parameters theta_1, ..., theta_rank built from
/// the Hilbert basis monomials, each raised to a common tau-degree L so the
/// combinations are homogeneous in the tau-grading.
struct ParameterSystem {
    Int degree = 0;                                      // common tau-degree L
    Int step = 0;                                        // max tau of a Hilbert basis element
    std::vector<std::vector<std::pair<Vec, Int>>> theta; // per form: (exponent vector, coeff)
};

inline ParameterSystem make_parameter_system(const AffineSemigroup& s, std::uint32_t seed) {
    ParameterSystem q;
    if (s.hilbert.empty()) throw HypothesisError("zero semigroup has no parameters");
    for (const Vec& h : s.hilbert) {
        q.degree = int_lcm(q.degree == 0 ? Int(1) : q.degree, s.cone.tau(h));
        q.step = std::max(q.step, s.cone.tau(h));
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(1, 97);
    for (std::size_t j = 0; j < s.rank; ++j) {
        std::vector<std::pair<Vec, Int>> combo;
        for (const Vec& h : s.hilbert) {
            Int pow = q.degree / s.cone.tau(h);
            combo.emplace_back(vec_scale(pow, h), Int(coef(rng)));
        }
        q.theta.push_back(std::move(combo));
    }
    return q;
}

/// length(M / theta M) for the module M = T(a): the colength of the
/// parameter system, computed level by level in the tau-grading. The sum is
/// certified complete once a stretch of degree + step consecutive zero
/// levels appears above the generator degrees (vanishing then propagates).
inline Int parameter_colength(const AffineSemigroup& s, const ParameterSystem& q, const Vec& a,
                              const Int& level_cap = Int(600)) {
    const std::vector<Vec>& sigma = s.support_forms();
    const RationalPolyhedron region = module_region(s, sigma, a);
    Int t0 = 0;
    for (const Vec& g : minimal_generators(s, a)) t0 = std::max(t0, s.cone.tau(g));
    const Int stretch = q.degree + q.step;
    Int cap = t0 + stretch * 3;
    while (true) {
        if (cap > level_cap)
            throw ResourceError("parameter colength did not stabilize below level " +
                                level_cap.str() + "; system may not be a s.o.p.");
        RationalPolyhedron slab = region;
        Vec neg_tau(s.rank, Int(0));
        for (const Vec& f : sigma)
            for (std::size_t k = 0; k < s.rank; ++k) neg_tau[k] -= f[k];
        slab.forms.push_back(std::move(neg_tau));
        slab.bounds.push_back(-cap);
        std::map<Int, std::vector<Vec>> levels;
        for (Vec& x : lattice_points(slab, Int(20000000))) levels[s.cone.tau(x)].push_back(x);
        for (auto& [t, pts] : levels) std::sort(pts.begin(), pts.end());
        Int total = 0, zero_run_start = -1, prev_nonzero = t0;
        bool certified = false;
        const std::vector<Vec> no_points;
        Int tmin = levels.empty() ? Int(0) : std::min(levels.begin()->first, Int(0));
        for (Int t = tmin; t <= cap; ++t) {
            auto it = levels.find(t);
            const std::vector<Vec>& cur = it == levels.end() ? no_points : it->second;
            Int dim = Int(cur.size());
            if (dim != 0) {
                auto low = levels.find(t - q.degree);
                if (low != levels.end() && !low->second.empty()) {
                    // Rows: theta_j * m over monomials m one level down.
                    std::map<Vec, std::size_t> col;
                    for (std::size_t i = 0; i < cur.size(); ++i) col[cur[i]] = i;
                    std::vector<QVec> rows;
                    for (const auto& combo : q.theta)
                        for (const Vec& m : low->second) {
                            QVec row(cur.size(), Rat(0));
                            for (const auto& [e, c] : combo) {
                                auto pos = col.find(vec_add(m, e));
                                if (pos == col.end())
                                    throw std::logic_error("parameter term left the module");
                                row[pos->second] += Rat(c);
                            }
                            rows.push_back(std::move(row));
                        }
                    dim -= Int(q_rank(std::move(rows)));
                }
            }
            if (dim != 0) {
                total += dim;
                prev_nonzero = std::max(prev_nonzero, t);
                zero_run_start = -1;
            } else if (t > t0) {
                if (zero_run_start < 0) zero_run_start = t;
                if (t - zero_run_start + 1 > stretch) {
                    certified = true;
                    break;
                }
            }
        }
        if (certified) return total;
        cap = cap * 2 + stretch;
    }
}

/// Serre's numerical test for the rank-one module T(a): for a common system
/// of parameters q, length(M/qM) >= e(q; M) = e(q; R) = length(R/qR) (the
/// ring is Cohen--Macaulay), with equality exactly when M is.
struct CMReport {
    bool cm = false;
    Int e_module = 0;
    Int e_ring = 0;
    std::size_t mu = 0;
};

inline CMReport cohen_macaulay_test(const AffineSemigroup& s, const Vec& a,
                                    std::uint32_t seed = 9001) {
    CMReport rep;
    ParameterSystem q = make_parameter_system(s, seed);
    rep.e_ring = parameter_colength(s, q, Vec(s.support_forms().size(), Int(0)));
    rep.e_module = parameter_colength(s, q, a);
    rep.mu = mu_of_bounds(s, a);
    rep.cm = rep.e_module == rep.e_ring;
    return rep;
}

/// S is simplicial when the cone has exactly rank many extreme rays; then
/// every divisorial ideal is Cohen--Macaulay and Cl(R) is finite.
struct SimplicialReport {
    bool simplicial = false;
    std::size_t ray_count = 0;
};

inline SimplicialReport simplicial_check(const AffineSemigroup& s) {
    SimplicialReport rep;
    rep.ray_count = s.cone.rays.size();
    rep.simplicial = rep.ray_count == s.rank;
    return rep;
}

}  // namespace divalg
