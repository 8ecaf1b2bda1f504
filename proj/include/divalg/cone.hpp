#pragma once

#include "divalg/normal_form.hpp"

#include <algorithm>
#include <set>

namespace divalg {

namespace detail {

// Visits all size-k subsets of {0, ..., n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(const_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::vector<Vec> sorted_unique(std::vector<Vec> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Clears denominators of a rational vector into a primitive integer vector.
inline Vec q_to_primitive(const QVec& q) {
    Int l = 1;
    for (const Rat& e : q) l = int_lcm(l, denominator(e));
    Vec v(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        v[i] = numerator(q[i]) * (l / denominator(q[i]));
    return make_primitive(std::move(v));
}

}  // namespace detail

/// Facet forms of the full-dimensional pointed cone spanned by the given
/// rays in Z^dim. Each returned form is primitive and non-negative on every
/// ray; its zero set among the rays spans a hyperplane.
inline std::vector<Vec> facet_forms_from_rays(const std::vector<Vec>& rays, std::size_t dim) {
    if (rays.empty()) {
        // The zero cone: cut out by the coordinate forms and their negatives.
        std::vector<Vec> forms;
        for (std::size_t i = 0; i < dim; ++i) {
            Vec e(dim, Int(0));
            e[i] = 1;
            forms.push_back(e);
            e[i] = -1;
            forms.push_back(e);
        }
        return detail::sorted_unique(std::move(forms));
    }
    for (const Vec& r : rays)
        if (r.size() != dim) throw InputError("ray dimension mismatch");
    if (int_rank(rays) != dim)
        throw HypothesisError("cone is not full-dimensional");
    std::vector<Vec> forms;
    detail::for_each_subset(rays.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<Vec> sub;
        for (std::size_t i : idx) sub.push_back(rays[i]);
        if (int_rank(sub) + 1 != dim) return;
        std::vector<Vec> ns = null_space(sub, dim);
        if (ns.size() != 1) return;
        Vec form = make_primitive(ns[0]);
        bool any_pos = false, any_neg = false;
        for (const Vec& r : rays) {
            Int s = dot(form, r);
            if (s > 0) any_pos = true;
            if (s < 0) any_neg = true;
        }
        if (any_pos && any_neg) return;
        if (any_neg) form = vec_neg(form);
        forms.push_back(std::move(form));
    });
    if (forms.empty()) throw HypothesisError("cone has no facets");  // not pointed
    return detail::sorted_unique(std::move(forms));
}

/// Extreme rays of the pointed full-dimensional cone {x : f(x) >= 0 for all
/// given forms f}. Symmetric to the facet computation by duality.
inline std::vector<Vec> extreme_rays_from_forms(const std::vector<Vec>& forms, std::size_t dim) {
    for (const Vec& f : forms)
        if (f.size() != dim) throw InputError("form dimension mismatch");
    if (int_rank(forms) != dim) throw HypothesisError("cone is not pointed");
    std::vector<Vec> rays;
    detail::for_each_subset(forms.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<Vec> sub;
        for (std::size_t i : idx) sub.push_back(forms[i]);
        if (int_rank(sub) + 1 != dim) return;
        std::vector<Vec> ns = null_space(sub, dim);
        if (ns.size() != 1) return;
        Vec ray = make_primitive(ns[0]);
        bool any_pos = false, any_neg = false;
        for (const Vec& f : forms) {
            Int s = dot(f, ray);
            if (s > 0) any_pos = true;
            if (s < 0) any_neg = true;
        }
        if (any_pos && any_neg) return;
        if (any_neg) ray = vec_neg(ray);
        if (!any_pos && !any_neg) return;  // lineality direction cannot occur when pointed
        rays.push_back(std::move(ray));
    });
    return detail::sorted_unique(std::move(rays));
}

/// A full-dimensional pointed rational cone, stored canonically: primitive
/// extreme rays and primitive facet forms, each lexicographically sorted.
struct RationalCone {
    std::size_t dim = 0;
    std::vector<Vec> rays;   // extreme rays, primitive
    std::vector<Vec> forms;  // facet/support forms, primitive

    static RationalCone from_rays(std::vector<Vec> rays, std::size_t dim) {
        RationalCone c;
        c.dim = dim;
        c.forms = facet_forms_from_rays(rays, dim);
        if (rays.empty()) {
            return c;  // the zero cone
        }
        c.rays = extreme_rays_from_forms(c.forms, dim);
        // Sanity: every input ray lies in the reconstructed cone.
        for (const Vec& r : rays)
            if (!c.contains(r)) throw std::logic_error("dualization lost a generator");
        return c;
    }

    static RationalCone from_forms(std::vector<Vec> forms, std::size_t dim) {
        RationalCone c;
        c.dim = dim;
        c.rays = extreme_rays_from_forms(forms, dim);
        if (int_rank(c.rays) != dim) throw HypothesisError("cone is not full-dimensional");
        c.forms = facet_forms_from_rays(c.rays, dim);
        return c;
    }

    bool contains(const Vec& x) const {
        for (const Vec& f : forms)
            if (dot(f, x) < 0) return false;
        return true;
    }

    bool contains_strictly(const Vec& x) const {
        for (const Vec& f : forms)
            if (dot(f, x) <= 0) return false;
        return true;
    }

    /// Total degree functional, positive on every nonzero cone point.
    Int tau(const Vec& x) const {
        Int t = 0;
        for (const Vec& f : forms) t += dot(f, x);
        return t;
    }
};

namespace detail {

// Pulling triangulation of cone(rays) of linear dimension d, rays assumed
// extreme and in arbitrary ambient dimension. Returns simplices as index
// lists into `rays`.
inline std::vector<std::vector<std::size_t>> triangulate_indices(const std::vector<Vec>& rays,
                                                                 std::size_t d) {
    const std::size_t n = rays.size();
    if (n == d) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return {all};
    }
    // Work in coordinates on span(rays): pick d independent rays as a basis.
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < n && basis.size() < d; ++i) {
        basis.push_back(rays[i]);
        if (int_rank(basis) != basis.size()) basis.pop_back();
    }
    if (basis.size() != d) throw std::logic_error("triangulation: rank drop");
    const std::size_t amb = rays[0].size();
    std::vector<QVec> bmat(amb, QVec(d));
    for (std::size_t i = 0; i < amb; ++i)
        for (std::size_t j = 0; j < d; ++j) bmat[i][j] = Rat(basis[j][i]);
    std::vector<Vec> coords;
    for (const Vec& r : rays) {
        QVec rhs(amb);
        for (std::size_t i = 0; i < amb; ++i) rhs[i] = Rat(r[i]);
        auto sol = q_solve(bmat, rhs);
        if (!sol) throw std::logic_error("triangulation: ray outside span");
        coords.push_back(q_to_primitive(*sol));
    }
    std::vector<Vec> facet_forms = facet_forms_from_rays(coords, d);
    std::vector<std::vector<std::size_t>> out;
    const std::size_t v0 = 0;
    for (const Vec& f : facet_forms) {
        if (dot(f, coords[v0]) == 0) continue;  // pull from facets missing v0
        std::vector<std::size_t> fidx;
        for (std::size_t i = 0; i < n; ++i)
            if (dot(f, coords[i]) == 0) fidx.push_back(i);
        std::vector<Vec> frays;
        for (std::size_t i : fidx) frays.push_back(rays[i]);
        for (auto& simplex : triangulate_indices(frays, d - 1)) {
            std::vector<std::size_t> s;
            s.push_back(v0);
            for (std::size_t i : simplex) s.push_back(fidx[i]);
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace detail

/// Pulling triangulation into simplicial subcones; rays must be the extreme
/// rays of a full-dimensional pointed cone in Z^dim. Each simplex is a list
/// of dim ray indices.
inline std::vector<std::vector<std::size_t>> triangulate_rays(const std::vector<Vec>& rays,
                                                              std::size_t dim) {
    if (int_rank(rays) != dim) throw HypothesisError("cone is not full-dimensional");
    return detail::triangulate_indices(rays, dim);
}

/// Lattice points of the half-open parallelepiped { sum t_i g_i : 0 <= t_i < 1 }
/// spanned by dim linearly independent integer vectors. Exactly |det G|
/// points, the origin included, found by Smith-form residue enumeration.
inline std::vector<Vec> parallelepiped_points(const std::vector<Vec>& gens) {
    const std::size_t dim = gens.size();
    if (dim == 0) return {Vec{}};
    IntMatrix g = IntMatrix::from_columns(gens, gens[0].size());
    if (g.rows() != dim) throw InputError("parallelepiped: generators must be square");
    auto [d, u, v] = smith_normal_form(g);
    (void)v;
    Int count = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (d.at(i, i) == 0) throw InputError("parallelepiped: generators dependent");
        count *= d.at(i, i);
    }
    if (count > 2000000) throw ResourceError("parallelepiped too large: " + count.str());

    // U^{-1} and G^{-1}, exactly.
    std::vector<QVec> uq(dim, QVec(dim)), gq(dim, QVec(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            uq[i][j] = Rat(u.at(i, j));
            gq[i][j] = Rat(g.at(i, j));
        }
    std::vector<QVec> uinv = q_inverse(std::move(uq));
    std::vector<QVec> ginv = q_inverse(std::move(gq));

    std::vector<Vec> out;
    Vec t(dim, Int(0));
    while (true) {
        // Representative of the residue class: x0 = U^{-1} t.
        QVec x0(dim, Rat(0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) x0[i] += uinv[i][j] * Rat(t[j]);
        // Reduce into the parallelepiped: lambda = G^{-1} x0, keep fractions.
        QVec lam(dim, Rat(0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) lam[i] += ginv[i][j] * x0[j];
        for (std::size_t i = 0; i < dim; ++i) lam[i] -= Rat(rat_floor(lam[i]));
        Vec x(dim, Int(0));
        for (std::size_t i = 0; i < dim; ++i) {
            Rat xi = 0;
            for (std::size_t j = 0; j < dim; ++j) xi += Rat(g.at(i, j)) * lam[j];
            if (denominator(xi) != 1) throw std::logic_error("parallelepiped point not integral");
            x[i] = numerator(xi);
        }
        out.push_back(std::move(x));
        // Next residue tuple.
        std::size_t k = 0;
        while (k < dim) {
            ++t[k];
            if (t[k] < d.at(k, k)) break;
            t[k] = 0;
            ++k;
        }
        if (k == dim) break;
    }
    return detail::sorted_unique(std::move(out));
}

/// The Hilbert basis of cone intersected with Z^dim: the unique minimal
/// generating set of the monoid, i.e. its irreducible elements.
inline std::vector<Vec> hilbert_basis(const RationalCone& cone) {
    if (cone.rays.empty()) return {};
    std::vector<Vec> cand = cone.rays;
    for (const auto& simplex : triangulate_rays(cone.rays, cone.dim)) {
        std::vector<Vec> gens;
        for (std::size_t i : simplex) gens.push_back(cone.rays[i]);
        for (Vec& p : parallelepiped_points(gens))
            if (!is_zero(p)) cand.push_back(std::move(p));
    }
    cand = detail::sorted_unique(std::move(cand));
    std::stable_sort(cand.begin(), cand.end(),
                     [&](const Vec& a, const Vec& b) { return cone.tau(a) < cone.tau(b); });
    std::vector<Vec> basis;
    for (const Vec& x : cand) {
        bool reducible = false;
        for (const Vec& h : basis) {
            Vec rem = vec_sub(x, h);
            if (!is_zero(rem) && cone.contains(rem)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(x);
    }
    return detail::sorted_unique(std::move(basis));
}

}  // namespace divalg
