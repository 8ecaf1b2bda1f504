#pragma once

#include "divalg/semigroup.hpp"

namespace divalg {

/// The module T(a; xi) = { x in Z^rank : xi_i(x) >= a_i } as a polyhedron.
inline RationalPolyhedron module_region(const AffineSemigroup& s, const std::vector<Vec>& xi,
                                        const Vec& a) {
    if (xi.size() != a.size()) throw InputError("bound vector length mismatch");
    RationalPolyhedron p;
    p.dim = s.rank;
    p.forms = xi;
    p.bounds = a;
    return p;
}

/// Minimal S-module generators of T(a; xi). Requires every xi_i to be
/// non-negative on S, so that the region is an S-module. Works through the
/// cone over the region at height one: candidates are its height-one
/// irreducible points, then each is checked against the Hilbert basis.
inline std::vector<Vec> module_minimal_generators(const AffineSemigroup& s,
                                                  const std::vector<Vec>& xi, const Vec& a) {
    if (xi.size() != a.size()) throw InputError("bound vector length mismatch");
    const std::size_t r = s.rank;
    for (const Vec& f : xi) {
        if (f.size() != r) throw InputError("form dimension mismatch");
        for (const Vec& ray : s.cone.rays)
            if (dot(f, ray) < 0)
                throw HypothesisError("region is not a module: form negative on the cone");
    }
    // Cone over the region: { (x, t) : xi_i(x) - a_i t >= 0, t >= 0 },
    // full-dimensional and pointed in Z^(r+1).
    std::vector<Vec> lifted_forms;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        Vec f = xi[i];
        f.push_back(-a[i]);
        lifted_forms.push_back(std::move(f));
    }
    {
        Vec t(r + 1, Int(0));
        t[r] = 1;
        lifted_forms.push_back(std::move(t));
    }
    RationalCone lifted;
    try {
        lifted = RationalCone::from_forms(lifted_forms, r + 1);
    } catch (const HypothesisError&) {
        return {};  // empty region
    }
    const RationalPolyhedron region = module_region(s, xi, a);
    std::vector<Vec> cand;
    auto take = [&](const Vec& p) {
        if (p[r] != 1) return;
        Vec x(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(r));
        if (region.contains(x)) cand.push_back(std::move(x));
    };
    for (const Vec& ray : lifted.rays) take(ray);
    for (const auto& simplex : triangulate_rays(lifted.rays, r + 1)) {
        std::vector<Vec> gens;
        for (std::size_t i : simplex) gens.push_back(lifted.rays[i]);
        for (const Vec& p : parallelepiped_points(gens)) take(p);
    }
    cand = detail::sorted_unique(std::move(cand));
    std::vector<Vec> out;
    for (const Vec& x : cand) {
        bool reducible = false;
        for (const Vec& h : s.hilbert)
            if (region.contains(vec_sub(x, h))) {
                reducible = true;
                break;
            }
        if (!reducible) out.push_back(x);
    }
    return out;
}

/// Minimal generators for a divisorial ideal given by bounds against the
/// standard support forms.
inline std::vector<Vec> minimal_generators(const AffineSemigroup& s, const Vec& a) {
    return module_minimal_generators(s, s.support_forms(), a);
}

/// Tightest bounds describing the same region: eff(a)_i is the least value
/// of xi_i on T(a; xi), attained on a minimal generator.
inline Vec eff_bounds(const AffineSemigroup& s, const std::vector<Vec>& xi, const Vec& a) {
    std::vector<Vec> gens = module_minimal_generators(s, xi, a);
    if (gens.empty()) throw HypothesisError("empty module has no effective bounds");
    Vec e(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        e[i] = dot(xi[i], gens[0]);
        for (const Vec& g : gens) e[i] = std::min(e[i], dot(xi[i], g));
    }
    return e;
}

/// The divisor class group Cl(R) = Z^s / sigma(gp(S)), with an orientation
/// convention: when the free part has rank one, its generator is chosen so
/// that the class lifting to +1 needs at most as many generators as its
/// negative.
struct DivisorClassGroup {
    AbelianPresentation pres;

    Vec class_of_bounds(const Vec& a) const { return pres.project(a); }
    Vec bounds_of_class(const Vec& c) const { return pres.lift(c); }
};

inline std::size_t mu_of_bounds(const AffineSemigroup& s, const Vec& a) {
    return minimal_generators(s, a).size();
}

inline DivisorClassGroup divisor_class_group(const AffineSemigroup& s) {
    const std::vector<Vec>& sigma = s.support_forms();
    // Columns: the image of the standard basis of gp(S) under all forms.
    IntMatrix img(sigma.size(), s.rank);
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = 0; j < s.rank; ++j) img.at(i, j) = sigma[i][j];
    DivisorClassGroup cl;
    cl.pres = quotient_presentation(img);
    if (cl.pres.free_rank == 1) {
        const std::size_t k = cl.pres.invariant_factors.size();
        Vec plus(cl.pres.coord_count(), Int(0));
        plus[k] = 1;
        Vec minus = plus;
        minus[k] = -1;
        std::size_t mu_plus = mu_of_bounds(s, cl.pres.lift(plus));
        std::size_t mu_minus = mu_of_bounds(s, cl.pres.lift(minus));
        if (mu_plus > mu_minus) {
            for (std::size_t j = 0; j < cl.pres.projection.cols(); ++j)
                cl.pres.projection.at(k, j) = -cl.pres.projection.at(k, j);
            for (std::size_t i = 0; i < cl.pres.section.rows(); ++i)
                cl.pres.section.at(i, k) = -cl.pres.section.at(i, k);
        }
    }
    return cl;
}

inline std::size_t mu_of_class(const AffineSemigroup& s, const DivisorClassGroup& cl,
                               const Vec& c) {
    return mu_of_bounds(s, cl.bounds_of_class(c));
}

/// Class of the canonical module T(1, ..., 1).
inline Vec canonical_class(const AffineSemigroup& s, const DivisorClassGroup& cl) {
    return cl.class_of_bounds(Vec(s.support_forms().size(), Int(1)));
}

/// Whether T(a; xi) and T(b; xi) are translates of one another, i.e. define
/// isomorphic modules: eff(a) - eff(b) must be a xi-value vector.
inline bool modules_isomorphic(const AffineSemigroup& s, const std::vector<Vec>& xi,
                               const Vec& a, const Vec& b) {
    Vec ea = eff_bounds(s, xi, a), eb = eff_bounds(s, xi, b);
    IntMatrix m(xi.size(), s.rank);
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t j = 0; j < s.rank; ++j) m.at(i, j) = xi[i][j];
    return lattice_solve(m, vec_sub(ea, eb)).has_value();
}

}  // namespace divalg
