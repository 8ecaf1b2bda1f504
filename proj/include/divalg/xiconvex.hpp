#pragma once

#include "divalg/divisor.hpp"

namespace divalg {

/// Translation vector y with T(a; xi) = y + T(b; xi), when one exists.
inline std::optional<Vec> xi_iso_witness(const AffineSemigroup& s, const std::vector<Vec>& xi,
                                         const Vec& a, const Vec& b) {
    Vec ea = eff_bounds(s, xi, a), eb = eff_bounds(s, xi, b);
    IntMatrix m(xi.size(), s.rank);
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t j = 0; j < s.rank; ++j) m.at(i, j) = xi[i][j];
    return lattice_solve(m, vec_sub(ea, eb));
}

struct IntersectionReport {
    AffineSemigroup semigroup;      // recomputed from the concatenated forms
    std::vector<Vec> forms;         // the concatenated system
    Vec bounds;                     // the concatenated bound vector
    std::vector<Vec> generators;    // minimal module generators, or the full
                                    // finite set when the cone is trivial
    bool empty = false;
};

/// Intersection of two convex modules in a common ambient lattice, as a
/// module over the semigroup of the concatenated inequality system.
inline IntersectionReport intersect_modules(std::size_t rank, const std::vector<Vec>& xi,
                                            const Vec& a, const std::vector<Vec>& zeta,
                                            const Vec& b) {
    if (xi.size() != a.size() || zeta.size() != b.size())
        throw InputError("bound vector length mismatch");
    for (const Vec& f : xi)
        if (f.size() != rank) throw InputError("form length mismatch");
    for (const Vec& f : zeta)
        if (f.size() != rank) throw InputError("form length mismatch");
    IntersectionReport rep;
    rep.forms = xi;
    rep.forms.insert(rep.forms.end(), zeta.begin(), zeta.end());
    rep.bounds = a;
    rep.bounds.insert(rep.bounds.end(), b.begin(), b.end());
    // The recession cone of the intersection.
    std::vector<Vec> rays;
    try {
        rays = extreme_rays_from_forms(rep.forms, rank);
    } catch (const HypothesisError&) {
        throw HypothesisError("intersection cone is not pointed");
    }
    if (rays.empty()) {
        // Bounded intersection: the module is a finite set over the trivial
        // semigroup; every point is a generator.
        RationalPolyhedron p;
        p.dim = rank;
        p.forms = rep.forms;
        p.bounds = rep.bounds;
        rep.generators = lattice_points(p);
        std::sort(rep.generators.begin(), rep.generators.end());
        rep.empty = rep.generators.empty();
        return rep;
    }
    if (int_rank(rays) < rank)
        throw HypothesisError("intersection cone is not full-dimensional");
    rep.semigroup = AffineSemigroup::from_inequalities(rep.forms);
    rep.generators = module_minimal_generators(rep.semigroup, rep.forms, rep.bounds);
    return rep;
}

struct SmallMuReport {
    std::vector<Vec> classes;     // presentation coordinates of Z^n/xi(gp S)
    std::vector<std::size_t> mu;  // parallel to classes
    std::size_t shell_min_mu = 0; // min mu on the boundary shell of the box
    bool experimentally_finite = false;  // shell_min_mu exceeds the cap
};

/// Classes of xi-convex ideals with at most mu_cap generators, searched over
/// a box of the given radius in the free coordinates (torsion coordinates
/// are enumerated in full). The shell diagnostic reports whether the search
/// boundary already exceeds the cap everywhere.
inline SmallMuReport enumerate_small_mu(const AffineSemigroup& s, const std::vector<Vec>& xi,
                                        const AbelianPresentation& pres, std::size_t mu_cap,
                                        const Int& box) {
    SmallMuReport rep;
    bool shell_seen = false;
    Vec c(pres.coord_count(), Int(0));
    std::function<void(std::size_t)> scan = [&](std::size_t i) {
        if (i == pres.coord_count()) {
            std::size_t mu = module_minimal_generators(s, xi, pres.lift(c)).size();
            bool shell = false;
            for (std::size_t k = pres.invariant_factors.size(); k < c.size(); ++k)
                if (int_abs(c[k]) == box) shell = true;
            if (shell) {
                if (!shell_seen || mu < rep.shell_min_mu) rep.shell_min_mu = mu;
                shell_seen = true;
            }
            if (mu <= mu_cap) {
                rep.classes.push_back(c);
                rep.mu.push_back(mu);
            }
            return;
        }
        if (i < pres.invariant_factors.size()) {
            for (Int v = 0; v < pres.invariant_factors[i]; ++v) {
                c[i] = v;
                scan(i + 1);
            }
        } else {
            for (Int v = -box; v <= box; ++v) {
                c[i] = v;
                scan(i + 1);
            }
        }
    };
    scan(0);
    rep.experimentally_finite = shell_seen && rep.shell_min_mu > mu_cap;
    if (pres.free_rank == 0) rep.experimentally_finite = true;  // full enumeration
    return rep;
}

}  // namespace divalg
