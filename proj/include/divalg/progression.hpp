#pragma once

#include "divalg/conic.hpp"
#include "divalg/depth.hpp"

namespace divalg {

struct ProgressionReport {
    Vec c, d;                      // direction and offset, class coordinates
    std::vector<std::size_t> mu;   // mu(M_{jc+d}) for j = 0..J
    std::size_t degree = 0;        // m: max compact-face dimension of C(lift(c))
    Int period = 1;                // e: detected quasi-polynomial period
    std::vector<Int> limits;       // L_k = lim mu * m! / j^m per residue k mod e
    std::size_t inf_depth = 0;     // rank - m
};

/// Growth of mu along the arithmetic progression of classes jc + d. The
/// degree m is read off the polyhedron of the direction class; the period
/// and the per-residue leading constants come from finite differences of
/// the mu table.
inline ProgressionReport progression_analysis(const AffineSemigroup& s,
                                              const DivisorClassGroup& cl, const Vec& c,
                                              const Vec& d, std::size_t j_max) {
    if (cl.pres.element_order(c))
        throw HypothesisError("progression direction must be non-torsion");
    ProgressionReport rep;
    rep.c = cl.pres.reduce(c);
    rep.d = cl.pres.reduce(d);
    for (std::size_t j = 0; j <= j_max; ++j)
        rep.mu.push_back(mu_of_class(s, cl, cl.pres.add(cl.pres.scale(Int(j), c), d)));
    // Degree: the maximal dimension of a compact face of the polyhedron of
    // the direction class.
    {
        RationalPolyhedron p =
            module_region(s, s.support_forms(), cl.bounds_of_class(rep.c));
        for (const FaceReport& f : face_lattice(p))
            if (f.compact) rep.degree = std::max(rep.degree, f.dim);
    }
    rep.inf_depth = s.rank - rep.degree;
    const std::size_t m = rep.degree;
    // Period: smallest e such that every residue subsequence has constant
    // m-th finite differences on the tail; then L_k = diff / e^m.
    for (std::size_t e = 1; e * 4 <= j_max + 1; ++e) {
        std::vector<Int> limits;
        bool ok = true;
        for (std::size_t k = 0; k < e && ok; ++k) {
            std::vector<Int> seq;
            for (std::size_t j = k; j <= j_max; j += e) seq.push_back(Int(rep.mu[j]));
            for (std::size_t t = 0; t < m; ++t)
                for (std::size_t i = seq.size(); i-- > 1;) seq[i] -= seq[i - 1];
            if (seq.size() < m + 3) {
                ok = false;
                break;
            }
            // Require the tail half of the m-th differences constant.
            const std::size_t tail = std::max<std::size_t>(2, (seq.size() - m) / 2);
            for (std::size_t i = seq.size() - tail; i < seq.size(); ++i)
                if (seq[i] != seq.back()) ok = false;
            if (!ok) break;
            Int em = 1;
            for (std::size_t t = 0; t < m; ++t) em *= Int(e);
            if (seq.back() <= 0 || seq.back() % em != 0) {
                ok = false;
                break;
            }
            limits.push_back(seq.back() / em);
        }
        if (ok) {
            rep.period = Int(e);
            rep.limits = std::move(limits);
            return rep;
        }
    }
    throw ResourceError("progression tail not stabilized; increase the table length");
}

}  // namespace divalg
