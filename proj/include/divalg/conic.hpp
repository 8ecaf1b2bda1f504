#pragma once

#include "divalg/divisor.hpp"

#include <map>

namespace divalg {

namespace detail {

/// Witness search for the ceiling system: beta with a_i - 1 < sigma_i(beta)
/// <= a_i for all i, optionally confined to the half-open unit cube
/// 0 <= beta_j < 1.
inline std::optional<QVec> ceiling_witness(const AffineSemigroup& s, const Vec& a,
                                           bool in_unit_cube) {
    const std::vector<Vec>& sigma = s.support_forms();
    std::vector<QVec> strict, weak;
    QVec sb, wb;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        QVec row(s.rank), neg(s.rank);
        for (std::size_t j = 0; j < s.rank; ++j) {
            row[j] = Rat(sigma[i][j]);
            neg[j] = -Rat(sigma[i][j]);
        }
        strict.push_back(std::move(row));  // sigma_i(beta) > a_i - 1
        sb.push_back(Rat(a[i]) - 1);
        weak.push_back(std::move(neg));    // sigma_i(beta) <= a_i
        wb.push_back(-Rat(a[i]));
    }
    if (in_unit_cube)
        for (std::size_t j = 0; j < s.rank; ++j) {
            QVec lo(s.rank, Rat(0)), hi(s.rank, Rat(0));
            lo[j] = 1;
            hi[j] = -1;
            weak.push_back(std::move(lo));  // beta_j >= 0
            wb.push_back(Rat(0));
            strict.push_back(std::move(hi));  // beta_j < 1
            sb.push_back(Rat(-1));
        }
    return mixed_feasibility(strict, sb, weak, wb);
}

}  // namespace detail

struct ConicWitness {
    Vec bounds;  // the vector a with a_i = ceil(sigma_i(beta))
    QVec beta;
};

struct ConicReport {
    std::vector<Vec> classes;            // class coordinates, sorted
    std::vector<ConicWitness> witnesses; // one per class, parallel to classes
    bool complete = true;                // candidate box provably covers the cube
};

/// All classes of modules Z^r <intersect> (beta + C(S)): candidates are the
/// integer vectors a with a_i in the ceiling range of sigma_i over the unit
/// cube, kept when a_i - 1 < sigma_i(beta) <= a_i has a solution beta in
/// [0,1)^r.
inline ConicReport conic_classes(const AffineSemigroup& s, const DivisorClassGroup& cl) {
    const std::vector<Vec>& sigma = s.support_forms();
    // Extrema of each form over the closed unit cube are the sums of its
    // negative resp. positive coefficients.
    std::vector<Int> lo(sigma.size(), Int(0)), hi(sigma.size(), Int(0));
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        Int mn = 0, mx = 0;
        for (const Int& c : sigma[i]) (c < 0 ? mn : mx) += c;
        lo[i] = mn;  // = ceil(mn), integral
        hi[i] = mx;
    }
    std::map<Vec, ConicWitness> found;
    Vec a(sigma.size());
    std::function<void(std::size_t)> scan = [&](std::size_t i) {
        if (i == sigma.size()) {
            auto beta = detail::ceiling_witness(s, a, /*in_unit_cube=*/true);
            if (!beta) return;
            Vec c = cl.class_of_bounds(a);
            if (!found.count(c)) found[c] = ConicWitness{a, std::move(*beta)};
            return;
        }
        for (Int v = lo[i]; v <= hi[i]; ++v) {
            a[i] = v;
            scan(i + 1);
        }
    };
    scan(0);
    ConicReport rep;
    for (auto& [c, w] : found) {
        rep.classes.push_back(c);
        rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

/// Membership test for one bound vector: is T(a) of conic type?
inline std::optional<QVec> conic_witness(const AffineSemigroup& s, const Vec& a) {
    return detail::ceiling_witness(s, a, /*in_unit_cube=*/false);
}

struct FaceIdealReport {
    std::vector<std::size_t> tight;  // validated facet index set of the face
    Vec q_bounds;                    // a_i = 1 on the tight set, 0 elsewhere
    Vec r_bounds;                    // the complementary indicator
    QVec q_witness;
    QVec r_witness;
};

/// The two conic ideals attached to a face: the intersection of the facet
/// primes containing it, and the complementary intersection.
inline FaceIdealReport face_ideal_bounds(const AffineSemigroup& s,
                                         const std::vector<std::size_t>& facet_set) {
    const std::vector<Vec>& sigma = s.support_forms();
    for (std::size_t i : facet_set)
        if (i >= sigma.size()) throw InputError("facet index out of range");
    // The face cut out by the given facets is spanned by the Hilbert basis
    // elements vanishing on all of them; the set must be exactly the forms
    // vanishing on that span, otherwise it names no face.
    std::vector<bool> in(sigma.size(), false);
    for (std::size_t i : facet_set) in[i] = true;
    std::vector<const Vec*> span;
    for (const Vec& h : s.hilbert) {
        bool on_face = true;
        for (std::size_t i : facet_set)
            if (dot(sigma[i], h) != 0) on_face = false;
        if (on_face) span.push_back(&h);
    }
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        bool vanishes = true;
        for (const Vec* h : span)
            if (dot(sigma[i], *h) != 0) vanishes = false;
        if (vanishes) tight.push_back(i);
    }
    std::vector<std::size_t> given(facet_set);
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    if (tight != given) throw InputError("facet set is not the tight set of a face");
    FaceIdealReport rep;
    rep.tight = given;
    rep.q_bounds.assign(sigma.size(), Int(0));
    rep.r_bounds.assign(sigma.size(), Int(0));
    for (std::size_t i = 0; i < sigma.size(); ++i)
        (in[i] ? rep.q_bounds : rep.r_bounds)[i] = 1;
    auto qw = conic_witness(s, rep.q_bounds);
    auto rw = conic_witness(s, rep.r_bounds);
    if (!qw || !rw) throw std::logic_error("face ideal witness not found");
    rep.q_witness = std::move(*qw);
    rep.r_witness = std::move(*rw);
    return rep;
}

struct CanonicalDualReport {
    Vec bounds;  // 1 - a, the bounds of omega : T(a)
    QVec beta;   // perturbed witness for a; -beta witnesses the dual
};

/// For conic T(a) the dual omega : T(a) is conic with bounds 1 - a,
/// witnessed by -beta once beta is moved into the open cell where no
/// sigma_i(beta) is integral.
inline CanonicalDualReport canonical_dual_bounds(const AffineSemigroup& s, const Vec& a) {
    const std::vector<Vec>& sigma = s.support_forms();
    if (a.size() != sigma.size()) throw InputError("bound vector length mismatch");
    // Open-cell witness: a_i - 1 < sigma_i(beta) < a_i for all i.
    std::vector<QVec> strict;
    QVec sb;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        QVec row(s.rank), neg(s.rank);
        for (std::size_t j = 0; j < s.rank; ++j) {
            row[j] = Rat(sigma[i][j]);
            neg[j] = -Rat(sigma[i][j]);
        }
        strict.push_back(std::move(row));
        sb.push_back(Rat(a[i]) - 1);
        strict.push_back(std::move(neg));
        sb.push_back(-Rat(a[i]));
    }
    auto beta = strict_feasibility(strict, sb);
    if (!beta) throw HypothesisError("bound vector is not conic (no open-cell witness)");
    CanonicalDualReport rep;
    rep.beta = std::move(*beta);
    rep.bounds.resize(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) rep.bounds[i] = Int(1) - a[i];
    // -beta lies in the open cell of the dual bounds by construction; check.
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        Rat v = 0;
        for (std::size_t j = 0; j < s.rank; ++j) v -= Rat(sigma[i][j]) * rep.beta[j];
        if (!(Rat(rep.bounds[i]) - 1 < v && v < Rat(rep.bounds[i])))
            throw std::logic_error("dual witness left its cell");
    }
    return rep;
}

struct FrobeniusReport {
    Int k = 1;
    std::map<Vec, Int> class_multiplicity;  // class coordinates -> coset count
};

/// Decomposition of R over its k-th Veronese-by-powers subring R^(k): each
/// residue z mod k contributes the coset module with bounds ceil(sigma(z)/k).
inline FrobeniusReport frobenius_decomposition(const AffineSemigroup& s,
                                               const DivisorClassGroup& cl, const Int& k) {
    if (k < 1) throw InputError("frobenius exponent must be >= 1");
    const std::vector<Vec>& sigma = s.support_forms();
    FrobeniusReport rep;
    rep.k = k;
    Vec z(s.rank, Int(0));
    std::function<void(std::size_t)> scan = [&](std::size_t j) {
        if (j == s.rank) {
            Vec a(sigma.size());
            for (std::size_t i = 0; i < sigma.size(); ++i)
                a[i] = ceil_div(dot(sigma[i], z), k);
            ++rep.class_multiplicity[cl.class_of_bounds(a)];
            return;
        }
        for (Int v = 0; v < k; ++v) {
            z[j] = v;
            scan(j + 1);
        }
    };
    scan(0);
    return rep;
}

struct FrobeniusLadder {
    Int stable_k = 0;  // first ladder value agreeing with its successor
    std::vector<Vec> classes;
    bool stabilized = false;
};

/// Walks k = 1, 2, ... up to k_max until two successive values produce the
/// same class set; that set equals the conic classes for k large.
inline FrobeniusLadder frobenius_ladder(const AffineSemigroup& s, const DivisorClassGroup& cl,
                                        const Int& k_max = Int(24)) {
    FrobeniusLadder lad;
    std::vector<Vec> prev;
    for (Int k = 1; k <= k_max; ++k) {
        auto rep = frobenius_decomposition(s, cl, k);
        std::vector<Vec> cur;
        for (const auto& [c, n] : rep.class_multiplicity) cur.push_back(c);
        if (k > 1 && cur == prev) {
            lad.stable_k = k - 1;
            lad.classes = cur;
            lad.stabilized = true;
            return lad;
        }
        prev = std::move(cur);
    }
    lad.classes = prev;
    return lad;
}

}  // namespace divalg
