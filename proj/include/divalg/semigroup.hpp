#pragma once

#include "divalg/polyhedron.hpp"

#include <functional>
#include <map>

namespace divalg {

/// A positive normal affine semigroup S = C cap Z^rank, stored in
/// coordinates on its own group: gp(S) = Z^rank. When the input lattice was
/// a proper sublattice of the ambient Z^n, `embedding` maps the normalized
/// coordinates back (original = embedding * normalized).
struct AffineSemigroup {
    std::size_t rank = 0;
    RationalCone cone;
    std::vector<Vec> hilbert;  // Hilbert basis; the minimal generating set
    IntMatrix embedding;

    const std::vector<Vec>& support_forms() const { return cone.forms; }

    bool contains(const Vec& x) const { return cone.contains(x); }

    bool is_interior(const Vec& x) const { return cone.contains_strictly(x); }

    /// Construct from monoid generators in Z^n. The generators must span a
    /// pointed cone (positivity) and generate the full intersection of
    /// their cone with their group (normality).
    static AffineSemigroup from_generators(const std::vector<Vec>& gens) {
        if (gens.empty()) throw InputError("no generators");
        const std::size_t n = gens[0].size();
        for (const Vec& g : gens)
            if (g.size() != n) throw InputError("generator dimension mismatch");
        // Basis of gp(S): column Hermite form of the generator matrix.
        IntMatrix m = IntMatrix::from_columns(gens, n);
        auto [ht, ut] = hermite_normal_form(m.transpose());
        (void)ut;
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < ht.rows(); ++i)
            if (!is_zero(ht.row(i))) basis.push_back(ht.row(i));
        const std::size_t rank = basis.size();

        AffineSemigroup s;
        s.rank = rank;
        s.embedding = IntMatrix::from_columns(basis, n);
        // Generators in lattice coordinates.
        std::vector<Vec> coords;
        for (const Vec& g : gens) {
            auto y = lattice_solve(s.embedding, g);
            if (!y) throw std::logic_error("generator outside its own group");
            coords.push_back(std::move(*y));
        }
        try {
            s.cone = RationalCone::from_rays(coords, rank);
        } catch (const HypothesisError&) {
            throw HypothesisError("semigroup is not positive");
        }
        s.hilbert = hilbert_basis(s.cone);
        // Normality: every Hilbert basis element must be reachable from the
        // input generators.
        std::map<Vec, bool> memo;
        std::function<bool(const Vec&)> reachable = [&](const Vec& x) -> bool {
            if (is_zero(x)) return true;
            auto it = memo.find(x);
            if (it != memo.end()) return it->second;
            memo[x] = false;
            for (const Vec& g : coords) {
                Vec rem = vec_sub(x, g);
                if (s.cone.contains(rem) && reachable(rem)) {
                    memo[x] = true;
                    break;
                }
            }
            return memo[x];
        };
        for (const Vec& h : s.hilbert)
            if (!reachable(h)) throw HypothesisError("semigroup is not normal");
        return s;
    }

    /// Construct from support inequalities: S = {x : forms . x >= 0} cap
    /// Z^r. The cone must be full-dimensional and pointed.
    static AffineSemigroup from_inequalities(const std::vector<Vec>& forms) {
        if (forms.empty()) throw InputError("no inequalities");
        AffineSemigroup s;
        s.rank = forms[0].size();
        try {
            s.cone = RationalCone::from_forms(forms, s.rank);
        } catch (const HypothesisError& e) {
            throw HypothesisError(std::string("semigroup is not positive: ") + e.what());
        }
        s.embedding = IntMatrix::identity(s.rank);
        s.hilbert = hilbert_basis(s.cone);
        return s;
    }
};

/// Outcome of a structural check on a form system.
struct CheckReport {
    bool ok = true;
    std::string reason;
};

/// A form system xi_1, ..., xi_t on S is pure when the monoid of its value
/// vectors reflects the full facet structure: every support form of S is a
/// positive rational multiple of some xi_i, and every xi_i is non-negative
/// on S.
inline CheckReport purity_check(const AffineSemigroup& s, const std::vector<Vec>& xi) {
    CheckReport rep;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i].size() != s.rank) throw InputError("form dimension mismatch");
        for (const Vec& r : s.cone.rays)
            if (dot(xi[i], r) < 0) {
                rep.ok = false;
                rep.reason = "form " + std::to_string(i) + " is negative on the cone";
                return rep;
            }
    }
    for (std::size_t j = 0; j < s.cone.forms.size(); ++j) {
        const Vec& sigma = s.cone.forms[j];
        bool hit = false;
        for (const Vec& x : xi)
            if (!is_zero(x) && make_primitive(x) == sigma) hit = true;
        if (!hit) {
            rep.ok = false;
            rep.reason = "support form " + std::to_string(j) + " missing from the system";
            return rep;
        }
    }
    return rep;
}

/// The system is divisorial when every xi_i is a positive integer multiple
/// of a support form, so each value constraint cuts along a facet.
inline CheckReport divisoriality_check(const AffineSemigroup& s, const std::vector<Vec>& xi) {
    CheckReport rep;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i].size() != s.rank) throw InputError("form dimension mismatch");
        if (is_zero(xi[i])) {
            rep.ok = false;
            rep.reason = "form " + std::to_string(i) + " is zero";
            return rep;
        }
        Vec prim = make_primitive(xi[i]);
        bool facet = std::find(s.cone.forms.begin(), s.cone.forms.end(), prim) !=
                     s.cone.forms.end();
        // Cross-check by face dimension: xi_i cuts a facet exactly when its
        // zero set among the extreme rays spans a hyperplane and xi_i is
        // non-negative on the cone.
        bool nonneg = true;
        std::vector<Vec> killed;
        for (const Vec& r : s.cone.rays) {
            Int v = dot(prim, r);
            if (v < 0) nonneg = false;
            if (v == 0) killed.push_back(r);
        }
        bool facet_by_rank = nonneg && int_rank(killed) + 1 == s.rank;
        if (facet != facet_by_rank)
            throw std::logic_error("facet recognition mismatch");
        if (!facet) {
            rep.ok = false;
            rep.reason = "form " + std::to_string(i) + " is not a support form multiple";
            return rep;
        }
    }
    return rep;
}

}  // namespace divalg
