#include <catch2/catch_amalgamated.hpp>

#include "divalg/progression.hpp"

using namespace divalg;

namespace {

AffineSemigroup segre(std::size_t m, std::size_t n) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec g(m + n, Int(0));
            g[i] = 1;
            g[m + j] = 1;
            gens.push_back(std::move(g));
        }
    return AffineSemigroup::from_generators(gens);
}

AffineSemigroup quadratic_cone() {
    return AffineSemigroup::from_inequalities({Vec{Int(0), Int(1)}, Vec{Int(2), Int(-1)}});
}

// K[U^2, UV, V^2, XW, YW, XZ, YZ]: class group Z/2 + Z with a two-periodic
// generator-count progression.
AffineSemigroup mixed_torsion_semigroup() {
    auto v = [](std::initializer_list<int> l) {
        Vec x;
        for (int a : l) x.push_back(Int(a));
        return x;
    };
    return AffineSemigroup::from_generators(
        {v({2, 0, 0, 0, 0, 0}), v({1, 1, 0, 0, 0, 0}), v({0, 2, 0, 0, 0, 0}),
         v({0, 0, 1, 0, 1, 0}), v({0, 0, 0, 1, 1, 0}), v({0, 0, 1, 0, 0, 1}),
         v({0, 0, 0, 1, 0, 1})});
}

void check_witnesses(const AffineSemigroup& s, const ConicReport& rep) {
    for (const ConicWitness& w : rep.witnesses) {
        for (const Rat& b : w.beta) {
            REQUIRE(b >= 0);
            REQUIRE(b < 1);
        }
        for (std::size_t i = 0; i < s.support_forms().size(); ++i) {
            Rat v = dot_q(s.support_forms()[i], w.beta);
            REQUIRE(Rat(w.bounds[i]) - 1 < v);
            REQUIRE(v <= Rat(w.bounds[i]));
        }
    }
}

}  // namespace

TEST_CASE("conic classes of the free semigroup") {
    auto s = AffineSemigroup::from_generators({Vec{Int(1), Int(0)}, Vec{Int(0), Int(1)}});
    auto cl = divisor_class_group(s);
    auto rep = conic_classes(s, cl);
    REQUIRE(rep.classes == std::vector<Vec>{Vec{}});
    check_witnesses(s, rep);
}

TEST_CASE("conic classes of the quadratic cone are all of Z/2") {
    auto s = quadratic_cone();
    auto cl = divisor_class_group(s);
    auto rep = conic_classes(s, cl);
    REQUIRE(rep.classes == std::vector<Vec>{Vec{Int(0)}, Vec{Int(1)}});
    check_witnesses(s, rep);
}

TEST_CASE("conic classes of segre(2,3)") {
    auto s = segre(2, 3);
    auto cl = divisor_class_group(s);
    auto rep = conic_classes(s, cl);
    REQUIRE(rep.classes ==
            std::vector<Vec>{Vec{Int(-1)}, Vec{Int(0)}, Vec{Int(1)}, Vec{Int(2)}});
    check_witnesses(s, rep);
}

TEST_CASE("every conic class is cohen-macaulay, every torsion class is conic") {
    std::vector<AffineSemigroup> corpus;
    corpus.push_back(quadratic_cone());
    corpus.push_back(segre(2, 3));
    corpus.push_back(mixed_torsion_semigroup());
    for (const auto& s : corpus) {
        auto cl = divisor_class_group(s);
        auto rep = conic_classes(s, cl);
        for (const Vec& c : rep.classes)
            REQUIRE(cohen_macaulay_test(s, cl.bounds_of_class(c)).cm);
        // Torsion classes: zero free part, all torsion coordinates.
        Vec t(cl.pres.coord_count(), Int(0));
        std::function<void(std::size_t)> scan = [&](std::size_t i) {
            if (i == cl.pres.invariant_factors.size()) {
                REQUIRE(std::find(rep.classes.begin(), rep.classes.end(), cl.pres.reduce(t)) !=
                        rep.classes.end());
                return;
            }
            for (Int v = 0; v < cl.pres.invariant_factors[i]; ++v) {
                t[i] = v;
                scan(i + 1);
            }
        };
        scan(0);
    }
}

TEST_CASE("face ideals of the quadratic cone") {
    auto s = quadratic_cone();
    auto one_facet = face_ideal_bounds(s, {0});
    REQUIRE(one_facet.q_bounds == Vec{Int(1), Int(0)});
    REQUIRE(one_facet.r_bounds == Vec{Int(0), Int(1)});
    auto origin = face_ideal_bounds(s, {0, 1});
    REQUIRE(origin.q_bounds == Vec{Int(1), Int(1)});  // the canonical module
    REQUIRE(origin.r_bounds == Vec{Int(0), Int(0)});
    auto whole = face_ideal_bounds(s, {});
    REQUIRE(whole.q_bounds == Vec{Int(0), Int(0)});
}

TEST_CASE("face ideal rejects a facet set that is not tight") {
    auto s = segre(2, 3);
    // Some pair of facets meets only at the origin (the two cut out by the
    // smaller factor), so that pair is not the tight set of any face; other
    // pairs bound genuine two-codimensional faces.
    std::size_t rejected = 0, accepted = 0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            try {
                auto rep = face_ideal_bounds(s, {i, j});
                ++accepted;
                REQUIRE(rep.q_bounds[i] == 1);
                REQUIRE(rep.q_bounds[j] == 1);
            } catch (const InputError&) {
                ++rejected;
            }
        }
    REQUIRE(rejected == 1);
    REQUIRE(accepted == 9);
    auto origin = face_ideal_bounds(s, {0, 1, 2, 3, 4});
    REQUIRE(origin.q_bounds == Vec(5, Int(1)));
}

TEST_CASE("canonical duals of conic bound vectors") {
    auto s = segre(2, 3);
    auto cl = divisor_class_group(s);
    // omega : omega is the ring itself.
    auto self = canonical_dual_bounds(s, Vec(5, Int(1)));
    REQUIRE(cl.class_of_bounds(self.bounds) == Vec{Int(0)});
    // Duality pairs the ends of the conic window.
    auto rep = conic_classes(s, cl);
    for (std::size_t i = 0; i < rep.classes.size(); ++i) {
        auto dual = canonical_dual_bounds(s, rep.witnesses[i].bounds);
        Vec dc = cl.class_of_bounds(dual.bounds);
        REQUIRE(std::find(rep.classes.begin(), rep.classes.end(), dc) != rep.classes.end());
        REQUIRE(cl.pres.add(dc, rep.classes[i]) == cl.class_of_bounds(Vec(5, Int(1))));
    }
    auto q = quadratic_cone();
    auto qcl = divisor_class_group(q);
    auto dual = canonical_dual_bounds(q, Vec{Int(1), Int(0)});
    REQUIRE(dual.bounds == Vec{Int(0), Int(1)});
    REQUIRE(qcl.pres.add(qcl.class_of_bounds(dual.bounds),
                         qcl.class_of_bounds(Vec{Int(1), Int(0)})) ==
            qcl.class_of_bounds(Vec{Int(1), Int(1)}));
}

TEST_CASE("frobenius decompositions land in the conic set and stabilize") {
    auto s = quadratic_cone();
    auto cl = divisor_class_group(s);
    auto k1 = frobenius_decomposition(s, cl, 1);
    REQUIRE(k1.class_multiplicity.size() == 1);
    REQUIRE(k1.class_multiplicity.at(Vec{Int(0)}) == 1);
    auto k2 = frobenius_decomposition(s, cl, 2);
    Int total = 0;
    auto conic = conic_classes(s, cl);
    for (const auto& [c, n] : k2.class_multiplicity) {
        total += n;
        REQUIRE(std::find(conic.classes.begin(), conic.classes.end(), c) !=
                conic.classes.end());
    }
    REQUIRE(total == 4);  // one coset per residue of (Z/2)^2

    auto seg = segre(2, 3);
    auto scl = divisor_class_group(seg);
    auto lad = frobenius_ladder(seg, scl);
    REQUIRE(lad.stabilized);
    REQUIRE(lad.classes == conic_classes(seg, scl).classes);
}

TEST_CASE("progression along the segre directions") {
    auto s = segre(2, 3);
    auto cl = divisor_class_group(s);
    auto up = progression_analysis(s, cl, Vec{Int(1)}, Vec{Int(0)}, 12);
    REQUIRE(up.degree == 1);
    REQUIRE(up.period == 1);
    REQUIRE(up.limits == std::vector<Int>{Int(1)});
    REQUIRE(up.inf_depth == 3);
    for (std::size_t j = 0; j <= 12; ++j) REQUIRE(up.mu[j] == j + 1);

    auto down = progression_analysis(s, cl, Vec{Int(-1)}, Vec{Int(0)}, 12);
    REQUIRE(down.degree == 2);
    REQUIRE(down.period == 1);
    REQUIRE(down.limits == std::vector<Int>{Int(1)});
    REQUIRE(down.inf_depth == 2);
    for (std::size_t j = 0; j <= 12; ++j) REQUIRE(down.mu[j] == (j + 1) * (j + 2) / 2);

    // Doubling the direction doubles the leading constant in degree 1.
    auto two = progression_analysis(s, cl, Vec{Int(2)}, Vec{Int(0)}, 12);
    REQUIRE(two.degree == 1);
    REQUIRE(two.limits == std::vector<Int>{Int(2)});
}

TEST_CASE("progression rejects torsion directions") {
    auto s = quadratic_cone();
    auto cl = divisor_class_group(s);
    REQUIRE_THROWS_AS(progression_analysis(s, cl, Vec{Int(1)}, Vec{Int(0)}, 8),
                      HypothesisError);
}

TEST_CASE("two-periodic progression in the mixed-torsion semigroup") {
    auto s = mixed_torsion_semigroup();
    auto cl = divisor_class_group(s);
    REQUIRE(cl.pres.invariant_factors == std::vector<Int>{Int(2)});
    REQUIRE(cl.pres.free_rank == 1);
    auto rep = progression_analysis(s, cl, Vec{Int(1), Int(1)}, Vec{Int(0), Int(0)}, 20);
    REQUIRE(rep.period == 2);
    REQUIRE(rep.degree == 1);
    REQUIRE(rep.limits == std::vector<Int>{Int(1), Int(2)});
    for (std::size_t j = 0; j <= 20; ++j)
        REQUIRE(rep.mu[j] == (j % 2 == 0 ? j + 1 : 2 * (j + 1)));
}
