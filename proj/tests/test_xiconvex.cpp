#include <catch2/catch_amalgamated.hpp>

#include "divalg/xiconvex.hpp"

#include <random>
#include <set>

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

Vec v2(int a, int b) { return Vec{Int(a), Int(b)}; }

// The three-form system {y, 2x - y, 2x} on the quadratic cone: pure but not
// the support system.
std::vector<Vec> three_forms() { return {v2(0, 1), v2(2, -1), v2(2, 0)}; }

}  // namespace

TEST_CASE("eff bounds of the three-form quadratic-cone system") {
    auto s = quadratic_cone();
    Vec a{Int(0), Int(0), Int(1)};
    REQUIRE(eff_bounds(s, three_forms(), a) == Vec{Int(0), Int(0), Int(2)});
    auto gens = module_minimal_generators(s, three_forms(), a);
    std::sort(gens.begin(), gens.end());
    REQUIRE(gens == std::vector<Vec>{v2(1, 0), v2(1, 1), v2(1, 2)});
}

TEST_CASE("eff is idempotent and at least the defining bounds") {
    auto s = quadratic_cone();
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int t = 0; t < 100; ++t) {
        Vec a{Int(pick(rng)), Int(pick(rng)), Int(pick(rng))};
        Vec e = eff_bounds(s, three_forms(), a);
        for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(e[i] >= a[i]);
        REQUIRE(eff_bounds(s, three_forms(), e) == e);
    }
}

TEST_CASE("translation by a lattice point gives an isomorphic module") {
    auto s = quadratic_cone();
    std::mt19937 rng(78);
    std::uniform_int_distribution<int> pick(-3, 3);
    auto xi = three_forms();
    for (int t = 0; t < 100; ++t) {
        Vec a{Int(pick(rng)), Int(pick(rng)), Int(pick(rng))};
        Vec y{Int(pick(rng)), Int(pick(rng))};
        Vec b = a;
        for (std::size_t i = 0; i < xi.size(); ++i) b[i] += dot(xi[i], y);
        auto w = xi_iso_witness(s, xi, a, b);
        REQUIRE(w.has_value());
        REQUIRE(modules_isomorphic(s, xi, a, b));
        // The witness really translates one eff vector to the other.
        Vec ea = eff_bounds(s, xi, a), eb = eff_bounds(s, xi, b);
        for (std::size_t i = 0; i < xi.size(); ++i)
            REQUIRE(ea[i] - eb[i] == dot(xi[i], *w));
    }
}

TEST_CASE("the two tight three-form vectors define isomorphic modules") {
    auto s = quadratic_cone();
    Vec a{Int(0), Int(0), Int(1)}, b{Int(0), Int(0), Int(2)};
    REQUIRE(modules_isomorphic(s, three_forms(), a, b));
}

TEST_CASE("distinct segre classes are not isomorphic") {
    auto s = segre(2, 3);
    auto cl = divisor_class_group(s);
    REQUIRE_FALSE(modules_isomorphic(s, s.support_forms(), cl.bounds_of_class(Vec{Int(1)}),
                                     cl.bounds_of_class(Vec{Int(-1)})));
}

TEST_CASE("eff vectors are closed under addition up to re-tightening") {
    auto s = quadratic_cone();
    std::mt19937 rng(79);
    std::uniform_int_distribution<int> pick(-2, 2);
    auto xi = three_forms();
    for (int t = 0; t < 50; ++t) {
        Vec a{Int(pick(rng)), Int(pick(rng)), Int(pick(rng))};
        Vec b{Int(pick(rng)), Int(pick(rng)), Int(pick(rng))};
        Vec sum = vec_add(eff_bounds(s, xi, a), eff_bounds(s, xi, b));
        Vec e = eff_bounds(s, xi, sum);
        for (std::size_t i = 0; i < sum.size(); ++i) REQUIRE(e[i] >= sum[i]);
        REQUIRE(eff_bounds(s, xi, e) == e);
    }
}

TEST_CASE("intersection with the ring is the ring") {
    auto s = quadratic_cone();
    const auto& sigma = s.support_forms();
    auto rep = intersect_modules(2, sigma, Vec{Int(-1), Int(-2)}, sigma, Vec{Int(0), Int(0)});
    REQUIRE_FALSE(rep.empty);
    REQUIRE(rep.generators == std::vector<Vec>{v2(0, 0)});
}

TEST_CASE("intersection of two divisorial ideals is the componentwise max") {
    auto s = quadratic_cone();
    const auto& sigma = s.support_forms();
    auto rep = intersect_modules(2, sigma, Vec{Int(1), Int(0)}, sigma, Vec{Int(0), Int(1)});
    auto direct = minimal_generators(s, Vec{Int(1), Int(1)});
    std::sort(direct.begin(), direct.end());
    auto got = rep.generators;
    std::sort(got.begin(), got.end());
    REQUIRE(got == direct);
}

TEST_CASE("intersection across two different rank-2 systems") {
    std::vector<Vec> xi = {v2(1, 0), v2(0, 1)};
    std::vector<Vec> zeta = {v2(1, 1), v2(1, -1)};
    auto rep = intersect_modules(2, xi, v2(1, 2), zeta, v2(0, 0));
    REQUIRE_FALSE(rep.empty);
    const auto& sg = rep.semigroup;
    // Generators lie in the region, are pairwise incomparable over the
    // intersection semigroup, and cover a test box.
    auto in_region = [&](const Vec& x) {
        for (std::size_t i = 0; i < rep.forms.size(); ++i)
            if (dot(rep.forms[i], x) < rep.bounds[i]) return false;
        return true;
    };
    for (const Vec& g : rep.generators) REQUIRE(in_region(g));
    for (const Vec& g : rep.generators)
        for (const Vec& h : rep.generators)
            if (g != h) {
                Vec diff = vec_sub(g, h);
                auto y = lattice_solve(sg.embedding, diff);
                REQUIRE((!y || !sg.contains(*y)));
            }
    for (Int x = -6; x <= 6; ++x)
        for (Int y = -6; y <= 6; ++y) {
            Vec p{x, y};
            if (!in_region(p)) continue;
            bool covered = false;
            for (const Vec& g : rep.generators) {
                auto c = lattice_solve(sg.embedding, vec_sub(p, g));
                if (c && sg.contains(*c)) covered = true;
            }
            REQUIRE(covered);
        }
}

TEST_CASE("empty and bounded intersections") {
    std::vector<Vec> xi = {v2(1, 0), v2(0, 1)};
    std::vector<Vec> zeta = {v2(-1, 0), v2(0, -1)};
    auto none = intersect_modules(2, xi, v2(1, 1), zeta, v2(0, 0));
    REQUIRE(none.empty);
    REQUIRE(none.generators.empty());
    auto square = intersect_modules(2, xi, v2(0, 0), zeta, v2(-2, -2));
    REQUIRE_FALSE(square.empty);
    REQUIRE(square.generators.size() == 9);  // the 3x3 grid, trivial semigroup
}

TEST_CASE("small-mu enumeration on segre(2,3)") {
    auto s = segre(2, 3);
    auto cl = divisor_class_group(s);
    auto rep = enumerate_small_mu(s, s.support_forms(), cl.pres, 4, Int(10));
    REQUIRE(rep.classes == std::vector<Vec>{Vec{Int(-1)}, Vec{Int(0)}, Vec{Int(1)},
                                            Vec{Int(2)}, Vec{Int(3)}});
    REQUIRE(rep.mu == std::vector<std::size_t>{3, 1, 2, 3, 4});
    REQUIRE(rep.experimentally_finite);
    REQUIRE(rep.shell_min_mu > 4);
}

TEST_CASE("small-mu enumeration on the quadratic cone") {
    auto s = quadratic_cone();
    auto cl = divisor_class_group(s);
    auto only_ring = enumerate_small_mu(s, s.support_forms(), cl.pres, 1, Int(0));
    REQUIRE(only_ring.classes == std::vector<Vec>{Vec{Int(0)}});
    REQUIRE(only_ring.experimentally_finite);
    auto nothing = enumerate_small_mu(s, s.support_forms(), cl.pres, 0, Int(0));
    REQUIRE(nothing.classes.empty());
}
