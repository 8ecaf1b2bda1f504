#include <catch2/catch_amalgamated.hpp>

#include "divalg/cone.hpp"
#include "divalg/lp.hpp"

#include <map>
#include <random>

using namespace divalg;

namespace {

Vec v2(int a, int b) { return Vec{Int(a), Int(b)}; }
Vec v3(int a, int b, int c) { return Vec{Int(a), Int(b), Int(c)}; }

// Random pointed full-dimensional cone: rays in the open halfspace x_0 > 0.
RationalCone random_cone(std::mt19937& rng, std::size_t dim, std::size_t nrays, int span) {
    std::uniform_int_distribution<int> d(-span, span);
    std::uniform_int_distribution<int> pos(1, span);
    while (true) {
        std::vector<Vec> rays;
        for (std::size_t k = 0; k < nrays; ++k) {
            Vec r(dim);
            r[0] = pos(rng);
            for (std::size_t i = 1; i < dim; ++i) r[i] = d(rng);
            rays.push_back(make_primitive(std::move(r)));
        }
        if (int_rank(rays) == dim) return RationalCone::from_rays(rays, dim);
    }
}

// All lattice points x of the cone with tau(x) <= bound, by LP box bounds
// plus scan. Only sensible in low dimension.
std::vector<Vec> cone_points_by_tau(const RationalCone& c, const Int& bound) {
    const std::size_t dim = c.dim;
    // Feasible region: forms(x) >= 0 and -tau(x) >= -bound.
    std::vector<QVec> a;
    QVec b;
    for (const Vec& f : c.forms) {
        QVec row(dim);
        for (std::size_t i = 0; i < dim; ++i) row[i] = Rat(f[i]);
        a.push_back(std::move(row));
        b.push_back(Rat(0));
    }
    {
        QVec row(dim, Rat(0));
        for (const Vec& f : c.forms)
            for (std::size_t i = 0; i < dim; ++i) row[i] -= Rat(f[i]);
        a.push_back(std::move(row));
        b.push_back(Rat(-bound));
    }
    Vec lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        QVec obj(dim, Rat(0));
        obj[i] = 1;
        LPResult rmax = rational_lp(a, b, obj, true);
        LPResult rmin = rational_lp(a, b, obj, false);
        REQUIRE(rmax.status == LPStatus::Optimal);
        REQUIRE(rmin.status == LPStatus::Optimal);
        hi[i] = rat_floor(rmax.value);
        lo[i] = rat_ceil(rmin.value);
    }
    std::vector<Vec> pts;
    Vec x = lo;
    while (true) {
        if (c.contains(x) && c.tau(x) <= bound) pts.push_back(x);
        std::size_t k = 0;
        while (k < dim) {
            ++x[k];
            if (x[k] <= hi[k]) break;
            x[k] = lo[k];
            ++k;
        }
        if (k == dim) break;
    }
    return pts;
}

}  // namespace

TEST_CASE("orthant dualization") {
    auto c = RationalCone::from_rays({v2(1, 0), v2(0, 1)}, 2);
    REQUIRE(c.forms == std::vector<Vec>({v2(0, 1), v2(1, 0)}));
    REQUIRE(c.rays == std::vector<Vec>({v2(0, 1), v2(1, 0)}));
    auto c3 = RationalCone::from_forms({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}, 3);
    REQUIRE(c3.rays.size() == 3);
}

TEST_CASE("non-extreme generators are dropped") {
    auto c = RationalCone::from_rays({v2(1, 0), v2(1, 1), v2(1, 2)}, 2);
    REQUIRE(c.rays == std::vector<Vec>({v2(1, 0), v2(1, 2)}));
    REQUIRE(c.forms == std::vector<Vec>({v2(0, 1), v2(2, -1)}));
}

TEST_CASE("zero cone and degenerate inputs") {
    auto forms = facet_forms_from_rays({}, 2);
    REQUIRE(forms == std::vector<Vec>({v2(-1, 0), v2(0, -1), v2(0, 1), v2(1, 0)}));
    REQUIRE_THROWS_AS(RationalCone::from_rays({v2(1, 0)}, 2), HypothesisError);
    REQUIRE_THROWS_AS(RationalCone::from_rays({v2(1, 0), v2(0, 1), v2(-1, -1)}, 2),
                      HypothesisError);
    REQUIRE_THROWS_AS(RationalCone::from_forms({v2(1, 0)}, 2), HypothesisError);
}

TEST_CASE("dualization round trip on random cones") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t dim = 2 + rng() % 2;
        std::size_t nrays = dim + rng() % 4;
        RationalCone c = random_cone(rng, dim, nrays, 5);
        auto c2 = RationalCone::from_forms(c.forms, dim);
        REQUIRE(c2.rays == c.rays);
        REQUIRE(c2.forms == c.forms);
        auto c3 = RationalCone::from_rays(c.rays, dim);
        REQUIRE(c3.rays == c.rays);
        REQUIRE(c3.forms == c.forms);
        // Random non-negative combinations stay inside.
        std::uniform_int_distribution<int> coef(0, 4);
        for (int s = 0; s < 10; ++s) {
            Vec x(dim, Int(0));
            for (const Vec& r : c.rays) {
                Int t = coef(rng);
                for (std::size_t i = 0; i < dim; ++i) x[i] += t * r[i];
            }
            REQUIRE(c.contains(x));
        }
    }
}

TEST_CASE("parallelepiped point counts match determinants") {
    auto pts = parallelepiped_points({v2(1, 0), v2(1, 2)});
    REQUIRE(pts == std::vector<Vec>({v2(0, 0), v2(1, 1)}));

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t dim = 2 + rng() % 2;
        std::vector<Vec> gens;
        IntMatrix g(dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            Vec c(dim);
            for (auto& e : c) e = d(rng);
            gens.push_back(c);
            for (std::size_t i = 0; i < dim; ++i) g.at(i, j) = c[i];
        }
        Int det = g.determinant();
        if (det == 0) continue;
        auto points = parallelepiped_points(gens);
        REQUIRE(Int(points.size()) == int_abs(det));
        // Every point has coordinates in [0, 1) w.r.t. the generators.
        std::vector<QVec> gq(dim, QVec(dim));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) gq[i][j] = Rat(g.at(i, j));
        for (const Vec& p : points) {
            QVec rhs(dim);
            for (std::size_t i = 0; i < dim; ++i) rhs[i] = Rat(p[i]);
            auto lam = q_solve(gq, rhs);
            REQUIRE(lam.has_value());
            for (const Rat& l : *lam) {
                REQUIRE(l >= 0);
                REQUIRE(l < 1);
            }
        }
    }
}

TEST_CASE("triangulation covers the cone with simplicial pieces") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t dim = 2 + rng() % 2;
        RationalCone c = random_cone(rng, dim, dim + rng() % 4, 5);
        auto tri = triangulate_rays(c.rays, dim);
        REQUIRE(!tri.empty());
        Int total = 0;
        for (const auto& s : tri) {
            REQUIRE(s.size() == dim);
            std::vector<Vec> gens;
            for (std::size_t i : s) gens.push_back(c.rays[i]);
            Int det = IntMatrix::from_columns(gens, dim).determinant();
            REQUIRE(det != 0);
            total += int_abs(det);
        }
        // Sampled cone points land in at least one simplex.
        std::uniform_int_distribution<int> coef(0, 3);
        for (int s = 0; s < 15; ++s) {
            Vec x(dim, Int(0));
            for (const Vec& r : c.rays) {
                Int t = coef(rng);
                for (std::size_t i = 0; i < dim; ++i) x[i] += t * r[i];
            }
            bool covered = false;
            for (const auto& simplex : tri) {
                std::vector<QVec> gq(dim, QVec(dim));
                for (std::size_t j = 0; j < simplex.size(); ++j)
                    for (std::size_t i = 0; i < dim; ++i)
                        gq[i][j] = Rat(c.rays[simplex[j]][i]);
                QVec rhs(dim);
                for (std::size_t i = 0; i < dim; ++i) rhs[i] = Rat(x[i]);
                auto lam = q_solve(gq, rhs);
                if (!lam) continue;
                bool inside = true;
                for (const Rat& l : *lam)
                    if (l < 0) inside = false;
                if (inside) covered = true;
            }
            REQUIRE(covered);
        }
        // Simplex volumes are a triangulation invariant; in the plane
        // compare against the fan over angularly consecutive rays.
        if (dim == 2) {
            std::vector<Vec> sorted = c.rays;  // already lex sorted; sort by slope
            std::sort(sorted.begin(), sorted.end(), [](const Vec& a, const Vec& b) {
                return a[1] * b[0] < b[1] * a[0] ||
                       (a[1] * b[0] == b[1] * a[0] && a < b);
            });
            Int fan = 0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
                fan += int_abs(sorted[i][0] * sorted[i + 1][1] - sorted[i][1] * sorted[i + 1][0]);
            REQUIRE(total == fan);
        }
    }
}

TEST_CASE("hilbert basis of the quadratic plane cone") {
    auto c = RationalCone::from_rays({v2(1, 0), v2(1, 2)}, 2);
    REQUIRE(hilbert_basis(c) == std::vector<Vec>({v2(1, 0), v2(1, 1), v2(1, 2)}));
}

TEST_CASE("hilbert basis of the cone over a unit square") {
    auto c = RationalCone::from_rays({v3(0, 0, 1), v3(1, 0, 1), v3(0, 1, 1), v3(1, 1, 1)}, 3);
    REQUIRE(hilbert_basis(c) ==
            std::vector<Vec>({v3(0, 0, 1), v3(0, 1, 1), v3(1, 0, 1), v3(1, 1, 1)}));
}

TEST_CASE("hilbert basis matches a brute-force oracle") {
    std::mt19937 rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 120 && checked < 100; ++trial) {
        std::size_t dim = 2 + rng() % 2;
        RationalCone c = random_cone(rng, dim, dim + rng() % 3, 4);
        auto hb = hilbert_basis(c);
        Int tmax = 0;
        for (const Vec& h : hb) tmax = std::max(tmax, c.tau(h));
        if (tmax > 400) continue;  // keep the oracle scan small
        ++checked;
        // Oracle: irreducible points among all cone points with tau <= tmax.
        auto pts = cone_points_by_tau(c, tmax);
        std::set<Vec> in_cone(pts.begin(), pts.end());
        std::vector<Vec> irred;
        for (const Vec& x : pts) {
            if (is_zero(x)) continue;
            bool reducible = false;
            for (const Vec& y : pts) {
                if (is_zero(y) || y == x) continue;
                Vec rem = vec_sub(x, y);
                if (!is_zero(rem) && c.contains(rem)) {
                    reducible = true;
                    break;
                }
            }
            if (!reducible) irred.push_back(x);
        }
        std::sort(irred.begin(), irred.end());
        REQUIRE(hb == irred);
        // Generation: every small cone point decomposes over the basis.
        std::map<Vec, bool> memo;
        std::function<bool(const Vec&)> generated = [&](const Vec& x) -> bool {
            if (is_zero(x)) return true;
            auto it = memo.find(x);
            if (it != memo.end()) return it->second;
            memo[x] = false;
            for (const Vec& h : hb) {
                Vec rem = vec_sub(x, h);
                if (c.contains(rem) && generated(rem)) {
                    memo[x] = true;
                    break;
                }
            }
            return memo[x];
        };
        for (const Vec& x : pts) REQUIRE(generated(x));
    }
    REQUIRE(checked >= 40);
}
