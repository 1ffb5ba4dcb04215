#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "toric/polyhedral.hpp"

using namespace toric;

namespace {

Vec v(std::initializer_list<long long> xs) {
    Vec r;
    for (long long x : xs) r.push_back(Int(x));
    return r;
}

std::vector<Vec> sorted(std::vector<Vec> vs) {
    std::sort(vs.begin(), vs.end(), lex_less);
    return vs;
}

Cone orthant(int n) {
    std::vector<Vec> rays;
    for (int i = 0; i < n; ++i) {
        Vec e = zero_vec(static_cast<size_t>(n));
        e[static_cast<size_t>(i)] = 1;
        rays.push_back(e);
    }
    return cone_from_rays(rays, n);
}

} // namespace

TEST_CASE("dual cone") {
    SUBCASE("orthant is self dual") {
        Cone c = orthant(2);
        Cone d = dual_cone(c);
        CHECK(d.rays == sorted({v({1, 0}), v({0, 1})}));
        CHECK(d.dim == 2);
    }
    SUBCASE("skew cone") {
        Cone c = cone_from_rays({v({1, 0}), v({1, 2})}, 2);
        Cone d = dual_cone(c);
        CHECK(d.rays == sorted({v({0, 1}), v({2, -1})}));
        for (const Vec& r : d.rays)
            for (const Vec& s : c.rays) CHECK(dot(r, s) >= 0);
    }
    SUBCASE("full space dualizes to zero") {
        Cone c = cone_from_rays({v({1, 0}), v({-1, 0}), v({0, 1}), v({0, -1})}, 2);
        CHECK_FALSE(c.is_strictly_convex());
        Cone d = dual_cone(c);
        CHECK(d.dim == 0);
    }
    SUBCASE("involution on strictly convex full-dimensional cones") {
        std::mt19937 rng(5);
        int done = 0;
        while (done < 50) {
            std::vector<Vec> rays;
            size_t n = 2 + rng() % 2;
            size_t m = 2 + rng() % 3;
            for (size_t i = 0; i < m; ++i) {
                Vec r(n);
                for (auto& c : r) c = Int(static_cast<int>(rng() % 9) - 3);
                if (!is_zero(r)) rays.push_back(r);
            }
            if (rays.empty()) continue;
            Cone c = cone_from_rays(rays, static_cast<int>(n));
            if (!c.is_strictly_convex() || c.dim != static_cast<int>(n)) continue;
            Cone dd = dual_cone(dual_cone(c));
            CHECK(dd.rays == c.rays);
            ++done;
        }
    }
}

TEST_CASE("face lattice") {
    CHECK(face_lattice(orthant(2)).size() == 4);
    CHECK(face_lattice(cone_from_rays({v({1, 1})}, 2)).size() == 2);
    CHECK(face_lattice(orthant(3)).size() == 8);
}

TEST_CASE("newton polyhedron") {
    Cone q2 = orthant(2);
    SUBCASE("J_1 of the surface example") {
        std::vector<Vec> j1 = {v({3, 0}), v({0, 6}), v({5, 0}),
                               v({1, 1}), v({2, 1}), v({1, 4})};
        NewtonData nd = newton_polyhedron(j1, q2);
        CHECK(nd.vertices == sorted({v({3, 0}), v({1, 1}), v({0, 6})}));
        CHECK(nd.dual_fan.rays() == sorted({v({1, 0}), v({0, 1}), v({1, 2}), v({5, 1})}));
    }
    SUBCASE("J_2 of the surface example") {
        std::vector<Vec> gens = {v({3, 0}), v({0, 6}), v({5, 0}),
                                 v({1, 1}), v({2, 1}), v({1, 4})};
        std::vector<Vec> j2;
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = i + 1; j < gens.size(); ++j) {
                if (rank_of({gens[i], gens[j]}) == 2) j2.push_back(add(gens[i], gens[j]));
            }
        NewtonData nd = newton_polyhedron(j2, q2);
        CHECK(nd.vertices == sorted({v({4, 1}), v({3, 2}), v({1, 7})}));
    }
    SUBCASE("staircase") {
        NewtonData nd = newton_polyhedron({v({1, 0}), v({0, 1})}, q2);
        CHECK(nd.vertices == sorted({v({1, 0}), v({0, 1})}));
        CHECK(nd.dual_fan.rays() == sorted({v({1, 0}), v({1, 1}), v({0, 1})}));
    }
    SUBCASE("point outside the dual cone") {
        CHECK_THROWS_WITH_AS(newton_polyhedron({v({-1, 2})}, q2),
                             doctest::Contains("PointOutsideDualCone"), Error);
    }
}

TEST_CASE("support values from the example table") {
    std::vector<Vec> j1 = {v({3, 0}), v({0, 6}), v({5, 0}), v({1, 1}), v({2, 1}), v({1, 4})};
    NewtonData nd = newton_polyhedron(j1, orthant(2));
    CHECK(support_value(nd, v({1, 1})) == 2);
    CHECK(support_value(nd, v({5, 2})) == 7);
    CHECK(support_value(nd, v({0, 0})) == 0);
    CHECK_THROWS_WITH_AS(support_value(nd, v({-1, 0})), doctest::Contains("OutsideSupport"),
                         Error);
}

TEST_CASE("face consistency on random directions") {
    std::vector<Vec> j1 = {v({3, 0}), v({0, 6}), v({5, 0}), v({1, 1}), v({2, 1}), v({1, 4})};
    NewtonData nd = newton_polyhedron(j1, orthant(2));
    std::mt19937 rng(23);
    for (int it = 0; it < 500; ++it) {
        Vec nu = {Int(rng() % 12), Int(rng() % 12)};
        Int m = support_value(nd, nu);
        std::vector<Vec> face = face_points(nd, nu);
        CHECK(!face.empty());
        const Cone* cell = nd.dual_fan.cone_containing(nu);
        REQUIRE(cell != nullptr);
        if (cell->dim > 0) {
            Vec probe = interior_lattice_point(*cell);
            CHECK(face_points(nd, probe) == face);
        }
        for (const Vec& p : face) CHECK(dot(nu, p) == m);
    }
}

TEST_CASE("common refinement") {
    std::vector<Vec> gens = {v({3, 0}), v({0, 6}), v({5, 0}), v({1, 1}), v({2, 1}), v({1, 4})};
    std::vector<Vec> j2;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (rank_of({gens[i], gens[j]}) == 2) j2.push_back(add(gens[i], gens[j]));
    Cone q2 = orthant(2);
    NewtonData n1 = newton_polyhedron(gens, q2);
    NewtonData n2 = newton_polyhedron(j2, q2);
    SUBCASE("example rays") {
        Fan r = common_refinement({n1.dual_fan, n2.dual_fan});
        CHECK(r.rays() == sorted({v({1, 0}), v({0, 1}), v({1, 2}), v({5, 1}), v({1, 1}),
                                  v({5, 2})}));
    }
    SUBCASE("idempotence") {
        Fan r = common_refinement({n1.dual_fan, n1.dual_fan});
        CHECK(r.cones.size() == n1.dual_fan.cones.size());
        CHECK(r.rays() == n1.dual_fan.rays());
    }
    SUBCASE("the trivial fan is coarsest") {
        Fan trivial = fan_from_maximal(dual_cone(q2), {dual_cone(q2)});
        Fan r = common_refinement({trivial, n2.dual_fan});
        CHECK(r.rays() == n2.dual_fan.rays());
        CHECK(r.cones.size() == n2.dual_fan.cones.size());
    }
    SUBCASE("support mismatch") {
        Fan half = fan_from_maximal(cone_from_rays({v({1, 0}), v({1, 2})}, 2),
                                    {cone_from_rays({v({1, 0}), v({1, 2})}, 2)});
        CHECK_THROWS_WITH_AS(common_refinement({n1.dual_fan, half}),
                             doctest::Contains("SupportMismatch"), Error);
    }
}

TEST_CASE("simplicial subdivision") {
    SUBCASE("simplicial cone is unchanged") {
        Cone c = cone_from_rays({v({1, 0}), v({1, 2})}, 2);
        Fan f = simplicial_subdivision(c);
        CHECK(f.maximal().size() == 1);
        CHECK(f.rays() == c.rays);
    }
    SUBCASE("cone over a square splits into two cells without new rays") {
        Cone c = cone_from_rays({v({1, 0, 0}), v({0, 1, 0}), v({1, 0, 1}), v({0, 1, 1})}, 3);
        REQUIRE(c.rays.size() == 4);
        Fan f = simplicial_subdivision(c);
        auto maximal = f.maximal();
        CHECK(maximal.size() == 2);
        for (const Cone* m : maximal) CHECK(m->rays.size() == 3);
        CHECK(f.rays() == c.rays);
        Cone is = intersect_cones(*maximal[0], *maximal[1]);
        CHECK(is.dim == 2);
        bool found = false;
        for (const Cone& piece : f.cones)
            if (piece.is_face_key_equal(is)) found = true;
        CHECK(found);
    }
    SUBCASE("orthant") {
        Fan f = simplicial_subdivision(orthant(2));
        CHECK(f.maximal().size() == 1);
    }
}

TEST_CASE("polytope lattice points") {
    SUBCASE("box") {
        Polytope p;
        p.ambient = 2;
        p.ineqs = {{v({1, 0}), Int(0)}, {v({-1, 0}), Int(-2)},
                   {v({0, 1}), Int(0)}, {v({0, -1}), Int(-1)}};
        CHECK(polytope_lattice_points(p).size() == 6);
    }
    SUBCASE("triangle") {
        Polytope p;
        p.ambient = 2;
        p.ineqs = {{v({1, 0}), Int(0)}, {v({0, 1}), Int(0)}, {v({-1, -1}), Int(-2)}};
        CHECK(polytope_lattice_points(p).size() == 6);
    }
    SUBCASE("empty") {
        Polytope p;
        p.ambient = 1;
        p.ineqs = {{v({1}), Int(1)}, {v({-1}), Int(0)}};
        CHECK(polytope_lattice_points(p).empty());
    }
    SUBCASE("unbounded") {
        Polytope p;
        p.ambient = 2;
        p.ineqs = {{v({1, 0}), Int(0)}, {v({0, 1}), Int(0)}};
        CHECK_THROWS_WITH_AS(polytope_lattice_points(p),
                             doctest::Contains("UnboundedPolytope"), Error);
    }
    SUBCASE("budget") {
        Polytope p;
        p.ambient = 2;
        p.ineqs = {{v({1, 0}), Int(0)}, {v({-1, 0}), Int(-50)},
                   {v({0, 1}), Int(0)}, {v({0, -1}), Int(-50)}};
        Budget tiny{10};
        CHECK_THROWS_WITH_AS(polytope_lattice_points(p, &tiny),
                             doctest::Contains("BudgetExceeded"), Error);
    }
}

TEST_CASE("polytope points agree with a naive box scan") {
    std::mt19937 rng(31);
    int done = 0;
    while (done < 200) {
        int n = 1 + static_cast<int>(rng() % 3);
        Polytope p;
        p.ambient = n;
        for (int i = 0; i < n; ++i) {
            Vec lo = zero_vec(static_cast<size_t>(n)), hi = lo;
            lo[static_cast<size_t>(i)] = 1;
            hi[static_cast<size_t>(i)] = -1;
            p.ineqs.push_back({lo, Int(-3)});
            p.ineqs.push_back({hi, Int(-4)});
        }
        for (int extra = 0; extra < 2; ++extra) {
            Vec a(static_cast<size_t>(n));
            for (auto& c : a) c = Int(static_cast<int>(rng() % 7) - 3);
            p.ineqs.push_back({a, Int(static_cast<int>(rng() % 5) - 2)});
        }
        std::vector<Vec> fast;
        try {
            fast = polytope_lattice_points(p);
        } catch (const Error&) {
            continue;
        }
        std::vector<Vec> naive;
        Vec x(static_cast<size_t>(n), Int(-3));
        for (;;) {
            bool ok = true;
            for (const auto& [a, c] : p.ineqs)
                if (dot(a, x) < c) ok = false;
            if (ok) naive.push_back(x);
            size_t i = static_cast<size_t>(n);
            bool adv = false;
            while (i > 0) {
                --i;
                if (x[i] < 4) {
                    ++x[i];
                    for (size_t j = i + 1; j < static_cast<size_t>(n); ++j) x[j] = Int(-3);
                    adv = true;
                    break;
                }
            }
            if (!adv) break;
        }
        CHECK(fast == naive);
        ++done;
    }
}

TEST_CASE("interior lattice point") {
    CHECK(interior_lattice_point(cone_from_rays({v({1, 2}), v({5, 1})}, 2)) == v({6, 3}));
    CHECK(interior_lattice_point(cone_from_rays({v({1, 1})}, 2)) == v({1, 1}));
    CHECK(interior_lattice_point(orthant(2)) == v({1, 1}));
    CHECK_THROWS_WITH_AS(interior_lattice_point(cone_from_rays({}, 2)),
                         doctest::Contains("ZeroCone"), Error);
}
