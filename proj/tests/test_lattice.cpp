#include <doctest.h>

#include <random>

#include "toric/lattice.hpp"

using namespace toric;

namespace {

Vec v(std::initializer_list<long long> xs) {
    Vec r;
    for (long long x : xs) r.push_back(Int(x));
    return r;
}

// independent rank oracle: straightforward rational elimination
int rank_rational(Mat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    std::vector<QVec> a(rows, QVec(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = Rat(m[i][j]);
    int rank = 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("primitive vector") {
    CHECK(primitive(v({4, 6})) == v({2, 3}));
    CHECK(primitive(v({1, 0})) == v({1, 0}));
    CHECK(primitive(v({0, -5, 10})) == v({0, -1, 2}));
    CHECK_THROWS_WITH_AS(primitive(v({0, 0})), doctest::Contains("ZeroVector"), Error);
    // idempotence
    std::mt19937 rng(7);
    for (int it = 0; it < 200; ++it) {
        Vec x(3);
        bool zero = true;
        for (auto& c : x) {
            c = Int(static_cast<int>(rng() % 21) - 10);
            if (c != 0) zero = false;
        }
        if (zero) continue;
        Vec p = primitive(x);
        CHECK(primitive(p) == p);
    }
}

TEST_CASE("lattice basis and index") {
    SUBCASE("full example") {
        Mat gens = {v({3, 0}), v({0, 6}), v({5, 0}), v({1, 1}), v({2, 1}), v({1, 4})};
        SublatticeBasis b = lattice_basis(gens);
        CHECK(b.rank == 2);
        CHECK(b.index == 1);
        CHECK(b.basis == Mat{v({1, 0}), v({0, 1})});
    }
    SUBCASE("diagonal") {
        SublatticeBasis b = lattice_basis({v({2, 0}), v({0, 2})});
        CHECK(b.rank == 2);
        CHECK(b.index == 4);
        CHECK(b.basis == Mat{v({2, 0}), v({0, 2})});
    }
    SUBCASE("collinear") {
        SublatticeBasis b = lattice_basis({v({3, 0}), v({5, 0})});
        CHECK(b.rank == 1);
        CHECK(b.index == 1);
        CHECK(b.basis == Mat{v({1, 0})});
    }
}

TEST_CASE("coordinate round trip") {
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        size_t n = 2 + rng() % 3;
        size_t m = 1 + rng() % 4;
        Mat gens;
        for (size_t i = 0; i < m; ++i) {
            Vec g(n);
            for (auto& c : g) c = Int(static_cast<int>(rng() % 13) - 6);
            gens.push_back(g);
        }
        SublatticeBasis b = lattice_basis(gens);
        for (const Vec& g : gens) {
            auto coords = b.coordinates(g);
            REQUIRE(coords.has_value());
            Vec back = zero_vec(n);
            for (size_t i = 0; i < coords->size(); ++i)
                back = add(back, scale((*coords)[i], b.basis[i]));
            CHECK(back == g);
        }
    }
}

TEST_CASE("rank and independence") {
    CHECK(rank_and_independence({v({3, 0}), v({1, 1})}) == std::pair<int, bool>{2, true});
    CHECK(rank_and_independence({v({3, 0}), v({5, 0})}) == std::pair<int, bool>{1, false});
    CHECK(rank_and_independence({v({1, 1}), v({2, 1}), v({1, 4})}) ==
          std::pair<int, bool>{2, false});
}

TEST_CASE("rank agrees with rational elimination") {
    std::mt19937 rng(13);
    for (int it = 0; it < 1000; ++it) {
        size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        Mat m(rows, Vec(cols));
        for (auto& row : m)
            for (auto& c : row) c = Int(static_cast<int>(rng() % 9) - 4);
        CHECK(rank_of(m) == rank_rational(m));
    }
}

TEST_CASE("smith divisors and saturation") {
    CHECK(smith_divisors({v({2, 0}), v({0, 2})}) == std::vector<Int>{Int(2), Int(2)});
    CHECK(smith_divisors({v({1, 0}), v({0, 6})}) == std::vector<Int>{Int(1), Int(6)});
    // saturated span of a single primitive vector
    Mat sat = saturated_span_basis({v({2, 4})}, 2);
    REQUIRE(sat.size() == 1);
    CHECK(sat[0] == v({1, 2}));
}

TEST_CASE("unimodular completion") {
    std::mt19937 rng(17);
    for (int it = 0; it < 100; ++it) {
        size_t n = 2 + rng() % 3;
        Vec g(n);
        bool zero = true;
        for (auto& c : g) {
            c = Int(static_cast<int>(rng() % 15) - 7);
            if (c != 0) zero = false;
        }
        if (zero) continue;
        Mat sat = saturated_span_basis({g}, static_cast<int>(n));
        Mat comp = complete_to_unimodular(sat, static_cast<int>(n));
        Mat full = sat;
        for (const Vec& r : comp) full.push_back(r);
        REQUIRE(full.size() == n);
        SublatticeBasis b = lattice_basis(full);
        CHECK(b.rank == static_cast<int>(n));
        CHECK(b.index == 1);
    }
}
