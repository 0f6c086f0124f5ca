#include <doctest.h>

#include <random>

#include "p5/homology.hpp"
#include "p5/simplicial.hpp"

using namespace p5;

namespace {

// Textbook elimination on a vector<vector<int>>, independent of the bit-packed path.
std::size_t naive_rank(std::vector<std::vector<int>> a) {
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !a[p][c]) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && a[i][c])
                for (std::size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    return r;
}

}  // namespace

TEST_SUITE("homology") {
    TEST_CASE("identity and zero matrices") {
        BitMatrix id(8, 8);
        for (int i = 0; i < 8; ++i) id.set(i, i);
        CHECK(gf2_rank(id) == 8);
        CHECK(gf2_rank(BitMatrix(8, 8)) == 0);
        CHECK(gf2_rank(BitMatrix(0, 5)) == 0);
    }

    TEST_CASE("dense, sparse and rational ranks agree with naive elimination") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 130;
            const int density = 1 + static_cast<int>(rng() % 6);
            std::vector<std::vector<int>> a(rows, std::vector<int>(cols, 0));
            BitMatrix m(rows, cols);
            std::vector<std::vector<std::uint32_t>> sparse(cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    if (static_cast<int>(rng() % 8) < density) {
                        a[i][j] = 1;
                        m.set(i, j);
                        sparse[j].push_back(static_cast<std::uint32_t>(i));
                    }
            const std::size_t want = naive_rank(a);
            CHECK(gf2_rank(m) == want);
            CHECK(gf2_rank_sparse(sparse) == want);
        }
    }

    TEST_CASE("rational rank differs from GF(2) rank where 2 matters") {
        // [[1,1],[1,-1]] is singular mod 2 but invertible over Q.
        CHECK(rational_rank({{1, 1}, {1, -1}}) == 2);
        CHECK(rational_rank({{2, 4}, {1, 2}}) == 1);
        CHECK(rational_rank({{0, 0}, {0, 0}}) == 0);
    }

    TEST_CASE("Betti numbers of simplices and spheres over both fields") {
        for (int d = 0; d <= 4; ++d) {
            const auto cx = simplex_fixture(d).chain_complex();
            const auto b = betti(cx);
            CHECK(b[0] == 1);
            for (std::size_t k = 1; k < b.size(); ++k) CHECK(b[k] == 0);
            CHECK(betti(cx, Field::rationals) == b);
            CHECK(euler_characteristic(cx) == 1);
        }
        for (int d = 1; d <= 4; ++d) {
            const auto cx = simplex_boundary_fixture(d).chain_complex();
            const auto b = betti(cx);
            CHECK(b[0] == 1);
            CHECK(b[static_cast<std::size_t>(d)] == 1);
            CHECK(euler_characteristic(cx) == (d % 2 == 0 ? 2 : 0));
            CHECK(betti(cx, Field::rationals) == b);
        }
    }

    TEST_CASE("verify catches a broken boundary") {
        auto cx = simplex_fixture(2).chain_complex();
        CHECK_NOTHROW(cx.verify());
        cx.boundary[2][0].pop_back();
        CHECK_THROWS_AS(cx.verify(), BoundaryError);
    }

    TEST_CASE("Euler characteristic from a count vector") {
        CHECK(euler_characteristic(std::vector<long long>{256, 2048, 5120, 5120, 1920, 128}) == 0);
        CHECK(euler_characteristic(std::vector<long long>{1, 2, 1}) == 0);
    }
}
