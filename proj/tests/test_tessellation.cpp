#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "p5/tessellation.hpp"

using namespace p5;

namespace {

// Span of the star colors by closure over XOR, independent of the rank code.
std::size_t brute_span_size(const Coloring& col, IdealVertex p) {
    std::set<ColorVector> span{0};
    for_each_bit(ideal_vertex_star(p), [&](int f) {
        std::set<ColorVector> next = span;
        for (ColorVector v : span) next.insert(v ^ col.basis(f));
        span = std::move(next);
    });
    return span.size();
}

}  // namespace

TEST_SUITE("tessellation") {
    TEST_CASE("improper colorings are rejected") {
        CHECK_THROWS_AS(Tessellation(constant_coloring(3)), std::invalid_argument);
    }

    TEST_CASE("gluing is an involution") {
        const Tessellation t(reference_coloring());
        CHECK(t.copy_count() == 256);
        CHECK(t.glued_pair_count() == 2048);
        for (CopyLabel l = 0; l < 256; l += 7)
            for (int f = 0; f < 16; ++f) {
                const auto [m, g] = t.glue(l, f);
                CHECK(g == f);
                CHECK(m != l);
                CHECK(t.glue(m, g).first == l);
            }
    }

    TEST_CASE("orbit sizes equal 2^rank and cusps partition the copies at each ideal vertex") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            const int c = 8 + static_cast<int>(trial % 3);
            const Tessellation t(oracle::random_proper_coloring(rng, c));
            const auto cusps = cusp_orbits(t);
            std::array<std::uint64_t, kIdealVertexCount> covered{};
            for (const auto& cusp : cusps) {
                const std::size_t span = brute_span_size(t.coloring(), cusp.base);
                CHECK(cusp.orbit.size() == span);
                CHECK((std::size_t{1} << cusp.rank) == span);
                covered[cusp.base.index()] += cusp.orbit.size();
            }
            for (auto n : covered) CHECK(n == t.copy_count());
        }
    }

    TEST_CASE("identity coloring: 2^8 cusps at every ideal vertex") {
        const Tessellation t(identity_coloring());
        const auto cusps = cusp_orbits(t);
        CHECK(cusps.size() == 10 * 256);
        for (const auto& c : cusps) {
            CHECK(c.rank == 8);
            for (const auto& d : c.directions) CHECK(d.period == 4);
        }
    }

    TEST_CASE("reference coloring: 8 large and 32 small cusps") {
        const Tessellation t(reference_coloring());
        const auto cusps = cusp_orbits(t);
        REQUIRE(cusps.size() == 40);
        int large = 0, small = 0;
        for (const auto& c : cusps) {
            large += c.size_class == CuspSize::large;
            small += c.size_class == CuspSize::small;
            CHECK(std::is_sorted(c.orbit.begin(), c.orbit.end()));
            for (const auto& d : c.directions) {
                CHECK(oracle::klein_meet(facets()[d.lower].mask(), facets()[d.upper].mask(), 1e-9) ==
                      oracle::Meet::tangent);
                CHECK((d.period == 2) == (t.coloring().color(d.lower) == t.coloring().color(d.upper)));
            }
        }
        CHECK(large == 8);
        CHECK(small == 32);
    }

    TEST_CASE("cusp sections pass the 4-torus battery") {
        const Tessellation t(reference_coloring());
        for (const auto& c : cusp_orbits(t)) {
            const auto check = torus_battery(cusp_section_complex(t, c));
            CHECK(check.ok);
            CHECK(check.euler == 0);
            CHECK(check.betti == std::vector<long long>{1, 4, 6, 4, 1});
        }
    }

    TEST_CASE("torus battery rejects non-tori") {
        CHECK_FALSE(torus_battery(cube_boundary_fixture(4)).ok);
        CHECK_FALSE(torus_battery(torus_complex(3, 2)).ok);
        CHECK(torus_battery(torus_complex(4, 2)).ok);
    }
}
