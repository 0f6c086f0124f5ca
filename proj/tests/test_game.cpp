#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "oracles.hpp"
#include "p5/cusp_class.hpp"
#include "p5/game.hpp"

using namespace p5;

namespace {

const Tessellation& reference_tessellation() {
    static const Tessellation t(reference_coloring());
    return t;
}

Partition random_partition(std::mt19937_64& rng, int colors) {
    std::vector<int> rgs(static_cast<std::size_t>(colors), 0);
    int top = 0;
    for (int i = 1; i < colors; ++i) {
        rgs[i] = static_cast<int>(rng() % static_cast<unsigned>(top + 2));
        top = std::max(top, rgs[i]);
    }
    return Partition(rgs);
}

}  // namespace

TEST_SUITE("game") {
    TEST_CASE("Bell numbers and partition enumeration") {
        const std::vector<long long> bell{1, 1, 2, 5, 15, 52, 203, 877, 4140};
        for (int n = 0; n <= 8; ++n) CHECK(bell_number(n) == bell[n]);
        for (int n = 1; n <= 8; ++n) CHECK(static_cast<long long>(all_partitions(n).size()) == bell[n]);
        const auto p4 = all_partitions(4);
        CHECK(p4.front() == Partition::modulo(4, 1));
        CHECK(p4.back() == Partition::singletons(4));
        for (std::size_t i = 1; i < p4.size(); ++i) CHECK(p4[i - 1].rgs() < p4[i].rgs());
    }

    TEST_CASE("partition parsing") {
        const auto m4 = Partition::modulo(8, 4);
        CHECK(m4.to_string() == "1,5|2,6|3,7|4,8");
        CHECK(Partition::parse("1,5|2,6|3,7|4,8", 8) == m4);
        CHECK(Partition::parse("2,6|1,5|4,8|3,7", 8) == m4);
        CHECK(Partition::parse("2|1", 2) == Partition::singletons(2));
        CHECK(m4.block_count() == 4);
        CHECK(m4.same_block(3, 7));
        CHECK_FALSE(m4.same_block(3, 4));
        CHECK_THROWS_AS(Partition::parse("1,2|2,3", 3), std::invalid_argument);
        CHECK_THROWS_AS(Partition::parse("1,2", 3), std::invalid_argument);
        CHECK_THROWS_AS(Partition::parse("1,,2|3", 3), std::invalid_argument);
        CHECK_THROWS_AS(Partition::parse("1,9", 2), std::invalid_argument);
        CHECK_THROWS_AS(Partition::parse("a", 1), std::invalid_argument);
        CHECK_THROWS_AS(Partition({0, 2}), std::invalid_argument);
        CHECK_THROWS_AS(Partition({1}), std::invalid_argument);
    }

    TEST_CASE("state text round trips") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 100; ++i) {
            const State s = static_cast<State>(rng());
            CHECK(parse_state(format_state(s)) == s);
            char hex[16];
            std::snprintf(hex, sizeof hex, "0x%04x", s);
            CHECK(parse_state(hex) == s);
        }
        CHECK(format_state(0) == "oooooooooooooooo");
        CHECK(parse_state("iooooooooooooooo") == 1);
    }

    TEST_CASE("state file round trips through disk") {
        const State s = parse_state("ooooiiiiooioioii");
        const std::string path = "state_roundtrip.tmp";
        {
            std::ofstream os(path);
            os << "# test\n" << format_state_file(s);
        }
        CHECK(read_state_file(path) == s);
        {
            std::ofstream os(path);
            os << "+++++ in\n";
        }
        CHECK_THROWS(read_state_file(path));
        std::remove(path.c_str());
    }

    TEST_CASE("state of a copy is independent of the path reaching it") {
        std::mt19937_64 rng(4);
        const auto& col = reference_coloring();
        for (int trial = 0; trial < 50; ++trial) {
            const auto part = random_partition(rng, 8);
            const auto sys = CoorientationSystem::make(col, part, static_cast<State>(rng()));
            CopyLabel l = 0;
            State walked = sys.base;
            for (int step = 0; step < 40; ++step) {
                const int f = static_cast<int>(rng() % 16);
                for (int g = 0; g < 16; ++g)
                    if (part.same_block(col.color(f), col.color(g))) walked ^= State(1u << g);
                l ^= col.basis(f);
                CHECK(sys.state_at(l) == walked);
            }
        }
    }

    TEST_CASE("the palette must match the partition") {
        CHECK_THROWS_AS(CoorientationSystem::make(reference_coloring(), Partition::singletons(7), 0), std::invalid_argument);
    }

    TEST_CASE("edge orientations are consistent from both copies") {
        const Cubulation cub = build_cubulation(reference_tessellation());
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 5; ++trial) {
            const auto sys = CoorientationSystem::make(reference_coloring(), random_partition(rng, 8), static_cast<State>(rng()));
            const auto o = edge_orientations(cub, sys);
            REQUIRE(o.size() == 2048);
            for (std::uint32_t e = 0; e < cub.count(1); ++e) {
                const CubeKey k = cub.key(1, e);
                const int f = cub.axes(1, e)[0];
                CHECK(edge_orientation_consistent(sys, k.base, f));
                CHECK(o[e] == (sys.inward(k.base, f) ? 1 : -1));
            }
        }
    }

    TEST_CASE("square classification agrees with the affine-extension oracle for every base") {
        std::mt19937_64 rng(9);
        const auto& col = reference_coloring();
        const auto edges = adjacency_graph().edges();
        for (int trial = 0; trial < 50; ++trial) {
            const auto part = random_partition(rng, 8);
            const auto [f, g] = edges[rng() % edges.size()];
            const SquareClass cls = classify_square(part, col, f, g);
            for (int b = 0; b < 8; ++b) {
                const auto sys = CoorientationSystem::make(col, part, static_cast<State>(rng()));
                const CopyLabel l = static_cast<CopyLabel>(rng() & 0xFF);
                CHECK((cls == SquareClass::good) == oracle::square_has_affine_extension(sys, l, f, g));
            }
        }
    }

    TEST_CASE("singleton partition has no bad squares; the trivial partition makes all of them bad") {
        const auto& col = reference_coloring();
        int bad_single = 0, bad_one = 0;
        for (auto [f, g] : adjacency_graph().edges()) {
            bad_single += classify_square(Partition::singletons(8), col, f, g) == SquareClass::bad;
            bad_one += classify_square(Partition::modulo(8, 1), col, f, g) == SquareClass::bad;
        }
        CHECK(bad_single == 0);
        CHECK(bad_one == 80);
    }

    TEST_CASE("base state candidates") {
        const auto& col = reference_coloring();
        bool exhaustive = false;
        const auto single = base_state_candidates(col, Partition::singletons(8), 0, 4096, &exhaustive);
        CHECK(exhaustive);
        CHECK(single.size() == 256);
        const auto m4 = base_state_candidates(col, Partition::modulo(8, 4), 0, 4096, &exhaustive);
        CHECK(exhaustive);
        CHECK(m4.size() == 4096);
        CHECK(std::set<State>(m4.begin(), m4.end()).size() == 4096);
        const auto sampled = base_state_candidates(col, Partition::modulo(8, 4), 3, 64, &exhaustive);
        CHECK_FALSE(exhaustive);
        CHECK(sampled.size() == 64);
        CHECK(std::set<State>(sampled.begin(), sampled.end()).size() == 64);
        CHECK(base_state_candidates(col, Partition::modulo(8, 4), 3, 64) == sampled);
        // Candidates hold the lowest facet of each flip mask outward.
        for (State s : m4)
            for (int c = 1; c <= 8; ++c) CHECK(((s >> __builtin_ctz(flip_mask(col, Partition::modulo(8, 4), c))) & 1) == 0);
    }

    TEST_CASE("mod-4 witness and singleton failure") {
        const auto& t = reference_tessellation();
        const auto cusps = cusp_orbits(t);
        std::size_t tested = 0;
        const auto w = search_base_state(t, cusps, Partition::modulo(8, 4), 0, 4096, &tested);
        REQUIRE(w.has_value());
        CHECK(format_state(*w) == "ooooiiiiooioioii");
        CHECK(tested == 3408);
        const auto none = search_base_state(t, cusps, Partition::singletons(8), 0, 4096, &tested);
        CHECK_FALSE(none.has_value());
        CHECK(tested == 256);
    }

    TEST_CASE("loop table agrees with the direct cusp walk") {
        const auto& t = reference_tessellation();
        const auto cusps = cusp_orbits(t);
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 10; ++trial) {
            const auto part = random_partition(rng, 8);
            const CuspLoopTable table(t, cusps, part);
            for (int b = 0; b < 5; ++b) {
                const State base = static_cast<State>(rng());
                const auto sys = CoorientationSystem::make(t.coloring(), part, base);
                bool consistent = true;
                const auto fast = table.degrees(base, &consistent);
                bool all_nonzero = consistent;
                for (std::size_t i = 0; i < cusps.size(); ++i) {
                    if (!consistent) break;
                    const auto cls = cusp_restriction_class(t, cusps[i], sys);
                    CHECK(cls.degrees == fast[i]);
                    all_nonzero = all_nonzero && cls.nonzero();
                }
                CHECK(table.all_nonzero(base) == all_nonzero);
            }
        }
    }
}
