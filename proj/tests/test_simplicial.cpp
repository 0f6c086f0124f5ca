#include <doctest.h>

#include "p5/simplicial.hpp"

using namespace p5;

TEST_SUITE("simplicial") {
    TEST_CASE("closure under faces") {
        SimplicialComplex k;
        k.add({0, 1, 2});
        CHECK(k.size() == 7);
        CHECK(k.contains({0, 2}));
        CHECK(k.dimension() == 2);
        CHECK(k.counts() == std::vector<long long>{3, 3, 1});
    }

    TEST_CASE("simplex fixtures") {
        CHECK(simplex_fixture(4).counts() == std::vector<long long>{5, 10, 10, 5, 1});
        CHECK(simplex_boundary_fixture(1).counts() == std::vector<long long>{3, 3});
    }

    TEST_CASE("simplices certify and replay") {
        for (int d = 0; d <= 5; ++d) {
            const auto k = simplex_fixture(d);
            const auto r = certify_contractible(k, 42);
            REQUIRE(r.certified());
            std::string why;
            CHECK(check_certificate(k, *r.certificate, &why));
            CHECK(r.certificate->steps.size() == (k.size() - 1) / 2);
        }
    }

    TEST_CASE("a triangle boundary is inconclusive with the circle's Betti numbers") {
        const auto k = simplex_boundary_fixture(1);
        const auto r = certify_contractible(k, 1, 8);
        CHECK_FALSE(r.certified());
        CHECK(r.betti_gf2 == std::vector<long long>{1, 1});
        CHECK(r.betti_q == std::vector<long long>{1, 1});
        CHECK(r.restarts_tried == 8);
    }

    TEST_CASE("the empty complex is inconclusive") {
        CHECK_FALSE(certify_contractible(SimplicialComplex{}, 0, 2).certified());
    }

    TEST_CASE("tampered certificates are rejected") {
        const auto k = simplex_fixture(3);
        auto cert = *certify_contractible(k, 9).certificate;
        std::string why;
        auto dropped = cert;
        dropped.steps.pop_back();
        CHECK_FALSE(check_certificate(k, dropped, &why));
        CHECK_FALSE(why.empty());
        auto swapped = cert;
        std::swap(swapped.steps.front(), swapped.steps.back());
        CHECK_FALSE(check_certificate(k, swapped));
        auto wrong = cert;
        wrong.remaining = {99};
        CHECK_FALSE(check_certificate(k, wrong));
    }

    TEST_CASE("a cone over a pentagon collapses") {
        SimplicialComplex cone;
        for (std::uint32_t i = 0; i < 5; ++i) {
            std::uint32_t a = i, b = (i + 1) % 5;
            if (a > b) std::swap(a, b);
            cone.add({a, b, 5});
        }
        CHECK(certify_contractible(cone, 3).certified());
    }

    TEST_CASE("barycentric subdivision of a triangle") {
        const auto sd = barycentric_subdivision(simplex_fixture(2));
        CHECK(sd.counts() == std::vector<long long>{7, 12, 6});
        CHECK(certify_contractible(sd, 0).certified());
    }

    TEST_CASE("delta complex with a doubled edge subdivides to a circle") {
        DeltaComplex d;
        d.cells.resize(2);
        d.cells[0] = {{{0}, {}}, {{1}, {}}};
        d.cells[1] = {{{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}};
        CHECK_FALSE(d.is_simplicial());
        CHECK(d.is_regular());
        const auto k = to_simplicial(d);
        CHECK(betti(k.chain_complex()) == std::vector<long long>{1, 1});
    }
}
