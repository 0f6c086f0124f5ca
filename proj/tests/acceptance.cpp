// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "p5/cusp_class.hpp"
#include "p5/game.hpp"
#include "p5/morse.hpp"
#include "p5/report.hpp"

using namespace p5;

namespace {

// Pinned tolerances and budgets (seconds).
constexpr double kKleinTol = 1e-9;
constexpr double kBudgetC1 = 1;
constexpr double kBudgetC2 = 1;
constexpr double kBudgetC3 = 10;
constexpr double kBudgetC4 = 30;
constexpr double kBudgetC5 = 30;
constexpr double kBudgetC6 = 30;
constexpr double kBudgetC7 = 60;
constexpr double kBudgetC8 = 30 * 60;
constexpr double kBudgetC9 = 60 * 60;
constexpr double kBudgetC11 = 30 * 60;
constexpr std::uint64_t kSeed = 0;
constexpr int kJobs = 4;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, double budget, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs << " s";
    if (budget > 0) {
        time.unsetf(std::ios::fixed);
        time << " / budget " << budget << " s";
        if (secs > budget) {
            out.pass = false;
            out.detail += "; over budget";
        }
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %-4s %s: %s (%s)\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), time.str().c_str());
    std::fflush(stdout);
}

std::string join(const std::vector<long long>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// Shared state for the 8-color reference configuration, built lazily.
struct World {
    Coloring col = reference_coloring();
    Tessellation tess{col};
    std::vector<Cusp> cusps = cusp_orbits(tess);
    Cubulation cub = build_cubulation(tess);
};

World& world() {
    static World w;
    return w;
}

struct Certified {
    Partition part = Partition::modulo(8, 4);
    std::optional<State> base;
    std::size_t tested = 0;
    std::optional<CoorientationSystem> sys;
    EdgeOrientation o;
    FamilyReport families;
    std::optional<MixedComplex> mx;
    std::optional<PLMap> f;
    LinkSurvey links;
    std::string links_jobs1;
    std::string links_jobsN;
};

Certified certified;

std::string survey_dump_1, survey_dump_n;

}  // namespace

int main() {
    report("C1", "polytope census", kBudgetC1, [] {
        const auto& g = adjacency_graph();
        bool regular = true;
        for (int f = 0; f < kFacetCount; ++f) regular = regular && g.degree(f) == 10;
        int max_clique = 0;
        for (int k = 1; k <= 6; ++k)
            if (!cliques(k).empty()) max_clique = k;
        const auto order = symmetry_group().size();
        const bool ok = facets().size() == 16 && regular && g.edges().size() == 80 && ideal_tangent_pairs().size() == 40 &&
                        max_clique == 5 && order == 1920;
        std::ostringstream d;
        d << facets().size() << " facets, 10-regular=" << regular << ", " << g.edges().size() << " orthogonal, "
          << ideal_tangent_pairs().size() << " tangent, max clique " << max_clique << ", |G|=" << order;
        return Outcome{ok, d.str()};
    });

    report("C2", "pair classification vs Minkowski and Klein oracles", kBudgetC2, [] {
        int checked = 0, bad = 0;
        for (int i = 0; i < 16; ++i)
            for (int j = i + 1; j < 16; ++j) {
                const auto e = oracle::signs_of_mask(facets()[i].mask()), f = oracle::signs_of_mask(facets()[j].mask());
                int dot = 0;
                for (int k = 0; k < 5; ++k) dot += e[k] * f[k];
                const int pairing = dot - 1;
                const int dist = popcount(static_cast<unsigned>(facets()[i].mask() ^ facets()[j].mask()));
                const auto c = classify_pair(facets()[i], facets()[j]);
                const auto meet = oracle::klein_meet(facets()[i].mask(), facets()[j].mask(), kKleinTol);
                bool ok = minkowski_pairing(facets()[i], facets()[j]) == pairing;
                ok = ok && ((dist == 2 && pairing == 0 && c == PairClass::orthogonal && meet == oracle::Meet::crossing) ||
                            (dist == 4 && pairing == -4 && c == PairClass::ideal_tangent && meet == oracle::Meet::tangent));
                bad += !ok;
                ++checked;
            }
        return Outcome{checked == 120 && bad == 0,
                       std::to_string(checked) + " pairs, " + std::to_string(bad) + " disagreements, Klein tol 1e-9"};
    });

    report("C3", "coloring search and torsion witness", kBudgetC3, [] {
        const auto found = search_colorings(8, kSeed, 1);
        const bool found8 = found.size() == 1 && oracle::brute_is_proper(found[0]);
        bool none_small = true;
        for (int c = 1; c <= 4; ++c) none_small = none_small && search_colorings(c, kSeed, 1).empty();
        std::mt19937_64 rng(kSeed);
        int agree = 0;
        for (int t = 0; t < 1000; ++t) {
            const Coloring col = t % 2 ? oracle::random_proper_coloring(rng, 8 + t % 5) : oracle::random_coloring(rng, 1 + t % 16);
            const bool proper = oracle::brute_is_proper(col);
            agree += torsion_witness(col).has_value() == !proper && is_proper(col) == proper;
        }
        std::ostringstream d;
        d << "proper 8-coloring found=" << found8 << ", none for c<=4=" << none_small << ", witness iff improper on "
          << agree << "/1000";
        return Outcome{found8 && none_small && agree == 1000, d.str()};
    });

    report("C4", "tessellation and cusp census", kBudgetC4, [] {
        auto& w = world();
        bool orbits = true;
        std::mt19937_64 rng(kSeed + 1);
        for (int t = 0; t < 100; ++t) {
            const Tessellation tt(oracle::random_proper_coloring(rng, 8 + t % 3));
            for (const auto& c : cusp_orbits(tt)) {
                // Closure of the star colors under XOR.
                std::set<ColorVector> span{0};
                for_each_bit(ideal_vertex_star(c.base), [&](int f) {
                    std::set<ColorVector> next = span;
                    for (ColorVector v : span) next.insert(v ^ tt.coloring().basis(f));
                    span = std::move(next);
                });
                orbits = orbits && c.orbit.size() == span.size() && (std::size_t{1} << c.rank) == span.size();
            }
        }
        int large = 0, small = 0;
        bool tiles = true;
        for (const auto& c : w.cusps) {
            if (c.size_class == CuspSize::large) {
                ++large;
                tiles = tiles && c.orbit.size() == 256;
            } else if (c.size_class == CuspSize::small) {
                ++small;
                tiles = tiles && c.orbit.size() == 16;
            }
        }
        int found_large = 0, found_small = 0;
        const Tessellation found(search_colorings(8, kSeed, 1).at(0));
        for (const auto& c : cusp_orbits(found)) {
            found_large += c.size_class == CuspSize::large;
            found_small += c.size_class == CuspSize::small;
        }
        const bool ok = w.tess.copy_count() == 256 && w.tess.glued_pair_count() == 2048 && orbits && large == 8 &&
                        small == 32 && w.cusps.size() == 40 && tiles && found_large == 8 && found_small == 32;
        std::ostringstream d;
        d << w.tess.copy_count() << " copies, " << w.tess.glued_pair_count() << " glued pairs, orbit=2^rank on 100 colorings="
          << orbits << ", cusps " << large << "+" << small << "=" << w.cusps.size() << ", tiles 256/16=" << tiles << "; searched coloring (seed 0) cusps "
          << found_large << "+" << found_small;
        return Outcome{ok, d.str()};
    });

    report("C5", "cusp sections are 4-tori", kBudgetC5, [] {
        auto& w = world();
        int passed = 0;
        for (const auto& c : w.cusps) passed += torus_battery(cusp_section_complex(w.tess, c)).ok;
        return Outcome{passed == 40, std::to_string(passed) + "/40 sections with chi=0, Betti (1,4,6,4,1)"};
    });

    report("C6", "cubulation census", kBudgetC6, [] {
        auto& w = world();
        const auto n = oracle::brute_clique_counts(5);
        std::vector<long long> expected{256};
        for (int k = 1; k <= 5; ++k) expected.push_back(256 * n[k] / (1LL << k));
        const auto counts = w.cub.complex().counts();
        const auto cx = w.cub.complex().chain_complex();
        bool dd = true;
        try {
            cx.verify(Field::gf2);
            cx.verify(Field::rationals);
        } catch (const BoundaryError&) {
            dd = false;
        }
        const long long chi = euler_characteristic(counts);
        return Outcome{counts == expected && dd && chi == 0,
                       "counts " + join(counts) + " expected " + join(expected) + ", dd=0 " + (dd ? "yes" : "no") +
                           ", chi=" + std::to_string(chi)};
    });

    report("C7", "square classification vs affine-extension oracle", kBudgetC7, [] {
        auto& w = world();
        std::mt19937_64 rng(kSeed + 2);
        const auto parts = all_partitions(8);
        long long squares = 0, mismatches = 0, base_dependent = 0;
        for (int t = 0; t < 50; ++t) {
            const Partition& part = parts[rng() % parts.size()];
            const auto sys = CoorientationSystem::make(w.col, part, static_cast<State>(rng()));
            const auto other = CoorientationSystem::make(w.col, part, static_cast<State>(rng()));
            for (std::uint32_t s = 0; s < w.cub.count(2); ++s) {
                const auto ax = w.cub.axes(2, s);
                const CopyLabel l = w.cub.key(2, s).base;
                const bool good = classify_square(part, w.col, ax[0], ax[1]) == SquareClass::good;
                const bool oracle_good = oracle::square_has_affine_extension(sys, l, ax[0], ax[1]);
                mismatches += good != oracle_good;
                base_dependent += oracle_good != oracle::square_has_affine_extension(other, l, ax[0], ax[1]);
                ++squares;
            }
        }
        return Outcome{mismatches == 0 && base_dependent == 0,
                       std::to_string(squares) + " squares over 50 configurations, " + std::to_string(mismatches) +
                           " mismatches, " + std::to_string(base_dependent) + " base-dependent"};
    });

    report("C8", "partition survey", kBudgetC8, [] {
        auto& w = world();
        SurveyOptions opt;
        opt.seed = kSeed;
        opt.jobs = kJobs;
        const auto s = survey_partitions(w.cub, w.cusps, opt);
        survey_dump_n = survey_json(s, opt).dump();
        opt.jobs = 1;
        survey_dump_1 = survey_json(survey_partitions(w.cub, w.cusps, opt), opt).dump();

        const SurveyRow* single = nullptr;
        const SurveyRow* mod4 = nullptr;
        for (const auto& r : s.rows) {
            if (r.partition == Partition::singletons(8)) single = &r;
            if (r.partition == Partition::modulo(8, 4)) mod4 = &r;
        }
        const bool single_ok = single && single->bad_squares == 0 && !single->cusp_ok && single->exhaustive;
        const bool mod4_ok = mod4 && mod4->family_ok && mod4->bad_squares > 0;
        std::ostringstream d;
        d << s.rows.size() << " partitions, achieving both=" << s.achieving_both.size() << ", singletons: bad "
          << (single ? single->bad_squares : -1) << ", zero cusp class on all " << (single ? single->states_tested : 0)
          << " base states, mod-4: " << (mod4 ? mod4->bad_squares : -1) << " bad squares, family check "
          << (mod4 && mod4->family_ok ? "ok" : "failed");
        return Outcome{s.rows.size() == 4140 && s.achieving_both.empty() && single_ok && mod4_ok, d.str()};
    });

    report("C9", "Morse pipeline on the mod-4 configuration", kBudgetC9, [] {
        auto& w = world();
        auto& c = certified;
        c.base = search_base_state(w.tess, w.cusps, c.part, kSeed, SurveyOptions{}.samples, &c.tested);
        if (!c.base) return Outcome{false, "no base state with nonzero cusp classes"};
        c.sys = CoorientationSystem::make(w.col, c.part, *c.base);
        c.o = edge_orientations(w.cub, *c.sys);
        c.families = find_bad_families(w.cub.complex(), c.o);
        c.mx = subdivide(w.cub.complex(), c.o, c.families);
        c.f = build_pl_map(*c.mx, c.o);
        long long cells = 0;
        for (auto n : c.mx->counts()) cells += n;
        c.links = certify_links(*c.mx, *c.f, kSeed, kJobs, 64, true);
        c.links_jobsN = link_table_json(c.links).dump();
        c.links_jobs1 = link_table_json(certify_links(*c.mx, *c.f, kSeed, 1, 64, true)).dump();
        std::size_t replayed = 0;
        for (const auto& r : c.links.rows) replayed += r.certified && r.replayed;
        std::ostringstream d;
        d << "base " << format_state(*c.base) << ", " << c.families.bad_count << " bad squares, mixed "
          << join(c.mx->counts()) << ", PL map checked on " << c.f->cells_checked << "/" << cells << " cells, links "
          << c.links.certified << "/" << c.links.rows.size() << " certified, " << replayed << " replayed, "
          << c.links.inconclusive << " inconclusive";
        const bool ok = c.families.ok() && static_cast<long long>(c.f->cells_checked) == cells &&
                        c.links.inconclusive == 0 && replayed == c.links.rows.size();
        return Outcome{ok, d.str()};
    });

    report("C10", "cusp restriction classes", 0, [] {
        auto& w = world();
        if (!certified.sys) return Outcome{false, "no certified configuration"};
        int proj = 0, sum = 0, bad = 0;
        std::string sample_large, sample_small;
        for (const auto& cusp : w.cusps) {
            const auto cls = cusp_restriction_class(w.tess, cusp, *certified.sys);
            std::ostringstream v;
            v << "(" << cls.degrees[0] << "," << cls.degrees[1] << "," << cls.degrees[2] << "," << cls.degrees[3] << ")";
            if (cusp.size_class == CuspSize::large && cls.pattern == CuspPattern::projection && cls.nonzero()) {
                ++proj;
                if (sample_large.empty()) sample_large = v.str();
            } else if (cusp.size_class == CuspSize::small && cls.pattern == CuspPattern::summation && cls.nonzero()) {
                ++sum;
                if (sample_small.empty()) sample_small = v.str();
            } else {
                ++bad;
            }
        }
        std::ostringstream d;
        d << proj << "/8 large cusps project (e.g. " << sample_large << "), " << sum
          << "/32 small cusps sum on the primitive vector (e.g. " << sample_small << "), " << bad << " other";
        return Outcome{proj == 8 && sum == 32 && bad == 0, d.str()};
    });

    report("C11", "fiber connectivity and Euler characteristic", kBudgetC11, [] {
        const auto t2 = torus_complex(2, 1);
        const auto t2mx = unsubdivided(t2);
        const EdgeOrientation diag(2, 1);
        const auto t2fiber = level_set(t2mx, build_pl_map(t2mx, diag), Rational(1, 2));
        const auto t2sum = summarize_fiber(t2fiber);
        const bool torus_ok = t2sum.components == 1 && t2sum.betti == std::vector<long long>{1, 1};

        if (!certified.f) return Outcome{false, "no certified configuration"};
        const auto fiber = level_set(*certified.mx, *certified.f, Rational(1, 4));
        const auto s = summarize_fiber(fiber);
        std::ostringstream d;
        d << "T2 at 1/2: pi0=" << t2sum.components << " Betti " << join(t2sum.betti) << "; 5-dim at 1/4: counts "
          << join(s.counts) << ", chi cells " << s.euler_cells << " = chi Betti " << s.euler_betti << " " << join(s.betti)
          << ", raw pi0=" << s.components << " with f = " << s.divisibility << " x primitive, primitive fiber sheets "
          << "connected=" << (s.primitive_connected ? "yes" : "no");
        return Outcome{torus_ok && s.euler_cells == s.euler_betti && s.primitive_connected, d.str()};
    });

    report("C12", "determinism across --jobs", 0, [] {
        const bool survey_same = !survey_dump_1.empty() && survey_dump_1 == survey_dump_n;
        const bool links_same = !certified.links_jobs1.empty() && certified.links_jobs1 == certified.links_jobsN;
        std::ostringstream d;
        d << "survey JSON jobs 1 vs " << kJobs << " identical=" << survey_same << ", link table with certificates jobs 1 vs "
          << kJobs << " identical=" << links_same;
        return Outcome{survey_same && links_same, d.str()};
    });

    std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
