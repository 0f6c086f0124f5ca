// p5fiber: command-line driver for the P5 fibering pipeline.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "p5/coloring.hpp"
#include "p5/cubulation.hpp"
#include "p5/cusp_class.hpp"
#include "p5/game.hpp"
#include "p5/homology.hpp"
#include "p5/morse.hpp"
#include "p5/report.hpp"
#include "p5/tessellation.hpp"

using namespace p5;

namespace {

enum Exit { ok = 0, precondition = 2, inconclusive = 3, internal = 4 };

struct Precondition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string coloring = "reference";
    int search_coloring = 0;
    std::string partition = "1,5|2,6|3,7|4,8";
    std::string base_state = "search";
    std::string t = "1/4";
    std::string center = "1/2";
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    std::string format = "json";
    std::size_t samples = 4096;
    int restarts = 64;
    std::size_t limit = 1;
    std::string fixture;
    std::string cell;
    bool certificates = false;
};

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw Precondition("cannot parse rational '" + s + "'");
    }
}

Coloring load_coloring(const Config& cfg) {
    if (cfg.search_coloring > 0) {
        const auto found = search_colorings(cfg.search_coloring, cfg.seed, 1);
        if (found.empty()) throw Precondition("no proper coloring with " + std::to_string(cfg.search_coloring) + " colors");
        return found.front();
    }
    if (cfg.coloring == "reference") return reference_coloring();
    return read_coloring_file(cfg.coloring);
}

void emit(const Config& cfg, const std::string& name, const std::string& text) {
    std::cout << text;
    if (cfg.out.empty()) return;
    std::filesystem::create_directories(cfg.out);
    std::ofstream(std::filesystem::path(cfg.out) / name) << text;
}

void emit_json(const Config& cfg, const std::string& name, const Json& j) { emit(cfg, name + ".json", j.dump(2) + "\n"); }

void write_side(const Config& cfg, const std::string& name, const std::string& text) {
    if (cfg.out.empty()) return;
    std::filesystem::create_directories(cfg.out);
    std::ofstream(std::filesystem::path(cfg.out) / name) << text;
}

// Everything downstream of the coloring, built once per invocation.
struct Pipeline {
    Coloring col;
    std::optional<Tessellation> tess;
    std::vector<Cusp> cusps;
    std::optional<Cubulation> cub;
    Partition part;
    State base = 0;
    std::size_t states_tested = 0;

    explicit Pipeline(const Config& cfg, bool need_system) : col(load_coloring(cfg)) {
        if (!is_proper(col)) throw Precondition("coloring is not proper");
        tess.emplace(col);
        cusps = cusp_orbits(*tess);
        cub.emplace(build_cubulation(*tess));
        if (!need_system) return;
        try {
            part = Partition::parse(cfg.partition, col.palette_size());
        } catch (const std::invalid_argument& e) {
            throw Precondition(e.what());
        }
        if (cfg.base_state == "search") {
            const auto w = search_base_state(*tess, cusps, part, cfg.seed, cfg.samples, &states_tested);
            if (!w) throw Precondition("no base state makes every cusp class nonzero for " + part.to_string());
            base = *w;
        } else if (std::filesystem::exists(cfg.base_state)) {
            base = read_state_file(cfg.base_state);
        } else {
            base = parse_state(cfg.base_state);
        }
    }

    CoorientationSystem system() const { return CoorientationSystem::make(col, part, base); }
};

Json config_json(const Config& cfg, const Pipeline& p) {
    return {{"coloring", cfg.search_coloring > 0 ? "search:" + std::to_string(cfg.search_coloring) : cfg.coloring},
            {"partition", p.part.to_string()},
            {"base_state", format_state(p.base)},
            {"base_state_source", cfg.base_state},
            {"seed", cfg.seed}};
}

int cmd_polytope(const Config& cfg) {
    if (cfg.format == "dot")
        emit(cfg, "polytope.dot", polytope_dot());
    else
        emit_json(cfg, "polytope", polytope_json());
    return ok;
}

int cmd_color_search(const Config& cfg) {
    const int c = cfg.search_coloring > 0 ? cfg.search_coloring : 8;
    const auto found = search_colorings(c, cfg.seed, cfg.limit);
    Json list = Json::array();
    for (std::size_t i = 0; i < found.size(); ++i) {
        list.push_back(coloring_json(found[i]));
        write_side(cfg, "coloring_" + std::to_string(i) + ".txt", format_coloring(found[i]));
    }
    emit_json(cfg, "colorings", {{"palette", c}, {"seed", cfg.seed}, {"found", found.size()}, {"colorings", list}});
    return found.empty() ? precondition : ok;
}

int cmd_color_verify(const Config& cfg) {
    const Coloring col = load_coloring(cfg);
    emit_json(cfg, "coloring", coloring_json(col));
    return is_proper(col) ? ok : precondition;
}

int cmd_manifold(const Config& cfg) {
    Pipeline p(cfg, false);
    Json j = manifold_json(*p.tess, p.cusps);
    Json tori = Json::array();
    for (const auto& c : p.cusps) {
        const TorusCheck tc = torus_battery(cusp_section_complex(*p.tess, c));
        tori.push_back({{"vertex", c.base.to_string()}, {"euler", tc.euler}, {"betti_gf2", tc.betti}, {"ok", tc.ok}});
    }
    j["torus_battery"] = tori;
    emit_json(cfg, "manifold", j);
    return ok;
}

int cmd_cubulate(const Config& cfg) {
    Pipeline p(cfg, false);
    Json j = census_json(*p.cub);
    if (!cfg.cell.empty()) {
        const auto colon = cfg.cell.find(':');
        if (colon == std::string::npos) throw Precondition("--cell expects DIM:INDEX");
        const int dim = std::stoi(cfg.cell.substr(0, colon));
        const auto idx = static_cast<std::uint32_t>(std::stoul(cfg.cell.substr(colon + 1)));
        if (dim < 0 || dim > p.cub->complex().dimension() || idx >= p.cub->count(dim)) throw Precondition("no such cell");
        j["cell"] = cube_cell_json(*p.cub, dim, idx);
    }
    emit_json(cfg, "cubulation", j);
    return ok;
}

int cmd_game_classify(const Config& cfg) {
    Pipeline p(cfg, true);
    const auto sys = p.system();
    const auto report = find_bad_families(p.cub->complex(), edge_orientations(*p.cub, sys));
    Json j = classify_json(*p.cub, sys, report);
    j["config"] = config_json(cfg, p);
    emit_json(cfg, "classify", j);
    return ok;
}

int cmd_game_survey(const Config& cfg) {
    Pipeline p(cfg, false);
    SurveyOptions opt{cfg.seed, cfg.samples, cfg.jobs};
    const SurveyReport s = survey_partitions(*p.cub, p.cusps, opt);
    if (cfg.format == "csv")
        emit(cfg, "survey.csv", survey_csv(s));
    else
        emit_json(cfg, "survey", survey_json(s, opt));
    return ok;
}

int cmd_morse_run(const Config& cfg) {
    Pipeline p(cfg, true);
    const auto sys = p.system();
    const CubeComplex& cx = p.cub->complex();
    const auto o = edge_orientations(*p.cub, sys);
    const FamilyReport fam = find_bad_families(cx, o);
    const MixedComplex mx = subdivide(cx, o, fam);
    mx.chain_complex().verify();
    PLMapOptions popt;
    popt.center = parse_rational(cfg.center);
    const PLMap f = build_pl_map(mx, o, popt);
    const LinkSurvey links = certify_links(mx, f, cfg.seed, cfg.jobs, cfg.restarts, cfg.certificates);

    std::vector<CuspClass> classes;
    for (const auto& c : p.cusps) classes.push_back(cusp_restriction_class(*p.tess, c, sys));

    Json j;
    j["config"] = config_json(cfg, p);
    j["bad_squares"] = fam.bad_count;
    j["families"] = fam.families.size();
    j["family_check"] = fam.ok();
    j["subdivision"] = {{"subdivided_cubes", mx.subdivided_cube_count()},
                        {"centers", mx.vertex_count() - mx.original_vertex_count()},
                        {"counts", mx.counts()},
                        {"euler", euler_characteristic(mx.counts())}};
    j["pl_map"] = {{"center", format_rational(f.center)}, {"cells_checked", f.cells_checked}, {"morse", true}};
    j["cusp_classes"] = cusp_classes_json(p.cusps, classes);
    if (cfg.certificates) write_side(cfg, "certificates.json", link_table_json(links).dump(2) + "\n");
    if (cfg.format == "csv") {
        emit(cfg, "links.csv", link_table_csv(links));
    } else {
        LinkSurvey brief = links;
        for (auto& r : brief.rows) r.certificate.reset();
        j["links"] = link_table_json(brief);
        emit_json(cfg, "morse", j);
    }
    return links.inconclusive ? inconclusive : ok;
}

int cmd_fiber(const Config& cfg) {
    const Rational t = parse_rational(cfg.t);
    Json j;
    if (!cfg.fixture.empty()) {
        CubeComplex cx;
        if (cfg.fixture == "torus2")
            cx = torus_complex(2, 1);
        else if (cfg.fixture == "cube5")
            cx = cube_fixture(5);
        else
            throw Precondition("unknown fixture '" + cfg.fixture + "'");
        // f rises along every edge from corner 0 to corner 1: x + y on the torus, the coordinate sum on the cube.
        const EdgeOrientation o(cx.count(1), 1);
        const MixedComplex mx = unsubdivided(cx);
        const PLMap f = build_pl_map(mx, o);
        const LevelSet fiber = level_set(mx, f, t);
        j["fixture"] = cfg.fixture;
        j["fiber"] = fiber_json(summarize_fiber(fiber), t);
        if (!cfg.out.empty()) write_side(cfg, "fiber_cells.json", fiber_cells_json(mx, f, fiber).dump(2) + "\n");
        emit_json(cfg, "fiber", j);
        return ok;
    }
    Pipeline p(cfg, true);
    const auto sys = p.system();
    const auto o = edge_orientations(*p.cub, sys);
    const MixedComplex mx = subdivide(p.cub->complex(), o, find_bad_families(p.cub->complex(), o, false));
    PLMapOptions popt;
    popt.center = parse_rational(cfg.center);
    const PLMap f = build_pl_map(mx, o, popt);
    const LevelSet fiber = level_set(mx, f, t);
    j["config"] = config_json(cfg, p);
    j["fiber"] = fiber_json(summarize_fiber(fiber), t);
    if (!cfg.out.empty()) write_side(cfg, "fiber_cells.json", fiber_cells_json(mx, f, fiber).dump(2) + "\n");
    emit_json(cfg, "fiber", j);
    return ok;
}

int cmd_fixtures(const Config& cfg) {
    Json list = Json::array();
    auto add = [&](const std::string& name, const CubeComplex& cx) {
        const CellCensus c = cell_census(cx);
        list.push_back({{"name", name}, {"counts", c.counts}, {"euler", c.euler}, {"betti_gf2", betti(cx.chain_complex())}});
    };
    add("torus2", torus_complex(2, 1));
    add("torus4", torus_complex(4, 3));
    for (int k = 0; k <= 5; ++k) add("cube" + std::to_string(k), cube_fixture(k));
    for (int k = 1; k <= 3; ++k) add("sphere" + std::to_string(k), cube_boundary_fixture(k));
    emit_json(cfg, "fixtures", {{"fixtures", list}});
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial workbench for the P5 circle-valued Morse map"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--coloring", cfg.coloring, "coloring file, or 'reference'");
    app.add_option("--search-coloring", cfg.search_coloring, "search a proper coloring with this many colors");
    app.add_option("--partition", cfg.partition, "color partition, e.g. 1,5|2,6|3,7|4,8");
    app.add_option("--base-state", cfg.base_state, "state file, 16 i/o characters, 0x hex, or 'search'");
    app.add_option("--t", cfg.t, "regular value P/Q");
    app.add_option("--center", cfg.center, "value of center vertices P/Q in (0,1)");
    app.add_option("--seed", cfg.seed, "global seed");
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "also write outputs into this directory");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "dot"}));
    app.add_option("--samples", cfg.samples, "base states per partition before sampling kicks in");
    app.add_option("--restarts", cfg.restarts, "collapse restarts per link");

    int (*run)(const Config&) = nullptr;
    auto on = [&](CLI::App* sub, int (*fn)(const Config&)) { sub->callback([&run, fn] { run = fn; }); };

    on(app.add_subcommand("polytope", "facet, adjacency, clique and symmetry census"), cmd_polytope);
    auto* color = app.add_subcommand("color", "colorings");
    color->require_subcommand(1);
    auto* search = color->add_subcommand("search", "search proper colorings");
    search->add_option("--limit", cfg.limit, "number of colorings");
    on(search, cmd_color_search);
    on(color->add_subcommand("verify", "check a coloring"), cmd_color_verify);
    on(app.add_subcommand("manifold", "copies, gluing and cusp census"), cmd_manifold);
    auto* cub = app.add_subcommand("cubulate", "cell census of the dual cubulation");
    cub->add_option("--cell", cfg.cell, "also export one cell, DIM:INDEX");
    on(cub, cmd_cubulate);
    auto* game = app.add_subcommand("game", "co-orientation game");
    game->require_subcommand(1);
    on(game->add_subcommand("classify", "square classification"), cmd_game_classify);
    on(game->add_subcommand("survey", "all partitions of the colors"), cmd_game_survey);
    auto* morse = app.add_subcommand("morse", "Morse pipeline");
    morse->require_subcommand(1);
    auto* mrun = morse->add_subcommand("run", "subdivision, PL map, links, cusp classes");
    mrun->add_flag("--certificates", cfg.certificates, "write collapse certificates into --out");
    on(mrun, cmd_morse_run);
    auto* fiber = app.add_subcommand("fiber", "level set at --t");
    fiber->add_option("--fixture", cfg.fixture, "torus2 or cube5 instead of the manifold");
    on(fiber, cmd_fiber);
    on(app.add_subcommand("fixtures", "toy complexes"), cmd_fixtures);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    auto fail = [](int code, const std::string& kind, const std::string& msg) {
        std::cout << error_json(code, kind, msg).dump(2) << "\n";
        return code;
    };
    try {
        return run(cfg);
    } catch (const Precondition& e) {
        return fail(precondition, "precondition", e.what());
    } catch (const SubdivisionError& e) {
        return fail(precondition, "subdivision", e.what());
    } catch (const PLMapError& e) {
        return fail(precondition, "pl_map", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(precondition, "invalid_argument", e.what());
    } catch (const ComplexError& e) {
        return fail(internal, "complex", e.what());
    } catch (const CuspClassError& e) {
        return fail(internal, "cusp_class", e.what());
    } catch (const BoundaryError& e) {
        return fail(internal, "boundary", e.what());
    } catch (const std::logic_error& e) {
        return fail(internal, "logic", e.what());
    } catch (const std::runtime_error& e) {
        return fail(precondition, "runtime", e.what());
    }
}
