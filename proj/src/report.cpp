#include "p5/report.hpp"

#include <map>
#include <sstream>

namespace p5 {

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_label(CopyLabel l, int colors) {
    std::string s;
    for (int i = 0; i < colors; ++i) s += ((l >> i) & 1) ? '1' : '0';
    return s;
}

std::string format_facet_set(FacetSet s) {
    std::string out;
    for_each_bit(s, [&](int f) {
        if (!out.empty()) out += ' ';
        out += FacetVector::from_index(f).to_string();
    });
    return out;
}

namespace {

Json facet_list(FacetSet s) {
    Json a = Json::array();
    for_each_bit(s, [&](int f) { a.push_back(FacetVector::from_index(f).to_string()); });
    return a;
}

Json vec(const std::vector<long long>& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

}  // namespace

Json polytope_json() {
    Json j;
    Json fs = Json::array();
    for (int f = 0; f < kFacetCount; ++f)
        fs.push_back({{"index", f}, {"signs", facets()[f].to_string()}, {"mask", facets()[f].mask()}});
    j["facets"] = fs;

    const auto& g = adjacency_graph();
    Json edges = Json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    int dmin = kFacetCount, dmax = 0;
    for (int f = 0; f < kFacetCount; ++f) {
        dmin = std::min(dmin, g.degree(f));
        dmax = std::max(dmax, g.degree(f));
    }
    j["adjacency"] = {{"edge_count", edges.size()}, {"min_degree", dmin}, {"max_degree", dmax}, {"edges", edges}};

    Json tangent = Json::array();
    for (auto [a, b] : ideal_tangent_pairs()) tangent.push_back({a, b});
    j["ideal_tangent"] = {{"pair_count", tangent.size()}, {"pairs", tangent}};

    Json counts = Json::array();
    int max_size = 0;
    for (int k = 1; k <= 6; ++k) {
        const auto n = cliques(k).size();
        counts.push_back(n);
        if (n) max_size = k;
    }
    j["cliques"] = {{"counts", counts}, {"max_size", max_size}};

    Json iv = Json::array();
    for (const auto& p : ideal_vertices()) iv.push_back({{"vertex", p.to_string()}, {"star", facet_list(ideal_vertex_star(p))}});
    j["ideal_vertices"] = iv;
    j["symmetry_order"] = symmetry_group().size();
    return j;
}

std::string polytope_dot() {
    std::ostringstream os;
    os << "graph P5 {\n";
    for (int f = 0; f < kFacetCount; ++f) os << "  " << f << " [label=\"" << facets()[f].to_string() << "\"];\n";
    for (auto [a, b] : adjacency_graph().edges()) os << "  " << a << " -- " << b << ";\n";
    os << "}\n";
    return os.str();
}

Json coloring_json(const Coloring& col) {
    Json fs = Json::array();
    for (int f = 0; f < kFacetCount; ++f) fs.push_back({{"signs", facets()[f].to_string()}, {"color", col.color(f)}});
    Json j;
    j["palette"] = col.palette_size();
    j["colors_used"] = popcount(col.used_colors());
    j["proper"] = is_proper(col);
    const auto w = torsion_witness(col);
    if (w) {
        Json a = Json::array();
        for (int f : *w) a.push_back(facets()[f].to_string());
        j["torsion_witness"] = a;
    } else {
        j["torsion_witness"] = nullptr;
    }
    j["facets"] = fs;
    return j;
}

Json cusp_json(const Cusp& c, int colors) {
    Json dirs = Json::array();
    for (const auto& d : c.directions)
        dirs.push_back({{"lower", facets()[d.lower].to_string()}, {"upper", facets()[d.upper].to_string()}, {"period", d.period}});
    return {{"vertex", c.base.to_string()},
            {"first_copy", format_label(c.orbit.front(), colors)},
            {"tiles", c.orbit.size()},
            {"rank", c.rank},
            {"modulus", c.modulus},
            {"size", to_string(c.size_class)},
            {"directions", dirs}};
}

Json manifold_json(const Tessellation& t, const std::vector<Cusp>& cusps) {
    int large = 0, small = 0, other = 0;
    Json list = Json::array();
    for (const auto& c : cusps) {
        (c.size_class == CuspSize::large ? large : c.size_class == CuspSize::small ? small : other)++;
        list.push_back(cusp_json(c, t.colors()));
    }
    Json j;
    j["colors"] = t.colors();
    j["copies"] = t.copy_count();
    j["glued_pairs"] = t.glued_pair_count();
    j["cusp_census"] = {{"total", cusps.size()}, {"large", large}, {"small", small}, {"other", other}};
    j["cusps"] = list;
    return j;
}

Json census_json(const Cubulation& cub) {
    const CellCensus c = cell_census(cub.complex());
    Json expected = Json::array();
    for (int k = 0; k <= 5; ++k) expected.push_back(expected_cell_count(cub.tessellation().colors(), k));
    bool boundary_ok = true;
    try {
        cub.complex().chain_complex().verify();
    } catch (const BoundaryError&) {
        boundary_ok = false;
    }
    return {{"counts", vec(c.counts)}, {"expected", expected}, {"euler", c.euler}, {"boundary_squared_zero", boundary_ok}};
}

Json cube_cell_json(const Cubulation& cub, int dim, std::uint32_t i) {
    const CubeKey& k = cub.key(dim, i);
    Json corners = Json::array();
    for (auto v : cub.complex().cell(dim, i).corners) corners.push_back(v);
    return {{"dim", dim},
            {"index", i},
            {"base", format_label(k.base, cub.tessellation().colors())},
            {"facets", facet_list(k.facets)},
            {"corners", corners}};
}

Json classify_json(const Cubulation& cub, const CoorientationSystem& sys, const FamilyReport& report) {
    std::map<std::pair<int, int>, long long> by_pair;
    for (std::uint32_t s = 0; s < cub.count(2); ++s) {
        const auto ax = cub.axes(2, s);
        int a = sys.coloring.color(ax[0]), b = sys.coloring.color(ax[1]);
        if (a > b) std::swap(a, b);
        ++by_pair[{a, b}];
    }
    Json pairs = Json::array();
    for (const auto& [ab, n] : by_pair)
        pairs.push_back({{"colors", {ab.first, ab.second}},
                         {"squares", n},
                         {"class", sys.partition.same_block(ab.first, ab.second) ? "bad" : "good"}});
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back({{"dim", v.dim}, {"cube", v.cube}, {"reason", v.reason}});
    Json j;
    j["partition"] = sys.partition.to_string();
    j["base_state"] = format_state(sys.base);
    j["squares"] = cub.count(2);
    j["bad_squares"] = report.bad_count;
    j["good_squares"] = static_cast<long long>(cub.count(2)) - report.bad_count;
    j["by_color_pair"] = pairs;
    j["families"] = report.families.size();
    j["family_check"] = report.ok();
    j["violations"] = violations;
    return j;
}

Json survey_json(const SurveyReport& s, const SurveyOptions& opt) {
    Json rows = Json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"partition", r.partition.to_string()},
                        {"bad_squares", r.bad_squares},
                        {"family_ok", r.family_ok},
                        {"cusp_ok", r.cusp_ok},
                        {"witness", r.witness ? Json(format_state(*r.witness)) : Json(nullptr)},
                        {"states_tested", r.states_tested},
                        {"exhaustive", r.exhaustive}});
    Json both = Json::array();
    for (auto i : s.achieving_both) both.push_back(s.rows[i].partition.to_string());
    std::size_t zero_bad = 0, cusp_ok = 0, family_ok = 0;
    for (const auto& r : s.rows) {
        zero_bad += r.bad_squares == 0;
        cusp_ok += r.cusp_ok;
        family_ok += r.family_ok;
    }
    Json j;
    j["partitions"] = s.rows.size();
    j["seed"] = opt.seed;
    j["samples"] = opt.samples;
    j["zero_bad_squares"] = zero_bad;
    j["family_ok"] = family_ok;
    j["cusp_ok"] = cusp_ok;
    j["achieving_both"] = both;
    j["rows"] = rows;
    return j;
}

std::string survey_csv(const SurveyReport& s) {
    std::ostringstream os;
    os << "partition,bad_squares,family_ok,cusp_ok,witness,states_tested,exhaustive\n";
    for (const auto& r : s.rows)
        os << '"' << r.partition.to_string() << "\"," << r.bad_squares << ',' << r.family_ok << ',' << r.cusp_ok << ','
           << (r.witness ? format_state(*r.witness) : "") << ',' << r.states_tested << ',' << r.exhaustive << '\n';
    return os.str();
}

Json cusp_classes_json(const std::vector<Cusp>& cusps, const std::vector<CuspClass>& classes) {
    Json a = Json::array();
    for (std::size_t i = 0; i < cusps.size(); ++i) {
        const auto& c = classes[i];
        a.push_back({{"vertex", cusps[i].base.to_string()},
                     {"size", to_string(cusps[i].size_class)},
                     {"degrees", c.degrees},
                     {"gcd", c.gcd},
                     {"primitive", c.primitive},
                     {"pattern", to_string(c.pattern)}});
    }
    return a;
}

Json certificate_json(const CollapseCertificate& cert) {
    Json steps = Json::array();
    for (const auto& s : cert.steps) steps.push_back({{"face", s.face}, {"coface", s.coface}});
    return {{"restart", cert.restart}, {"remaining", cert.remaining}, {"steps", steps}};
}

Json link_table_json(const LinkSurvey& s) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
        Json row = {{"vertex", r.vertex},
                    {"center", r.center},
                    {"kind", to_string(r.kind)},
                    {"simplices", r.simplices},
                    {"certified", r.certified},
                    {"replayed", r.replayed},
                    {"steps", r.steps},
                    {"restarts", r.restarts}};
        if (!r.certified) {
            row["betti_gf2"] = vec(r.betti_gf2);
            row["betti_q"] = vec(r.betti_q);
        }
        if (r.certificate) row["certificate"] = certificate_json(*r.certificate);
        rows.push_back(std::move(row));
    }
    return {{"links", s.rows.size()}, {"certified", s.certified}, {"inconclusive", s.inconclusive}, {"rows", rows}};
}

std::string link_table_csv(const LinkSurvey& s) {
    std::ostringstream os;
    os << "vertex,center,kind,simplices,certified,replayed,steps,restarts\n";
    for (const auto& r : s.rows)
        os << r.vertex << ',' << r.center << ',' << to_string(r.kind) << ',' << r.simplices << ',' << r.certified << ','
           << r.replayed << ',' << r.steps << ',' << r.restarts << '\n';
    return os.str();
}

Json fiber_json(const FiberSummary& s, const Rational& t) {
    Json comps = Json::array();
    for (auto c : s.sheet_components) comps.push_back(c);
    return {{"t", format_rational(t)},
            {"counts", vec(s.counts)},
            {"euler_cells", s.euler_cells},
            {"betti_gf2", vec(s.betti)},
            {"euler_betti", s.euler_betti},
            {"components", s.components},
            {"divisibility", s.divisibility},
            {"sheet_components", comps},
            {"sheet_counts", vec(s.sheet_counts)},
            {"sheet_betti_gf2", vec(s.sheet_betti)},
            {"primitive_connected", s.primitive_connected}};
}

Json fiber_cells_json(const MixedComplex& mx, const PLMap& f, const LevelSet& fiber) {
    Json dims = Json::array();
    for (std::size_t d = 0; d < fiber.cells.size(); ++d) {
        Json cells = Json::array();
        for (const auto& fc : fiber.cells[d]) {
            const int k = static_cast<int>(d) + 1;
            const MixedCell& c = mx.cell(k, fc.source);
            const auto& L = f.lift(k, fc.source);
            const Rational level = fiber.t + Rational(fc.level);
            Json pts = Json::array();
            for (const EdgeUse& e : c.edges) {
                const Rational a = L[e.slot0], b = L[e.slot1];
                if (!((a < level && level < b) || (b < level && level < a))) continue;
                const Rational s = (level - a) / (b - a);
                Json p = Json::array();
                for (int x = 0; x < c.cube_dim; ++x) {
                    const Rational x0(c.coords[e.slot0][x], 2), x1(c.coords[e.slot1][x], 2);
                    p.push_back(format_rational(x0 + s * (x1 - x0)));
                }
                pts.push_back(std::move(p));
            }
            cells.push_back({{"cell", {{"dim", k}, {"index", fc.source}, {"cube_dim", c.cube_dim}, {"cube", c.cube}}},
                             {"level", fc.level},
                             {"sheet", fc.sheet},
                             {"faces", fc.faces},
                             {"points", pts}});
        }
        dims.push_back(std::move(cells));
    }
    return {{"t", format_rational(fiber.t)}, {"cells", dims}};
}

Json error_json(int exit_code, const std::string& kind, const std::string& message) {
    return {{"error", {{"code", exit_code}, {"kind", kind}, {"message", message}}}};
}

}  // namespace p5
