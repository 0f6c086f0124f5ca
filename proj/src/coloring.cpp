#include "p5/coloring.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace p5 {

Coloring::Coloring(const std::array<int, kFacetCount>& colors, int palette) : colors_(colors), palette_(palette) {
    if (palette < 1 || palette > kMaxPalette) throw std::invalid_argument("palette size must be in 1..16");
    for (int c : colors_)
        if (c < 1 || c > palette) throw std::invalid_argument("color outside palette");
}

FacetSet Coloring::facets_of(int color) const {
    FacetSet s = 0;
    for (int f = 0; f < kFacetCount; ++f)
        if (colors_[f] == color) s |= FacetSet(1u << f);
    return s;
}

ColorVector Coloring::used_colors() const {
    ColorVector v = 0;
    for (int f = 0; f < kFacetCount; ++f) v |= basis(f);
    return v;
}

CoxeterPresentation coxeter_presentation() {
    return {facets(), adjacency_graph().edges()};
}

Coloring identity_coloring() {
    std::array<int, kFacetCount> c{};
    std::iota(c.begin(), c.end(), 1);
    return Coloring(c, kFacetCount);
}

Coloring constant_coloring(int palette) {
    std::array<int, kFacetCount> c{};
    c.fill(1);
    return Coloring(c, palette);
}

Coloring reference_coloring() {
    // Each color class is {eps, eps with coordinates 1-4 negated}. Classes
    // with eps_5 = +1 take colors 1..4; their mod-4 partners are the classes
    // with eps_5 = -1 listed below.
    static const char* const kTable[kFacetCount] = {
        "+++++", "--+++", "-+-++", "+--++", "-++-+", "+-+-+", "++--+", "----+",
        "-+++-", "+-++-", "++-+-", "---+-", "+++--", "--+--", "-+---", "+----",
    };
    static const int kColors[kFacetCount] = {1, 2, 3, 4, 4, 3, 2, 1, 5, 8, 6, 7, 7, 6, 8, 5};
    std::array<int, kFacetCount> c{};
    for (int i = 0; i < kFacetCount; ++i) c[FacetVector::parse(kTable[i]).index()] = kColors[i];
    return Coloring(c, 8);
}

bool is_proper(const Coloring& col) {
    for (auto [a, b] : adjacency_graph().edges())
        if (col.color(a) == col.color(b)) return false;
    return true;
}

ColorVector induced_homomorphism(const Coloring& col, std::span<const int> word) {
    ColorVector v = 0;
    for (int f : word) v ^= col.basis(f);
    return v;
}

std::optional<std::vector<int>> torsion_witness(const Coloring& col) {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& clique : cliques(k)) {
            const int n = static_cast<int>(clique.size());
            for (unsigned sub = 1; sub < (1u << n); ++sub) {
                if (popcount(sub) < 2) continue;
                std::vector<int> word;
                for (int i = 0; i < n; ++i)
                    if ((sub >> i) & 1) word.push_back(clique[i]);
                if (induced_homomorphism(col, word) == 0) return word;
            }
        }
    }
    return std::nullopt;
}

namespace {

struct ColoringSearch {
    int palette;
    std::size_t limit;
    std::vector<std::vector<int>> order;  // per facet, color trial order
    std::array<int, kFacetCount> colors{};
    std::vector<Coloring> found;

    void run(int facet) {
        if (found.size() >= limit) return;
        if (facet == kFacetCount) {
            found.emplace_back(colors, palette);
            return;
        }
        const auto& g = adjacency_graph();
        for (int c : order[facet]) {
            bool ok = true;
            for_each_bit(g.neighbors[facet], [&](int n) {
                if (n < facet && colors[n] == c) ok = false;
            });
            if (!ok) continue;
            // first-fail: every later facet must keep at least one color
            colors[facet] = c;
            if (!later_facets_viable(facet)) continue;
            run(facet + 1);
            if (found.size() >= limit) return;
        }
        colors[facet] = 0;
    }

    bool later_facets_viable(int facet) const {
        const auto& g = adjacency_graph();
        for (int f = facet + 1; f < kFacetCount; ++f) {
            std::uint32_t blocked = 0;
            for_each_bit(g.neighbors[f], [&](int n) {
                if (n <= facet) blocked |= 1u << colors[n];
            });
            if (popcount(blocked) >= palette) return false;
        }
        return true;
    }
};

}  // namespace

std::vector<Coloring> search_colorings(int palette, std::uint64_t seed, std::size_t limit) {
    if (palette < 1) throw std::invalid_argument("palette must be positive");
    if (palette > kMaxPalette) throw std::invalid_argument("palette larger than 16 is never needed");
    ColoringSearch s{palette, limit, {}, {}, {}};
    std::mt19937_64 rng(seed);
    s.order.resize(kFacetCount);
    for (int f = 0; f < kFacetCount; ++f) {
        auto& o = s.order[f];
        o.resize(palette);
        std::iota(o.begin(), o.end(), 1);
        if (seed != 0) std::shuffle(o.begin(), o.end(), rng);
    }
    s.order[0] = {1};
    if (limit > 0) s.run(0);
    return std::move(s.found);
}

Coloring apply_symmetry(const Symmetry& g, const Coloring& col) {
    std::array<int, kFacetCount> c{};
    for (int f = 0; f < kFacetCount; ++f) c[g.apply_index(f)] = col.color(f);
    return Coloring(c, col.palette_size());
}

Coloring normalize_labels(const Coloring& col) {
    std::array<int, kMaxPalette + 1> relabel{};
    int next = 1;
    std::array<int, kFacetCount> c{};
    for (int f = 0; f < kFacetCount; ++f) {
        int& r = relabel[col.color(f)];
        if (r == 0) r = next++;
        c[f] = r;
    }
    return Coloring(c, col.palette_size());
}

Coloring parse_coloring(std::istream& is) {
    std::array<int, kFacetCount> colors{};
    std::array<bool, kFacetCount> seen{};
    int count = 0;
    int max_color = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string signs;
        if (!(ls >> signs)) continue;
        int color = 0;
        if (!(ls >> color) || color < 1)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected a positive color");
        const int f = FacetVector::parse(signs).index();
        if (seen[f]) throw std::invalid_argument("line " + std::to_string(lineno) + ": facet listed twice");
        seen[f] = true;
        colors[f] = color;
        max_color = std::max(max_color, color);
        ++count;
    }
    if (count != kFacetCount) throw std::invalid_argument("coloring must list all 16 facets");
    return Coloring(colors, max_color);
}

Coloring read_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coloring file " + path);
    return parse_coloring(in);
}

std::string format_coloring(const Coloring& col) {
    std::ostringstream os;
    for (int f = 0; f < kFacetCount; ++f) os << facets()[f].to_string() << ' ' << col.color(f) << '\n';
    return os.str();
}

}  // namespace p5
