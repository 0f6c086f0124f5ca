#include "p5/cubulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace p5 {

namespace {

std::uint64_t pack(CubeKey k) { return (static_cast<std::uint64_t>(k.base) << 16) | k.facets; }

}  // namespace

CubeKey Cubulation::canonical(CubeKey k) const { return {k.base & ~tess_->colors_of(k.facets), k.facets}; }

std::optional<std::uint32_t> Cubulation::find(CubeKey k) const {
    const int d = k.dim();
    if (d >= static_cast<int>(lookup_.size())) return std::nullopt;
    const auto it = lookup_[d].find(pack(canonical(k)));
    if (it == lookup_[d].end()) return std::nullopt;
    return it->second;
}

std::vector<int> Cubulation::axes(int dim, std::uint32_t i) const {
    std::vector<int> out;
    for_each_bit(keys_[dim][i].facets, [&](int f) { out.push_back(f); });
    return out;
}

Cubulation build_cube_subcomplex(const Tessellation& t, const std::vector<CopyLabel>& vertices, FacetSet allowed) {
    if (!std::is_sorted(vertices.begin(), vertices.end()))
        throw std::invalid_argument("cube subcomplex vertices must be ascending");
    Cubulation cub;
    cub.tess_ = &t;
    cub.keys_.resize(6);
    cub.lookup_.resize(6);
    auto in_vertices = [&](CopyLabel l) { return std::binary_search(vertices.begin(), vertices.end(), l); };

    for (int k = 0; k <= 5; ++k) {
        std::vector<FacetSet> shapes;
        for (FacetSet s : k == 0 ? std::vector<FacetSet>{0} : clique_masks(k))
            if ((s & allowed) == s) shapes.push_back(s);
        for (CopyLabel l : vertices) {
            for (FacetSet s : shapes) {
                const ColorVector mask = t.colors_of(s);
                if (l & mask) continue;
                bool corners_ok = true;
                for (ColorVector sub = mask;; sub = (sub - 1) & mask) {
                    if (!in_vertices(l ^ sub)) corners_ok = false;
                    if (sub == 0) break;
                }
                if (!corners_ok) continue;
                std::uint32_t id;
                if (k == 0) {
                    id = cub.cx_.add_vertex();
                } else {
                    std::vector<FaceLink> faces;
                    for_each_bit(s, [&](int f) {
                        const FacetSet rest = FacetSet(s & ~(1u << f));
                        for (CopyLabel b : {l, l ^ t.coloring().basis(f)})
                            faces.push_back({cub.lookup_[k - 1].at(pack({b, rest})), 0});
                    });
                    id = cub.cx_.add_cell(k, std::move(faces));
                }
                cub.keys_[k].push_back({l, s});
                cub.lookup_[k].emplace(pack({l, s}), id);
            }
        }
    }
    while (!cub.keys_.empty() && cub.keys_.back().empty()) {
        cub.keys_.pop_back();
        cub.lookup_.pop_back();
    }
    return cub;
}

Cubulation build_cubulation(const Tessellation& t) {
    std::vector<CopyLabel> all(t.copy_count());
    for (CopyLabel l = 0; l < all.size(); ++l) all[l] = l;
    return build_cube_subcomplex(t, all, 0xFFFF);
}

long long expected_cell_count(int colors, int k) {
    const long long n = k == 0 ? 1 : static_cast<long long>(cliques(k).size());
    return ((1LL << colors) * n) >> k;
}

CuspCompatibility check_cusp_compatibility(const Cubulation& cub, const Cusp& cusp) {
    CuspCompatibility r;
    const Tessellation& t = cub.tessellation();
    const FacetSet star = ideal_vertex_star(cusp.base);
    std::size_t cubes_over_cusp = 0;
    for (int k = 0; k <= std::min(4, cub.complex().dimension()); ++k)
        for (std::uint32_t i = 0; i < cub.count(k); ++i) {
            const CubeKey& key = cub.key(k, i);
            if ((key.facets & star) == key.facets && std::binary_search(cusp.orbit.begin(), cusp.orbit.end(), key.base))
                ++cubes_over_cusp;
        }
    const CubeComplex section = cusp_section_complex(t, cusp);
    std::size_t section_cells = 0;
    for (int d = 0; d <= section.dimension(); ++d) section_cells += section.count(d);

    // Every (lambda, S) over the orbit with S in the star is one section cell.
    for (CopyLabel l : cusp.orbit)
        for (int k = 0; k <= 4; ++k)
            for (FacetSet s : k == 0 ? std::vector<FacetSet>{0} : clique_masks(k)) {
                if ((s & star) != s || (l & t.colors_of(s))) continue;
                if (cub.find({l, s}))
                    ++r.matched;
                else
                    r.mismatches.push_back("no cube for section cell over label " + std::to_string(l));
            }
    if (r.matched != section_cells)
        r.mismatches.push_back("section has " + std::to_string(section_cells) + " cells, matched " +
                               std::to_string(r.matched));
    if (cubes_over_cusp != section_cells)
        r.mismatches.push_back("cubulation has " + std::to_string(cubes_over_cusp) + " cubes over the cusp");
    r.ok = r.mismatches.empty();
    return r;
}

}  // namespace p5
