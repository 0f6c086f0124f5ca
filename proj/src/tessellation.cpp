#include "p5/tessellation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace p5 {

Tessellation::Tessellation(Coloring col) : col_(std::move(col)) {
    if (!is_proper(col_)) throw std::invalid_argument("coloring is not proper: the kernel has torsion");
}

ColorVector Tessellation::colors_of(FacetSet s) const {
    ColorVector v = 0;
    for_each_bit(s, [&](int f) { v ^= col_.basis(f); });
    return v;
}

Tessellation build_tessellation(const Coloring& col) { return Tessellation(col); }

const char* to_string(CuspSize s) {
    switch (s) {
        case CuspSize::large: return "large";
        case CuspSize::small: return "small";
        case CuspSize::other: return "other";
    }
    return "?";
}

std::array<CuspDirection, 4> cusp_directions(const Coloring& col, IdealVertex p) {
    const FacetSet star = ideal_vertex_star(p);
    std::array<CuspDirection, 4> dirs{};
    int k = 0;
    for_each_bit(star, [&](int f) {
        const FacetVector v = FacetVector::from_index(f);
        const int opp = FacetVector::from_mask(v.mask() ^ (0x1Fu & ~(1u << (p.axis - 1)))).index();
        if (opp < f) return;
        dirs[k++] = {f, opp, col.color(f) == col.color(opp) ? 2 : 4};
    });
    return dirs;
}

int star_rank(const Coloring& col, IdealVertex p) {
    BitMatrix m(8, static_cast<std::size_t>(col.palette_size()));
    int r = 0;
    for_each_bit(ideal_vertex_star(p), [&](int f) { m.set(r++, static_cast<std::size_t>(col.color(f) - 1)); });
    return static_cast<int>(gf2_rank(std::move(m)));
}

std::vector<Cusp> cusp_orbits(const Tessellation& t) {
    const Coloring& col = t.coloring();
    std::vector<Cusp> out;
    for (const IdealVertex& p : ideal_vertices()) {
        const FacetSet star = ideal_vertex_star(p);
        std::vector<ColorVector> moves;
        for_each_bit(star, [&](int f) { moves.push_back(col.basis(f)); });
        const int rank = star_rank(col, p);
        const auto dirs = cusp_directions(col, p);

        std::vector<bool> seen(t.copy_count(), false);
        const std::size_t expected = std::size_t{1} << rank;
        for (CopyLabel start = 0; start < t.copy_count(); ++start) {
            if (seen[start]) continue;
            Cusp c;
            c.base = p;
            c.rank = rank;
            c.directions = dirs;
            std::deque<CopyLabel> queue{start};
            seen[start] = true;
            while (!queue.empty()) {
                const CopyLabel l = queue.front();
                queue.pop_front();
                c.orbit.push_back(l);
                for (ColorVector m : moves)
                    if (!seen[l ^ m]) {
                        seen[l ^ m] = true;
                        queue.push_back(l ^ m);
                    }
            }
            std::sort(c.orbit.begin(), c.orbit.end());
            if (c.orbit.size() != expected)
                throw std::logic_error("cusp orbit size disagrees with 2^rank at " + p.to_string());

            const int k = dirs[0].period;
            const bool uniform = std::all_of(dirs.begin(), dirs.end(), [&](const CuspDirection& d) { return d.period == k; });
            if (uniform && c.orbit.size() == static_cast<std::size_t>(k * k * k * k)) c.modulus = k;
            c.size_class = c.modulus == 4 ? CuspSize::large : c.modulus == 2 ? CuspSize::small : CuspSize::other;
            out.push_back(std::move(c));
        }
    }
    return out;
}

CubeComplex cusp_section_complex(const Tessellation& t, const Cusp& cusp) {
    // Cells are (lambda, S) with S a set of star facets, at most one per
    // direction; dimension 4 - |S|. The base is canonical when the bits of
    // the colors of S are cleared. Reflection across a facet of S fixes the
    // cell pointwise, so faces never reverse axes.
    const auto& dirs = cusp.directions;
    std::vector<std::vector<FacetSet>> choices(5);
    for (std::uint32_t pick = 0; pick < 81; ++pick) {  // per direction: 0 lower, 1 upper, 2 free
        FacetSet s = 0;
        int free_dirs = 0;
        std::uint32_t code = pick;
        for (int k = 0; k < 4; ++k, code /= 3) {
            const std::uint32_t d = code % 3;
            if (d == 0) s |= FacetSet(1u << dirs[k].lower);
            if (d == 1) s |= FacetSet(1u << dirs[k].upper);
            if (d == 2) ++free_dirs;
        }
        choices[free_dirs].push_back(s);
    }

    auto key = [](CopyLabel l, FacetSet s) { return (static_cast<std::uint64_t>(l) << 16) | s; };
    std::vector<std::map<std::uint64_t, std::uint32_t>> index(5);
    CubeComplex cx;
    for (int dim = 0; dim <= 4; ++dim) {
        for (CopyLabel l : cusp.orbit) {
            for (FacetSet s : choices[dim]) {
                if (l & t.colors_of(s)) continue;  // not canonical
                if (dim == 0) {
                    index[0][key(l, s)] = cx.add_vertex();
                    continue;
                }
                std::vector<FaceLink> faces;
                for (const auto& d : dirs) {
                    const bool covered = ((s >> d.lower) & 1) || ((s >> d.upper) & 1);
                    if (covered) continue;
                    for (int f : {d.lower, d.upper}) {
                        const FacetSet fs = FacetSet(s | (1u << f));
                        const CopyLabel base = l & ~t.colors_of(fs);
                        faces.push_back({index[dim - 1].at(key(base, fs)), 0});
                    }
                }
                index[dim][key(l, s)] = cx.add_cell(dim, std::move(faces));
            }
        }
    }
    return cx;
}

TorusCheck torus_battery(const CubeComplex& cx) {
    TorusCheck r;
    r.euler = euler_characteristic(cx.counts());
    r.betti = betti(cx.chain_complex(), Field::gf2);
    r.pseudomanifold = cx.dimension() == 4;
    if (r.pseudomanifold) {
        const auto cof = cx.coface_counts(3);
        r.pseudomanifold = std::all_of(cof.begin(), cof.end(), [](int n) { return n == 2; });
    }
    r.ok = r.euler == 0 && r.betti == std::vector<long long>{1, 4, 6, 4, 1} && r.pseudomanifold;
    return r;
}

}  // namespace p5
