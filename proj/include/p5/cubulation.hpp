#ifndef P5_CUBULATION_HPP
#define P5_CUBULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "p5/cube_complex.hpp"
#include "p5/tessellation.hpp"

namespace p5 {

/// A cube of the dual cubulation: copy label and a pairwise-orthogonal facet set.
struct CubeKey {
    CopyLabel base = 0;
    FacetSet facets = 0;

    int dim() const { return popcount(facets); }
    friend bool operator==(const CubeKey&, const CubeKey&) = default;
};

/**
 * Dual cubulation of M. The k-cube (lambda, S) has one axis per facet of S
 * in ascending facet order; its corner beta is lambda + sum of e_col(F) over
 * the axes set in beta. Keys are stored canonically (colors of S cleared in
 * the base), which makes every face map orientation-preserving.
 */
class Cubulation {
public:
    Cubulation() = default;

    const CubeComplex& complex() const { return cx_; }
    const Tessellation& tessellation() const { return *tess_; }
    const CubeKey& key(int dim, std::uint32_t i) const { return keys_[dim][i]; }
    std::size_t count(int dim) const { return cx_.count(dim); }

    CubeKey canonical(CubeKey k) const;
    std::optional<std::uint32_t> find(CubeKey k) const;
    /// Vertex index of a copy label.
    std::optional<std::uint32_t> vertex(CopyLabel l) const { return find({l, 0}); }
    /// Facets of the cube in axis order.
    std::vector<int> axes(int dim, std::uint32_t i) const;

    friend Cubulation build_cube_subcomplex(const Tessellation&, const std::vector<CopyLabel>&, FacetSet);

private:
    const Tessellation* tess_ = nullptr;
    CubeComplex cx_;
    std::vector<std::vector<CubeKey>> keys_;
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> lookup_;
};

/// Full dual cubulation: vertices are the 2^c copies. Keeps a reference to `t`.
Cubulation build_cubulation(const Tessellation& t);

/**
 * Cubes (lambda, S) with lambda in `vertices` (ascending) and S within
 * `allowed`; every corner must lie in `vertices`.
 */
Cubulation build_cube_subcomplex(const Tessellation& t, const std::vector<CopyLabel>& vertices, FacetSet allowed);

/// 2^c * N_k / 2^k.
long long expected_cell_count(int colors, int k);

struct CuspCompatibility {
    bool ok = false;
    std::size_t matched = 0;
    std::vector<std::string> mismatches;
};

/**
 * Checks that the cusp section is dual to the cubes of the cubulation
 * spanned by the star facets over the orbit: each section cell (lambda, S)
 * of dimension 4 - |S| matches exactly one |S|-cube of `cub`.
 */
CuspCompatibility check_cusp_compatibility(const Cubulation& cub, const Cusp& cusp);

}  // namespace p5

#endif
