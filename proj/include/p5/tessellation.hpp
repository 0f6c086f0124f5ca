#ifndef P5_TESSELLATION_HPP
#define P5_TESSELLATION_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "p5/coloring.hpp"
#include "p5/cube_complex.hpp"

namespace p5 {

/// Label lambda of a copy P_lambda: bit i-1 is the coordinate along e_i.
using CopyLabel = std::uint32_t;

/**
 * The manifold M as 2^c copies of P5 glued along facets. Stored implicitly:
 * crossing facet F of P_lambda lands in P_{lambda + e_col(F)}, through the
 * same facet.
 */
class Tessellation {
public:
    /// Throws std::invalid_argument if the coloring is not proper.
    explicit Tessellation(Coloring col);

    const Coloring& coloring() const { return col_; }
    int colors() const { return col_.palette_size(); }
    std::uint64_t copy_count() const { return std::uint64_t{1} << colors(); }

    std::pair<CopyLabel, int> glue(CopyLabel l, int facet) const { return {l ^ col_.basis(facet), facet}; }
    /// Number of glued (copy, facet) pairs.
    std::uint64_t glued_pair_count() const { return copy_count() * kFacetCount / 2; }

    /// XOR of e_col(F) over F in s.
    ColorVector colors_of(FacetSet s) const;

private:
    Coloring col_;
};

Tessellation build_tessellation(const Coloring& col);

enum class CuspSize { large, small, other };

const char* to_string(CuspSize s);

/// A pair of opposite facets of the cusp cube; `lower` sits at x = 0.
struct CuspDirection {
    int lower = 0;
    int upper = 0;
    int period = 0;  // 2 when both carry one color, else 4
};

struct Cusp {
    IdealVertex base;
    std::vector<CopyLabel> orbit;  // ascending
    int rank = 0;                  // GF(2) rank of the star colors
    std::array<CuspDirection, 4> directions{};
    int modulus = 0;  // k when the section is (R/kZ)^4, else 0
    CuspSize size_class = CuspSize::other;
};

/// The 4 opposite facet pairs of star(p), ordered by their lower facet.
std::array<CuspDirection, 4> cusp_directions(const Coloring& col, IdealVertex p);

/// GF(2) rank of {e_col(F) : F in star(p)}.
int star_rank(const Coloring& col, IdealVertex p);

/**
 * Cusps by breadth-first closure of the star colors acting on copy labels,
 * cross-checked against 2^rank. Ordered by ideal vertex, then by the least
 * label in the orbit. Throws std::logic_error if the two disagree.
 */
std::vector<Cusp> cusp_orbits(const Tessellation& t);

/// The cusp section: one 4-cube tile per orbit element, glued across star facets.
CubeComplex cusp_section_complex(const Tessellation& t, const Cusp& cusp);

struct TorusCheck {
    long long euler = 0;
    std::vector<long long> betti;
    bool pseudomanifold = false;
    bool ok = false;
};

/// Closed 4-torus battery: chi = 0, GF(2) Betti (1,4,6,4,1), every 3-cell in two 4-cells.
TorusCheck torus_battery(const CubeComplex& cx);

}  // namespace p5

#endif
