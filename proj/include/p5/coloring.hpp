#ifndef P5_COLORING_HPP
#define P5_COLORING_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "p5/polytope.hpp"

namespace p5 {

/// Bit-vector in (Z/2)^c, bit i-1 is the basis element e_i.
using ColorVector = std::uint32_t;

inline constexpr int kMaxPalette = 16;

/// A total map from the 16 facets to colors 1..c.
class Coloring {
public:
    Coloring() = default;
    /// Throws std::invalid_argument on colors outside 1..palette.
    Coloring(const std::array<int, kFacetCount>& colors, int palette);

    int color(int facet) const { return colors_[facet]; }
    int palette_size() const { return palette_; }
    const std::array<int, kFacetCount>& colors() const { return colors_; }

    /// The basis vector e_{col(F)}.
    ColorVector basis(int facet) const { return ColorVector{1} << (colors_[facet] - 1); }
    /// Facets carrying the given color.
    FacetSet facets_of(int color) const;
    /// Distinct colors used, as a ColorVector mask.
    ColorVector used_colors() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::array<int, kFacetCount> colors_{};
    int palette_ = 0;
};

/// The generators r_F with commutation relations for adjacent facets.
struct CoxeterPresentation {
    std::array<FacetVector, kFacetCount> generators;
    std::vector<std::pair<int, int>> commuting_pairs;
};

CoxeterPresentation coxeter_presentation();

Coloring identity_coloring();
Coloring constant_coloring(int palette = 1);

/**
 * An 8-coloring with the 8 large + 32 small cusp census; colors are
 * assigned so that the mod-4 partition admits base states with all cusp
 * classes nonzero and contractible links.
 */
Coloring reference_coloring();

bool is_proper(const Coloring& col);

/// Image of the word r_{F1}...r_{Fm} in (Z/2)^c.
ColorVector induced_homomorphism(const Coloring& col, std::span<const int> word);

/// A pairwise-orthogonal facet set whose product maps to zero, if any.
std::optional<std::vector<int>> torsion_witness(const Coloring& col);

/**
 * Proper colorings with palette 1..c by backtracking: facets in canonical
 * order, facet 0 fixed to color 1, other colors tried in an order derived
 * from `seed` (ascending when seed is 0).
 */
std::vector<Coloring> search_colorings(int palette, std::uint64_t seed, std::size_t limit);

/// Relabels facets: result(g.F) = col(F).
Coloring apply_symmetry(const Symmetry& g, const Coloring& col);

/// Canonical relabeling of colors by first appearance in facet order.
Coloring normalize_labels(const Coloring& col);

/// Text format: one `<sign-string> <color>` line per facet.
Coloring parse_coloring(std::istream& is);
Coloring read_coloring_file(const std::string& path);
std::string format_coloring(const Coloring& col);

}  // namespace p5

#endif
