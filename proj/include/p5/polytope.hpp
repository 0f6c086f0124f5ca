#ifndef P5_POLYTOPE_HPP
#define P5_POLYTOPE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace p5 {

inline constexpr int kAmbientDim = 5;
inline constexpr int kFacetCount = 16;
inline constexpr int kIdealVertexCount = 10;

/// Set of facets as a bitmask over canonical facet indices 0..15.
using FacetSet = std::uint16_t;

/**
 * Sign vector with an even number of -1 entries; names one facet of the
 * right-angled polytope. Stored as the 5-bit mask of -1 positions (bit i is
 * coordinate i+1).
 */
class FacetVector {
public:
    constexpr FacetVector() = default;

    /// Throws std::invalid_argument for masks with odd weight or > 31.
    static FacetVector from_mask(std::uint8_t mask);
    static FacetVector from_index(int index);
    /// Parses "++--+"; accepts ASCII '-' and U+2212 for minus.
    static FacetVector parse(std::string_view signs);

    constexpr std::uint8_t mask() const { return mask_; }
    /// Canonical index: rank among even masks in ascending order.
    int index() const;
    /// +1 or -1; `axis` is 1-based.
    int sign(int axis) const { return (mask_ >> (axis - 1)) & 1 ? -1 : 1; }
    std::string to_string() const;

    friend constexpr bool operator==(FacetVector, FacetVector) = default;
    friend constexpr auto operator<=>(FacetVector a, FacetVector b) { return a.mask_ <=> b.mask_; }

private:
    explicit constexpr FacetVector(std::uint8_t mask) : mask_(mask) {}
    std::uint8_t mask_ = 0;
};

enum class PairClass { equal, orthogonal, ideal_tangent };

const char* to_string(PairClass c);

/// The boundary point sign * e_axis; axis is 1-based.
struct IdealVertex {
    int axis = 1;
    int sign = 1;

    IdealVertex opposite() const { return {axis, -sign}; }
    std::string to_string() const;
    /// Index 0..9: axis-major, + before -.
    int index() const { return 2 * (axis - 1) + (sign > 0 ? 0 : 1); }
    friend bool operator==(const IdealVertex&, const IdealVertex&) = default;
};

/// Coordinate permutation followed by an even sign change.
struct Symmetry {
    std::array<std::uint8_t, kAmbientDim> perm{0, 1, 2, 3, 4};  // coordinate i -> perm[i]
    std::uint8_t flips = 0;                                     // even-weight mask

    FacetVector apply(FacetVector f) const;
    int apply_index(int facet) const { return apply(FacetVector::from_index(facet)).index(); }
    IdealVertex apply(IdealVertex p) const;
    /// (this * other)(x) = this(other(x)).
    Symmetry compose(const Symmetry& other) const;
    bool is_identity() const;
    friend bool operator==(const Symmetry&, const Symmetry&) = default;
};

struct AdjacencyGraph {
    std::array<FacetSet, kFacetCount> neighbors{};

    bool adjacent(int a, int b) const { return (neighbors[a] >> b) & 1; }
    int degree(int a) const;
    std::vector<std::pair<int, int>> edges() const;
};

/// All 16 facets in canonical order (ascending mask).
const std::array<FacetVector, kFacetCount>& facets();

PairClass classify_pair(FacetVector f, FacetVector g);

/// Minkowski pairing of the normals (eps, 1): eps_F . eps_G - 1.
int minkowski_pairing(FacetVector f, FacetVector g);

const AdjacencyGraph& adjacency_graph();

/// Unordered facet pairs (by index) that meet only at an ideal point.
std::vector<std::pair<int, int>> ideal_tangent_pairs();

/// All pairwise-orthogonal k-subsets of facets, each sorted, list sorted.
std::vector<std::vector<int>> cliques(int k);
std::vector<FacetSet> clique_masks(int k);

bool is_clique(FacetSet s);

const std::array<IdealVertex, kIdealVertexCount>& ideal_vertices();

/// The 8 facets through the ideal point p.
FacetSet ideal_vertex_star(IdealVertex p);

/// All 1920 symmetries, permutations in lexicographic order then flips ascending.
std::vector<Symmetry> symmetry_group();

inline int popcount(std::uint32_t x) { return __builtin_popcount(x); }

template <class F>
void for_each_bit(std::uint32_t mask, F&& f) {
    while (mask) {
        int b = __builtin_ctz(mask);
        f(b);
        mask &= mask - 1;
    }
}

}  // namespace p5

#endif
