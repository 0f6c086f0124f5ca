#ifndef P5_CUBE_COMPLEX_HPP
#define P5_CUBE_COMPLEX_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "p5/homology.hpp"

namespace p5 {

inline constexpr int kMaxCubeDim = 6;

/// Face of a cube: index among (dim-1)-cells and which of its local axes run
/// backwards relative to the parent frame.
struct FaceLink {
    std::uint32_t index = 0;
    std::uint8_t flips = 0;
};

/// A sub-cube reached from a cell by fixing some axes.
struct SubFace {
    int dim = 0;
    std::uint32_t index = 0;
    std::uint8_t flips = 0;  // over the free axes, in parent order
};

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Cubical CW complex. A k-cell has local axes 0..k-1 and corners indexed by
 * bitmask (bit j = coordinate along axis j). Faces are stored as
 * faces[2*axis + side]; a face keeps the parent's remaining axes in order,
 * possibly reversed (FaceLink::flips). Vertices may repeat among the corners
 * of one cell, so cells are never identified by their vertex sets.
 */
class CubeComplex {
public:
    struct Cell {
        std::vector<std::uint32_t> corners;
        std::vector<FaceLink> faces;
    };

    CubeComplex() = default;

    std::uint32_t add_vertex();
    /// Adds a k-cell (k >= 1) from its 2k faces; corners are derived and
    /// checked for consistency across all faces.
    std::uint32_t add_cell(int dim, std::vector<FaceLink> faces);

    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t count(int dim) const { return dim >= 0 && dim <= dimension() ? cells_[dim].size() : 0; }
    std::vector<long long> counts() const;
    const Cell& cell(int dim, std::uint32_t i) const { return cells_[dim][i]; }

    /// Sub-cube from a code: per axis 0 / 1 fixed, 2 free (base-3 digits,
    /// axis 0 least significant).
    SubFace subface(int dim, std::uint32_t i, std::uint32_t code) const;
    /// Table of all 3^dim subfaces of a cell (built lazily, for all cells at once).
    const std::vector<SubFace>& subfaces(int dim, std::uint32_t i) const;
    /// Builds the subface tables; call before sharing across threads.
    void prepare() const;

    /// Indices of cells having (dim, i) as a codimension-one face, with multiplicity.
    std::vector<std::uint32_t> cofaces(int dim, std::uint32_t i) const;
    /// Number of times each (dim)-cell occurs as a face of a (dim+1)-cell.
    std::vector<int> coface_counts(int dim) const;

    /// Chain complex with GF(2) and signed boundaries.
    ChainComplex chain_complex() const;

private:
    std::vector<std::vector<Cell>> cells_;
    mutable std::vector<std::vector<std::vector<SubFace>>> subface_cache_;
};

inline std::uint32_t pow3(int k) {
    std::uint32_t r = 1;
    while (k-- > 0) r *= 3;
    return r;
}

/// Code with all axes free except the listed fixed ones.
std::uint32_t subface_code(int dim, std::uint32_t free_mask, std::uint32_t fixed_values);

struct CellCensus {
    std::vector<long long> counts;
    long long euler = 0;
};

CellCensus cell_census(const CubeComplex& cx);

/// (R/period Z)^dim with its unit-cube cells; period 1 gives one vertex.
CubeComplex torus_complex(int dim, int period);
/// The standard k-cube [0,1]^k with all its faces.
CubeComplex cube_fixture(int k);
/// Boundary of the (k+1)-cube: a cubical k-sphere.
CubeComplex cube_boundary_fixture(int k);

}  // namespace p5

#endif
