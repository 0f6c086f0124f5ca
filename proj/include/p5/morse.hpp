#ifndef P5_MORSE_HPP
#define P5_MORSE_HPP

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p5/cube_complex.hpp"
#include "p5/simplicial.hpp"

namespace p5 {

using Rational = boost::rational<long long>;

/// Per 1-cell: +1 when the map rises from corner 0 to corner 1, else -1.
using EdgeOrientation = std::vector<int>;

/// Orientation of the edge of a cube at corner `beta` along `axis`, in the cube frame.
int cube_edge_sign(const CubeComplex& cx, const EdgeOrientation& o, int dim, std::uint32_t cell, std::uint32_t beta,
                   int axis);

/// A square is bad when some pair of opposite edges is not parallel.
bool square_is_bad(const CubeComplex& cx, const EdgeOrientation& o, std::uint32_t square);

struct FamilyMember {
    int dim = 0;
    std::uint32_t cube = 0;
    int p = 0;  // the bad axis pair, in the cube frame
    int q = 0;
};

struct BadFamily {
    std::uint32_t square = 0;
    std::vector<FamilyMember> cubes;  // maximal cubes containing the square
};

struct FamilyViolation {
    int dim = 0;
    std::uint32_t cube = 0;
    std::string reason;
};

struct FamilyReport {
    std::vector<char> bad;  // per 2-cell
    long long bad_count = 0;
    std::vector<BadFamily> families;
    std::vector<FamilyViolation> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * For every maximal cube: at most one axis pair may carry bad squares, and
 * then every parallel copy of that square must be bad. Families list, per
 * bad square, the maximal cubes through it.
 */
FamilyReport find_bad_families(const CubeComplex& cx, const EdgeOrientation& o, bool collect_families = true);

class SubdivisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pieces of a cube C x D whose square factor C (axes p < q) is subdivided along its diagonals.
enum class Piece : std::uint8_t {
    whole,   // an unsubdivided cube
    center,  // center of C times D
    half,    // half-diagonal to corner `param` (bit 0: p side, bit 1: q side) times D
    tri_p,   // triangle on the edge x_p = param, times D
    tri_q,   // triangle on the edge x_q = param, times D
};

const char* to_string(Piece p);

struct EdgeUse {
    std::uint32_t edge = 0;
    std::uint8_t slot0 = 0;  // slot of the edge's end 0
    std::uint8_t slot1 = 0;
};

/**
 * A cell of the subdivided complex. Slots are its vertices; `coords` are
 * twice the slot coordinates in the frame of the carrier cube (0, 1 = center, 2).
 */
struct MixedCell {
    int dim = 0;
    int cube_dim = 0;
    std::uint32_t cube = 0;
    Piece piece = Piece::whole;
    std::uint8_t param = 0;
    std::vector<std::uint32_t> vertices;
    std::vector<std::array<std::uint8_t, kMaxCubeDim>> coords;
    std::vector<std::uint32_t> faces;
    std::vector<std::vector<std::uint8_t>> face_slots;  // per face: face slot -> own slot
    std::vector<EdgeUse> edges;
};

struct CellRef {
    int dim = 0;
    std::uint32_t cell = 0;
    std::uint8_t slot = 0;
};

class MixedComplex {
public:
    const CubeComplex& cubes() const { return *cubes_; }
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t count(int dim) const { return dim >= 0 && dim <= dimension() ? cells_[dim].size() : 0; }
    std::vector<long long> counts() const;
    const MixedCell& cell(int dim, std::uint32_t i) const { return cells_[dim][i]; }

    std::size_t vertex_count() const { return incidence_.size(); }
    std::size_t original_vertex_count() const { return cubes_->count(0); }
    bool is_center(std::uint32_t v) const { return v >= original_vertex_count(); }
    /// The bad square whose center is v.
    std::uint32_t center_square(std::uint32_t v) const { return centers_[v - original_vertex_count()]; }
    /// Cells of dimension >= 1 with a slot at v.
    const std::vector<CellRef>& incidence(std::uint32_t v) const { return incidence_[v]; }

    /// Bad axis pair (p, q) of a cube, or (-1, -1).
    std::pair<int, int> bad_pair(int dim, std::uint32_t cube) const { return bad_pairs_[dim][cube]; }
    std::size_t subdivided_cube_count() const;

    ChainComplex chain_complex() const;

    friend MixedComplex subdivide(const CubeComplex&, const EdgeOrientation&, const FamilyReport&);

private:
    const CubeComplex* cubes_ = nullptr;
    std::vector<std::vector<MixedCell>> cells_;
    std::vector<std::vector<std::pair<int, int>>> bad_pairs_;
    std::vector<std::uint32_t> centers_;
    std::vector<std::vector<CellRef>> incidence_;

    std::uint32_t add(MixedCell c);
};

/**
 * Replaces every cube with a bad axis pair by prisms (triangle x face of the
 * complementary cube) and keeps the other cubes. Throws SubdivisionError if
 * the family report has violations. Keeps a reference to `cx`.
 */
MixedComplex subdivide(const CubeComplex& cx, const EdgeOrientation& o, const FamilyReport& report);

/// The complex without subdivision (every cube whole).
MixedComplex unsubdivided(const CubeComplex& cx);

class PLMapError : public std::runtime_error {
public:
    PLMapError(const std::string& what, int dim, std::uint32_t cell)
        : std::runtime_error(what), dim(dim), cell(cell) {}
    int dim;
    std::uint32_t cell;
};

struct PLMapOptions {
    Rational center{1, 2};  // value of center vertices modulo 1
};

/**
 * Circle-valued PL map: original vertices at 0, each original edge wraps by
 * its orientation, centers at `center`. lifts[d][i][s] is a real lift on
 * slot s of cell (d, i); lifts on a face differ from the parent's by an integer.
 */
struct PLMap {
    Rational center{1, 2};
    std::vector<std::vector<std::vector<Rational>>> lifts;
    std::vector<Rational> vertex_values;  // in [0, 1)
    std::size_t cells_checked = 0;

    const std::vector<Rational>& lift(int dim, std::uint32_t i) const { return lifts[dim][i]; }
};

/**
 * Builds the lifts and verifies the three Morse conditions on every cell:
 * affine (exact solve in the carrier frame), nonconstant in positive
 * dimension, finite vertex image. Throws PLMapError at the first failure.
 */
PLMap build_pl_map(const MixedComplex& mx, const EdgeOrientation& o, const PLMapOptions& opt = {});

/// Exact check that lifted values on the given points come from an affine function.
bool affine_fit(const std::vector<std::array<std::uint8_t, kMaxCubeDim>>& coords, int dim,
                const std::vector<Rational>& values);

enum class LinkKind { full, ascending, descending };

const char* to_string(LinkKind k);

/**
 * Link of a vertex: one simplex per (cell, slot at v), spanned by the cell's
 * edges at that slot. Ascending keeps cells whose other slots all lie
 * strictly above v; descending strictly below.
 */
DeltaComplex vertex_link(const MixedComplex& mx, std::uint32_t v, const PLMap* f = nullptr,
                         LinkKind kind = LinkKind::full);

/// Link of a vertex in an unsubdivided cube complex.
DeltaComplex vertex_link(const CubeComplex& cx, std::uint32_t v);

struct LinkStatus {
    std::uint32_t vertex = 0;
    bool center = false;
    LinkKind kind = LinkKind::ascending;
    std::size_t simplices = 0;
    bool certified = false;
    bool replayed = false;
    std::size_t steps = 0;
    int restarts = 0;
    std::vector<long long> betti_gf2;
    std::vector<long long> betti_q;
    std::optional<CollapseCertificate> certificate;
};

struct LinkSurvey {
    std::vector<LinkStatus> rows;  // vertex-major, ascending before descending
    std::size_t certified = 0;
    std::size_t inconclusive = 0;
};

/// Ascending and descending links of every vertex, certified in parallel
/// with per-vertex seeds derived from `seed`.
LinkSurvey certify_links(const MixedComplex& mx, const PLMap& f, std::uint64_t seed, int jobs, int restarts = 64,
                         bool keep_certificates = false);

struct FiberVertex {
    std::uint32_t edge = 0;  // mixed 1-cell
    long long level = 0;
    Rational param;  // position along the edge, from its slot 0
};

struct FiberCell {
    std::uint32_t source = 0;  // mixed cell of dimension dim + 1
    long long level = 0;
    std::vector<std::uint32_t> faces;
    long long sheet = 0;
};

/**
 * Preimage of t (mod 1). A fiber cell is (cell, n) with the lifted level
 * t + n strictly inside the cell's range. The map is d times a primitive
 * circle map, d the gcd of the periods; `sheet` is the component of the
 * primitive map's fiber that the cell lies over.
 */
struct LevelSet {
    Rational t;
    std::vector<std::vector<FiberCell>> cells;
    std::vector<FiberVertex> vertices;  // parallel to cells[0]
    long long divisibility = 0;
    std::vector<long long> sheets;  // distinct sheet labels

    std::vector<long long> counts() const;
    ChainComplex chain_complex() const;
    /// Subcomplex over one sheet.
    ChainComplex sheet_complex(long long sheet) const;
    std::size_t components() const;
    std::size_t sheet_components(long long sheet) const;
};

/// Throws std::invalid_argument when t is a vertex value.
LevelSet level_set(const MixedComplex& mx, const PLMap& f, Rational t);

struct FiberSummary {
    std::vector<long long> counts;
    long long euler_cells = 0;
    std::vector<long long> betti;
    long long euler_betti = 0;
    std::size_t components = 0;
    long long divisibility = 0;
    std::vector<std::size_t> sheet_components;
    std::vector<long long> sheet_counts;  // cell count per sheet
    std::vector<long long> sheet_betti;   // GF(2) Betti of the first sheet
    bool primitive_connected = false;
};

FiberSummary summarize_fiber(const LevelSet& fiber);

}  // namespace p5

#endif
