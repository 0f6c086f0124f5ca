#ifndef P5_CUSP_CLASS_HPP
#define P5_CUSP_CLASS_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "p5/game.hpp"
#include "p5/tessellation.hpp"

namespace p5 {

enum class CuspPattern { zero, projection, summation, other };

const char* to_string(CuspPattern p);

/**
 * Degrees of f along the four coordinate loops of a cusp torus. `degrees`
 * are raw sums of edge increments; the pattern is read on the primitive
 * vector degrees / gcd, up to sign and coordinate order.
 */
struct CuspClass {
    std::array<int, 4> degrees{};
    int gcd = 0;
    std::array<int, 4> primitive{};
    CuspPattern pattern = CuspPattern::zero;

    bool nonzero() const { return gcd != 0; }
};

class CuspClassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CuspPattern classify_pattern(const std::array<int, 4>& degrees, int* gcd = nullptr,
                             std::array<int, 4>* primitive = nullptr);

/**
 * Mirror parity of each orbit tile along each direction, relative to the
 * least label: bit k set when the tile is reflected along direction k.
 * Throws CuspClassError if the parity is not well defined (non-rectangular
 * section).
 */
std::vector<std::uint8_t> tile_parities(const Tessellation& t, const Cusp& cusp);

/// Walks every coordinate loop from every tile; throws CuspClassError when
/// parallel loops disagree.
CuspClass cusp_restriction_class(const Tessellation& t, const Cusp& cusp, const CoorientationSystem& sys);

/**
 * Precomputed loop signatures for fast evaluation over many base states
 * with a fixed partition. A step is (facet, block parity of the tile); the
 * increment is +1 when base[facet] XOR parity is set. Identical loops are
 * merged per (cusp, direction).
 */
class CuspLoopTable {
public:
    CuspLoopTable(const Tessellation& t, const std::vector<Cusp>& cusps, const Partition& part);

    /// Degree vector per cusp; `consistent` is cleared when some parallel loops disagree.
    std::vector<std::array<int, 4>> degrees(State base, bool* consistent = nullptr) const;
    /// Parallel loops agree and every cusp vector is nonzero.
    bool all_nonzero(State base) const;

private:
    struct Step {
        std::uint8_t facet;
        std::uint8_t parity;
        friend auto operator<=>(const Step&, const Step&) = default;
    };
    using Loop = std::vector<Step>;
    // loops_[cusp][direction] = distinct loops
    std::vector<std::array<std::vector<Loop>, 4>> loops_;

    static int degree(const Loop& loop, State base);
};

}  // namespace p5

#endif
