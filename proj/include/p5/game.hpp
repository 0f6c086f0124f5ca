#ifndef P5_GAME_HPP
#define P5_GAME_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p5/coloring.hpp"
#include "p5/cubulation.hpp"
#include "p5/tessellation.hpp"

namespace p5 {

/// Equivalence relation on colors 1..c, stored as a restricted growth string.
class Partition {
public:
    Partition() = default;
    /// `rgs[i]` is the block of color i+1; must be a restricted growth string.
    explicit Partition(std::vector<int> rgs);

    /// Parses "1,5|2,6|3,7|4,8"; every color 1..c must appear exactly once.
    static Partition parse(std::string_view text, int colors);
    static Partition singletons(int colors);
    /// i ~ j iff i = j mod m.
    static Partition modulo(int colors, int m);

    int colors() const { return static_cast<int>(rgs_.size()); }
    int block_count() const;
    int block_of(int color) const { return rgs_[color - 1]; }
    bool same_block(int a, int b) const { return rgs_[a - 1] == rgs_[b - 1]; }
    /// Colors of each block, blocks in first-appearance order.
    std::vector<std::vector<int>> blocks() const;
    const std::vector<int>& rgs() const { return rgs_; }
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> rgs_;
};

/// All partitions of {1..n} in lexicographic order of restricted growth strings.
std::vector<Partition> all_partitions(int n);

/// Bell number via the Bell triangle.
long long bell_number(int n);

/// Co-orientations of the 16 facets of one copy: bit F set = inward.
using State = std::uint16_t;

std::string format_state(State s);
/// Accepts 16 characters of 'i'/'o' in canonical facet order, or "0x" hex.
State parse_state(std::string_view text);
/// Text file: 16 lines `<sign-string> in|out`, '#' comments.
State read_state_file(const std::string& path);
std::string format_state_file(State s);

/**
 * Base state of P_0 plus the per-color flip masks. Crossing a facet of color
 * i toggles every facet in flips[i-1]; the state of P_lambda is the base
 * XOR the masks of the colors set in lambda. Inward means the map increases
 * when leaving the copy through that facet.
 */
struct CoorientationSystem {
    Coloring coloring;
    Partition partition;
    State base = 0;
    std::array<FacetSet, kMaxPalette> flips{};

    static CoorientationSystem make(const Coloring& col, const Partition& part, State base);

    State state_at(CopyLabel l) const;
    bool inward(CopyLabel l, int facet) const { return (state_at(l) >> facet) & 1; }
};

/// Facets whose color lies in the block of `color`.
FacetSet flip_mask(const Coloring& col, const Partition& part, int color);

/// +1 when the map rises crossing `facet` out of P_l, else -1.
int edge_orientation(const CoorientationSystem& sys, CopyLabel l, int facet);

/// Edge orientation read from both copies agrees.
bool edge_orientation_consistent(const CoorientationSystem& sys, CopyLabel l, int facet);

/// Per 1-cell of the cubulation: sign of f(corner 1) - f(corner 0).
std::vector<int> edge_orientations(const Cubulation& cub, const CoorientationSystem& sys);

enum class SquareClass { good, bad };

const char* to_string(SquareClass c);

/// Square spanned by orthogonal facets f and g: good iff their colors lie in different blocks.
SquareClass classify_square(const Partition& part, const Coloring& col, int f, int g);

struct SurveyOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 4096;  // exhaustive below this many representatives
    int jobs = 1;
};

/**
 * Base-state representatives modulo the flip subgroup: the lowest facet of
 * each block is held outward. Exhaustive when the quotient has at most
 * `samples` elements, otherwise `samples` distinct seeded draws.
 */
std::vector<State> base_state_candidates(const Coloring& col, const Partition& part, std::uint64_t seed,
                                         std::size_t samples, bool* exhaustive = nullptr);

struct SurveyRow {
    Partition partition;
    long long bad_squares = 0;
    bool family_ok = false;
    bool cusp_ok = false;
    std::optional<State> witness;
    std::size_t states_tested = 0;
    bool exhaustive = false;
};

struct SurveyReport {
    std::vector<SurveyRow> rows;
    /// Partitions with no bad squares and a base state making every cusp class nonzero.
    std::vector<std::size_t> achieving_both;
};

SurveyReport survey_partitions(const Cubulation& cub, const std::vector<Cusp>& cusps, const SurveyOptions& opt);

/// First candidate base state with all cusp classes nonzero (see survey), if any.
std::optional<State> search_base_state(const Tessellation& t, const std::vector<Cusp>& cusps, const Partition& part,
                                       std::uint64_t seed, std::size_t samples, std::size_t* tested = nullptr);

}  // namespace p5

#endif
