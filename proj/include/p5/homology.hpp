#ifndef P5_HOMOLOGY_HPP
#define P5_HOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

namespace p5 {

/// Dense GF(2) matrix, rows bit-packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v = true);
    void flip(std::size_t r, std::size_t c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

    std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
    std::size_t words_per_row() const { return words_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Rank over GF(2); the argument is consumed by elimination.
std::size_t gf2_rank(BitMatrix m);

/// Rank over GF(2) of a matrix given as sparse columns (sorted row indices).
std::size_t gf2_rank_sparse(std::vector<std::vector<std::uint32_t>> columns);

/// Rank over Q of an integer matrix, fraction-free (Bareiss) elimination on
/// arbitrary-precision integers.
std::size_t rational_rank(const std::vector<std::vector<long long>>& dense);

enum class Field { gf2, rationals };

class BoundaryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Graded boundary matrices. `boundary[k][j]` lists the (k-1)-cells in the
 * boundary of k-cell j. Signed entries are optional; when present they give
 * the integral boundary used for rational ranks.
 */
struct ChainComplex {
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::vector<std::uint32_t>>> boundary;
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, int>>>> signed_boundary;

    int top_dimension() const { return static_cast<int>(sizes.size()) - 1; }
    bool has_signs() const { return !signed_boundary.empty(); }

    /// Throws BoundaryError if d_{k-1} d_k is nonzero over the field.
    void verify(Field field = Field::gf2) const;
};

/// Betti numbers b_0..b_top. Verifies dd = 0 first.
std::vector<long long> betti(const ChainComplex& cx, Field field = Field::gf2);

long long euler_characteristic(const ChainComplex& cx);
long long euler_characteristic(const std::vector<long long>& counts_or_betti);

/// Rank of d_k over the field (k >= 1).
std::size_t boundary_rank(const ChainComplex& cx, int k, Field field);

/// Debug dump of d_k as "row col value" triplets.
void write_triplets(std::ostream& os, const ChainComplex& cx, int k);

}  // namespace p5

#endif
