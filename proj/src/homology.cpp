#include "p5/homology.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <unordered_map>

namespace p5 {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    auto& w = row(r)[c >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    if (v)
        w |= bit;
    else
        w &= ~bit;
}

std::size_t gf2_rank(BitMatrix m) {
    const std::size_t words = m.words_per_row();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (col & 63);
        std::size_t pivot = rank;
        while (pivot < m.rows() && !(m.row(pivot)[w] & bit)) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank) std::swap_ranges(m.row(pivot), m.row(pivot) + words, m.row(rank));
        const std::uint64_t* prow = m.row(rank);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            std::uint64_t* rr = m.row(r);
            if (rr[w] & bit)
                for (std::size_t k = w; k < words; ++k) rr[k] ^= prow[k];
        }
        ++rank;
    }
    return rank;
}

namespace {

// Symmetric difference of two sorted index lists.
void xor_into(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
    a.swap(scratch);
}

// Standard column reduction by lowest nonzero row; returns the pivot rows
// of the reduced nonzero columns.
std::vector<std::uint32_t> reduce_columns(std::vector<std::vector<std::uint32_t>>& columns,
                                          const std::vector<bool>* skip = nullptr) {
    std::unordered_map<std::uint32_t, std::size_t> pivot_of_low;
    std::vector<std::uint32_t> lows;
    std::vector<std::uint32_t> scratch;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (skip && (*skip)[j]) {
            columns[j].clear();
            continue;
        }
        auto& col = columns[j];
        while (!col.empty()) {
            auto it = pivot_of_low.find(col.back());
            if (it == pivot_of_low.end()) break;
            xor_into(col, columns[it->second], scratch);
        }
        if (!col.empty()) {
            pivot_of_low.emplace(col.back(), j);
            lows.push_back(col.back());
        }
    }
    return lows;
}

}  // namespace

std::size_t gf2_rank_sparse(std::vector<std::vector<std::uint32_t>> columns) {
    for (auto& c : columns) std::sort(c.begin(), c.end());
    return reduce_columns(columns).size();
}

std::size_t rational_rank(const std::vector<std::vector<long long>>& dense) {
    using boost::multiprecision::cpp_int;
    if (dense.empty()) return 0;
    const std::size_t rows = dense.size();
    const std::size_t cols = dense.front().size();
    std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = dense[i][j];

    cpp_int prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const cpp_int p = a[rank][col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const cpp_int factor = a[r][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] = (p * a[r][c] - factor * a[rank][c]) / prev;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

void ChainComplex::verify(Field field) const {
    if (field == Field::rationals && !has_signs())
        throw BoundaryError("rational check requested on a complex without signs");
    for (int k = 2; k <= top_dimension(); ++k) {
        if (field == Field::gf2) {
            for (std::size_t j = 0; j < boundary[k].size(); ++j) {
                std::unordered_map<std::uint32_t, int> acc;
                for (auto f : boundary[k][j])
                    for (auto g : boundary[k - 1][f]) acc[g] ^= 1;
                for (auto& [cell, v] : acc)
                    if (v) throw BoundaryError("boundary of boundary nonzero over GF(2) in dimension " + std::to_string(k));
            }
        } else {
            for (std::size_t j = 0; j < signed_boundary[k].size(); ++j) {
                std::unordered_map<std::uint32_t, long long> acc;
                for (auto [f, s] : signed_boundary[k][j])
                    for (auto [g, t] : signed_boundary[k - 1][f]) acc[g] += static_cast<long long>(s) * t;
                for (auto& [cell, v] : acc)
                    if (v) throw BoundaryError("boundary of boundary nonzero over Z in dimension " + std::to_string(k));
            }
        }
    }
}

std::size_t boundary_rank(const ChainComplex& cx, int k, Field field) {
    if (k < 1 || k > cx.top_dimension()) return 0;
    const std::size_t rows = cx.sizes[k - 1];
    const std::size_t cols = cx.sizes[k];
    if (rows == 0 || cols == 0) return 0;
    if (field == Field::gf2) {
        // Dense bit-packed elimination while it fits comfortably; sparse
        // column reduction beyond that.
        if (rows * cols <= (std::size_t{1} << 27)) {
            BitMatrix m(cols, rows);  // one row per cell (transpose has the same rank)
            for (std::size_t j = 0; j < cols; ++j)
                for (auto r : cx.boundary[k][j]) m.flip(j, r);
            return gf2_rank(std::move(m));
        }
        auto columns = cx.boundary[k];
        for (auto& c : columns) {
            std::sort(c.begin(), c.end());
            // repeated faces cancel mod 2
            std::vector<std::uint32_t> dedup;
            for (std::size_t i = 0; i < c.size();) {
                std::size_t e = i;
                while (e < c.size() && c[e] == c[i]) ++e;
                if ((e - i) % 2) dedup.push_back(c[i]);
                i = e;
            }
            c.swap(dedup);
        }
        return reduce_columns(columns).size();
    }
    if (!cx.has_signs()) throw BoundaryError("rational rank requested on a complex without signs");
    std::vector<std::vector<long long>> dense(rows, std::vector<long long>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j)
        for (auto [r, s] : cx.signed_boundary[k][j]) dense[r][j] += s;
    return rational_rank(dense);
}

std::vector<long long> betti(const ChainComplex& cx, Field field) {
    cx.verify(field);
    const int top = cx.top_dimension();
    std::vector<long long> ranks(top + 2, 0);
    for (int k = 1; k <= top; ++k) ranks[k] = static_cast<long long>(boundary_rank(cx, k, field));
    std::vector<long long> b(top + 1, 0);
    for (int k = 0; k <= top; ++k) b[k] = static_cast<long long>(cx.sizes[k]) - ranks[k] - ranks[k + 1];
    return b;
}

long long euler_characteristic(const std::vector<long long>& v) {
    long long chi = 0;
    for (std::size_t k = 0; k < v.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * v[k];
    return chi;
}

long long euler_characteristic(const ChainComplex& cx) {
    std::vector<long long> counts(cx.sizes.begin(), cx.sizes.end());
    return euler_characteristic(counts);
}

void write_triplets(std::ostream& os, const ChainComplex& cx, int k) {
    if (k < 1 || k > cx.top_dimension()) return;
    for (std::size_t j = 0; j < cx.boundary[k].size(); ++j) {
        if (cx.has_signs()) {
            for (auto [r, s] : cx.signed_boundary[k][j]) os << r << ' ' << j << ' ' << s << '\n';
        } else {
            for (auto r : cx.boundary[k][j]) os << r << ' ' << j << " 1\n";
        }
    }
}

}  // namespace p5
