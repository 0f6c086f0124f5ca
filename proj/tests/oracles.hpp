// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls the code paths it is used to check.
#ifndef P5_TESTS_ORACLES_HPP
#define P5_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "p5/coloring.hpp"
#include "p5/cubulation.hpp"
#include "p5/game.hpp"

namespace oracle {

inline std::array<int, 5> signs_of_mask(int mask) {
    std::array<int, 5> e{};
    for (int i = 0; i < 5; ++i) e[i] = ((mask >> i) & 1) ? -1 : 1;
    return e;
}

/// Even-weight masks below 32, ascending.
inline std::vector<int> facet_masks() {
    std::vector<int> out;
    for (int m = 0; m < 32; ++m)
        if (__builtin_popcount(static_cast<unsigned>(m)) % 2 == 0) out.push_back(m);
    return out;
}

enum class Meet { same, crossing, tangent, disjoint };

/**
 * Klein model: the hyperplanes e.x = 1 and f.x = 1 in the unit ball of R^5.
 * The closest point of their intersection to the origin lies in span{e, f};
 * its squared norm decides: < 1 crossing, = 1 tangent at the sphere, > 1 disjoint.
 */
inline Meet klein_meet(int mask_e, int mask_f, double tol, double* norm2_out = nullptr) {
    if (mask_e == mask_f) return Meet::same;
    const auto e = signs_of_mask(mask_e), f = signs_of_mask(mask_f);
    double ee = 0, ff = 0, ef = 0;
    for (int i = 0; i < 5; ++i) {
        ee += e[i] * e[i];
        ff += f[i] * f[i];
        ef += e[i] * f[i];
    }
    const double det = ee * ff - ef * ef;
    const double a = (ff - ef) / det;
    const double b = (ee - ef) / det;
    double norm2 = 0;
    for (int i = 0; i < 5; ++i) {
        const double x = a * e[i] + b * f[i];
        norm2 += x * x;
    }
    if (norm2_out) *norm2_out = norm2;
    if (std::abs(norm2 - 1.0) <= tol) return Meet::tangent;
    return norm2 < 1.0 ? Meet::crossing : Meet::disjoint;
}

/// Dihedral angle cosine from the Minkowski normals (e, 1), a right angle when zero.
inline double minkowski_cos(int mask_e, int mask_f) {
    const auto e = signs_of_mask(mask_e), f = signs_of_mask(mask_f);
    double dot = -1.0, ne = -1.0, nf = -1.0;
    for (int i = 0; i < 5; ++i) {
        dot += e[i] * f[i];
        ne += e[i] * e[i];
        nf += f[i] * f[i];
    }
    return -dot / std::sqrt(ne * nf);
}

/// Brute-force clique counts: scan all k-subsets of the 16 facets.
inline std::vector<long long> brute_clique_counts(int kmax) {
    const auto masks = facet_masks();
    std::vector<long long> counts(static_cast<std::size_t>(kmax) + 1, 0);
    for (std::uint32_t s = 1; s < (1u << 16); ++s) {
        const int k = __builtin_popcount(s);
        if (k > kmax) continue;
        bool ok = true;
        for (int i = 0; i < 16 && ok; ++i)
            for (int j = i + 1; j < 16 && ok; ++j)
                if (((s >> i) & 1) && ((s >> j) & 1) && __builtin_popcount(static_cast<unsigned>(masks[i] ^ masks[j])) != 2)
                    ok = false;
        if (ok) ++counts[k];
    }
    return counts;
}

/// Whether a facet's color is shared with an orthogonal facet, straight from the masks.
inline bool brute_is_proper(const p5::Coloring& col) {
    const auto masks = facet_masks();
    for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j)
            if (__builtin_popcount(static_cast<unsigned>(masks[i] ^ masks[j])) == 2 && col.color(i) == col.color(j))
                return false;
    return true;
}

/**
 * Affine-extension oracle for the square (lambda, {F, G}). Corner values are
 * propagated from the four edge orientations read directly from the copies;
 * an affine map on [0,1]^2 exists iff f(11) - f(10) = f(01) - f(00) and the
 * lift closes up.
 */
inline bool square_has_affine_extension(const p5::CoorientationSystem& sys, p5::CopyLabel l, int f, int g) {
    const p5::CopyLabel ef = sys.coloring.basis(f), eg = sys.coloring.basis(g);
    auto rise = [&](p5::CopyLabel from, int facet) { return sys.inward(from, facet) ? 1 : -1; };
    const int v00 = 0;
    const int v10 = v00 + rise(l, f);
    const int v01 = v00 + rise(l, g);
    const int v11_via_10 = v10 + rise(l ^ ef, g);
    const int v11_via_01 = v01 + rise(l ^ eg, f);
    if (v11_via_10 != v11_via_01) return false;
    return v11_via_10 - v10 == v01 - v00;
}

/// Uniform random coloring with palette c.
inline p5::Coloring random_coloring(std::mt19937_64& rng, int c) {
    std::uniform_int_distribution<int> d(1, c);
    std::array<int, 16> colors{};
    for (auto& x : colors) x = d(rng);
    return p5::Coloring(colors, c);
}

/// Random proper coloring: a random perfect matching of the distance-4 graph,
/// colors shuffled; optionally split classes to use more colors.
inline p5::Coloring random_proper_coloring(std::mt19937_64& rng, int c) {
    const auto masks = facet_masks();
    for (;;) {
        std::array<int, 16> partner{};
        partner.fill(-1);
        bool stuck = false;
        for (int i = 0; i < 16 && !stuck; ++i) {
            if (partner[i] != -1) continue;
            std::vector<int> options;
            for (int j = i + 1; j < 16; ++j)
                if (partner[j] == -1 && __builtin_popcount(static_cast<unsigned>(masks[i] ^ masks[j])) == 4) options.push_back(j);
            if (options.empty()) {
                stuck = true;
                break;
            }
            const int j = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
            partner[i] = j;
            partner[j] = i;
        }
        if (stuck) continue;
        std::vector<int> labels(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) labels[i] = i + 1;
        std::shuffle(labels.begin(), labels.end(), rng);
        std::array<int, 16> colors{};
        colors.fill(0);
        int next = 0;
        for (int i = 0; i < 16; ++i) {
            if (colors[i]) continue;
            colors[i] = labels[next % 8];
            colors[partner[i]] = labels[next % 8];
            ++next;
        }
        // Recolor one facet of some classes with the spare colors.
        for (int extra = 8; extra < c; ++extra) {
            int i = std::uniform_int_distribution<int>(0, 15)(rng);
            colors[i] = labels[extra];
        }
        return p5::Coloring(colors, c);
    }
}

}  // namespace oracle

#endif
