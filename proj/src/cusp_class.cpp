#include "p5/cusp_class.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace p5 {

const char* to_string(CuspPattern p) {
    switch (p) {
        case CuspPattern::zero: return "zero";
        case CuspPattern::projection: return "projection";
        case CuspPattern::summation: return "summation";
        case CuspPattern::other: return "other";
    }
    return "?";
}

CuspPattern classify_pattern(const std::array<int, 4>& degrees, int* gcd_out, std::array<int, 4>* primitive_out) {
    int g = 0;
    for (int d : degrees) g = std::gcd(g, d);
    std::array<int, 4> prim{};
    if (g != 0)
        for (int k = 0; k < 4; ++k) prim[k] = degrees[k] / g;
    if (gcd_out) *gcd_out = g;
    if (primitive_out) *primitive_out = prim;
    if (g == 0) return CuspPattern::zero;
    const int nonzero = static_cast<int>(std::count_if(prim.begin(), prim.end(), [](int d) { return d != 0; }));
    if (nonzero == 1) return CuspPattern::projection;
    if (std::all_of(prim.begin(), prim.end(), [](int d) { return d == 1 || d == -1; })) return CuspPattern::summation;
    return CuspPattern::other;
}

std::vector<std::uint8_t> tile_parities(const Tessellation& t, const Cusp& cusp) {
    const Coloring& col = t.coloring();
    std::unordered_map<CopyLabel, std::uint8_t> parity;
    std::deque<CopyLabel> queue{cusp.orbit.front()};
    parity[cusp.orbit.front()] = 0;
    while (!queue.empty()) {
        const CopyLabel l = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k)
            for (int f : {cusp.directions[k].lower, cusp.directions[k].upper}) {
                const CopyLabel next = l ^ col.basis(f);
                const std::uint8_t p = parity[l] ^ std::uint8_t(1u << k);
                const auto [it, inserted] = parity.emplace(next, p);
                if (inserted)
                    queue.push_back(next);
                else if (it->second != p)
                    throw CuspClassError("tile mirror parity is not well defined at " + cusp.base.to_string());
            }
    }
    std::vector<std::uint8_t> out;
    out.reserve(cusp.orbit.size());
    for (CopyLabel l : cusp.orbit) out.push_back(parity.at(l));
    return out;
}

namespace {

// The loop along direction k from a tile: exit through the upper facet when
// the tile is unreflected along k, through the lower one otherwise.
template <class StepFn>
void walk_loop(const Tessellation& t, const Cusp& cusp, int k, CopyLabel start, std::uint8_t parity, StepFn&& step) {
    const CuspDirection& d = cusp.directions[k];
    CopyLabel l = start;
    bool reflected = (parity >> k) & 1;
    for (int i = 0; i < d.period; ++i) {
        const int f = reflected ? d.lower : d.upper;
        step(l, f);
        l ^= t.coloring().basis(f);
        reflected = !reflected;
    }
    if (l != start) throw CuspClassError("coordinate loop does not close at " + cusp.base.to_string());
}

}  // namespace

CuspClass cusp_restriction_class(const Tessellation& t, const Cusp& cusp, const CoorientationSystem& sys) {
    const auto parity = tile_parities(t, cusp);
    CuspClass c;
    for (int k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < cusp.orbit.size(); ++i) {
            int deg = 0;
            walk_loop(t, cusp, k, cusp.orbit[i], parity[i],
                      [&](CopyLabel l, int f) { deg += edge_orientation(sys, l, f); });
            if (i == 0)
                c.degrees[k] = deg;
            else if (deg != c.degrees[k])
                throw CuspClassError("parallel loops disagree at " + cusp.base.to_string() + " direction " +
                                     std::to_string(k + 1));
        }
    }
    c.pattern = classify_pattern(c.degrees, &c.gcd, &c.primitive);
    return c;
}

CuspLoopTable::CuspLoopTable(const Tessellation& t, const std::vector<Cusp>& cusps, const Partition& part) {
    const Coloring& col = t.coloring();
    std::array<ColorVector, kMaxPalette> block_colors{};
    for (int c = 1; c <= col.palette_size(); ++c)
        for (int d = 1; d <= col.palette_size(); ++d)
            if (part.same_block(c, d)) block_colors[c - 1] |= ColorVector{1} << (d - 1);

    loops_.resize(cusps.size());
    for (std::size_t ci = 0; ci < cusps.size(); ++ci) {
        const Cusp& cusp = cusps[ci];
        const auto parity = tile_parities(t, cusp);
        for (int k = 0; k < 4; ++k) {
            auto& distinct = loops_[ci][k];
            for (std::size_t i = 0; i < cusp.orbit.size(); ++i) {
                Loop loop;
                walk_loop(t, cusp, k, cusp.orbit[i], parity[i], [&](CopyLabel l, int f) {
                    const ColorVector m = l & block_colors[col.color(f) - 1];
                    loop.push_back({static_cast<std::uint8_t>(f), static_cast<std::uint8_t>(popcount(m) & 1)});
                });
                std::sort(loop.begin(), loop.end());
                if (std::find(distinct.begin(), distinct.end(), loop) == distinct.end()) distinct.push_back(loop);
            }
        }
    }
}

int CuspLoopTable::degree(const Loop& loop, State base) {
    int d = 0;
    for (const Step& s : loop) d += (((base >> s.facet) & 1) ^ s.parity) ? 1 : -1;
    return d;
}

std::vector<std::array<int, 4>> CuspLoopTable::degrees(State base, bool* consistent) const {
    std::vector<std::array<int, 4>> out(loops_.size());
    if (consistent) *consistent = true;
    for (std::size_t ci = 0; ci < loops_.size(); ++ci)
        for (int k = 0; k < 4; ++k) {
            const auto& distinct = loops_[ci][k];
            out[ci][k] = degree(distinct.front(), base);
            for (std::size_t j = 1; j < distinct.size(); ++j)
                if (degree(distinct[j], base) != out[ci][k] && consistent) *consistent = false;
        }
    return out;
}

bool CuspLoopTable::all_nonzero(State base) const {
    for (const auto& per_dir : loops_) {
        bool nonzero = false;
        for (int k = 0; k < 4; ++k) {
            const auto& distinct = per_dir[k];
            const int d = degree(distinct.front(), base);
            for (std::size_t j = 1; j < distinct.size(); ++j)
                if (degree(distinct[j], base) != d) return false;
            if (d != 0) nonzero = true;
        }
        if (!nonzero) return false;
    }
    return true;
}

}  // namespace p5
