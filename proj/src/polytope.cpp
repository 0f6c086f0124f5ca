#include "p5/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace p5 {

namespace {

constexpr std::array<std::int8_t, 32> make_index_table() {
    std::array<std::int8_t, 32> table{};
    std::int8_t next = 0;
    for (int m = 0; m < 32; ++m) {
        int w = 0;
        for (int b = 0; b < 5; ++b) w += (m >> b) & 1;
        table[m] = (w % 2 == 0) ? next++ : std::int8_t{-1};
    }
    return table;
}

constexpr auto kIndexOfMask = make_index_table();

int hamming(FacetVector f, FacetVector g) { return popcount(f.mask() ^ g.mask()); }

}  // namespace

FacetVector FacetVector::from_mask(std::uint8_t mask) {
    if (mask >= 32 || kIndexOfMask[mask] < 0)
        throw std::invalid_argument("facet mask must be a 5-bit word of even weight");
    return FacetVector(mask);
}

FacetVector FacetVector::from_index(int index) {
    if (index < 0 || index >= kFacetCount) throw std::out_of_range("facet index out of range");
    return facets()[index];
}

FacetVector FacetVector::parse(std::string_view s) {
    std::uint8_t mask = 0;
    int pos = 0;
    for (std::size_t i = 0; i < s.size();) {
        if (pos >= kAmbientDim) throw std::invalid_argument("sign string too long");
        const unsigned char ch = static_cast<unsigned char>(s[i]);
        if (ch == '+') {
            ++i;
        } else if (ch == '-') {
            mask |= 1u << pos;
            ++i;
        } else if (ch == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(s[i + 2]) == 0x92) {
            mask |= 1u << pos;  // U+2212
            i += 3;
        } else {
            throw std::invalid_argument("bad character in sign string");
        }
        ++pos;
    }
    if (pos != kAmbientDim) throw std::invalid_argument("sign string must have 5 signs");
    return from_mask(mask);
}

int FacetVector::index() const { return kIndexOfMask[mask_]; }

std::string FacetVector::to_string() const {
    std::string s(kAmbientDim, '+');
    for (int i = 0; i < kAmbientDim; ++i)
        if ((mask_ >> i) & 1) s[i] = '-';
    return s;
}

const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::equal: return "equal";
        case PairClass::orthogonal: return "orthogonal";
        case PairClass::ideal_tangent: return "ideal_tangent";
    }
    return "?";
}

std::string IdealVertex::to_string() const {
    return std::string(sign > 0 ? "+" : "-") + "e" + std::to_string(axis);
}

FacetVector Symmetry::apply(FacetVector f) const {
    std::uint8_t m = 0;
    for (int i = 0; i < kAmbientDim; ++i)
        if ((f.mask() >> i) & 1) m |= 1u << perm[i];
    return FacetVector::from_mask(m ^ flips);
}

IdealVertex Symmetry::apply(IdealVertex p) const {
    const int target = perm[p.axis - 1];
    const int s = ((flips >> target) & 1) ? -p.sign : p.sign;
    return {target + 1, s};
}

Symmetry Symmetry::compose(const Symmetry& other) const {
    // this(other(x)): other permutes then flips, then this permutes and flips.
    Symmetry r;
    std::uint8_t moved = 0;
    for (int i = 0; i < kAmbientDim; ++i) {
        r.perm[i] = perm[other.perm[i]];
        if ((other.flips >> i) & 1) moved |= 1u << perm[i];
    }
    r.flips = moved ^ flips;
    return r;
}

bool Symmetry::is_identity() const {
    for (int i = 0; i < kAmbientDim; ++i)
        if (perm[i] != i) return false;
    return flips == 0;
}

int AdjacencyGraph::degree(int a) const { return popcount(neighbors[a]); }

std::vector<std::pair<int, int>> AdjacencyGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < kFacetCount; ++a)
        for (int b = a + 1; b < kFacetCount; ++b)
            if (adjacent(a, b)) out.emplace_back(a, b);
    return out;
}

const std::array<FacetVector, kFacetCount>& facets() {
    static const std::array<FacetVector, kFacetCount> all = [] {
        std::array<FacetVector, kFacetCount> a{};
        for (int m = 0; m < 32; ++m)
            if (kIndexOfMask[m] >= 0) a[kIndexOfMask[m]] = FacetVector::from_mask(static_cast<std::uint8_t>(m));
        return a;
    }();
    return all;
}

PairClass classify_pair(FacetVector f, FacetVector g) {
    switch (hamming(f, g)) {
        case 0: return PairClass::equal;
        case 2: return PairClass::orthogonal;
        case 4: return PairClass::ideal_tangent;
        default: throw std::logic_error("odd Hamming distance between facets");
    }
}

int minkowski_pairing(FacetVector f, FacetVector g) {
    int dot = 0;
    for (int i = 1; i <= kAmbientDim; ++i) dot += f.sign(i) * g.sign(i);
    return dot - 1;
}

const AdjacencyGraph& adjacency_graph() {
    static const AdjacencyGraph graph = [] {
        AdjacencyGraph g;
        const auto& fs = facets();
        for (int a = 0; a < kFacetCount; ++a)
            for (int b = 0; b < kFacetCount; ++b)
                if (classify_pair(fs[a], fs[b]) == PairClass::orthogonal) g.neighbors[a] |= FacetSet(1u << b);
        return g;
    }();
    return graph;
}

std::vector<std::pair<int, int>> ideal_tangent_pairs() {
    std::vector<std::pair<int, int>> out;
    const auto& fs = facets();
    for (int a = 0; a < kFacetCount; ++a)
        for (int b = a + 1; b < kFacetCount; ++b)
            if (classify_pair(fs[a], fs[b]) == PairClass::ideal_tangent) out.emplace_back(a, b);
    return out;
}

bool is_clique(FacetSet s) {
    const auto& g = adjacency_graph();
    bool ok = true;
    for_each_bit(s, [&](int a) {
        if ((s & ~FacetSet(1u << a) & ~g.neighbors[a]) != 0) ok = false;
    });
    return ok;
}

namespace {

void extend_cliques(FacetSet current, int size, FacetSet candidates, int k, std::vector<FacetSet>& out) {
    if (size == k) {
        out.push_back(current);
        return;
    }
    const auto& g = adjacency_graph();
    while (candidates) {
        const int v = __builtin_ctz(candidates);
        candidates &= candidates - 1;
        extend_cliques(FacetSet(current | (1u << v)), size + 1, FacetSet(candidates & g.neighbors[v]), k, out);
    }
}

}  // namespace

std::vector<FacetSet> clique_masks(int k) {
    std::vector<FacetSet> out;
    if (k < 1 || k > kFacetCount) return out;
    extend_cliques(0, 0, 0xFFFF, k, out);
    return out;
}

std::vector<std::vector<int>> cliques(int k) {
    std::vector<std::vector<int>> out;
    for (FacetSet m : clique_masks(k)) {
        std::vector<int> c;
        for_each_bit(m, [&](int b) { c.push_back(b); });
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

const std::array<IdealVertex, kIdealVertexCount>& ideal_vertices() {
    static const std::array<IdealVertex, kIdealVertexCount> all = [] {
        std::array<IdealVertex, kIdealVertexCount> a{};
        for (int axis = 1; axis <= kAmbientDim; ++axis) {
            a[2 * (axis - 1)] = {axis, 1};
            a[2 * (axis - 1) + 1] = {axis, -1};
        }
        return a;
    }();
    return all;
}

FacetSet ideal_vertex_star(IdealVertex p) {
    if (p.axis < 1 || p.axis > kAmbientDim || (p.sign != 1 && p.sign != -1))
        throw std::invalid_argument("invalid ideal vertex");
    FacetSet s = 0;
    for (int i = 0; i < kFacetCount; ++i)
        if (facets()[i].sign(p.axis) == p.sign) s |= FacetSet(1u << i);
    return s;
}

std::vector<Symmetry> symmetry_group() {
    std::vector<Symmetry> out;
    out.reserve(1920);
    std::array<std::uint8_t, kAmbientDim> perm{0, 1, 2, 3, 4};
    do {
        for (const auto& f : facets()) {
            Symmetry s;
            s.perm = perm;
            s.flips = f.mask();
            out.push_back(s);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace p5
