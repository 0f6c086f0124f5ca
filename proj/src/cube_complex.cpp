#include "p5/cube_complex.hpp"

#include <map>
#include <string>

namespace p5 {

namespace {

std::uint32_t insert_bit(std::uint32_t x, int pos, std::uint32_t bit) {
    const std::uint32_t low = x & ((1u << pos) - 1);
    const std::uint32_t high = x >> pos;
    return low | (bit << pos) | (high << (pos + 1));
}

}  // namespace

std::uint32_t CubeComplex::add_vertex() {
    if (cells_.empty()) cells_.resize(1);
    const auto id = static_cast<std::uint32_t>(cells_[0].size());
    cells_[0].push_back(Cell{{id}, {}});
    subface_cache_.clear();
    return id;
}

std::uint32_t CubeComplex::add_cell(int dim, std::vector<FaceLink> faces) {
    if (dim < 1 || dim > kMaxCubeDim) throw ComplexError("cell dimension out of range");
    if (static_cast<int>(faces.size()) != 2 * dim) throw ComplexError("a k-cell needs 2k faces");
    if (dimension() < dim - 1) throw ComplexError("faces must be added before their cofaces");
    for (const auto& f : faces)
        if (f.index >= cells_[dim - 1].size()) throw ComplexError("face index out of range");
    if (static_cast<int>(cells_.size()) <= dim) cells_.resize(dim + 1);

    Cell c;
    c.corners.resize(std::size_t{1} << dim);
    const auto& lower = cells_[dim - 1];
    for (std::uint32_t beta = 0; beta < c.corners.size(); ++beta) {
        const FaceLink& f = faces[beta & 1u];
        c.corners[beta] = dim == 1 ? f.index : lower[f.index].corners[(beta >> 1) ^ f.flips];
    }
    if (dim > 1) {
        for (int a = 0; a < dim; ++a)
            for (std::uint32_t s = 0; s < 2; ++s) {
                const FaceLink& f = faces[2 * a + s];
                const auto& fc = lower[f.index].corners;
                for (std::uint32_t g = 0; g < fc.size(); ++g)
                    if (c.corners[insert_bit(g ^ f.flips, a, s)] != fc[g])
                        throw ComplexError("inconsistent corners between faces of a " + std::to_string(dim) + "-cell");
            }
    }
    c.faces = std::move(faces);
    const auto id = static_cast<std::uint32_t>(cells_[dim].size());
    cells_[dim].push_back(std::move(c));
    subface_cache_.clear();
    return id;
}

std::vector<long long> CubeComplex::counts() const {
    std::vector<long long> out;
    for (const auto& v : cells_) out.push_back(static_cast<long long>(v.size()));
    return out;
}

SubFace CubeComplex::subface(int dim, std::uint32_t i, std::uint32_t code) const {
    // Find the first fixed axis; descend through that face.
    std::uint32_t rest = code;
    for (int a = 0; a < dim; ++a, rest /= 3) {
        const std::uint32_t digit = rest % 3;
        if (digit == 2) continue;
        const FaceLink& f = cells_[dim][i].faces[2 * a + digit];
        // Re-express the remaining code in the face frame.
        std::uint32_t face_code = 0;
        std::uint32_t mult = 1;
        std::uint32_t c = code;
        int j = 0;
        for (int b = 0; b < dim; ++b, c /= 3) {
            if (b == a) continue;
            std::uint32_t d = c % 3;
            if (d != 2 && ((f.flips >> j) & 1)) d ^= 1;
            face_code += d * mult;
            mult *= 3;
            ++j;
        }
        SubFace inner = subface(dim - 1, f.index, face_code);
        // Compose flips: free axes of the face map in order to free axes here.
        std::uint8_t flips = 0;
        int free_pos = 0;
        j = 0;
        c = code;
        for (int b = 0; b < dim; ++b, c /= 3) {
            if (b == a) continue;
            if (c % 3 == 2) {
                const bool flipped = ((f.flips >> j) & 1) ^ ((inner.flips >> free_pos) & 1);
                if (flipped) flips |= std::uint8_t(1u << free_pos);
                ++free_pos;
            }
            ++j;
        }
        return {inner.dim, inner.index, flips};
    }
    return {dim, i, 0};
}

const std::vector<SubFace>& CubeComplex::subfaces(int dim, std::uint32_t i) const {
    prepare();
    return subface_cache_[dim][i];
}

void CubeComplex::prepare() const {
    if (subface_cache_.size() != cells_.size()) {
        subface_cache_.assign(cells_.size(), {});
        for (std::size_t d = 0; d < cells_.size(); ++d) {
            subface_cache_[d].resize(cells_[d].size());
            const std::uint32_t n = pow3(static_cast<int>(d));
            for (std::uint32_t c = 0; c < cells_[d].size(); ++c) {
                auto& table = subface_cache_[d][c];
                table.resize(n);
                for (std::uint32_t code = 0; code < n; ++code) table[code] = subface(static_cast<int>(d), c, code);
            }
        }
    }
}

std::vector<std::uint32_t> CubeComplex::cofaces(int dim, std::uint32_t i) const {
    std::vector<std::uint32_t> out;
    if (dim + 1 > dimension()) return out;
    for (std::uint32_t c = 0; c < cells_[dim + 1].size(); ++c)
        for (const auto& f : cells_[dim + 1][c].faces)
            if (f.index == i) out.push_back(c);
    return out;
}

std::vector<int> CubeComplex::coface_counts(int dim) const {
    std::vector<int> out(count(dim), 0);
    if (dim + 1 > dimension()) return out;
    for (const auto& c : cells_[dim + 1])
        for (const auto& f : c.faces) ++out[f.index];
    return out;
}

ChainComplex CubeComplex::chain_complex() const {
    ChainComplex cx;
    const int top = dimension();
    cx.sizes.resize(top + 1);
    cx.boundary.resize(top + 1);
    cx.signed_boundary.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        cx.sizes[k] = cells_[k].size();
        if (k == 0) continue;
        cx.boundary[k].resize(cells_[k].size());
        cx.signed_boundary[k].resize(cells_[k].size());
        for (std::uint32_t c = 0; c < cells_[k].size(); ++c) {
            const auto& cell = cells_[k][c];
            std::map<std::uint32_t, int> coeff;
            for (int a = 0; a < k; ++a)
                for (int s = 0; s < 2; ++s) {
                    const FaceLink& f = cell.faces[2 * a + s];
                    int sign = (a % 2 == 0 ? 1 : -1) * (s ? 1 : -1);
                    if (k > 1 && __builtin_popcount(f.flips) % 2) sign = -sign;
                    coeff[f.index] += sign;
                    cx.boundary[k][c].push_back(f.index);
                }
            for (auto [idx, v] : coeff)
                if (v != 0) cx.signed_boundary[k][c].emplace_back(idx, v);
        }
    }
    return cx;
}

std::uint32_t subface_code(int dim, std::uint32_t free_mask, std::uint32_t fixed_values) {
    std::uint32_t code = 0;
    std::uint32_t mult = 1;
    for (int a = 0; a < dim; ++a, mult *= 3) {
        const std::uint32_t digit = ((free_mask >> a) & 1) ? 2u : ((fixed_values >> a) & 1);
        code += digit * mult;
    }
    return code;
}

CellCensus cell_census(const CubeComplex& cx) {
    CellCensus c;
    c.counts = cx.counts();
    c.euler = euler_characteristic(c.counts);
    return c;
}

CubeComplex torus_complex(int dim, int period) {
    if (dim < 1 || dim > kMaxCubeDim || period < 1) throw std::invalid_argument("bad torus fixture parameters");
    CubeComplex cx;
    std::uint32_t nverts = 1;
    for (int i = 0; i < dim; ++i) nverts *= static_cast<std::uint32_t>(period);
    for (std::uint32_t v = 0; v < nverts; ++v) cx.add_vertex();

    auto shift = [&](std::uint32_t x, int axis) {
        std::uint32_t stride = 1;
        for (int i = 0; i < axis; ++i) stride *= static_cast<std::uint32_t>(period);
        const std::uint32_t digit = (x / stride) % static_cast<std::uint32_t>(period);
        const std::uint32_t next = (digit + 1) % static_cast<std::uint32_t>(period);
        return x - digit * stride + next * stride;
    };

    // cells keyed by (base vertex, axis mask)
    std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>> index(dim + 1);
    for (std::uint32_t v = 0; v < nverts; ++v) index[0][{v, 0}] = v;
    for (int k = 1; k <= dim; ++k) {
        for (std::uint32_t v = 0; v < nverts; ++v)
            for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) {
                if (__builtin_popcount(mask) != k) continue;
                std::vector<FaceLink> faces;
                for (int a = 0; a < dim; ++a) {
                    if (!((mask >> a) & 1)) continue;
                    const std::uint32_t sub = mask & ~(1u << a);
                    faces.push_back({index[k - 1].at({v, sub}), 0});
                    faces.push_back({index[k - 1].at({shift(v, a), sub}), 0});
                }
                index[k][{v, mask}] = cx.add_cell(k, std::move(faces));
            }
    }
    return cx;
}

namespace {

CubeComplex faces_of_cube(int k, bool include_top) {
    CubeComplex cx;
    const std::uint32_t n = pow3(k);
    std::vector<std::map<std::uint32_t, std::uint32_t>> index(k + 1);
    auto free_count = [&](std::uint32_t code) {
        int c = 0;
        for (int a = 0; a < k; ++a, code /= 3) c += (code % 3 == 2);
        return c;
    };
    for (int d = 0; d <= k; ++d) {
        if (d == k && !include_top) break;
        for (std::uint32_t code = 0; code < n; ++code) {
            if (free_count(code) != d) continue;
            if (d == 0) {
                index[0][code] = cx.add_vertex();
                continue;
            }
            std::vector<FaceLink> faces;
            std::uint32_t mult = 1;
            std::uint32_t c = code;
            for (int a = 0; a < k; ++a, c /= 3, mult *= 3) {
                if (c % 3 != 2) continue;
                faces.push_back({index[d - 1].at(code - 2 * mult), 0});
                faces.push_back({index[d - 1].at(code - mult), 0});
            }
            index[d][code] = cx.add_cell(d, std::move(faces));
        }
    }
    return cx;
}

}  // namespace

CubeComplex cube_fixture(int k) {
    if (k < 0 || k > kMaxCubeDim) throw std::invalid_argument("bad cube fixture dimension");
    return faces_of_cube(k, true);
}

CubeComplex cube_boundary_fixture(int k) {
    if (k < 0 || k + 1 > kMaxCubeDim) throw std::invalid_argument("bad sphere fixture dimension");
    return faces_of_cube(k + 1, false);
}

}  // namespace p5
