#include "p5/morse.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "p5/parallel.hpp"

namespace p5 {

namespace {

using Coords = std::array<std::uint8_t, kMaxCubeDim>;

long long floor_of(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

long long ceil_of(const Rational& r) { return -floor_of(-r); }

bool is_integer(const Rational& r) { return r.denominator() == 1; }

}  // namespace

int cube_edge_sign(const CubeComplex& cx, const EdgeOrientation& o, int dim, std::uint32_t cell, std::uint32_t beta,
                   int axis) {
    if (dim == 1) return o[cell];
    const std::uint32_t code = subface_code(dim, 1u << axis, beta);
    const SubFace& e = cx.subfaces(dim, cell)[code];
    return (e.flips & 1) ? -o[e.index] : o[e.index];
}

bool square_is_bad(const CubeComplex& cx, const EdgeOrientation& o, std::uint32_t square) {
    const int p0 = cube_edge_sign(cx, o, 2, square, 0b00, 0);
    const int p1 = cube_edge_sign(cx, o, 2, square, 0b10, 0);
    const int q0 = cube_edge_sign(cx, o, 2, square, 0b00, 1);
    const int q1 = cube_edge_sign(cx, o, 2, square, 0b01, 1);
    return p0 != p1 || q0 != q1;
}

FamilyReport find_bad_families(const CubeComplex& cx, const EdgeOrientation& o, bool collect_families) {
    FamilyReport r;
    r.bad.assign(cx.count(2), 0);
    for (std::uint32_t s = 0; s < cx.count(2); ++s) {
        r.bad[s] = square_is_bad(cx, o, s) ? 1 : 0;
        r.bad_count += r.bad[s];
    }
    if (r.bad_count == 0) return r;

    std::map<std::uint32_t, std::vector<FamilyMember>> members;
    for (int d = 2; d <= cx.dimension(); ++d) {
        const auto cof = cx.coface_counts(d);
        for (std::uint32_t i = 0; i < cx.count(d); ++i) {
            if (cof[i] != 0) continue;
            const auto& table = cx.subfaces(d, i);
            int bad_pairs = 0;
            for (int a = 0; a < d; ++a)
                for (int b = a + 1; b < d; ++b) {
                    const std::uint32_t free = (1u << a) | (1u << b);
                    int bad = 0;
                    int total = 0;
                    std::vector<std::uint32_t> squares;
                    for (std::uint32_t fixed = 0; fixed < (1u << d); ++fixed) {
                        if (fixed & free) continue;
                        const SubFace& sq = table[subface_code(d, free, fixed)];
                        ++total;
                        if (r.bad[sq.index]) {
                            ++bad;
                            squares.push_back(sq.index);
                        }
                    }
                    if (bad == 0) continue;
                    ++bad_pairs;
                    if (bad != total)
                        r.violations.push_back({d, i,
                                                "axes " + std::to_string(a) + "," + std::to_string(b) + ": " +
                                                    std::to_string(total - bad) + " parallel copies are good"});
                    if (collect_families)
                        for (auto s : squares) members[s].push_back({d, i, a, b});
                }
            if (bad_pairs > 1)
                r.violations.push_back({d, i, std::to_string(bad_pairs) + " axis pairs carry bad squares"});
        }
    }
    for (auto& [s, m] : members) r.families.push_back({s, std::move(m)});
    return r;
}

const char* to_string(Piece p) {
    switch (p) {
        case Piece::whole: return "whole";
        case Piece::center: return "center";
        case Piece::half: return "half";
        case Piece::tri_p: return "tri_p";
        case Piece::tri_q: return "tri_q";
    }
    return "?";
}

std::vector<long long> MixedComplex::counts() const {
    std::vector<long long> out;
    for (const auto& v : cells_) out.push_back(static_cast<long long>(v.size()));
    return out;
}

std::size_t MixedComplex::subdivided_cube_count() const {
    std::size_t n = 0;
    for (const auto& per_dim : bad_pairs_)
        for (const auto& pq : per_dim) n += pq.first >= 0;
    return n;
}

ChainComplex MixedComplex::chain_complex() const {
    ChainComplex cx;
    cx.sizes.resize(cells_.size());
    cx.boundary.resize(cells_.size());
    for (std::size_t d = 0; d < cells_.size(); ++d) {
        cx.sizes[d] = cells_[d].size();
        if (d == 0) continue;
        cx.boundary[d].reserve(cells_[d].size());
        for (const auto& c : cells_[d]) cx.boundary[d].push_back(c.faces);
    }
    return cx;
}

std::uint32_t MixedComplex::add(MixedCell c) {
    if (static_cast<int>(cells_.size()) <= c.dim) cells_.resize(static_cast<std::size_t>(c.dim) + 1);
    const auto id = static_cast<std::uint32_t>(cells_[c.dim].size());
    cells_[c.dim].push_back(std::move(c));
    return id;
}

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

struct CubePieces {
    std::uint32_t whole = kNone;
    std::uint32_t center = kNone;
    std::array<std::uint32_t, 4> half{kNone, kNone, kNone, kNone};
    std::array<std::uint32_t, 2> tri_p{kNone, kNone};
    std::array<std::uint32_t, 2> tri_q{kNone, kNone};
};

// Position of the cube frame axis `axis` after deleting axis `removed`.
int shifted(int axis, int removed) { return axis - (removed < axis ? 1 : 0); }

}  // namespace

MixedComplex subdivide(const CubeComplex& cx, const EdgeOrientation& o, const FamilyReport& report) {
    if (!report.ok())
        throw SubdivisionError("bad squares do not form parallel families: " + report.violations.front().reason);
    (void)o;
    cx.prepare();
    MixedComplex mx;
    mx.cubes_ = &cx;
    const int top = cx.dimension();
    const bool any_bad = std::any_of(report.bad.begin(), report.bad.end(), [](char b) { return b != 0; });

    // Bad axis pair of every cube.
    mx.bad_pairs_.resize(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d) {
        mx.bad_pairs_[d].assign(cx.count(d), {-1, -1});
        if (d < 2 || !any_bad) continue;
        for (std::uint32_t i = 0; i < cx.count(d); ++i) {
            const auto& table = cx.subfaces(d, i);
            for (int a = 0; a < d; ++a)
                for (int b = a + 1; b < d; ++b) {
                    const std::uint32_t free = (1u << a) | (1u << b);
                    int bad = 0;
                    int total = 0;
                    for (std::uint32_t fixed = 0; fixed < (1u << d); ++fixed) {
                        if (fixed & free) continue;
                        ++total;
                        bad += report.bad[table[subface_code(d, free, fixed)].index];
                    }
                    if (bad == 0) continue;
                    if (bad != total || mx.bad_pairs_[d][i].first >= 0)
                        throw SubdivisionError("cube of dimension " + std::to_string(d) + " has no product splitting");
                    mx.bad_pairs_[d][i] = {a, b};
                }
        }
    }

    const std::uint32_t n0 = static_cast<std::uint32_t>(cx.count(0));
    std::vector<std::uint32_t> center_id(cx.count(2), kNone);
    for (std::uint32_t s = 0; s < cx.count(2); ++s)
        if (mx.bad_pairs_.size() > 2 && mx.bad_pairs_[2][s].first >= 0) {
            center_id[s] = n0 + static_cast<std::uint32_t>(mx.centers_.size());
            mx.centers_.push_back(s);
        }

    std::vector<std::vector<CubePieces>> pieces(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d) pieces[d].resize(cx.count(d));

    auto cell_ref = [&](int dim, std::uint32_t idx) -> const MixedCell& { return mx.cells_[dim][idx]; };

    // Slot map of a face: face slots in the frame of its carrier, which is
    // the subface `code` (with `flips`) of the parent's carrier.
    auto slot_map = [&](const MixedCell& parent, const MixedCell& face, std::uint32_t code, std::uint8_t flips) {
        std::vector<std::uint8_t> map;
        map.reserve(face.coords.size());
        for (const Coords& fc : face.coords) {
            Coords pc{};
            std::uint32_t c = code;
            int j = 0;
            for (int a = 0; a < parent.cube_dim; ++a, c /= 3) {
                const std::uint32_t digit = c % 3;
                if (digit != 2) {
                    pc[a] = static_cast<std::uint8_t>(2 * digit);
                } else {
                    const std::uint8_t x = fc[j];
                    pc[a] = ((flips >> j) & 1) ? static_cast<std::uint8_t>(2 - x) : x;
                    ++j;
                }
            }
            const auto it = std::find(parent.coords.begin(), parent.coords.end(), pc);
            if (it == parent.coords.end()) throw ComplexError("face slot not found in parent cell");
            map.push_back(static_cast<std::uint8_t>(it - parent.coords.begin()));
        }
        return map;
    };

    auto attach = [&](MixedCell& c, int face_dim, std::uint32_t face, std::uint32_t code, std::uint8_t flips) {
        if (face == kNone) throw ComplexError("missing face while subdividing");
        c.faces.push_back(face);
        c.face_slots.push_back(slot_map(c, cell_ref(face_dim, face), code, flips));
    };

    auto finish_edges = [&](MixedCell& c, std::uint32_t self_index) {
        if (c.dim == 1) {
            c.edges = {{self_index, 0, 1}};
            return;
        }
        for (std::size_t f = 0; f < c.faces.size(); ++f) {
            const MixedCell& face = cell_ref(c.dim - 1, c.faces[f]);
            for (const EdgeUse& e : face.edges)
                c.edges.push_back({e.edge, c.face_slots[f][e.slot0], c.face_slots[f][e.slot1]});
        }
        std::sort(c.edges.begin(), c.edges.end(), [](const EdgeUse& a, const EdgeUse& b) {
            return std::tie(a.edge, a.slot0, a.slot1) < std::tie(b.edge, b.slot0, b.slot1);
        });
        c.edges.erase(std::unique(c.edges.begin(), c.edges.end(),
                                  [](const EdgeUse& a, const EdgeUse& b) {
                                      return a.edge == b.edge && a.slot0 == b.slot0 && a.slot1 == b.slot1;
                                  }),
                      c.edges.end());
    };

    auto commit = [&](MixedCell c) {
        const auto next = static_cast<std::uint32_t>(c.dim < static_cast<int>(mx.cells_.size()) ? mx.cells_[c.dim].size() : 0);
        finish_edges(c, next);
        return mx.add(std::move(c));
    };

    for (int k = 0; k <= top; ++k) {
        for (std::uint32_t i = 0; i < cx.count(k); ++i) {
            const auto& cube = cx.cell(k, i);
            const auto [p, q] = mx.bad_pairs_[k][i];
            const std::uint32_t all_free = pow3(k) - 1;
            const auto& table = cx.subfaces(k, i);
            auto base_cell = [&](Piece piece, std::uint8_t param, int dim) {
                MixedCell c;
                c.dim = dim;
                c.cube_dim = k;
                c.cube = i;
                c.piece = piece;
                c.param = param;
                return c;
            };
            auto vertex_at = [&](const Coords& x) -> std::uint32_t {
                if (p >= 0 && x[p] == 1) {
                    std::uint32_t fixed = 0;
                    for (int a = 0; a < k; ++a)
                        if (a != p && a != q && x[a] == 2) fixed |= 1u << a;
                    const SubFace& sq = table[subface_code(k, (1u << p) | (1u << q), fixed)];
                    return center_id[sq.index];
                }
                std::uint32_t beta = 0;
                for (int a = 0; a < k; ++a)
                    if (x[a] == 2) beta |= 1u << a;
                return cube.corners[beta];
            };
            auto add_points = [&](MixedCell& c, const std::vector<Coords>& pts) {
                for (const auto& x : pts) {
                    c.coords.push_back(x);
                    c.vertices.push_back(vertex_at(x));
                }
            };

            if (p < 0) {
                MixedCell c = base_cell(Piece::whole, 0, k);
                std::vector<Coords> pts;
                for (std::uint32_t beta = 0; beta < (1u << k); ++beta) {
                    Coords x{};
                    for (int a = 0; a < k; ++a) x[a] = ((beta >> a) & 1) ? 2 : 0;
                    pts.push_back(x);
                }
                add_points(c, pts);
                for (int a = 0; a < k; ++a)
                    for (std::uint32_t s = 0; s < 2; ++s) {
                        const std::uint32_t code = subface_code(k, ((1u << k) - 1) & ~(1u << a), s << a);
                        const SubFace& sub = table[code];
                        attach(c, k - 1, pieces[k - 1][sub.index].whole, code, sub.flips);
                    }
                pieces[k][i].whole = commit(std::move(c));
                continue;
            }

            std::vector<int> dax;
            for (int a = 0; a < k; ++a)
                if (a != p && a != q) dax.push_back(a);
            const int m = static_cast<int>(dax.size());
            auto points = [&](std::uint8_t xp, std::uint8_t xq) {
                std::vector<Coords> pts;
                for (std::uint32_t delta = 0; delta < (1u << m); ++delta) {
                    Coords x{};
                    x[p] = xp;
                    x[q] = xq;
                    for (int j = 0; j < m; ++j) x[dax[j]] = ((delta >> j) & 1) ? 2 : 0;
                    pts.push_back(x);
                }
                return pts;
            };
            // Faces across the D axes: the same piece on the subface, with the
            // bad pair re-expressed in the subface frame.
            auto across_d = [&](MixedCell& c, auto&& piece_of) {
                for (int a : dax)
                    for (std::uint32_t s = 0; s < 2; ++s) {
                        const std::uint32_t code = subface_code(k, ((1u << k) - 1) & ~(1u << a), s << a);
                        const SubFace& sub = table[code];
                        const int p2 = shifted(p, a);
                        const int q2 = shifted(q, a);
                        if (mx.bad_pairs_[k - 1][sub.index] != std::make_pair(p2, q2))
                            throw ComplexError("bad pair not inherited by a face");
                        const bool fp = (sub.flips >> p2) & 1;
                        const bool fq = (sub.flips >> q2) & 1;
                        attach(c, c.dim - 1, piece_of(pieces[k - 1][sub.index], fp, fq), code, sub.flips);
                    }
            };

            auto& pc = pieces[k][i];
            {
                MixedCell c = base_cell(Piece::center, 0, k - 2);
                add_points(c, points(1, 1));
                if (k - 2 > 0) across_d(c, [](const CubePieces& f, bool, bool) { return f.center; });
                pc.center = commit(std::move(c));
            }
            for (std::uint8_t beta = 0; beta < 4; ++beta) {
                const std::uint8_t bp = beta & 1;
                const std::uint8_t bq = (beta >> 1) & 1;
                MixedCell c = base_cell(Piece::half, beta, k - 1);
                add_points(c, points(2 * bp, 2 * bq));
                add_points(c, points(1, 1));
                attach(c, k - 2, pc.center, all_free, 0);
                const std::uint32_t corner_code =
                    subface_code(k, ((1u << k) - 1) & ~((1u << p) | (1u << q)), (std::uint32_t(bp) << p) | (std::uint32_t(bq) << q));
                const SubFace& corner = table[corner_code];
                attach(c, k - 2, pieces[k - 2][corner.index].whole, corner_code, corner.flips);
                across_d(c, [beta](const CubePieces& f, bool fp, bool fq) {
                    return f.half[beta ^ (fp ? 1 : 0) ^ (fq ? 2 : 0)];
                });
                pc.half[beta] = commit(std::move(c));
            }
            for (std::uint8_t s = 0; s < 2; ++s) {
                MixedCell c = base_cell(Piece::tri_p, s, k);
                add_points(c, points(2 * s, 0));
                add_points(c, points(2 * s, 2));
                add_points(c, points(1, 1));
                const std::uint32_t edge_code = subface_code(k, ((1u << k) - 1) & ~(1u << p), std::uint32_t(s) << p);
                const SubFace& edge = table[edge_code];
                attach(c, k - 1, pieces[k - 1][edge.index].whole, edge_code, edge.flips);
                attach(c, k - 1, pc.half[s], all_free, 0);
                attach(c, k - 1, pc.half[s | 2], all_free, 0);
                across_d(c, [s](const CubePieces& f, bool fp, bool) { return f.tri_p[s ^ (fp ? 1 : 0)]; });
                pc.tri_p[s] = commit(std::move(c));
            }
            for (std::uint8_t s = 0; s < 2; ++s) {
                MixedCell c = base_cell(Piece::tri_q, s, k);
                add_points(c, points(0, 2 * s));
                add_points(c, points(2, 2 * s));
                add_points(c, points(1, 1));
                const std::uint32_t edge_code = subface_code(k, ((1u << k) - 1) & ~(1u << q), std::uint32_t(s) << q);
                const SubFace& edge = table[edge_code];
                attach(c, k - 1, pieces[k - 1][edge.index].whole, edge_code, edge.flips);
                attach(c, k - 1, pc.half[std::uint8_t(s << 1)], all_free, 0);
                attach(c, k - 1, pc.half[std::uint8_t(1 | (s << 1))], all_free, 0);
                across_d(c, [s](const CubePieces& f, bool, bool fq) { return f.tri_q[s ^ (fq ? 1 : 0)]; });
                pc.tri_q[s] = commit(std::move(c));
            }
        }
    }

    // 0-cells are the original vertices followed by the centers, in id order.
    for (std::uint32_t v = 0; v < mx.cells_[0].size(); ++v)
        if (mx.cells_[0][v].vertices[0] != v) throw ComplexError("vertex numbering mismatch after subdivision");
    mx.incidence_.resize(mx.cells_[0].size());
    for (int d = 1; d <= mx.dimension(); ++d)
        for (std::uint32_t c = 0; c < mx.cells_[d].size(); ++c) {
            const auto& cell = mx.cells_[d][c];
            for (std::size_t s = 0; s < cell.vertices.size(); ++s)
                mx.incidence_[cell.vertices[s]].push_back({d, c, static_cast<std::uint8_t>(s)});
        }
    return mx;
}

MixedComplex unsubdivided(const CubeComplex& cx) {
    FamilyReport none;
    none.bad.assign(cx.count(2), 0);
    return subdivide(cx, EdgeOrientation(cx.count(1), 1), none);
}

bool affine_fit(const std::vector<Coords>& coords, int dim, const std::vector<Rational>& values) {
    // Fraction-free elimination on integers: scale the values to a common
    // denominator and keep every row reduced by its gcd.
    long long den = 1;
    for (const auto& v : values) den = std::lcm(den, v.denominator());
    const std::size_t rows = coords.size();
    const std::size_t cols = static_cast<std::size_t>(dim) + 2;  // constant, gradient, value
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        a[r][0] = 1;
        for (int j = 0; j < dim; ++j) a[r][static_cast<std::size_t>(j) + 1] = coords[r][j];
        a[r][cols - 1] = values[r].numerator() * (den / values[r].denominator());
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col + 1 < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        const long long pv = a[rank][col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const long long x = a[r][col];
            if (x == 0) continue;
            long long g = 0;
            for (std::size_t c = col; c < cols; ++c) {
                a[r][c] = a[r][c] * pv - a[rank][c] * x;
                g = std::gcd(g, a[r][c]);
            }
            if (g > 1)
                for (std::size_t c = col; c < cols; ++c) a[r][c] /= g;
        }
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (a[r][cols - 1] != 0) return false;
    return true;
}

PLMap build_pl_map(const MixedComplex& mx, const EdgeOrientation& o, const PLMapOptions& opt) {
    if (opt.center <= 0 || opt.center >= 1) throw std::invalid_argument("center value must lie in (0, 1)");
    const CubeComplex& cx = mx.cubes();
    if (o.size() != cx.count(1)) throw std::invalid_argument("edge orientation size mismatch");
    PLMap f;
    f.center = opt.center;

    // Corner lifts of every cube, propagated from corner 0 and checked on all edges.
    std::vector<std::vector<std::vector<long long>>> corner(static_cast<std::size_t>(cx.dimension() + 1));
    for (int k = 0; k <= cx.dimension(); ++k) {
        corner[k].resize(cx.count(k));
        for (std::uint32_t i = 0; i < cx.count(k); ++i) {
            auto& L = corner[k][i];
            L.assign(std::size_t{1} << k, 0);
            for (std::uint32_t beta = 1; beta < L.size(); ++beta) {
                const int a = __builtin_ctz(beta);
                L[beta] = L[beta ^ (1u << a)] + cube_edge_sign(cx, o, k, i, beta ^ (1u << a), a);
            }
            for (std::uint32_t beta = 0; beta < L.size(); ++beta)
                for (int a = 0; a < k; ++a) {
                    if ((beta >> a) & 1) continue;
                    if (L[beta | (1u << a)] - L[beta] != cube_edge_sign(cx, o, k, i, beta, a))
                        throw PLMapError("edge orientations admit no lift on a " + std::to_string(k) + "-cube", k, i);
                }
        }
    }

    f.lifts.resize(static_cast<std::size_t>(mx.dimension() + 1));
    for (int d = 0; d <= mx.dimension(); ++d) {
        f.lifts[d].resize(mx.count(d));
        for (std::uint32_t i = 0; i < mx.count(d); ++i) {
            const MixedCell& c = mx.cell(d, i);
            const auto& L = corner[c.cube_dim][c.cube];
            const auto [p, q] = mx.bad_pair(c.cube_dim, c.cube);
            auto& out = f.lifts[d][i];
            out.reserve(c.coords.size());
            for (const auto& x : c.coords) {
                std::uint32_t beta = 0;
                for (int a = 0; a < c.cube_dim; ++a)
                    if (x[a] == 2) beta |= 1u << a;
                if (p >= 0 && x[p] == 1) {
                    long long lo = L[beta];
                    long long hi = L[beta];
                    for (std::uint32_t b : {1u << p, 1u << q, (1u << p) | (1u << q)}) {
                        lo = std::min(lo, L[beta | b]);
                        hi = std::max(hi, L[beta | b]);
                    }
                    if (hi - lo != 1) throw PLMapError("center value is not determined on a bad square", d, i);
                    out.push_back(Rational(lo) + opt.center);
                } else {
                    out.push_back(Rational(L[beta]));
                }
            }
            if (!affine_fit(c.coords, c.cube_dim, out))
                throw PLMapError("no affine extension on a " + std::to_string(d) + "-cell (" + to_string(c.piece) + ")",
                                 d, i);
            if (d >= 1 && std::all_of(out.begin(), out.end(), [&](const Rational& r) { return r == out.front(); }))
                throw PLMapError("map is constant on a " + std::to_string(d) + "-cell", d, i);
            ++f.cells_checked;
        }
    }
    f.vertex_values.resize(mx.vertex_count());
    for (std::uint32_t v = 0; v < mx.vertex_count(); ++v) f.vertex_values[v] = mx.is_center(v) ? opt.center : Rational(0);
    return f;
}

const char* to_string(LinkKind k) {
    switch (k) {
        case LinkKind::full: return "full";
        case LinkKind::ascending: return "ascending";
        case LinkKind::descending: return "descending";
    }
    return "?";
}

DeltaComplex vertex_link(const MixedComplex& mx, std::uint32_t v, const PLMap* f, LinkKind kind) {
    if (kind != LinkKind::full && !f) throw std::invalid_argument("ascending/descending links need a map");
    const auto& refs = mx.incidence(v);
    auto keep = [&](const CellRef& r) {
        if (kind == LinkKind::full) return true;
        const auto& L = f->lift(r.dim, r.cell);
        for (std::size_t s = 0; s < L.size(); ++s) {
            if (s == r.slot) continue;
            if (kind == LinkKind::ascending && !(L[s] > L[r.slot])) return false;
            if (kind == LinkKind::descending && !(L[s] < L[r.slot])) return false;
        }
        return true;
    };

    std::map<std::pair<std::uint32_t, std::uint8_t>, std::uint32_t> link_vertex;  // (edge, end)
    std::map<std::tuple<int, std::uint32_t, std::uint8_t>, std::uint32_t> link_cell;
    DeltaComplex out;
    for (const CellRef& r : refs) {  // ordered by dimension
        if (!keep(r)) continue;
        const MixedCell& c = mx.cell(r.dim, r.cell);
        DeltaComplex::Cell lc;
        if (r.dim == 1) {
            const std::uint32_t id = static_cast<std::uint32_t>(link_vertex.size());
            link_vertex.emplace(std::make_pair(r.cell, r.slot), id);
            lc.vertices = {id};
        } else {
            for (const EdgeUse& e : c.edges) {
                if (e.slot0 == r.slot) lc.vertices.push_back(link_vertex.at({e.edge, 0}));
                if (e.slot1 == r.slot) lc.vertices.push_back(link_vertex.at({e.edge, 1}));
            }
            if (static_cast<int>(lc.vertices.size()) != r.dim)
                throw ComplexError("vertex " + std::to_string(v) + " is not simple in a " + std::to_string(r.dim) + "-cell");
            for (std::size_t fi = 0; fi < c.faces.size(); ++fi) {
                const auto& map = c.face_slots[fi];
                for (std::size_t s = 0; s < map.size(); ++s)
                    if (map[s] == r.slot)
                        lc.faces.push_back(link_cell.at({r.dim - 1, c.faces[fi], static_cast<std::uint8_t>(s)}));
            }
        }
        const std::size_t ld = static_cast<std::size_t>(r.dim - 1);
        if (out.cells.size() <= ld) out.cells.resize(ld + 1);
        link_cell.emplace(std::make_tuple(r.dim, r.cell, r.slot), static_cast<std::uint32_t>(out.cells[ld].size()));
        out.cells[ld].push_back(std::move(lc));
    }
    return out;
}

DeltaComplex vertex_link(const CubeComplex& cx, std::uint32_t v) { return vertex_link(unsubdivided(cx), v); }

LinkSurvey certify_links(const MixedComplex& mx, const PLMap& f, std::uint64_t seed, int jobs, int restarts,
                         bool keep_certificates) {
    LinkSurvey s;
    const std::size_t n = mx.vertex_count();
    s.rows.resize(2 * n);
    parallel_for(n, jobs, [&](std::size_t v) {
        for (int k = 0; k < 2; ++k) {
            LinkStatus& row = s.rows[2 * v + static_cast<std::size_t>(k)];
            row.vertex = static_cast<std::uint32_t>(v);
            row.center = mx.is_center(row.vertex);
            row.kind = k == 0 ? LinkKind::ascending : LinkKind::descending;
            const SimplicialComplex link = to_simplicial(vertex_link(mx, row.vertex, &f, row.kind));
            row.simplices = link.size();
            const ContractibilityReport rep =
                certify_contractible(link, mix_seed(seed, 2 * static_cast<std::uint64_t>(v) + static_cast<std::uint64_t>(k)),
                                     restarts);
            row.restarts = rep.restarts_tried;
            if (rep.certified()) {
                row.steps = rep.certificate->steps.size();
                row.replayed = check_certificate(link, *rep.certificate);
                row.certified = row.replayed;
                if (keep_certificates) row.certificate = rep.certificate;
            } else {
                row.betti_gf2 = rep.betti_gf2;
                row.betti_q = rep.betti_q;
            }
        }
    });
    for (const auto& r : s.rows) (r.certified ? s.certified : s.inconclusive)++;
    return s;
}

std::vector<long long> LevelSet::counts() const {
    std::vector<long long> out;
    for (const auto& v : cells) out.push_back(static_cast<long long>(v.size()));
    return out;
}

ChainComplex LevelSet::chain_complex() const {
    ChainComplex cx;
    cx.sizes.resize(cells.size());
    cx.boundary.resize(cells.size());
    for (std::size_t d = 0; d < cells.size(); ++d) {
        cx.sizes[d] = cells[d].size();
        if (d == 0) continue;
        for (const auto& c : cells[d]) cx.boundary[d].push_back(c.faces);
    }
    return cx;
}

ChainComplex LevelSet::sheet_complex(long long sheet) const {
    ChainComplex cx;
    std::vector<std::vector<std::uint32_t>> remap(cells.size());
    for (std::size_t d = 0; d < cells.size(); ++d) {
        remap[d].assign(cells[d].size(), 0);
        std::vector<std::vector<std::uint32_t>> bd;
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < cells[d].size(); ++i) {
            if (cells[d][i].sheet != sheet) continue;
            remap[d][i] = next++;
            if (d > 0) {
                std::vector<std::uint32_t> faces;
                for (auto f : cells[d][i].faces) faces.push_back(remap[d - 1][f]);
                bd.push_back(std::move(faces));
            }
        }
        if (next == 0) break;
        cx.sizes.push_back(next);
        cx.boundary.push_back(std::move(bd));
    }
    return cx;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

std::size_t count_components(const LevelSet& ls, const long long* sheet) {
    std::vector<std::size_t> offset(ls.cells.size() + 1, 0);
    for (std::size_t d = 0; d < ls.cells.size(); ++d) offset[d + 1] = offset[d] + ls.cells[d].size();
    UnionFind uf(offset.back());
    for (std::size_t d = 1; d < ls.cells.size(); ++d)
        for (std::size_t i = 0; i < ls.cells[d].size(); ++i)
            for (auto f : ls.cells[d][i].faces)
                uf.unite(static_cast<std::uint32_t>(offset[d] + i), static_cast<std::uint32_t>(offset[d - 1] + f));
    std::vector<char> root(offset.back(), 0);
    std::size_t n = 0;
    for (std::size_t d = 0; d < ls.cells.size(); ++d)
        for (std::size_t i = 0; i < ls.cells[d].size(); ++i) {
            if (sheet && ls.cells[d][i].sheet != *sheet) continue;
            const auto r = uf.find(static_cast<std::uint32_t>(offset[d] + i));
            if (!root[r]) {
                root[r] = 1;
                ++n;
            }
        }
    return n;
}

}  // namespace

std::size_t LevelSet::components() const { return count_components(*this, nullptr); }

std::size_t LevelSet::sheet_components(long long sheet) const { return count_components(*this, &sheet); }

LevelSet level_set(const MixedComplex& mx, const PLMap& f, Rational t) {
    for (const auto& v : f.vertex_values)
        if (is_integer(v - t)) throw std::invalid_argument("level is a vertex value; choose a regular value");
    LevelSet ls;
    ls.t = t;

    // Global potential along a spanning forest of the 1-skeleton; the
    // defects on the other edges generate the periods.
    const std::size_t nv = mx.vertex_count();
    std::vector<std::vector<std::uint32_t>> adj(nv);
    for (std::uint32_t e = 0; e < mx.count(1); ++e) {
        adj[mx.cell(1, e).vertices[0]].push_back(e);
        adj[mx.cell(1, e).vertices[1]].push_back(e);
    }
    std::vector<Rational> phi(nv);
    std::vector<char> seen(nv, 0);
    for (std::uint32_t root = 0; root < nv; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        phi[root] = f.vertex_values[root];
        std::deque<std::uint32_t> queue{root};
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            for (auto e : adj[v]) {
                const auto& c = mx.cell(1, e);
                const auto& L = f.lift(1, e);
                const std::uint32_t w = c.vertices[0] == v ? c.vertices[1] : c.vertices[0];
                if (seen[w]) continue;
                seen[w] = 1;
                phi[w] = c.vertices[0] == v ? phi[v] + (L[1] - L[0]) : phi[v] - (L[1] - L[0]);
                queue.push_back(w);
            }
        }
    }
    long long d = 0;
    for (std::uint32_t e = 0; e < mx.count(1); ++e) {
        const auto& c = mx.cell(1, e);
        const auto& L = f.lift(1, e);
        const Rational defect = phi[c.vertices[0]] + (L[1] - L[0]) - phi[c.vertices[1]];
        if (!is_integer(defect)) throw ComplexError("potential defect is not an integer");
        d = std::gcd(d, std::abs(defect.numerator()));
    }
    ls.divisibility = d;

    // Fiber cells, one per (cell, level) with t + n strictly inside the range.
    std::vector<std::vector<std::pair<long long, std::uint32_t>>> first(static_cast<std::size_t>(mx.dimension() + 1));
    ls.cells.resize(static_cast<std::size_t>(std::max(0, mx.dimension())));
    for (int k = 1; k <= mx.dimension(); ++k) {
        first[k].resize(mx.count(k));
        for (std::uint32_t i = 0; i < mx.count(k); ++i) {
            const auto& L = f.lift(k, i);
            const auto [lo, hi] = std::minmax_element(L.begin(), L.end());
            const long long n_min = floor_of(*lo - t) + 1;
            const long long n_max = ceil_of(*hi - t) - 1;
            first[k][i] = {n_min, static_cast<std::uint32_t>(ls.cells[k - 1].size())};
            const MixedCell& c = mx.cell(k, i);
            for (long long n = n_min; n <= n_max; ++n) {
                FiberCell fc;
                fc.source = i;
                fc.level = n;
                const Rational global = t + Rational(n) - L[0] + phi[c.vertices[0]];
                const long long m = (global - t).numerator();
                fc.sheet = d > 0 ? ((m % d) + d) % d : m;
                if (k >= 2) {
                    for (std::size_t fi = 0; fi < c.faces.size(); ++fi) {
                        const auto& map = c.face_slots[fi];
                        const auto& LF = f.lift(k - 1, c.faces[fi]);
                        const Rational delta = L[map[0]] - LF[0];
                        if (!is_integer(delta)) throw ComplexError("face lift differs by a non-integer");
                        const long long nf = n - delta.numerator();
                        const auto [fmin, fstart] = first[k - 1][c.faces[fi]];
                        const auto [flo, fhi] = std::minmax_element(LF.begin(), LF.end());
                        if (nf < fmin || !(Rational(nf) + t < *fhi) || !(Rational(nf) + t > *flo)) continue;
                        const std::uint32_t face = fstart + static_cast<std::uint32_t>(nf - fmin);
                        if (ls.cells[k - 2][face].sheet != fc.sheet) throw ComplexError("fiber sheets do not match across a face");
                        fc.faces.push_back(face);
                    }
                } else {
                    ls.vertices.push_back({i, n, (t + Rational(n) - L[0]) / (L[1] - L[0])});
                }
                ls.cells[k - 1].push_back(std::move(fc));
            }
        }
    }
    while (!ls.cells.empty() && ls.cells.back().empty()) ls.cells.pop_back();
    std::vector<long long> labels;
    for (const auto& group : ls.cells)
        for (const auto& c : group) labels.push_back(c.sheet);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    ls.sheets = labels;
    return ls;
}

FiberSummary summarize_fiber(const LevelSet& fiber) {
    FiberSummary s;
    s.counts = fiber.counts();
    s.euler_cells = euler_characteristic(s.counts);
    if (!s.counts.empty()) s.betti = betti(fiber.chain_complex(), Field::gf2);
    s.euler_betti = euler_characteristic(s.betti);
    s.components = fiber.components();
    s.divisibility = fiber.divisibility;
    for (long long sheet : fiber.sheets) {
        s.sheet_components.push_back(fiber.sheet_components(sheet));
        long long n = 0;
        for (const auto& group : fiber.cells)
            for (const auto& c : group) n += c.sheet == sheet;
        s.sheet_counts.push_back(n);
    }
    if (!fiber.sheets.empty()) {
        const ChainComplex first = fiber.sheet_complex(fiber.sheets.front());
        if (!first.sizes.empty()) s.sheet_betti = betti(first, Field::gf2);
    }
    s.primitive_connected = !s.sheet_components.empty() &&
                            std::all_of(s.sheet_components.begin(), s.sheet_components.end(),
                                        [](std::size_t c) { return c == 1; });
    return s;
}

}  // namespace p5
