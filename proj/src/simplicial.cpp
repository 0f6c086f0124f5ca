#include "p5/simplicial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "p5/parallel.hpp"

namespace p5 {

void SimplicialComplex::add(Simplex s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("simplex with a repeated vertex");
    if (s.empty() || simplices_.count(s)) return;
    const std::size_t n = s.size();
    for (std::uint32_t sub = 1; sub < (1u << n); ++sub) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
            if ((sub >> i) & 1) f.push_back(s[i]);
        simplices_.insert(std::move(f));
    }
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

std::vector<long long> SimplicialComplex::counts() const {
    std::vector<long long> c(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& s : simplices_) ++c[s.size() - 1];
    return c;
}

std::vector<std::vector<Simplex>> SimplicialComplex::by_dimension() const {
    std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(dimension() + 1));
    for (const auto& s : simplices_) out[s.size() - 1].push_back(s);
    return out;
}

ChainComplex SimplicialComplex::chain_complex() const {
    const auto groups = by_dimension();
    ChainComplex cx;
    const std::size_t top = groups.size();
    cx.sizes.resize(top);
    cx.boundary.resize(top);
    cx.signed_boundary.resize(top);
    std::vector<std::map<Simplex, std::uint32_t>> index(top);
    for (std::size_t d = 0; d < top; ++d) {
        cx.sizes[d] = groups[d].size();
        for (std::uint32_t i = 0; i < groups[d].size(); ++i) index[d][groups[d][i]] = i;
        if (d == 0) continue;
        cx.boundary[d].resize(groups[d].size());
        cx.signed_boundary[d].resize(groups[d].size());
        for (std::uint32_t i = 0; i < groups[d].size(); ++i) {
            const Simplex& s = groups[d][i];
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(j));
                const std::uint32_t fi = index[d - 1].at(f);
                cx.boundary[d][i].push_back(fi);
                cx.signed_boundary[d][i].emplace_back(fi, j % 2 == 0 ? 1 : -1);
            }
        }
    }
    return cx;
}

SimplicialComplex simplex_fixture(int dim) {
    SimplicialComplex k;
    Simplex s(static_cast<std::size_t>(dim + 1));
    std::iota(s.begin(), s.end(), 0u);
    k.add(s);
    return k;
}

SimplicialComplex simplex_boundary_fixture(int dim) {
    SimplicialComplex k;
    for (int skip = 0; skip <= dim + 1; ++skip) {
        Simplex s;
        for (int v = 0; v <= dim + 1; ++v)
            if (v != skip) s.push_back(static_cast<std::uint32_t>(v));
        k.add(s);
    }
    return k;
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
    std::map<Simplex, std::uint32_t> id;
    for (const auto& s : k.simplices()) id.emplace(s, static_cast<std::uint32_t>(id.size()));
    SimplicialComplex out;
    for (const auto& s : k.simplices()) {
        // each ordering of the vertices gives one maximal flag below s
        Simplex order = s;
        do {
            Simplex flag;
            Simplex prefix;
            for (auto v : order) {
                prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                flag.push_back(id.at(prefix));
            }
            out.add(flag);
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return out;
}

std::size_t DeltaComplex::size() const {
    std::size_t n = 0;
    for (const auto& v : cells) n += v.size();
    return n;
}

bool DeltaComplex::is_simplicial() const {
    std::set<Simplex> seen;
    for (const auto& group : cells)
        for (const auto& c : group) {
            Simplex s = c.vertices;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
            if (!seen.insert(s).second) return false;
        }
    return true;
}

bool DeltaComplex::is_regular() const {
    for (const auto& group : cells)
        for (const auto& c : group) {
            auto f = c.faces;
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end()) return false;
        }
    return true;
}

DeltaComplex DeltaComplex::restrict_to(const std::vector<std::vector<bool>>& keep) const {
    std::vector<std::vector<bool>> closed(cells.size());
    for (std::size_t d = 0; d < cells.size(); ++d) closed[d].assign(cells[d].size(), false);
    for (std::size_t d = cells.size(); d-- > 0;)
        for (std::size_t i = 0; i < cells[d].size(); ++i) {
            if (d < keep.size() && i < keep[d].size() && keep[d][i]) closed[d][i] = true;
            if (closed[d][i] && d > 0)
                for (auto f : cells[d][i].faces) closed[d - 1][f] = true;
        }
    DeltaComplex out;
    std::vector<std::vector<std::uint32_t>> remap(cells.size());
    for (std::size_t d = 0; d < cells.size(); ++d) {
        remap[d].assign(cells[d].size(), 0);
        std::vector<Cell> group;
        for (std::size_t i = 0; i < cells[d].size(); ++i) {
            if (!closed[d][i]) continue;
            remap[d][i] = static_cast<std::uint32_t>(group.size());
            Cell c = cells[d][i];
            for (auto& f : c.faces) f = remap[d - 1][f];
            group.push_back(std::move(c));
        }
        if (group.empty()) break;
        out.cells.push_back(std::move(group));
    }
    return out;
}

SimplicialComplex to_simplicial(const DeltaComplex& d) {
    SimplicialComplex out;
    if (d.is_simplicial()) {
        for (const auto& group : d.cells)
            for (const auto& c : group) out.add(c.vertices);
        if (out.size() != d.size()) throw std::runtime_error("delta complex is not closed under faces");
        return out;
    }
    if (!d.is_regular()) throw std::runtime_error("link is neither simplicial nor regular");
    // order complex of the face poset
    std::vector<std::uint32_t> offset(d.cells.size() + 1, 0);
    for (std::size_t k = 0; k < d.cells.size(); ++k) offset[k + 1] = offset[k] + static_cast<std::uint32_t>(d.cells[k].size());
    for (std::size_t k = 0; k < d.cells.size(); ++k) {
        for (std::size_t i = 0; i < d.cells[k].size(); ++i) {
            const std::uint32_t self = offset[k] + static_cast<std::uint32_t>(i);
            if (k == 0) {
                out.add({self});
                continue;
            }
            std::vector<Simplex> flags{{self}};
            for (std::size_t level = k; level > 0; --level) {
                std::vector<Simplex> next;
                for (const auto& fl : flags) {
                    const std::uint32_t top = fl.back();
                    const std::size_t cell = top - offset[level];
                    for (auto f : d.cells[level][cell].faces) {
                        Simplex g = fl;
                        g.push_back(offset[level - 1] + f);
                        next.push_back(std::move(g));
                    }
                }
                flags.swap(next);
            }
            for (auto& fl : flags) out.add(fl);
        }
    }
    return out;
}

namespace {

struct IndexedComplex {
    std::vector<Simplex> simplices;
    std::vector<std::vector<std::uint32_t>> faces;
    std::vector<std::vector<std::uint32_t>> cofaces;

    explicit IndexedComplex(const SimplicialComplex& k) {
        std::map<Simplex, std::uint32_t> id;
        for (const auto& group : k.by_dimension())
            for (const auto& s : group) {
                id.emplace(s, static_cast<std::uint32_t>(simplices.size()));
                simplices.push_back(s);
            }
        faces.resize(simplices.size());
        cofaces.resize(simplices.size());
        for (std::uint32_t i = 0; i < simplices.size(); ++i) {
            const Simplex& s = simplices[i];
            if (s.size() < 2) continue;
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(j));
                const std::uint32_t fi = id.at(f);
                faces[i].push_back(fi);
                cofaces[fi].push_back(i);
            }
        }
    }
};

struct CollapseAttempt {
    std::vector<CollapseStep> steps;
    std::size_t remaining = 0;
    std::uint32_t last = 0;
};

CollapseAttempt greedy_collapse(const IndexedComplex& ix, std::mt19937_64& rng) {
    const std::size_t n = ix.simplices.size();
    std::vector<char> alive(n, 1);
    std::vector<int> live_cof(n);
    std::vector<char> listed(n, 0);
    int top = 0;
    for (std::size_t i = 0; i < n; ++i) {
        live_cof[i] = static_cast<int>(ix.cofaces[i].size());
        top = std::max(top, static_cast<int>(ix.simplices[i].size()) - 1);
    }
    std::vector<std::vector<std::uint32_t>> cand(static_cast<std::size_t>(top + 1));
    auto push = [&](std::uint32_t i) {
        if (alive[i] && live_cof[i] == 1 && !listed[i]) {
            listed[i] = 1;
            cand[ix.simplices[i].size() - 1].push_back(i);
        }
    };
    auto touch = [&](std::uint32_t i) {
        if (!alive[i]) return;
        if (live_cof[i] == 1) push(i);
        if (live_cof[i] == 0)
            for (auto f : ix.faces[i]) push(f);
    };
    auto live_coface = [&](std::uint32_t i) -> std::int64_t {
        for (auto c : ix.cofaces[i])
            if (alive[c]) return c;
        return -1;
    };
    for (std::uint32_t i = 0; i < n; ++i) push(i);

    CollapseAttempt out;
    std::size_t alive_count = n;
    for (;;) {
        bool progressed = false;
        for (auto& bucket : cand) {
            while (!bucket.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, bucket.size() - 1);
                const std::size_t j = pick(rng);
                const std::uint32_t tau = bucket[j];
                const std::int64_t sigma = alive[tau] && live_cof[tau] == 1 ? live_coface(tau) : -1;
                if (sigma < 0 || live_cof[sigma] != 0) {
                    bucket[j] = bucket.back();
                    bucket.pop_back();
                    listed[tau] = 0;
                    continue;
                }
                bucket[j] = bucket.back();
                bucket.pop_back();
                listed[tau] = 0;
                alive[tau] = 0;
                alive[sigma] = 0;
                alive_count -= 2;
                out.steps.push_back({ix.simplices[tau], ix.simplices[static_cast<std::size_t>(sigma)]});
                for (auto f : ix.faces[static_cast<std::size_t>(sigma)]) {
                    if (f == tau) continue;
                    --live_cof[f];
                    touch(f);
                }
                for (auto f : ix.faces[tau]) {
                    --live_cof[f];
                    touch(f);
                }
                progressed = true;
                break;
            }
            if (progressed) break;
        }
        if (!progressed) break;
    }
    out.remaining = alive_count;
    for (std::uint32_t i = 0; i < n; ++i)
        if (alive[i]) out.last = i;
    return out;
}

}  // namespace

ContractibilityReport certify_contractible(const SimplicialComplex& k, std::uint64_t seed, int restarts) {
    ContractibilityReport r;
    r.best_remaining = k.size();
    if (!k.empty()) {
        const IndexedComplex ix(k);
        for (int attempt = 0; attempt < restarts; ++attempt) {
            std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
            CollapseAttempt a = greedy_collapse(ix, rng);
            r.restarts_tried = attempt + 1;
            r.best_remaining = std::min(r.best_remaining, a.remaining);
            if (a.remaining == 1) {
                r.certificate = CollapseCertificate{std::move(a.steps), ix.simplices[a.last], attempt};
                return r;
            }
        }
    }
    if (!k.empty()) {
        const ChainComplex cx = k.chain_complex();
        r.betti_gf2 = betti(cx, Field::gf2);
        r.betti_q = betti(cx, Field::rationals);
    }
    return r;
}

bool check_certificate(const SimplicialComplex& k, const CollapseCertificate& cert, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::set<Simplex> live = k.simplices();
    auto strictly_contains = [](const Simplex& big, const Simplex& small) {
        return big.size() > small.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const auto& [face, coface] = cert.steps[i];
        const std::string at = "step " + std::to_string(i) + ": ";
        if (!live.count(face) || !live.count(coface)) return fail(at + "simplex not present");
        if (coface.size() != face.size() + 1 || !strictly_contains(coface, face))
            return fail(at + "coface is not a codimension-one coface");
        for (const auto& s : live) {
            if (s != coface && strictly_contains(s, face)) return fail(at + "face is not free");
            if (strictly_contains(s, coface)) return fail(at + "coface is not maximal");
        }
        live.erase(face);
        live.erase(coface);
    }
    if (live.size() != 1 || cert.remaining.size() != 1 || *live.begin() != cert.remaining)
        return fail("collapse does not end at a single vertex");
    return true;
}

}  // namespace p5
