#include "p5/game.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "p5/cusp_class.hpp"
#include "p5/morse.hpp"
#include "p5/parallel.hpp"

namespace p5 {

Partition::Partition(std::vector<int> rgs) : rgs_(std::move(rgs)) {
    int top = -1;
    for (int b : rgs_) {
        if (b < 0 || b > top + 1) throw std::invalid_argument("not a restricted growth string");
        top = std::max(top, b);
    }
}

Partition Partition::parse(std::string_view text, int colors) {
    if (colors < 1 || colors > kMaxPalette) throw std::invalid_argument("palette size out of range");
    std::vector<int> label(static_cast<std::size_t>(colors), -1);
    int block = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t bar = std::min(text.find('|', pos), text.size());
        std::string part(text.substr(pos, bar - pos));
        std::erase_if(part, [](char ch) { return ch == ' ' || ch == '\t'; });
        if (part.find(",,") != std::string::npos || part.starts_with(',') || part.ends_with(','))
            throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
        std::replace(part.begin(), part.end(), ',', ' ');
        std::istringstream in(part);
        int c = 0;
        bool any = false;
        while (in >> c) {
            if (c < 1 || c > colors) throw std::invalid_argument("color " + std::to_string(c) + " out of range");
            if (label[c - 1] != -1) throw std::invalid_argument("color " + std::to_string(c) + " listed twice");
            label[c - 1] = block;
            any = true;
        }
        if (!in.eof()) throw std::invalid_argument("malformed partition '" + std::string(text) + "'");
        if (!any) throw std::invalid_argument("empty block in partition '" + std::string(text) + "'");
        ++block;
        pos = bar + 1;
    }
    std::vector<int> relabel(static_cast<std::size_t>(block), -1);
    std::vector<int> rgs;
    int next = 0;
    for (int c = 0; c < colors; ++c) {
        if (label[c] == -1) throw std::invalid_argument("color " + std::to_string(c + 1) + " missing from partition");
        if (relabel[label[c]] == -1) relabel[label[c]] = next++;
        rgs.push_back(relabel[label[c]]);
    }
    return Partition(std::move(rgs));
}

Partition Partition::singletons(int colors) {
    std::vector<int> rgs(static_cast<std::size_t>(colors));
    for (int i = 0; i < colors; ++i) rgs[i] = i;
    return Partition(std::move(rgs));
}

Partition Partition::modulo(int colors, int m) {
    std::vector<int> rgs(static_cast<std::size_t>(colors));
    for (int i = 0; i < colors; ++i) rgs[i] = i % m;
    return Partition(std::move(rgs));
}

int Partition::block_count() const { return rgs_.empty() ? 0 : *std::max_element(rgs_.begin(), rgs_.end()) + 1; }

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count()));
    for (int c = 1; c <= colors(); ++c) out[block_of(c)].push_back(c);
    return out;
}

std::string Partition::to_string() const {
    std::string s;
    for (const auto& b : blocks()) {
        if (!s.empty()) s += '|';
        for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    }
    return s;
}

std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    if (n <= 0) return out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int top) -> void {
        if (i == n) {
            out.emplace_back(rgs);
            return;
        }
        for (int b = 0; b <= top + 1; ++b) {
            rgs[i] = b;
            self(self, i + 1, std::max(top, b));
        }
    };
    rec(rec, 1, 0);
    return out;
}

long long bell_number(int n) {
    if (n < 0) throw std::invalid_argument("negative Bell index");
    std::vector<long long> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<long long> next{row.back()};
        for (long long x : row) next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

std::string format_state(State s) {
    std::string out;
    for (int f = 0; f < kFacetCount; ++f) out += ((s >> f) & 1) ? 'i' : 'o';
    return out;
}

State parse_state(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) {
        const std::string hex(text.substr(2));
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(hex, &used, 16);
        } catch (const std::exception&) {
            used = 0;
        }
        if (hex.empty() || used != hex.size() || v > 0xFFFF) throw std::invalid_argument("bad hex state '" + std::string(text) + "'");
        return static_cast<State>(v);
    }
    if (text.size() != kFacetCount) throw std::invalid_argument("state needs 16 characters of i/o");
    State s = 0;
    for (int f = 0; f < kFacetCount; ++f) {
        if (text[f] == 'i')
            s |= State(1u << f);
        else if (text[f] != 'o')
            throw std::invalid_argument("state characters must be 'i' or 'o'");
    }
    return s;
}

State read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    State s = 0;
    FacetSet seen = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string signs, dir;
        if (!(ls >> signs)) continue;
        if (!(ls >> dir) || (dir != "in" && dir != "out")) throw std::invalid_argument("expected 'in' or 'out' after " + signs);
        const int f = FacetVector::parse(signs).index();
        if ((seen >> f) & 1) throw std::invalid_argument("facet " + signs + " listed twice");
        seen |= FacetSet(1u << f);
        if (dir == "in") s |= State(1u << f);
    }
    if (seen != 0xFFFF) throw std::invalid_argument("state file must list all 16 facets");
    return s;
}

std::string format_state_file(State s) {
    std::string out;
    for (int f = 0; f < kFacetCount; ++f)
        out += FacetVector::from_index(f).to_string() + (((s >> f) & 1) ? " in\n" : " out\n");
    return out;
}

FacetSet flip_mask(const Coloring& col, const Partition& part, int color) {
    FacetSet m = 0;
    for (int f = 0; f < kFacetCount; ++f)
        if (part.same_block(col.color(f), color)) m |= FacetSet(1u << f);
    return m;
}

CoorientationSystem CoorientationSystem::make(const Coloring& col, const Partition& part, State base) {
    if (part.colors() != col.palette_size())
        throw std::invalid_argument("partition covers " + std::to_string(part.colors()) + " colors, palette has " +
                                    std::to_string(col.palette_size()));
    CoorientationSystem sys;
    sys.coloring = col;
    sys.partition = part;
    sys.base = base;
    for (int c = 1; c <= col.palette_size(); ++c) sys.flips[c - 1] = flip_mask(col, part, c);
    return sys;
}

State CoorientationSystem::state_at(CopyLabel l) const {
    State s = base;
    for (int c = 0; c < coloring.palette_size(); ++c)
        if ((l >> c) & 1) s ^= flips[c];
    return s;
}

int edge_orientation(const CoorientationSystem& sys, CopyLabel l, int facet) { return sys.inward(l, facet) ? 1 : -1; }

bool edge_orientation_consistent(const CoorientationSystem& sys, CopyLabel l, int facet) {
    const CopyLabel other = l ^ sys.coloring.basis(facet);
    return edge_orientation(sys, l, facet) == -edge_orientation(sys, other, facet);
}

std::vector<int> edge_orientations(const Cubulation& cub, const CoorientationSystem& sys) {
    std::vector<int> o(cub.count(1));
    for (std::uint32_t e = 0; e < o.size(); ++e) {
        const CubeKey& k = cub.key(1, e);
        o[e] = edge_orientation(sys, k.base, __builtin_ctz(k.facets));
    }
    return o;
}

const char* to_string(SquareClass c) { return c == SquareClass::good ? "good" : "bad"; }

SquareClass classify_square(const Partition& part, const Coloring& col, int f, int g) {
    return part.same_block(col.color(f), col.color(g)) ? SquareClass::bad : SquareClass::good;
}

std::vector<State> base_state_candidates(const Coloring& col, const Partition& part, std::uint64_t seed,
                                         std::size_t samples, bool* exhaustive) {
    // The flip masks partition the facets by block; fixing the lowest facet
    // of each block picks one state per coset.
    State pinned = 0;
    for (int c = 1; c <= col.palette_size(); ++c) {
        const FacetSet m = flip_mask(col, part, c);
        if (m) pinned |= State(m & -m);
    }
    std::vector<int> free;
    for (int f = 0; f < kFacetCount; ++f)
        if (!((pinned >> f) & 1)) free.push_back(f);
    auto expand = [&](std::uint32_t bits) {
        State s = 0;
        for (std::size_t j = 0; j < free.size(); ++j)
            if ((bits >> j) & 1) s |= State(1u << free[j]);
        return s;
    };
    const std::uint64_t total = std::uint64_t{1} << free.size();
    std::vector<State> out;
    if (total <= samples) {
        if (exhaustive) *exhaustive = true;
        for (std::uint64_t b = 0; b < total; ++b) out.push_back(expand(static_cast<std::uint32_t>(b)));
        return out;
    }
    if (exhaustive) *exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> draw(0, total - 1);
    std::set<std::uint64_t> seen;
    while (out.size() < samples) {
        const std::uint64_t b = draw(rng);
        if (seen.insert(b).second) out.push_back(expand(static_cast<std::uint32_t>(b)));
    }
    return out;
}

namespace {

std::uint64_t partition_hash(const Partition& part) {
    std::uint64_t h = 0;
    for (int b : part.rgs()) h = mix_seed(h, static_cast<std::uint64_t>(b));
    return h;
}

std::optional<State> first_witness(const CuspLoopTable& table, const std::vector<State>& candidates,
                                   std::size_t* tested) {
    std::size_t n = 0;
    for (State s : candidates) {
        ++n;
        if (table.all_nonzero(s)) {
            if (tested) *tested = n;
            return s;
        }
    }
    if (tested) *tested = n;
    return std::nullopt;
}

}  // namespace

std::optional<State> search_base_state(const Tessellation& t, const std::vector<Cusp>& cusps, const Partition& part,
                                       std::uint64_t seed, std::size_t samples, std::size_t* tested) {
    const CuspLoopTable table(t, cusps, part);
    const auto candidates =
        base_state_candidates(t.coloring(), part, mix_seed(seed, partition_hash(part)), samples, nullptr);
    return first_witness(table, candidates, tested);
}

SurveyReport survey_partitions(const Cubulation& cub, const std::vector<Cusp>& cusps, const SurveyOptions& opt) {
    const Tessellation& t = cub.tessellation();
    const Coloring& col = t.coloring();
    const CubeComplex& cx = cub.complex();
    cx.prepare();
    std::vector<std::pair<int, int>> squares(cub.count(2));
    for (std::uint32_t i = 0; i < squares.size(); ++i) {
        const auto ax = cub.axes(2, i);
        squares[i] = {col.color(ax[0]), col.color(ax[1])};
    }

    SurveyReport report;
    const auto parts = all_partitions(col.palette_size());
    report.rows.resize(parts.size());
    parallel_for(parts.size(), opt.jobs, [&](std::size_t i) {
        SurveyRow& row = report.rows[i];
        row.partition = parts[i];
        for (const auto& [a, b] : squares) row.bad_squares += row.partition.same_block(a, b);
        if (row.bad_squares == 0) {
            row.family_ok = true;
        } else {
            const auto sys = CoorientationSystem::make(col, row.partition, 0);
            row.family_ok = find_bad_families(cx, edge_orientations(cub, sys), false).ok();
        }
        const CuspLoopTable table(t, cusps, row.partition);
        const auto candidates = base_state_candidates(col, row.partition, mix_seed(opt.seed, partition_hash(row.partition)),
                                                      opt.samples, &row.exhaustive);
        row.witness = first_witness(table, candidates, &row.states_tested);
        row.cusp_ok = row.witness.has_value();
    });
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        if (report.rows[i].bad_squares == 0 && report.rows[i].cusp_ok) report.achieving_both.push_back(i);
    return report;
}

}  // namespace p5
