#ifndef P5_SIMPLICIAL_HPP
#define P5_SIMPLICIAL_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "p5/homology.hpp"

namespace p5 {

/// Sorted vertex list.
using Simplex = std::vector<std::uint32_t>;

/// Abstract simplicial complex, closed under taking faces.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Inserts the simplex and all its faces.
    void add(Simplex s);
    bool contains(const Simplex& s) const { return simplices_.count(s) != 0; }
    bool empty() const { return simplices_.empty(); }
    std::size_t size() const { return simplices_.size(); }
    int dimension() const;
    std::vector<long long> counts() const;

    const std::set<Simplex>& simplices() const { return simplices_; }
    /// Simplices grouped by dimension, each group lexicographic.
    std::vector<std::vector<Simplex>> by_dimension() const;
    /// Oriented boundary (vertex order) over both fields.
    ChainComplex chain_complex() const;

private:
    std::set<Simplex> simplices_;
};

SimplicialComplex simplex_fixture(int dim);
SimplicialComplex simplex_boundary_fixture(int dim);

/// Order complex of the face poset; vertex ids are indices into the
/// original complex's simplices in `simplices()` order.
SimplicialComplex barycentric_subdivision(const SimplicialComplex& k);

/**
 * Semi-simplicial complex: a d-cell carries d+1 vertex labels and its
 * codimension-one faces. Used for vertex links, where two cells may share a
 * vertex set.
 */
struct DeltaComplex {
    struct Cell {
        std::vector<std::uint32_t> vertices;
        std::vector<std::uint32_t> faces;  // indices among (d-1)-cells; empty for 0-cells
    };
    std::vector<std::vector<Cell>> cells;

    std::size_t size() const;
    /// True when vertex labels within a cell are distinct and no two cells share a label set.
    bool is_simplicial() const;
    /// True when the faces of each cell are distinct cells.
    bool is_regular() const;
    /// Sub-complex generated by the flagged cells (closed under faces), reindexed.
    DeltaComplex restrict_to(const std::vector<std::vector<bool>>& keep) const;
};

/// As a simplicial complex: directly when simplicial, otherwise by
/// barycentric subdivision (requires regularity; throws std::runtime_error).
SimplicialComplex to_simplicial(const DeltaComplex& d);

struct CollapseStep {
    Simplex face;
    Simplex coface;
};

struct CollapseCertificate {
    std::vector<CollapseStep> steps;
    Simplex remaining;  // the final vertex
    int restart = 0;
};

struct ContractibilityReport {
    std::optional<CollapseCertificate> certificate;
    // Filled when no restart collapses to a point.
    std::vector<long long> betti_gf2;
    std::vector<long long> betti_q;
    std::size_t best_remaining = 0;
    int restarts_tried = 0;

    bool certified() const { return certificate.has_value(); }
};

/**
 * Greedy elementary collapses: at each step a free face of the lowest
 * available dimension, chosen uniformly among ties with a seeded generator;
 * up to `restarts` attempts. The empty complex is inconclusive.
 */
ContractibilityReport certify_contractible(const SimplicialComplex& k, std::uint64_t seed, int restarts = 64);

/// Independent replay of a certificate. On failure returns false and, if
/// given, sets `why`.
bool check_certificate(const SimplicialComplex& k, const CollapseCertificate& cert, std::string* why = nullptr);

}  // namespace p5

#endif
