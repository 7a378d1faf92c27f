#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperdual/hypermap.hpp"

namespace hyperdual {

// The ribbon-graph expansion R(H): every hyperedge collapses to a central
// vertex, every common line segment becomes a degree-2 edge from the central
// vertex to the hypervertex carrying it. Nodes 0..vertex_nodes-1 are the
// hypervertices (curves first, then the isolated ones), central node c is
// vertex_nodes + c.
struct RibbonExpansion {
    int vertex_nodes = 0;
    int central_nodes = 0;
    int isolated = 0;
    std::vector<std::pair<int, int>> edges;  // segment id -> (hypervertex, central)
    std::vector<std::vector<int>> rings;     // per curve: segment ids in boundary order

    int node_count() const { return vertex_nodes + central_nodes; }
};

RibbonExpansion ribbon_expansion(const FlagStructure& fs);

// R(H) rebuilt as a hypermap in its own right (each segment a degree-2
// hyperedge); independent route to eps(R(H)) = eps(H).
FlagStructure expansion_hypermap(const FlagStructure& fs);

// Connected components of R(H) minus one hypervertex; entry i labels ring
// position i of that vertex with the component of its arrow's central vertex.
// Labels are densified in order of first appearance around the ring.
std::vector<int> components_excluding_vertex(const RibbonExpansion& re, int vertex);

// Four ring positions whose component labels read C C' C C' around the
// vertex, for distinct C, C'. Existence anywhere forces eps > 0.
std::optional<std::array<int, 4>> alternating_quadruple(const FlagStructure& fs,
                                                        int vertex);

bool has_alternating_quadruple(const FlagStructure& fs);

// Intersection graph of a hyper-bouquet: hyperedges are adjacent iff their
// occurrences interleave around the unique vertex.
struct IntersectionGraph {
    std::vector<std::string> vertices;               // sorted lexicographically
    std::vector<std::pair<int, int>> edges;          // indices into vertices, i < j
};

IntersectionGraph intersection_graph(const FlagStructure& fs);

bool is_bipartite(const IntersectionGraph& g);

std::string intersection_graph_dot(const IntersectionGraph& g);

// Bouquet test for a nonzero constant term: I(B) bipartite and every single
// hyperedge plane.
bool constant_term_criterion(const FlagStructure& fs);

// One decomposition step H = left v right, split at a vertex whose ring
// labels separate into two arcs with disjoint label sets. The returned
// presentations carry the split vertex as curve 0 with the cut at gap
// position 0, so rejoining at {0,0},{0,0} without flip reproduces H.
struct JoinSplit {
    ArrowPresentation left;
    ArrowPresentation right;
};

std::optional<JoinSplit> split_once(const FlagStructure& fs);

// Full recursive factorization into prime factors (each with >= 1 hyperedge).
std::vector<FlagStructure> join_decompose(const FlagStructure& fs);

// For a prime connected hypermap: plane with a single hyperedge. Equivalent
// to the partial-dual polynomial being a constant.
bool constant_poly_criterion(const FlagStructure& fs);

// (H is a plane hyper-bouquet, H* is a hypertree); the two must agree.
std::pair<bool, bool> hypertree_duality_check(const FlagStructure& fs);

} // namespace hyperdual
