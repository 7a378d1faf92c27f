#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperdual/arrows.hpp"

namespace hyperdual {

enum class End : std::uint8_t { Tail, Head };

// Where a flag sits inside its hyperedge: the `end` of arrow `index` of the
// hyperedge with ordinal `edge`.
struct FlagLabel {
    int edge = 0;
    int index = 1;
    End end = End::Tail;

    friend bool operator==(const FlagLabel&, const FlagLabel&) = default;
};

// The working representation: 2d flags (one per endpoint of a common line
// segment) acted on by three total fixed-point-free involutions.
//   alpha - free boundary arcs of the hypervertices
//   beta  - connecting segments of a hyperedge: head(e_i) <-> tail(e_{i+1})
//   gamma - the common line segments themselves: tail(e_i) <-> head(e_i)
// Matchings may share pairs (a degree-1 hyperedge forces beta = gamma on its
// two flags). Hypervertices without flags are counted in `isolated`.
// Instances are immutable by convention: every operation returns a new value.
struct FlagStructure {
    int nflags = 0;
    std::vector<int> alpha;
    std::vector<int> beta;
    std::vector<int> gamma;
    int isolated = 0;

    // Optional labeling; empty vectors mean "unlabeled". Edge ordinals are
    // the <beta,gamma> orbits numbered by least contained flag.
    std::vector<FlagLabel> labels;
    std::vector<std::string> edge_names;

    bool has_labels() const { return nflags == 0 || !labels.empty(); }
};

struct CountSummary {
    int v = 0, e = 0, f = 0, d = 0, k = 0;
    int chi = 0;
    int epsilon = 0;
    bool orientable = true;

    friend bool operator==(const CountSummary&, const CountSummary&) = default;
};

struct Classification {
    bool is_plane = false;
    bool is_bouquet = false;
    bool is_hypertree = false;
    bool is_hyper_quasi_tree = false;
};

// Subsets of hyperedges as bitmasks over edge ordinals; at most 62 edges.
using EdgeMask = std::uint64_t;

// Conversion between the two representations. Flags are numbered per arrow in
// file order: arrow j gets tail flag 2j and head flag 2j+1, so gamma is the
// standard matching {(0,1),(2,3),...} on freshly converted structures.
FlagStructure flags_from_arrows(const ArrowPresentation& ap);

// Traces the <alpha,gamma> orbits back into curves, starting each curve at its
// least flag and stepping gamma then alpha. Requires labels.
ArrowPresentation arrows_from_flags(const FlagStructure& fs);

// Structural sanity: involutions total and fixed-point-free, label
// consistency when labels are present. Throws ValidationError.
void check_valid(const FlagStructure& fs);

int edge_count(const FlagStructure& fs);

// flag -> edge ordinal (independent of labels; derived from <beta,gamma>).
std::vector<int> flag_edges(const FlagStructure& fs);

// Degree of each edge ordinal.
std::vector<int> edge_degrees(const FlagStructure& fs);

EdgeMask full_mask(const FlagStructure& fs);

// Resolves edge names to a mask. Throws UnknownEdgeError.
EdgeMask mask_of(const FlagStructure& fs, const std::vector<std::string>& names);

std::vector<std::string> names_of(const FlagStructure& fs, EdgeMask mask);

CountSummary count_summary(const FlagStructure& fs);

Classification classify(const FlagStructure& fs);

// Sub-hypermap on the kept hyperedges: flags of the others are deleted, alpha
// is recomputed by first return along each curve, fully emptied curves turn
// into isolated hypervertices (v is preserved).
FlagStructure restrict_edges(const FlagStructure& fs, EdgeMask keep);

// Relabeling-invariant encoding: per connected component, the lexicographic
// minimum over start flags of the BFS relabeling (generator order alpha,
// beta, gamma); component encodings sorted and concatenated. Two structures
// are isomorphic iff their canonical forms are equal. O(nflags^2).
std::string canonical_form(const FlagStructure& fs);

bool isomorphic(const FlagStructure& a, const FlagStructure& b);

// JSON export: {"flags":2d,"alpha":[[i,j],...],"beta":...,"gamma":...,
// "isolated":n,"labels":{...}} with pairs sorted ascending.
std::string flag_structure_json(const FlagStructure& fs);

} // namespace hyperdual
