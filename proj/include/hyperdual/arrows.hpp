#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hyperdual {

// One labeled arrow on a hypervertex curve: the index-th common line segment
// of hyperedge `edge`. `reversed` records the sign: a '-' arrow is passed
// head-before-tail when the curve is traversed.
struct Occurrence {
    std::string edge;
    int index = 1;
    bool reversed = false;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Lexicographic on (edge, index, sign) with '+' before '-'.
bool occurrence_less(const Occurrence& a, const Occurrence& b);

// A hypermap as closed curves carrying labeled arrows. An empty curve is an
// isolated hypervertex. Field-level comparison is meaningless: two
// presentations are the same hypermap iff their canonical forms agree.
struct ArrowPresentation {
    std::string name;                             // empty = unnamed
    std::vector<std::vector<Occurrence>> curves;
};

// Parses the hmap text format. Throws ParseError with position on syntax
// errors and on duplicate occurrences, index gaps, and bad sign tokens.
ArrowPresentation parse_hmap(std::string_view text);

// Re-checks the occurrence invariants on an in-memory presentation:
// every (edge, index) appears once, indices of each edge are exactly 1..d(e).
void validate(const ArrowPresentation& ap);

// Deterministic ordering for stable text output: each curve rotated to start
// at its least occurrence, curves sorted by smallest contained edge label
// (ties by the rotated sequence), empty curves last.
ArrowPresentation canonical_order(const ArrowPresentation& ap);

// Serializes in canonical order.
std::string to_hmap_text(const ArrowPresentation& ap);

// Number of arrows (= d(H)).
int total_degree(const ArrowPresentation& ap);

} // namespace hyperdual
