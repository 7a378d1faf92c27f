#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hyperdual/hypermap.hpp"

namespace hyperdual {

// Generating function of the partial duals by Euler genus: exponent ->
// number of subsets A with eps(H^A) = exponent. Multiplicities sum to 2^e,
// the maximum exponent is at most d - e.
struct GenusPolynomial {
    std::map<int, std::uint64_t> coeff;

    friend bool operator==(const GenusPolynomial&, const GenusPolynomial&) = default;
};

// Subset-counter and coefficient width guard.
inline constexpr int kMaxPolyEdges = 62;

// Constructs every dual H^A and tallies its genus. The semantic reference
// engine.
GenusPolynomial poly_direct(const FlagStructure& fs);

// Same polynomial without building duals: per subset, the genus comes from
// the restriction formula eps(A) + eps(A^c) + 2(k - k(A) - k(A^c)) + 2v.
// Subsets are walked in Gray-code order. The default engine.
GenusPolynomial poly_subset_formula(const FlagStructure& fs);

long long poly_eval(const GenusPolynomial& p, long long x);

// Largest exponent; -1 for the (unreachable via the engines) zero polynomial.
int poly_degree(const GenusPolynomial& p);

std::uint64_t constant_term(const GenusPolynomial& p);

GenusPolynomial poly_mul(const GenusPolynomial& a, const GenusPolynomial& b);

// Sparse ascending text: "2 + 2*z^2"; a lone exponent-0 term prints bare.
std::string poly_text(const GenusPolynomial& p);

// {"0":2,"2":2}
std::string poly_json(const GenusPolynomial& p);

// Disjoint sum; hyperedge names of the right operand are suffixed on
// collision.
FlagStructure disjoint_union(const FlagStructure& a, const FlagStructure& b);

// A free arc between consecutive hyperedge ends: the gap before occurrence
// `position` of curve `curve` in the canonically ordered presentation. An
// isolated hypervertex has the single gap position 0.
struct JoinGap {
    int curve = 0;
    int position = 0;
};

// One-vertex-join: splice the right curve into the left one at the two gaps;
// `flip` reverses the right curve with all its signs flipped first.
ArrowPresentation one_vertex_join(const ArrowPresentation& a, JoinGap ga,
                                  const ArrowPresentation& b, JoinGap gb, bool flip);

// Flag-level convenience: gaps address the canonically ordered serialization
// of each operand.
FlagStructure one_vertex_join(const FlagStructure& a, JoinGap ga,
                              const FlagStructure& b, JoinGap gb, bool flip);

} // namespace hyperdual
