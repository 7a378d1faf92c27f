#pragma once

#include <set>
#include <string>

#include "hyperdual/hypermap.hpp"

namespace hyperdual {

// One subset's worth of evidence for the genus-change formulas. The two
// "actual" fields are recomputed from the constructed dual's orbits; the
// predictions come from the restriction formulas. A mismatch, or a false
// jump_bound_ok, is a theorem violation.
struct DualityReport {
    EdgeMask subset = 0;
    int chi_actual = 0;
    int chi_predicted = 0;
    int epsilon_actual = 0;
    int epsilon_predicted = 0;
    bool jump_bound_ok = true;
};

// Partial dual H^A on the flag model: alpha is untouched and the beta/gamma
// pairs of every flag of a dualized hyperedge trade places. Labels are
// rebuilt so that new arrow e_i runs from the old head of e_i to the old tail
// of e_{i+1}.
FlagStructure partial_dual(const FlagStructure& fs, EdgeMask subset);

// H^{E(H)}, the classical Euler-Poincare dual.
FlagStructure full_dual(const FlagStructure& fs);

// Literal re-implementation of partial duality at the curve level: replace
// the arrows of each dualized hyperedge per the defining rewiring, then trace
// the new closed curves. Differential oracle for partial_dual.
ArrowPresentation retrace_partial_dual(const ArrowPresentation& ap,
                                       const std::set<std::string>& subset);

// chi(H^A) = chi(A) + chi(A^c) - 2 v(H).
int predicted_chi(const FlagStructure& fs, EdgeMask subset);

// eps(H^A) = eps(A) + eps(A^c) + 2 (k(H) - k(A) - k(A^c)) + 2 v(H);
// collapses to eps(A) + eps(A^c) on hyper-bouquets.
int predicted_epsilon(const FlagStructure& fs, EdgeMask subset);

// |eps(H) - eps(H^e)| <= 2 (d(e) - 1). A report with jump_bound_ok == false
// signals a bug or a counterexample.
DualityReport genus_jump_check(const FlagStructure& fs, int edge_ordinal);

} // namespace hyperdual
