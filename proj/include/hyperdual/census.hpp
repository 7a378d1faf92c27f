#pragma once

#include <string>
#include <vector>

#include "hyperdual/hypermap.hpp"

namespace hyperdual {

struct CensusOptions {
    int max_flags = 8;
    bool connected_only = true;
    bool orientable_only = false;
    // Guard for the factorial blow-up past 12 flags.
    bool force = false;
    int jobs = 1;
    // Extra isolated hypervertices appended per class when not restricted to
    // connected hypermaps.
    int isolated_bonus = 2;
};

struct CensusRecord {
    std::string canonical;
    FlagStructure fs;
    CountSummary counts;
};

// Every isomorphism class with 2..max_flags flags: gamma is fixed to the
// standard matching, alpha and beta range over all perfect matchings, classes
// are deduplicated by canonical form. Arrow labels are derived by propagating
// tail/head around each hyperedge orbit. Records are ordered by flag count,
// then canonical form; the result is identical for any worker count.
std::vector<CensusRecord> enumerate_hypermaps(const CensusOptions& opt);

struct Failure {
    std::string instance;  // canonical hmap text of the offending hypermap
    std::string witness;   // subset or other locator
    std::string expected;
    std::string actual;
};

struct VerificationReport {
    std::string suite;
    long long instances = 0;
    std::vector<Failure> failures;

    bool passed() const { return failures.empty(); }
};

// Suite names accepted by verify_properties (plus "all").
const std::vector<std::string>& known_suites();

// Runs one named property suite (or all of them merged, for "all") over the
// census. Reports are deterministic for any job count.
VerificationReport verify_properties(const std::vector<CensusRecord>& census,
                                     const std::string& suite, int jobs = 1);

std::string report_json(const VerificationReport& report);

// Per-instance checker behind the duality-formulas suite, with the dual under
// test injected so that broken duals are detectable (and tests can prove the
// detection works).
std::vector<Failure> check_duality_formulas(const FlagStructure& fs, EdgeMask subset,
                                            const FlagStructure& dual);

} // namespace hyperdual
