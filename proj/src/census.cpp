#include "hyperdual/census.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "hyperdual/duality.hpp"
#include "hyperdual/errors.hpp"
#include "hyperdual/genus_poly.hpp"
#include "hyperdual/structure.hpp"

#include <nlohmann/json.hpp>

namespace hyperdual {

namespace {

// All perfect matchings on {0..n-1} in involution form.
std::vector<std::vector<int>> perfect_matchings(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> perm(n, -1);
    auto rec = [&](auto&& self, int depth) -> void {
        int x = 0;
        while (x < n && perm[x] >= 0) ++x;
        if (x == n) {
            out.push_back(perm);
            return;
        }
        for (int y = x + 1; y < n; ++y) {
            if (perm[y] >= 0) continue;
            perm[x] = y;
            perm[y] = x;
            self(self, depth + 1);
            perm[x] = perm[y] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

bool connected_flags(const FlagStructure& fs) {
    if (fs.nflags == 0) return fs.isolated == 1;
    if (fs.isolated > 0) return false;
    std::vector<char> visited(fs.nflags, 0);
    std::vector<int> stack{0};
    visited[0] = 1;
    int seen = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto* g : {&fs.alpha, &fs.beta, &fs.gamma}) {
            int y = (*g)[x];
            if (!visited[y]) {
                visited[y] = 1;
                ++seen;
                stack.push_back(y);
            }
        }
    }
    return seen == fs.nflags;
}

std::string ordinal_name(int e) {
    if (e < 26) return std::string(1, static_cast<char>('a' + e));
    return "e" + std::to_string(e + 1);
}

// Labels derived by walking each <beta,gamma> orbit from its least flag.
void derive_labels(FlagStructure& fs) {
    fs.labels.assign(fs.nflags, FlagLabel{});
    fs.edge_names.clear();
    std::vector<char> done(fs.nflags, 0);
    for (int s = 0; s < fs.nflags; ++s) {
        if (done[s]) continue;
        int e = static_cast<int>(fs.edge_names.size());
        fs.edge_names.push_back(ordinal_name(e));
        int cur = s, index = 1;
        do {
            int head = fs.gamma[cur];
            fs.labels[cur] = FlagLabel{e, index, End::Tail};
            fs.labels[head] = FlagLabel{e, index, End::Head};
            done[cur] = done[head] = 1;
            cur = fs.beta[head];
            ++index;
        } while (cur != s);
    }
}

void run_parallel(int jobs, long long count,
                  const std::function<void(int, long long, long long)>& chunk) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count < 2 * jobs) {
        chunk(0, 0, count);
        return;
    }
    std::vector<std::thread> workers;
    long long per = (count + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        long long lo = w * per, hi = std::min(count, lo + per);
        if (lo >= hi) break;
        workers.emplace_back(chunk, w, lo, hi);
    }
    for (auto& t : workers) t.join();
}

} // namespace

std::vector<CensusRecord> enumerate_hypermaps(const CensusOptions& opt) {
    if (opt.max_flags % 2 != 0)
        throw ValidationError("flag bound must be even");
    if (opt.max_flags > 12 && !opt.force)
        throw ValidationError("flag bound above 12 requires force");

    std::vector<CensusRecord> records;
    for (int n = 2; n <= opt.max_flags; n += 2) {
        std::vector<int> gamma(n);
        for (int x = 0; x < n; x += 2) {
            gamma[x] = x + 1;
            gamma[x + 1] = x;
        }
        std::vector<std::vector<int>> matchings = perfect_matchings(n);
        long long total = static_cast<long long>(matchings.size());

        int jobs = std::max(1, opt.jobs);
        std::vector<std::map<std::string, FlagStructure>> found(jobs);
        auto chunk = [&](int worker, long long lo, long long hi) {
            auto& mine = found[worker];
            FlagStructure fs;
            fs.nflags = n;
            fs.gamma = gamma;
            for (long long ai = lo; ai < hi; ++ai) {
                fs.alpha = matchings[ai];
                for (const auto& beta : matchings) {
                    fs.beta = beta;
                    if (opt.connected_only && !connected_flags(fs)) continue;
                    if (opt.orientable_only && !count_summary(fs).orientable) continue;
                    std::string canon = canonical_form(fs);
                    if (mine.count(canon)) continue;
                    FlagStructure labeled = fs;
                    derive_labels(labeled);
                    mine.emplace(std::move(canon), std::move(labeled));
                }
            }
        };
        run_parallel(jobs, total, chunk);

        std::map<std::string, FlagStructure> merged;
        for (auto& part : found)
            for (auto& [canon, fs] : part) merged.emplace(canon, std::move(fs));

        for (auto& [canon, fs] : merged) {
            if (!opt.connected_only) {
                for (int extra = 1; extra <= opt.isolated_bonus; ++extra) {
                    FlagStructure aug = fs;
                    aug.isolated += extra;
                    records.push_back(
                        CensusRecord{canonical_form(aug), aug, count_summary(aug)});
                }
            }
            CensusRecord rec{canon, std::move(fs), {}};
            rec.counts = count_summary(rec.fs);
            records.push_back(std::move(rec));
        }
    }

    if (!opt.connected_only) {
        // Edgeless hypermaps: bare isolated vertices.
        for (int extra = 1; extra <= std::max(1, opt.isolated_bonus); ++extra) {
            FlagStructure bare;
            bare.isolated = extra;
            records.push_back(CensusRecord{canonical_form(bare), bare, count_summary(bare)});
        }
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const CensusRecord& a, const CensusRecord& b) {
                         if (a.fs.nflags != b.fs.nflags) return a.fs.nflags < b.fs.nflags;
                         return a.canonical < b.canonical;
                     });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const CensusRecord& a, const CensusRecord& b) {
                                  return a.canonical == b.canonical;
                              }),
                  records.end());
    return records;
}

namespace {

std::string mask_text(const FlagStructure& fs, EdgeMask mask) {
    if (mask == 0) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& name : names_of(fs, mask)) {
        if (!first) out += ",";
        first = false;
        out += name;
    }
    return out + "}";
}

std::string instance_text(const FlagStructure& fs) {
    return to_hmap_text(arrows_from_flags(fs));
}

void expect(std::vector<Failure>& out, const FlagStructure& fs, const std::string& witness,
            bool ok, const std::string& expected, const std::string& actual) {
    if (ok) return;
    out.push_back(Failure{instance_text(fs), witness, expected, actual});
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

std::vector<Failure> check_duality_formulas(const FlagStructure& fs, EdgeMask subset,
                                            const FlagStructure& dual) {
    std::vector<Failure> out;
    std::string witness = "A=" + mask_text(fs, subset);
    CountSummary h = count_summary(fs);
    CountSummary hd = count_summary(dual);
    EdgeMask full = full_mask(fs);

    expect(out, fs, witness, hd.chi == predicted_chi(fs, subset),
           "chi(H^A) = chi(A)+chi(A^c)-2v = " + str(predicted_chi(fs, subset)),
           str(hd.chi));
    expect(out, fs, witness, hd.epsilon == predicted_epsilon(fs, subset),
           "eps(H^A) per restriction formula = " + str(predicted_epsilon(fs, subset)),
           str(hd.epsilon));
    expect(out, fs, witness, hd.e == h.e, "e preserved = " + str(h.e), str(hd.e));
    expect(out, fs, witness, hd.d == h.d, "d preserved = " + str(h.d), str(hd.d));
    expect(out, fs, witness, hd.k == h.k, "k preserved = " + str(h.k), str(hd.k));

    CountSummary ra = count_summary(restrict_edges(fs, subset));
    CountSummary rc = count_summary(restrict_edges(fs, full & ~subset));
    expect(out, fs, witness, hd.v == ra.f, "v(H^A) = f(A) = " + str(ra.f), str(hd.v));
    expect(out, fs, witness, hd.f == rc.f, "f(H^A) = f(A^c) = " + str(rc.f), str(hd.f));
    expect(out, fs, witness, hd.orientable == h.orientable,
           std::string("orientability preserved = ") + (h.orientable ? "yes" : "no"),
           hd.orientable ? "yes" : "no");

    FlagStructure twice = partial_dual(dual, subset);
    expect(out, fs, witness, isomorphic(twice, fs), "(H^A)^A isomorphic to H",
           "different canonical form");
    return out;
}

namespace {

std::vector<Failure> check_oracle_agreement(const FlagStructure& fs) {
    std::vector<Failure> out;
    EdgeMask full = full_mask(fs);
    ArrowPresentation ap = arrows_from_flags(fs);
    for (EdgeMask a = 0;; ++a) {
        std::set<std::string> names;
        for (const auto& n : names_of(fs, a)) names.insert(n);
        FlagStructure via_swap = partial_dual(fs, a);
        FlagStructure via_retrace = flags_from_arrows(retrace_partial_dual(ap, names));
        expect(out, fs, "A=" + mask_text(fs, a), isomorphic(via_swap, via_retrace),
               "retrace oracle agrees with the flag-level dual",
               "canonical forms differ");
        if (a == full) break;
    }
    GenusPolynomial direct = poly_direct(fs);
    GenusPolynomial formula = poly_subset_formula(fs);
    expect(out, fs, "polynomial engines", direct == formula, poly_text(direct),
           poly_text(formula));
    return out;
}

std::vector<Failure> check_polynomial_laws(const FlagStructure& fs) {
    std::vector<Failure> out;
    CountSummary h = count_summary(fs);
    GenusPolynomial p = poly_subset_formula(fs);

    long long total = poly_eval(p, 1);
    expect(out, fs, "evaluation at 1", total == (1LL << h.e), str(1LL << h.e), str(total));
    expect(out, fs, "degree bound", poly_degree(p) <= h.d - h.e,
           "degree <= d-e = " + str(h.d - h.e), str(poly_degree(p)));

    EdgeMask full = full_mask(fs);
    for (EdgeMask a = 0;; ++a) {
        GenusPolynomial pd = poly_subset_formula(partial_dual(fs, a));
        expect(out, fs, "A=" + mask_text(fs, a), pd == p,
               "poly(H^A) = poly(H) = " + poly_text(p), poly_text(pd));
        if (a == full) break;
    }

    if (classify(fs).is_hypertree) {
        GenusPolynomial expected;
        expected.coeff[0] = 1ULL << h.e;
        expect(out, fs, "hypertree law", p == expected, poly_text(expected), poly_text(p));
    }
    return out;
}

std::vector<Failure> check_bouquet_constant_term(const FlagStructure& fs) {
    std::vector<Failure> out;
    bool criterion = constant_term_criterion(fs);
    bool nonzero = constant_term(poly_subset_formula(fs)) != 0;
    expect(out, fs, "constant term", criterion == nonzero,
           std::string("criterion ") + (criterion ? "true" : "false") +
               " matches nonzero constant term",
           nonzero ? "constant term present" : "no constant term");
    return out;
}

std::vector<Failure> check_prime_constant(const FlagStructure& fs) {
    std::vector<Failure> out;
    if (split_once(fs)) return out;  // composite: theorem does not apply
    GenusPolynomial p = poly_subset_formula(fs);
    bool constant = poly_degree(p) == 0;
    bool criterion = constant_poly_criterion(fs);
    expect(out, fs, "prime constant", constant == criterion,
           std::string("plane-with-one-edge ") + (criterion ? "true" : "false"),
           std::string("constant polynomial ") + (constant ? "true" : "false"));
    if (constant)
        expect(out, fs, "prime constant value", constant_term(p) == 2, "2",
               str(constant_term(p)));
    return out;
}

std::vector<Failure> check_hypertree_duality(const FlagStructure& fs) {
    std::vector<Failure> out;
    auto [lhs, rhs] = hypertree_duality_check(fs);
    expect(out, fs, "plane bouquet vs dual hypertree", lhs == rhs,
           std::string("both sides equal, lhs=") + (lhs ? "true" : "false"),
           std::string("rhs=") + (rhs ? "true" : "false"));
    CountSummary h = count_summary(fs);
    GenusPolynomial expected;
    expected.coeff[0] = 1ULL << h.e;
    if (lhs) {
        GenusPolynomial p = poly_subset_formula(fs);
        expect(out, fs, "plane bouquet polynomial", p == expected, poly_text(expected),
               poly_text(p));
    }
    if (classify(fs).is_hypertree) {
        GenusPolynomial p = poly_subset_formula(fs);
        expect(out, fs, "hypertree polynomial", p == expected, poly_text(expected),
               poly_text(p));
    }
    return out;
}

std::vector<Failure> check_alternation(const FlagStructure& fs) {
    std::vector<Failure> out;
    if (has_alternating_quadruple(fs)) {
        int eps = count_summary(fs).epsilon;
        expect(out, fs, "alternating quadruple", eps > 0, "eps > 0", "eps = " + str(eps));
    }
    return out;
}

struct SuiteSpec {
    std::string name;
    // Returns true if the suite applies to the instance at all.
    bool (*applies)(const CensusRecord&);
    std::vector<Failure> (*run)(const FlagStructure&);
};

std::vector<Failure> run_duality_suite(const FlagStructure& fs) {
    std::vector<Failure> out;
    EdgeMask full = full_mask(fs);
    for (EdgeMask a = 0;; ++a) {
        auto failures = check_duality_formulas(fs, a, partial_dual(fs, a));
        out.insert(out.end(), failures.begin(), failures.end());
        if (a == full) break;
    }
    return out;
}

bool always(const CensusRecord&) { return true; }
bool bouquets_only(const CensusRecord& rec) { return rec.counts.v == 1; }
bool connected_only_pred(const CensusRecord& rec) { return rec.counts.k == 1; }

const std::vector<SuiteSpec>& suite_table() {
    static const std::vector<SuiteSpec> table = {
        {"duality-formulas", always, run_duality_suite},
        {"oracle-agreement", always, check_oracle_agreement},
        {"polynomial-laws", always, check_polynomial_laws},
        {"bouquet-constant-term", bouquets_only, check_bouquet_constant_term},
        {"prime-constant", connected_only_pred, check_prime_constant},
        {"hypertree-duality", connected_only_pred, check_hypertree_duality},
        {"alternation", always, check_alternation},
    };
    return table;
}

} // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& spec : suite_table()) out.push_back(spec.name);
        return out;
    }();
    return names;
}

VerificationReport verify_properties(const std::vector<CensusRecord>& census,
                                     const std::string& suite, int jobs) {
    std::vector<const SuiteSpec*> selected;
    for (const auto& spec : suite_table())
        if (suite == "all" || suite == spec.name) selected.push_back(&spec);
    if (selected.empty()) throw ValidationError("unknown suite: " + suite);

    VerificationReport report;
    report.suite = suite;

    std::vector<std::vector<Failure>> failures(census.size());
    std::vector<char> counted(census.size(), 0);
    auto chunk = [&](int, long long lo, long long hi) {
        for (long long i = lo; i < hi; ++i) {
            const CensusRecord& rec = census[i];
            for (const SuiteSpec* spec : selected) {
                if (!spec->applies(rec)) continue;
                counted[i] = 1;
                auto found = spec->run(rec.fs);
                failures[i].insert(failures[i].end(), found.begin(), found.end());
            }
        }
    };
    run_parallel(jobs, static_cast<long long>(census.size()), chunk);

    for (std::size_t i = 0; i < census.size(); ++i) {
        if (counted[i]) ++report.instances;
        report.failures.insert(report.failures.end(), failures[i].begin(),
                               failures[i].end());
    }
    return report;
}

std::string report_json(const VerificationReport& report) {
    nlohmann::json j;
    j["suite"] = report.suite;
    j["instances"] = report.instances;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : report.failures) {
        arr.push_back({{"instance", f.instance},
                       {"witness", f.witness},
                       {"expected", f.expected},
                       {"actual", f.actual}});
    }
    j["failures"] = arr;
    return j.dump(2);
}

} // namespace hyperdual
