// Command-line surface over the hypermap library: stats, partial duals,
// partial-dual polynomials, intersection graphs, per-file theorem checks,
// isomorphism tests, and the exhaustive census runner.
//
// Exit codes: 0 ok, 1 usage, 2 parse/validation, 3 theorem or oracle
// violation. `iso` is the documented exception: 0 isomorphic, 1 not.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hyperdual/census.hpp"
#include "hyperdual/duality.hpp"
#include "hyperdual/errors.hpp"
#include "hyperdual/genus_poly.hpp"
#include "hyperdual/hypermap.hpp"
#include "hyperdual/structure.hpp"

namespace {

using namespace hyperdual;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

FlagStructure load(const std::string& path) {
    return flags_from_arrows(parse_hmap(read_file(path)));
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int default_jobs() {
    if (const char* env = std::getenv("HYPERDUAL_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

int cmd_stats(const std::string& file, bool json) {
    FlagStructure fs = load(file);
    CountSummary cs = count_summary(fs);
    if (json) {
        nlohmann::json j{{"v", cs.v},     {"e", cs.e},       {"f", cs.f},
                         {"d", cs.d},     {"k", cs.k},       {"chi", cs.chi},
                         {"epsilon", cs.epsilon}, {"orientable", cs.orientable}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "v=" << cs.v << " e=" << cs.e << " f=" << cs.f << " d=" << cs.d
                  << " k=" << cs.k << " chi=" << cs.chi << " epsilon=" << cs.epsilon
                  << " orientable=" << (cs.orientable ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int cmd_dual(const std::string& file, const std::string& edges_csv, bool oracle) {
    ArrowPresentation ap = parse_hmap(read_file(file));
    FlagStructure fs = flags_from_arrows(ap);
    std::vector<std::string> names = split_names(edges_csv);
    EdgeMask mask = mask_of(fs, names);

    FlagStructure dual = partial_dual(fs, mask);
    if (oracle) {
        std::set<std::string> name_set(names.begin(), names.end());
        FlagStructure retraced = flags_from_arrows(retrace_partial_dual(ap, name_set));
        if (!isomorphic(dual, retraced)) {
            std::cerr << "oracle mismatch: retraced dual differs from flag-level dual\n";
            return kExitViolation;
        }
    }
    std::cout << to_hmap_text(arrows_from_flags(dual));
    return kExitOk;
}

int cmd_poly(const std::string& file, const std::string& method, bool json) {
    FlagStructure fs = load(file);
    GenusPolynomial p;
    if (method == "direct") {
        p = poly_direct(fs);
    } else if (method == "formula") {
        p = poly_subset_formula(fs);
    } else if (method == "both") {
        GenusPolynomial direct = poly_direct(fs);
        p = poly_subset_formula(fs);
        if (!(direct == p)) {
            std::cerr << "engine mismatch: direct " << poly_text(direct) << " vs formula "
                      << poly_text(p) << "\n";
            return kExitViolation;
        }
    } else {
        std::cerr << "unknown method: " << method << "\n";
        return kExitUsage;
    }
    std::cout << (json ? poly_json(p) : poly_text(p)) << "\n";
    return kExitOk;
}

int cmd_igraph(const std::string& file, bool dot) {
    FlagStructure fs = load(file);
    IntersectionGraph g = intersection_graph(fs);
    if (dot) {
        std::cout << intersection_graph_dot(g);
    } else {
        for (const auto& [a, b] : g.edges)
            std::cout << g.vertices[a] << " " << g.vertices[b] << "\n";
    }
    return kExitOk;
}

int cmd_iso(const std::string& file1, const std::string& file2) {
    FlagStructure a = load(file1);
    FlagStructure b = load(file2);
    if (isomorphic(a, b)) {
        std::cout << "isomorphic\n";
        return 0;
    }
    std::cout << "not isomorphic\n";
    return 1;
}

struct CheckTable {
    bool all_ok = true;

    void row(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        all_ok = all_ok && ok;
    }
};

int cmd_check(const std::string& file) {
    ArrowPresentation ap = parse_hmap(read_file(file));
    FlagStructure fs = flags_from_arrows(ap);
    CountSummary cs = count_summary(fs);
    CheckTable table;

    table.row("count-identities",
              cs.chi == cs.v + cs.e + cs.f - cs.d && cs.epsilon >= 0 &&
                  (!cs.orientable || cs.epsilon % 2 == 0),
              "chi=" + std::to_string(cs.chi) + " eps=" + std::to_string(cs.epsilon));

    table.row("roundtrip", isomorphic(flags_from_arrows(arrows_from_flags(fs)), fs));

    {
        RibbonExpansion re = ribbon_expansion(fs);
        CountSummary rc = count_summary(expansion_hypermap(fs));
        bool ok = re.node_count() + re.isolated - re.central_nodes == cs.v &&
                  re.central_nodes == cs.e &&
                  static_cast<int>(re.edges.size()) == cs.d && rc.k == cs.k &&
                  rc.epsilon == cs.epsilon;
        table.row("ribbon-expansion", ok,
                  "nodes=" + std::to_string(re.node_count() + re.isolated) +
                      " edges=" + std::to_string(re.edges.size()) +
                      " eps=" + std::to_string(rc.epsilon));
    }

    bool exhaustive = cs.e <= 12;
    std::vector<EdgeMask> subsets;
    if (exhaustive) {
        EdgeMask full = full_mask(fs);
        for (EdgeMask a = 0;; ++a) {
            subsets.push_back(a);
            if (a == full) break;
        }
    } else {
        subsets.push_back(0);
        for (int e = 0; e < cs.e; ++e) subsets.push_back(EdgeMask{1} << e);
        subsets.push_back(full_mask(fs));
    }

    {
        bool ok = true;
        for (EdgeMask a : subsets)
            ok = ok && check_duality_formulas(fs, a, partial_dual(fs, a)).empty();
        table.row("duality-formulas", ok,
                  std::to_string(subsets.size()) + (exhaustive ? " subsets" : " subsets, sampled"));
    }

    {
        bool ok = true;
        for (EdgeMask a : subsets) {
            std::set<std::string> names;
            for (const auto& n : names_of(fs, a)) names.insert(n);
            ok = ok && isomorphic(partial_dual(fs, a),
                                  flags_from_arrows(retrace_partial_dual(ap, names)));
        }
        table.row("retrace-oracle", ok);
    }

    {
        bool ok = true;
        for (int e = 0; e < cs.e; ++e) ok = ok && genus_jump_check(fs, e).jump_bound_ok;
        table.row("genus-jump", ok, std::to_string(cs.e) + " hyperedges");
    }

    if (cs.e <= 16) {
        GenusPolynomial direct = poly_direct(fs);
        GenusPolynomial formula = poly_subset_formula(fs);
        bool ok = direct == formula && poly_eval(formula, 1) == (1LL << cs.e) &&
                  poly_degree(formula) <= cs.d - cs.e;
        if (exhaustive)
            for (EdgeMask a : subsets)
                ok = ok && poly_subset_formula(partial_dual(fs, a)) == formula;
        table.row("polynomial", ok, poly_text(formula));
    }

    table.row("alternation", !has_alternating_quadruple(fs) || cs.epsilon > 0);

    if (cs.v == 1) {
        bool criterion = constant_term_criterion(fs);
        bool nonzero = constant_term(poly_subset_formula(fs)) != 0;
        table.row("bouquet-constant-term", criterion == nonzero,
                  criterion ? "constant term expected" : "no constant term expected");
    }

    if (cs.k == 1) {
        if (!split_once(fs)) {
            GenusPolynomial p = poly_subset_formula(fs);
            bool constant = poly_degree(p) == 0;
            bool ok = constant == constant_poly_criterion(fs) &&
                      (!constant || constant_term(p) == 2);
            table.row("prime-constant", ok, "prime");
        } else {
            std::vector<FlagStructure> factors = join_decompose(fs);
            GenusPolynomial product;
            product.coeff[0] = 1;
            for (const auto& factor : factors)
                product = poly_mul(product, poly_subset_formula(factor));
            table.row("join-factorization", product == poly_subset_formula(fs),
                      std::to_string(factors.size()) + " prime factors");
        }
        auto [lhs, rhs] = hypertree_duality_check(fs);
        table.row("hypertree-duality", lhs == rhs);
    }

    return table.all_ok ? kExitOk : kExitViolation;
}

int cmd_census(int max_flags, bool orientable, const std::string& suite, int jobs,
               const std::string& out_path, bool force) {
    CensusOptions opt;
    opt.max_flags = max_flags;
    opt.orientable_only = orientable;
    opt.force = force;
    opt.jobs = jobs;
    std::vector<CensusRecord> census = enumerate_hypermaps(opt);

    std::map<int, int> by_flags;
    for (const auto& rec : census) ++by_flags[rec.fs.nflags];
    std::cout << "census: " << census.size() << " classes";
    for (const auto& [n, count] : by_flags) std::cout << "  " << n << "f:" << count;
    std::cout << "\n";

    std::vector<std::string> suites;
    if (suite == "all")
        suites = known_suites();
    else
        suites.push_back(suite);

    bool ok = true;
    nlohmann::json json_reports = nlohmann::json::array();
    for (const auto& name : suites) {
        VerificationReport report = verify_properties(census, name, jobs);
        std::cout << "suite " << name << ": " << report.instances << " instances, "
                  << report.failures.size() << " failures "
                  << (report.passed() ? "[PASS]" : "[FAIL]") << "\n";
        for (std::size_t i = 0; i < report.failures.size() && i < 5; ++i) {
            const Failure& f = report.failures[i];
            std::cout << "  witness " << f.witness << ": expected " << f.expected
                      << ", got " << f.actual << "\n";
        }
        ok = ok && report.passed();
        json_reports.push_back(nlohmann::json::parse(report_json(report)));
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw ValidationError("cannot write report: " + out_path);
        if (suite == "all")
            out << json_reports.dump(2) << "\n";
        else
            out << json_reports.at(0).dump(2) << "\n";
    }
    return ok ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ribbon hypermaps, partial duality, and the partial-dual polynomial"};
    app.require_subcommand(1);

    std::string file, file2, edges, method = "formula", suite = "all", out_path;
    bool json = false, oracle = false, dot = false, orientable = false, force = false;
    int max_flags = 8, jobs = default_jobs();

    auto* stats = app.add_subcommand("stats", "print v,e,f,d,k,chi,epsilon,orientability");
    stats->add_option("file", file)->required();
    stats->add_flag("--json", json);

    auto* dual = app.add_subcommand("dual", "write the partial dual to stdout");
    dual->add_option("file", file)->required();
    dual->add_option("--edges", edges, "comma-separated hyperedge ids (default: none)");
    dual->add_flag("--oracle", oracle, "cross-check against the retrace oracle");

    auto* poly = app.add_subcommand("poly", "partial-dual polynomial");
    poly->add_option("file", file)->required();
    poly->add_option("--method", method)->check(CLI::IsMember({"direct", "formula", "both"}));
    poly->add_flag("--json", json);

    auto* igraph = app.add_subcommand("igraph", "intersection graph of a hyper-bouquet");
    igraph->add_option("file", file)->required();
    igraph->add_flag("--dot", dot);

    auto* check = app.add_subcommand("check", "run every applicable theorem check");
    check->add_option("file", file)->required();

    auto* iso = app.add_subcommand("iso", "decide hypermap isomorphism");
    iso->add_option("file1", file)->required();
    iso->add_option("file2", file2)->required();

    auto* census = app.add_subcommand("census", "enumerate classes and verify theorem suites");
    census->add_option("--max-flags", max_flags);
    census->add_flag("--orientable", orientable);
    {
        std::vector<std::string> choices = known_suites();
        choices.push_back("all");
        census->add_option("--suite", suite)->check(CLI::IsMember(choices));
    }
    census->add_option("--jobs", jobs);
    census->add_option("--out", out_path);
    census->add_flag("--force", force, "allow flag bounds above 12");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (stats->parsed()) return cmd_stats(file, json);
        if (dual->parsed()) return cmd_dual(file, edges, oracle);
        if (poly->parsed()) return cmd_poly(file, method, json);
        if (igraph->parsed()) return cmd_igraph(file, dot);
        if (check->parsed()) return cmd_check(file);
        if (iso->parsed()) return cmd_iso(file, file2);
        if (census->parsed())
            return cmd_census(max_flags, orientable, suite, jobs, out_path, force);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const UnknownEdgeError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
