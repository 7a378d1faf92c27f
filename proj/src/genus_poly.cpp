#include "hyperdual/genus_poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "hyperdual/duality.hpp"
#include "hyperdual/errors.hpp"

#include <nlohmann/json.hpp>

namespace hyperdual {

namespace {

int checked_edge_count(const FlagStructure& fs) {
    int e = edge_count(fs);
    if (e > kMaxPolyEdges)
        throw ValidationError("partial-dual polynomial limited to 62 hyperedges");
    return e;
}

} // namespace

GenusPolynomial poly_direct(const FlagStructure& fs) {
    int e = checked_edge_count(fs);
    GenusPolynomial p;
    EdgeMask full = e == 0 ? 0 : (EdgeMask{1} << e) - 1;
    for (EdgeMask a = 0;; ++a) {
        ++p.coeff[count_summary(partial_dual(fs, a)).epsilon];
        if (a == full) break;
    }
    return p;
}

GenusPolynomial poly_subset_formula(const FlagStructure& fs) {
    int e = checked_edge_count(fs);
    GenusPolynomial p;
    EdgeMask full = e == 0 ? 0 : (EdgeMask{1} << e) - 1;
    for (EdgeMask g = 0;; ++g) {
        EdgeMask a = g ^ (g >> 1);  // Gray code
        ++p.coeff[predicted_epsilon(fs, a)];
        if (g == full) break;
    }
    return p;
}

long long poly_eval(const GenusPolynomial& p, long long x) {
    long long total = 0;
    for (const auto& [exp, mult] : p.coeff) {
        long long power = 1;
        for (int i = 0; i < exp; ++i) power *= x;
        total += static_cast<long long>(mult) * power;
    }
    return total;
}

int poly_degree(const GenusPolynomial& p) {
    return p.coeff.empty() ? -1 : p.coeff.rbegin()->first;
}

std::uint64_t constant_term(const GenusPolynomial& p) {
    auto it = p.coeff.find(0);
    return it == p.coeff.end() ? 0 : it->second;
}

GenusPolynomial poly_mul(const GenusPolynomial& a, const GenusPolynomial& b) {
    GenusPolynomial out;
    for (const auto& [ea, ma] : a.coeff)
        for (const auto& [eb, mb] : b.coeff) out.coeff[ea + eb] += ma * mb;
    return out;
}

std::string poly_text(const GenusPolynomial& p) {
    if (p.coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, mult] : p.coeff) {
        if (!first) os << " + ";
        first = false;
        if (exp == 0)
            os << mult;
        else
            os << mult << "*z^" << exp;
    }
    return os.str();
}

std::string poly_json(const GenusPolynomial& p) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [exp, mult] : p.coeff) j[std::to_string(exp)] = mult;
    return j.dump();
}

namespace {

// Renames the right operand's edges away from the left's namespace.
void rename_collisions(const std::vector<std::string>& taken,
                       std::vector<std::string>& names) {
    std::set<std::string> used(taken.begin(), taken.end());
    for (auto& name : names) {
        if (!used.count(name)) {
            used.insert(name);
            continue;
        }
        for (int suffix = 2;; ++suffix) {
            std::string candidate = name + "_" + std::to_string(suffix);
            if (!used.count(candidate)) {
                name = candidate;
                used.insert(candidate);
                break;
            }
        }
    }
}

} // namespace

FlagStructure disjoint_union(const FlagStructure& a, const FlagStructure& b) {
    FlagStructure out;
    out.nflags = a.nflags + b.nflags;
    out.isolated = a.isolated + b.isolated;
    out.alpha = a.alpha;
    out.beta = a.beta;
    out.gamma = a.gamma;
    for (int x : b.alpha) out.alpha.push_back(x + a.nflags);
    for (int x : b.beta) out.beta.push_back(x + a.nflags);
    for (int x : b.gamma) out.gamma.push_back(x + a.nflags);

    if (a.has_labels() && b.has_labels()) {
        int ea = static_cast<int>(a.edge_names.size());
        out.labels = a.labels;
        for (FlagLabel lab : b.labels) {
            lab.edge += ea;
            out.labels.push_back(lab);
        }
        std::vector<std::string> right = b.edge_names;
        rename_collisions(a.edge_names, right);
        out.edge_names = a.edge_names;
        out.edge_names.insert(out.edge_names.end(), right.begin(), right.end());
    }
    return out;
}

namespace {

std::vector<Occurrence> rotated_curve(const std::vector<Occurrence>& curve, int position,
                                      bool flip) {
    std::vector<Occurrence> out(curve.begin() + position, curve.end());
    out.insert(out.end(), curve.begin(), curve.begin() + position);
    if (flip) {
        std::reverse(out.begin(), out.end());
        for (auto& occ : out) occ.reversed = !occ.reversed;
    }
    return out;
}

void check_gap(const ArrowPresentation& ap, JoinGap g, const char* side) {
    if (g.curve < 0 || g.curve >= static_cast<int>(ap.curves.size()))
        throw ValidationError(std::string("join gap curve out of range on ") + side);
    int m = static_cast<int>(ap.curves[g.curve].size());
    if (g.position < 0 || g.position >= std::max(m, 1))
        throw ValidationError(std::string("join gap position out of range on ") + side);
}

} // namespace

ArrowPresentation one_vertex_join(const ArrowPresentation& a, JoinGap ga,
                                  const ArrowPresentation& b, JoinGap gb, bool flip) {
    if (a.curves.empty() && b.curves.empty())
        throw ValidationError("one-vertex-join of two empty hypermaps");
    if (a.curves.empty() || b.curves.empty())
        throw ValidationError("one-vertex-join operand has no hypervertex");
    check_gap(a, ga, "left");
    check_gap(b, gb, "right");

    // Disjoint edge namespaces, keeping the left operand's names.
    std::vector<std::string> taken;
    for (const auto& curve : a.curves)
        for (const auto& occ : curve) taken.push_back(occ.edge);
    std::vector<std::string> right_names;
    std::set<std::string> right_seen;
    for (const auto& curve : b.curves)
        for (const auto& occ : curve)
            if (right_seen.insert(occ.edge).second) right_names.push_back(occ.edge);
    std::vector<std::string> renamed = right_names;
    rename_collisions(taken, renamed);

    ArrowPresentation bb = b;
    for (auto& curve : bb.curves)
        for (auto& occ : curve)
            for (std::size_t i = 0; i < right_names.size(); ++i)
                if (occ.edge == right_names[i]) {
                    occ.edge = renamed[i];
                    break;
                }

    // Cut both gaps and concatenate the boundary walks.
    std::vector<Occurrence> joined = rotated_curve(a.curves[ga.curve], ga.position, false);
    std::vector<Occurrence> tail = rotated_curve(bb.curves[gb.curve], gb.position, flip);
    joined.insert(joined.end(), tail.begin(), tail.end());

    ArrowPresentation out;
    out.curves.push_back(std::move(joined));
    for (int c = 0; c < static_cast<int>(a.curves.size()); ++c)
        if (c != ga.curve) out.curves.push_back(a.curves[c]);
    for (int c = 0; c < static_cast<int>(bb.curves.size()); ++c)
        if (c != gb.curve) out.curves.push_back(bb.curves[c]);
    validate(out);
    return out;
}

FlagStructure one_vertex_join(const FlagStructure& a, JoinGap ga, const FlagStructure& b,
                              JoinGap gb, bool flip) {
    ArrowPresentation pa = canonical_order(arrows_from_flags(a));
    ArrowPresentation pb = canonical_order(arrows_from_flags(b));
    return flags_from_arrows(one_vertex_join(pa, ga, pb, gb, flip));
}

} // namespace hyperdual
