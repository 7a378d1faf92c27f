#include "hyperdual/duality.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "hyperdual/errors.hpp"

namespace hyperdual {

FlagStructure partial_dual(const FlagStructure& fs, EdgeMask subset) {
    EdgeMask full = full_mask(fs);
    if ((subset & ~full) != 0)
        throw ValidationError("dual subset names a nonexistent hyperedge");

    std::vector<int> edge = flag_edges(fs);
    FlagStructure out = fs;
    for (int x = 0; x < fs.nflags; ++x) {
        if (subset >> edge[x] & 1) {
            out.beta[x] = fs.gamma[x];
            out.gamma[x] = fs.beta[x];
        }
    }

    if (fs.has_labels() && fs.nflags > 0) {
        // New arrow e_i: tail at the old head of e_i, head at the old tail of
        // e_{i+1 mod d(e)}.
        std::vector<int> deg = edge_degrees(fs);
        for (int x = 0; x < fs.nflags; ++x) {
            const FlagLabel& lab = fs.labels[x];
            if (!(subset >> lab.edge & 1)) continue;
            if (lab.end == End::Head) {
                out.labels[x] = FlagLabel{lab.edge, lab.index, End::Tail};
            } else {
                int prev = (lab.index + deg[lab.edge] - 2) % deg[lab.edge] + 1;
                out.labels[x] = FlagLabel{lab.edge, prev, End::Head};
            }
        }
    }
    return out;
}

FlagStructure full_dual(const FlagStructure& fs) {
    return partial_dual(fs, full_mask(fs));
}

namespace {

// Endpoint points of the original arrows; the unit the retrace walks on.
// Point id = 2*occ + (head ? 1 : 0), occurrence ids global in curve order.
struct Segment {
    int from = -1;           // traversing from -> to passes the arrow tail->head
    int to = -1;
    std::string edge;
    int index = 1;
};

} // namespace

ArrowPresentation retrace_partial_dual(const ArrowPresentation& ap,
                                       const std::set<std::string>& subset) {
    validate(ap);

    std::map<std::string, std::vector<int>> arrows_by_edge;  // index -> occ id
    int nocc = 0;
    for (const auto& curve : ap.curves) {
        for (const auto& occ : curve) {
            auto& slots = arrows_by_edge[occ.edge];
            if (static_cast<int>(slots.size()) < occ.index) slots.resize(occ.index, -1);
            slots[occ.index - 1] = nocc;
            ++nocc;
        }
    }
    for (const auto& name : subset)
        if (!arrows_by_edge.count(name)) throw UnknownEdgeError(name);

    auto tail_pt = [](int occ) { return 2 * occ; };
    auto head_pt = [](int occ) { return 2 * occ + 1; };

    // Free boundary arcs survive untouched: second endpoint of an occurrence
    // to the first endpoint of the next one along its curve.
    std::vector<int> arc(2 * nocc, -1);
    {
        int base = 0;
        for (const auto& curve : ap.curves) {
            int m = static_cast<int>(curve.size());
            for (int j = 0; j < m; ++j) {
                int cur = base + j, nxt = base + (j + 1) % m;
                int a = curve[j].reversed ? tail_pt(cur) : head_pt(cur);
                int b = curve[(j + 1) % m].reversed ? head_pt(nxt) : tail_pt(nxt);
                arc[a] = b;
                arc[b] = a;
            }
            base += m;
        }
    }

    // Segments: original arrows outside the subset, rewired arrows inside it.
    std::vector<int> seg_partner(2 * nocc, -1);
    std::vector<const Segment*> seg_at(2 * nocc, nullptr);
    std::vector<Segment> segments;
    segments.reserve(nocc);
    for (const auto& [name, slots] : arrows_by_edge) {
        int d = static_cast<int>(slots.size());
        for (int i = 0; i < d; ++i) {
            Segment s;
            s.edge = name;
            if (subset.count(name)) {
                s.index = i + 1;
                s.from = head_pt(slots[i]);          // new arrow leaves the old head
                s.to = tail_pt(slots[(i + 1) % d]);  // and enters the next old tail
            } else {
                s.index = i + 1;
                s.from = tail_pt(slots[i]);
                s.to = head_pt(slots[i]);
            }
            segments.push_back(std::move(s));
        }
    }
    for (const auto& s : segments) {
        seg_partner[s.from] = s.to;
        seg_partner[s.to] = s.from;
        seg_at[s.from] = &s;
        seg_at[s.to] = &s;
    }

    // Every point carries exactly one arc and one segment; the new closed
    // curves are the alternating cycles.
    ArrowPresentation out;
    out.name = ap.name;
    std::vector<char> visited(2 * nocc, 0);
    for (int start = 0; start < 2 * nocc; ++start) {
        if (visited[start] || seg_at[start] == nullptr) continue;
        std::vector<Occurrence> curve;
        int p = start;
        do {
            visited[p] = 1;
            const Segment* s = seg_at[p];
            curve.push_back(Occurrence{s->edge, s->index, p != s->from});
            int q = seg_partner[p];
            visited[q] = 1;
            p = arc[q];
        } while (p != start);
        out.curves.push_back(std::move(curve));
    }
    // Isolated hypervertices persist.
    for (const auto& curve : ap.curves)
        if (curve.empty()) out.curves.emplace_back();

    validate(out);
    return out;
}

int predicted_chi(const FlagStructure& fs, EdgeMask subset) {
    EdgeMask full = full_mask(fs);
    if ((subset & ~full) != 0)
        throw ValidationError("subset names a nonexistent hyperedge");
    CountSummary a = count_summary(restrict_edges(fs, subset));
    CountSummary ac = count_summary(restrict_edges(fs, full & ~subset));
    CountSummary h = count_summary(fs);
    return a.chi + ac.chi - 2 * h.v;
}

int predicted_epsilon(const FlagStructure& fs, EdgeMask subset) {
    EdgeMask full = full_mask(fs);
    if ((subset & ~full) != 0)
        throw ValidationError("subset names a nonexistent hyperedge");
    CountSummary a = count_summary(restrict_edges(fs, subset));
    CountSummary ac = count_summary(restrict_edges(fs, full & ~subset));
    CountSummary h = count_summary(fs);
    return a.epsilon + ac.epsilon + 2 * (h.k - a.k - ac.k) + 2 * h.v;
}

DualityReport genus_jump_check(const FlagStructure& fs, int edge_ordinal) {
    int e = edge_count(fs);
    if (edge_ordinal < 0 || edge_ordinal >= e)
        throw UnknownEdgeError(std::to_string(edge_ordinal));
    EdgeMask subset = EdgeMask{1} << edge_ordinal;

    FlagStructure dual = partial_dual(fs, subset);
    CountSummary before = count_summary(fs);
    CountSummary after = count_summary(dual);
    int degree = edge_degrees(fs)[edge_ordinal];

    DualityReport r;
    r.subset = subset;
    r.chi_actual = after.chi;
    r.chi_predicted = predicted_chi(fs, subset);
    r.epsilon_actual = after.epsilon;
    r.epsilon_predicted = predicted_epsilon(fs, subset);
    r.jump_bound_ok = std::abs(before.epsilon - after.epsilon) <= 2 * (degree - 1);
    return r;
}

} // namespace hyperdual
