#include "hyperdual/hypermap.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "hyperdual/errors.hpp"

#include <nlohmann/json.hpp>

namespace hyperdual {

namespace {

// Orbit count of the group generated by the given involutions.
int orbit_count(int n, std::initializer_list<const std::vector<int>*> gens) {
    std::vector<char> visited(n, 0);
    std::vector<int> stack;
    int orbits = 0;
    for (int s = 0; s < n; ++s) {
        if (visited[s]) continue;
        ++orbits;
        visited[s] = 1;
        stack.assign(1, s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto* g : gens) {
                int y = (*g)[x];
                if (!visited[y]) {
                    visited[y] = 1;
                    stack.push_back(y);
                }
            }
        }
    }
    return orbits;
}

void require_involution(const std::vector<int>& p, int n, const char* name) {
    if (static_cast<int>(p.size()) != n)
        throw ValidationError(std::string(name) + " has wrong size");
    for (int i = 0; i < n; ++i) {
        if (p[i] < 0 || p[i] >= n || p[i] == i || p[p[i]] != i)
            throw ValidationError(std::string(name) +
                                  " is not a fixed-point-free involution at flag " +
                                  std::to_string(i));
    }
}

void append_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

// Arrow endpoints of one curve occurrence in traversal order.
struct EndpointPair {
    int first;
    int second;
};

EndpointPair traversal_endpoints(int occ, bool reversed) {
    int tail = 2 * occ, head = 2 * occ + 1;
    return reversed ? EndpointPair{head, tail} : EndpointPair{tail, head};
}

} // namespace

FlagStructure flags_from_arrows(const ArrowPresentation& ap) {
    validate(ap);

    FlagStructure fs;
    int narrows = total_degree(ap);
    fs.nflags = 2 * narrows;
    fs.alpha.assign(fs.nflags, -1);
    fs.beta.assign(fs.nflags, -1);
    fs.gamma.assign(fs.nflags, -1);
    fs.labels.resize(fs.nflags);

    std::map<std::string, int> edge_ord;
    // (edge ordinal, index) -> occurrence id
    std::map<std::pair<int, int>, int> arrow_of;
    std::vector<int> degree;

    int occ_id = 0;
    for (const auto& curve : ap.curves) {
        if (curve.empty()) {
            ++fs.isolated;
            continue;
        }
        int first_occ = occ_id;
        for (const auto& occ : curve) {
            int tail = 2 * occ_id, head = 2 * occ_id + 1;
            fs.gamma[tail] = head;
            fs.gamma[head] = tail;

            auto [it, fresh] = edge_ord.emplace(occ.edge, static_cast<int>(fs.edge_names.size()));
            if (fresh) {
                fs.edge_names.push_back(occ.edge);
                degree.push_back(0);
            }
            int e = it->second;
            degree[e] = std::max(degree[e], occ.index);
            arrow_of[{e, occ.index}] = occ_id;

            fs.labels[tail] = FlagLabel{e, occ.index, End::Tail};
            fs.labels[head] = FlagLabel{e, occ.index, End::Head};
            ++occ_id;
        }
        // alpha: second endpoint of each occurrence meets the first endpoint
        // of the next one along the curve, cyclically.
        int m = static_cast<int>(curve.size());
        for (int j = 0; j < m; ++j) {
            EndpointPair cur = traversal_endpoints(first_occ + j, curve[j].reversed);
            EndpointPair nxt = traversal_endpoints(first_occ + (j + 1) % m,
                                                   curve[(j + 1) % m].reversed);
            fs.alpha[cur.second] = nxt.first;
            fs.alpha[nxt.first] = cur.second;
        }
    }

    // beta: head(e_i) <-> tail(e_{i+1 mod d(e)}).
    for (int e = 0; e < static_cast<int>(degree.size()); ++e) {
        int d = degree[e];
        for (int i = 1; i <= d; ++i) {
            int head = 2 * arrow_of[{e, i}] + 1;
            int tail_next = 2 * arrow_of[{e, i % d + 1}];
            fs.beta[head] = tail_next;
            fs.beta[tail_next] = head;
        }
    }

    check_valid(fs);
    return fs;
}

ArrowPresentation arrows_from_flags(const FlagStructure& fs) {
    if (!fs.has_labels())
        throw ValidationError("arrows_from_flags requires labels");

    ArrowPresentation ap;
    std::vector<char> visited(fs.nflags, 0);
    for (int start = 0; start < fs.nflags; ++start) {
        if (visited[start]) continue;
        std::vector<Occurrence> curve;
        int cur = start;
        do {
            int other = fs.gamma[cur];
            visited[cur] = visited[other] = 1;
            const FlagLabel& lab = fs.labels[cur];
            curve.push_back(Occurrence{fs.edge_names[lab.edge], lab.index,
                                       lab.end == End::Head});
            cur = fs.alpha[other];
        } while (cur != start);
        ap.curves.push_back(std::move(curve));
    }
    for (int i = 0; i < fs.isolated; ++i) ap.curves.emplace_back();
    return ap;
}

void check_valid(const FlagStructure& fs) {
    if (fs.nflags < 0 || fs.nflags % 2 != 0)
        throw ValidationError("flag count must be even and non-negative");
    if (fs.isolated < 0) throw ValidationError("negative isolated-vertex count");
    require_involution(fs.alpha, fs.nflags, "alpha");
    require_involution(fs.beta, fs.nflags, "beta");
    require_involution(fs.gamma, fs.nflags, "gamma");

    if (fs.labels.empty()) return;
    if (static_cast<int>(fs.labels.size()) != fs.nflags)
        throw ValidationError("label table has wrong size");

    std::vector<int> orbit_edge = flag_edges(fs);
    std::vector<int> deg = edge_degrees(fs);
    for (int x = 0; x < fs.nflags; ++x) {
        const FlagLabel& lab = fs.labels[x];
        if (lab.edge < 0 || lab.edge >= static_cast<int>(fs.edge_names.size()))
            throw ValidationError("label references unnamed edge ordinal");
        if (lab.edge != orbit_edge[x])
            throw ValidationError("label edge ordinal disagrees with <beta,gamma> orbit");
        if (lab.index < 1 || lab.index > deg[lab.edge])
            throw ValidationError("label index out of range");
        const FlagLabel& mate = fs.labels[fs.gamma[x]];
        if (mate.edge != lab.edge || mate.index != lab.index || mate.end == lab.end)
            throw ValidationError("gamma must pair the two ends of one arrow");
        if (lab.end == End::Head) {
            const FlagLabel& next = fs.labels[fs.beta[x]];
            if (next.edge != lab.edge || next.end != End::Tail ||
                next.index != lab.index % deg[lab.edge] + 1)
                throw ValidationError("beta must pair head(e_i) with tail(e_{i+1})");
        }
    }
}

std::vector<int> flag_edges(const FlagStructure& fs) {
    std::vector<int> edge(fs.nflags, -1);
    int next = 0;
    for (int s = 0; s < fs.nflags; ++s) {
        if (edge[s] >= 0) continue;
        int e = next++;
        int cur = s;
        // <beta,gamma> orbits are alternating cycles; walk gamma then beta.
        do {
            edge[cur] = e;
            edge[fs.gamma[cur]] = e;
            cur = fs.beta[fs.gamma[cur]];
        } while (cur != s);
    }
    return edge;
}

int edge_count(const FlagStructure& fs) {
    return orbit_count(fs.nflags, {&fs.beta, &fs.gamma});
}

std::vector<int> edge_degrees(const FlagStructure& fs) {
    std::vector<int> edge = flag_edges(fs);
    int e = edge.empty() ? 0 : *std::max_element(edge.begin(), edge.end()) + 1;
    std::vector<int> deg(e, 0);
    for (int x = 0; x < fs.nflags; ++x)
        if (x < fs.gamma[x]) ++deg[edge[x]];
    return deg;
}

EdgeMask full_mask(const FlagStructure& fs) {
    int e = edge_count(fs);
    if (e > 62) throw ValidationError("more than 62 hyperedges");
    return e == 0 ? 0 : ((EdgeMask{1} << e) - 1);
}

EdgeMask mask_of(const FlagStructure& fs, const std::vector<std::string>& names) {
    EdgeMask mask = 0;
    for (const auto& name : names) {
        auto it = std::find(fs.edge_names.begin(), fs.edge_names.end(), name);
        if (it == fs.edge_names.end()) throw UnknownEdgeError(name);
        mask |= EdgeMask{1} << (it - fs.edge_names.begin());
    }
    return mask;
}

std::vector<std::string> names_of(const FlagStructure& fs, EdgeMask mask) {
    std::vector<std::string> out;
    for (int e = 0; e < static_cast<int>(fs.edge_names.size()); ++e)
        if (mask >> e & 1) out.push_back(fs.edge_names[e]);
    return out;
}

CountSummary count_summary(const FlagStructure& fs) {
    CountSummary cs;
    cs.d = fs.nflags / 2;
    cs.v = orbit_count(fs.nflags, {&fs.alpha, &fs.gamma}) + fs.isolated;
    cs.e = orbit_count(fs.nflags, {&fs.beta, &fs.gamma});
    cs.f = orbit_count(fs.nflags, {&fs.alpha, &fs.beta}) + fs.isolated;
    cs.k = orbit_count(fs.nflags, {&fs.alpha, &fs.beta, &fs.gamma}) + fs.isolated;
    cs.chi = cs.v + cs.e + cs.f - cs.d;
    cs.epsilon = 2 * cs.k - cs.chi;

    // Orientable iff the flag multigraph with all matching edges is
    // 2-colorable; isolated vertices are orientable pieces.
    std::vector<int> color(fs.nflags, -1);
    std::vector<int> stack;
    cs.orientable = true;
    for (int s = 0; s < fs.nflags && cs.orientable; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        stack.assign(1, s);
        while (!stack.empty() && cs.orientable) {
            int x = stack.back();
            stack.pop_back();
            for (const auto* g : {&fs.alpha, &fs.beta, &fs.gamma}) {
                int y = (*g)[x];
                if (color[y] < 0) {
                    color[y] = 1 - color[x];
                    stack.push_back(y);
                } else if (color[y] == color[x]) {
                    cs.orientable = false;
                    break;
                }
            }
        }
    }
    return cs;
}

Classification classify(const FlagStructure& fs) {
    CountSummary cs = count_summary(fs);
    Classification c;
    c.is_plane = cs.k == 1 && cs.epsilon == 0;
    c.is_bouquet = cs.v == 1;
    c.is_hyper_quasi_tree = cs.f == 1;
    c.is_hypertree = cs.f == 1 && cs.epsilon == 0;
    return c;
}

FlagStructure restrict_edges(const FlagStructure& fs, EdgeMask keep) {
    EdgeMask full = full_mask(fs);
    if ((keep & ~full) != 0)
        throw ValidationError("restriction mask names a nonexistent hyperedge");

    std::vector<int> edge = flag_edges(fs);
    std::vector<char> kept(fs.nflags, 0);
    std::vector<int> new_id(fs.nflags, -1);
    int n2 = 0;
    for (int x = 0; x < fs.nflags; ++x) {
        if (keep >> edge[x] & 1) {
            kept[x] = 1;
            new_id[x] = n2++;
        }
    }

    FlagStructure out;
    out.nflags = n2;
    out.alpha.assign(n2, -1);
    out.beta.assign(n2, -1);
    out.gamma.assign(n2, -1);
    out.isolated = fs.isolated;

    // Edge ordinals of the result, in the order they keep among survivors.
    std::vector<int> edge_remap(64, -1);
    int next_edge = 0;
    for (int e = 0; e < 62; ++e)
        if (keep >> e & 1) edge_remap[e] = next_edge++;

    for (int x = 0; x < fs.nflags; ++x) {
        if (!kept[x]) continue;
        out.beta[new_id[x]] = new_id[fs.beta[x]];
        out.gamma[new_id[x]] = new_id[fs.gamma[x]];
        // First-return walk along the curve skips deleted hyperedges.
        int y = fs.alpha[x];
        while (!kept[y]) y = fs.alpha[fs.gamma[y]];
        out.alpha[new_id[x]] = new_id[y];
    }

    // Curves whose occurrences were all deleted become isolated vertices.
    std::vector<char> seen(fs.nflags, 0);
    for (int s = 0; s < fs.nflags; ++s) {
        if (seen[s]) continue;
        bool any_kept = false;
        int cur = s;
        do {
            seen[cur] = seen[fs.gamma[cur]] = 1;
            any_kept = any_kept || kept[cur];
            cur = fs.alpha[fs.gamma[cur]];
        } while (cur != s);
        if (!any_kept) ++out.isolated;
    }

    if (fs.has_labels() && fs.nflags > 0) {
        out.labels.resize(n2);
        out.edge_names.resize(next_edge);
        for (int x = 0; x < fs.nflags; ++x) {
            if (!kept[x]) continue;
            FlagLabel lab = fs.labels[x];
            lab.edge = edge_remap[lab.edge];
            out.labels[new_id[x]] = lab;
        }
        for (int e = 0; e < static_cast<int>(fs.edge_names.size()); ++e)
            if (edge_remap[e] >= 0) out.edge_names[edge_remap[e]] = fs.edge_names[e];
    }
    return out;
}

namespace {

// Component-local canonical encoding: minimum BFS relabeling over all starts.
std::vector<std::uint32_t> component_encoding(const FlagStructure& fs,
                                              const std::vector<int>& comp_flags) {
    const int m = static_cast<int>(comp_flags.size());
    std::vector<int> local(fs.nflags, -1);
    for (int i = 0; i < m; ++i) local[comp_flags[i]] = i;

    std::vector<std::uint32_t> best;
    std::vector<int> label(m), order(m);
    for (int si = 0; si < m; ++si) {
        std::fill(label.begin(), label.end(), -1);
        int next = 0;
        label[local[comp_flags[si]]] = next;
        order[next++] = comp_flags[si];
        for (int qi = 0; qi < next; ++qi) {
            int x = order[qi];
            for (const auto* g : {&fs.alpha, &fs.beta, &fs.gamma}) {
                int y = (*g)[x];
                if (label[local[y]] < 0) {
                    label[local[y]] = next;
                    order[next++] = y;
                }
            }
        }
        std::vector<std::uint32_t> enc;
        enc.reserve(3 * m);
        for (int i = 0; i < m; ++i) {
            int x = order[i];
            enc.push_back(static_cast<std::uint32_t>(label[local[fs.alpha[x]]]));
            enc.push_back(static_cast<std::uint32_t>(label[local[fs.beta[x]]]));
            enc.push_back(static_cast<std::uint32_t>(label[local[fs.gamma[x]]]));
        }
        if (best.empty() || enc < best) best = std::move(enc);
    }
    return best;
}

} // namespace

std::string canonical_form(const FlagStructure& fs) {
    // Component partition under all three generators.
    std::vector<int> comp(fs.nflags, -1);
    std::vector<std::vector<int>> comps;
    std::vector<int> stack;
    for (int s = 0; s < fs.nflags; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.emplace_back();
        comp[s] = id;
        stack.assign(1, s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comps[id].push_back(x);
            for (const auto* g : {&fs.alpha, &fs.beta, &fs.gamma}) {
                int y = (*g)[x];
                if (comp[y] < 0) {
                    comp[y] = id;
                    stack.push_back(y);
                }
            }
        }
        std::sort(comps[id].begin(), comps[id].end());
    }

    std::vector<std::vector<std::uint32_t>> encodings;
    encodings.reserve(comps.size());
    for (const auto& c : comps) encodings.push_back(component_encoding(fs, c));
    std::sort(encodings.begin(), encodings.end());

    std::string out;
    append_u32(out, static_cast<std::uint32_t>(fs.nflags));
    append_u32(out, static_cast<std::uint32_t>(fs.isolated));
    append_u32(out, static_cast<std::uint32_t>(encodings.size()));
    for (const auto& enc : encodings) {
        append_u32(out, static_cast<std::uint32_t>(enc.size() / 3));
        for (std::uint32_t v : enc) append_u32(out, v);
    }
    return out;
}

bool isomorphic(const FlagStructure& a, const FlagStructure& b) {
    return canonical_form(a) == canonical_form(b);
}

std::string flag_structure_json(const FlagStructure& fs) {
    nlohmann::json j;
    j["flags"] = fs.nflags;
    auto pairs = [&](const std::vector<int>& p) {
        nlohmann::json arr = nlohmann::json::array();
        for (int i = 0; i < fs.nflags; ++i)
            if (i < p[i]) arr.push_back({i, p[i]});
        return arr;
    };
    j["alpha"] = pairs(fs.alpha);
    j["beta"] = pairs(fs.beta);
    j["gamma"] = pairs(fs.gamma);
    j["isolated"] = fs.isolated;
    nlohmann::json labels = nlohmann::json::object();
    if (fs.has_labels()) {
        for (int x = 0; x < fs.nflags; ++x) {
            const FlagLabel& lab = fs.labels[x];
            labels[std::to_string(x)] = {
                {"edge", fs.edge_names[lab.edge]},
                {"index", lab.index},
                {"end", lab.end == End::Tail ? "tail" : "head"},
            };
        }
    }
    j["labels"] = labels;
    return j.dump();
}

} // namespace hyperdual
