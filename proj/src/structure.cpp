#include "hyperdual/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hyperdual/duality.hpp"
#include "hyperdual/errors.hpp"
#include "hyperdual/genus_poly.hpp"

namespace hyperdual {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Segment id per flag: gamma pairs numbered by least flag, ascending.
std::vector<int> flag_segments(const FlagStructure& fs, int* count = nullptr) {
    std::vector<int> seg(fs.nflags, -1);
    int next = 0;
    for (int x = 0; x < fs.nflags; ++x) {
        if (x < fs.gamma[x]) {
            seg[x] = seg[fs.gamma[x]] = next++;
        }
    }
    if (count) *count = next;
    return seg;
}

// Curve id per flag (<alpha,gamma> orbits by least flag).
std::vector<int> flag_curves(const FlagStructure& fs, int* count = nullptr) {
    std::vector<int> curve(fs.nflags, -1);
    int next = 0;
    for (int s = 0; s < fs.nflags; ++s) {
        if (curve[s] >= 0) continue;
        int cur = s;
        do {
            curve[cur] = curve[fs.gamma[cur]] = next;
            cur = fs.alpha[fs.gamma[cur]];
        } while (cur != s);
        ++next;
    }
    if (count) *count = next;
    return curve;
}

} // namespace

RibbonExpansion ribbon_expansion(const FlagStructure& fs) {
    int nseg = 0, ncurve = 0;
    std::vector<int> seg = flag_segments(fs, &nseg);
    std::vector<int> curve = flag_curves(fs, &ncurve);
    std::vector<int> edge = flag_edges(fs);

    RibbonExpansion re;
    re.isolated = fs.isolated;
    re.vertex_nodes = ncurve + fs.isolated;
    re.central_nodes = fs.nflags == 0 ? 0 : *std::max_element(edge.begin(), edge.end()) + 1;
    re.edges.assign(nseg, {-1, -1});
    // Central node ids are offset past every hypervertex node.
    for (int x = 0; x < fs.nflags; ++x)
        if (x < fs.gamma[x]) re.edges[seg[x]] = {curve[x], re.vertex_nodes + edge[x]};

    re.rings.resize(ncurve);
    std::vector<char> visited(fs.nflags, 0);
    for (int s = 0; s < fs.nflags; ++s) {
        if (visited[s]) continue;
        int cur = s;
        do {
            visited[cur] = visited[fs.gamma[cur]] = 1;
            re.rings[curve[cur]].push_back(seg[cur]);
            cur = fs.alpha[fs.gamma[cur]];
        } while (cur != s);
    }
    return re;
}

FlagStructure expansion_hypermap(const FlagStructure& fs) {
    // Vertex-side copies keep their flag ids; central-side copies live at
    // n + x. The band of each segment pairs the two sides by beta.
    int n = fs.nflags;
    FlagStructure out;
    out.nflags = 2 * n;
    out.isolated = fs.isolated;
    out.alpha.resize(2 * n);
    out.beta.resize(2 * n);
    out.gamma.resize(2 * n);
    for (int x = 0; x < n; ++x) {
        out.alpha[x] = fs.alpha[x];
        out.alpha[n + x] = n + fs.beta[x];
        out.gamma[x] = fs.gamma[x];
        out.gamma[n + x] = n + fs.gamma[x];
        out.beta[x] = n + x;
        out.beta[n + x] = x;
    }

    if (fs.has_labels() && n > 0) {
        int nseg = 0;
        std::vector<int> seg = flag_segments(fs, &nseg);
        out.labels.resize(2 * n);
        out.edge_names.resize(nseg);
        for (int x = 0; x < n; ++x) {
            if (x > fs.gamma[x]) continue;
            int s = seg[x];
            const FlagLabel& lab = fs.labels[x];
            out.edge_names[s] = fs.edge_names[lab.edge] + "_" + std::to_string(lab.index);
            out.labels[x] = FlagLabel{s, 1, End::Tail};
            out.labels[fs.gamma[x]] = FlagLabel{s, 1, End::Head};
            out.labels[n + fs.gamma[x]] = FlagLabel{s, 2, End::Tail};
            out.labels[n + x] = FlagLabel{s, 2, End::Head};
        }
    }
    return out;
}

namespace {

std::vector<int> node_components_without(const RibbonExpansion& re, int vertex) {
    UnionFind uf(re.node_count());
    for (const auto& [hv, ce] : re.edges) {
        if (hv == vertex) continue;
        uf.unite(hv, ce);
    }
    std::vector<int> comp(re.node_count());
    for (int i = 0; i < re.node_count(); ++i) comp[i] = uf.find(i);
    comp[vertex] = -1;
    return comp;
}

} // namespace

std::vector<int> components_excluding_vertex(const RibbonExpansion& re, int vertex) {
    if (vertex < 0 || vertex >= re.vertex_nodes)
        throw ValidationError("no such hypervertex");
    if (vertex >= static_cast<int>(re.rings.size())) return {};  // isolated: empty ring

    std::vector<int> comp = node_components_without(re, vertex);
    std::vector<int> labels;
    std::map<int, int> dense;
    for (int s : re.rings[vertex]) {
        int root = comp[re.edges[s].second];
        auto it = dense.emplace(root, static_cast<int>(dense.size())).first;
        labels.push_back(it->second);
    }
    return labels;
}

namespace {

// Positions p1 < p2 < p3 < p4 in cyclic order with labels x y x y.
std::optional<std::array<int, 4>> interleaved_witness(const std::vector<int>& labels,
                                                      int x, int y) {
    int m = static_cast<int>(labels.size());
    for (int start = 0; start < m; ++start) {
        if (labels[start] != x) continue;
        int want = 0;  // next expected: 0 -> y, 1 -> x, 2 -> y
        std::array<int, 4> pos{start, -1, -1, -1};
        for (int step = 1; step < m && want < 3; ++step) {
            int i = (start + step) % m;
            if (want % 2 == 0 && labels[i] == y) {
                pos[1 + want] = i;
                ++want;
            } else if (want % 2 == 1 && labels[i] == x) {
                pos[1 + want] = i;
                ++want;
            }
        }
        if (want == 3) return pos;
    }
    return std::nullopt;
}

std::optional<std::array<int, 4>> any_interleaved_pair(const std::vector<int>& labels) {
    std::set<int> distinct(labels.begin(), labels.end());
    for (int x : distinct)
        for (int y : distinct) {
            if (x >= y) continue;
            if (auto w = interleaved_witness(labels, x, y)) return w;
        }
    return std::nullopt;
}

} // namespace

std::optional<std::array<int, 4>> alternating_quadruple(const FlagStructure& fs,
                                                        int vertex) {
    RibbonExpansion re = ribbon_expansion(fs);
    std::vector<int> labels = components_excluding_vertex(re, vertex);
    return any_interleaved_pair(labels);
}

bool has_alternating_quadruple(const FlagStructure& fs) {
    RibbonExpansion re = ribbon_expansion(fs);
    for (int v = 0; v < static_cast<int>(re.rings.size()); ++v) {
        std::vector<int> labels = components_excluding_vertex(re, v);
        if (any_interleaved_pair(labels)) return true;
    }
    return false;
}

IntersectionGraph intersection_graph(const FlagStructure& fs) {
    CountSummary cs = count_summary(fs);
    if (cs.v != 1) throw ValidationError("intersection graph requires a hyper-bouquet");

    IntersectionGraph g;
    g.vertices = fs.edge_names;
    if (g.vertices.empty()) {
        // Unlabeled bouquets get ordinal names for the report surface.
        for (int e = 0; e < cs.e; ++e) g.vertices.push_back("e" + std::to_string(e));
    }
    std::vector<int> order(g.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.vertices[a] < g.vertices[b]; });
    std::vector<int> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    std::sort(g.vertices.begin(), g.vertices.end());

    if (fs.nflags == 0) return g;

    // Ring of edge ordinals around the unique vertex.
    std::vector<int> edge = flag_edges(fs);
    std::vector<int> ring;
    int cur = 0;
    do {
        ring.push_back(edge[cur]);
        cur = fs.alpha[fs.gamma[cur]];
    } while (cur != 0);

    std::set<std::pair<int, int>> edges;
    for (int a = 0; a < cs.e; ++a)
        for (int b = a + 1; b < cs.e; ++b)
            if (interleaved_witness(ring, a, b)) {
                int ra = rank[a], rb = rank[b];
                edges.insert({std::min(ra, rb), std::max(ra, rb)});
            }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

bool is_bipartite(const IntersectionGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> color(n, -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        stack.assign(1, s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x]) {
                if (color[y] < 0) {
                    color[y] = 1 - color[x];
                    stack.push_back(y);
                } else if (color[y] == color[x]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::string intersection_graph_dot(const IntersectionGraph& g) {
    std::ostringstream os;
    os << "graph I {\n";
    for (const auto& v : g.vertices) os << "  " << v << ";\n";
    for (const auto& [a, b] : g.edges)
        os << "  " << g.vertices[a] << " -- " << g.vertices[b] << ";\n";
    os << "}\n";
    return os.str();
}

bool constant_term_criterion(const FlagStructure& fs) {
    IntersectionGraph g = intersection_graph(fs);  // validates the bouquet pre
    if (!is_bipartite(g)) return false;
    int e = edge_count(fs);
    for (int i = 0; i < e; ++i) {
        FlagStructure single = restrict_edges(fs, EdgeMask{1} << i);
        if (count_summary(single).epsilon != 0) return false;
    }
    return true;
}

namespace {

// Rebuilds a presentation whose curve order matches the ribbon expansion's
// vertex numbering (both follow the <alpha,gamma> orbits by least flag).
ArrowPresentation aligned_presentation(const FlagStructure& fs) {
    return arrows_from_flags(fs);
}

} // namespace

std::optional<JoinSplit> split_once(const FlagStructure& fs) {
    CountSummary cs = count_summary(fs);
    if (cs.k != 1) throw ValidationError("join decomposition requires a connected hypermap");
    if (cs.e <= 1) return std::nullopt;

    ArrowPresentation ap = aligned_presentation(fs);
    RibbonExpansion re = ribbon_expansion(fs);

    for (int v = 0; v < static_cast<int>(re.rings.size()); ++v) {
        int m = static_cast<int>(re.rings[v].size());
        if (m < 2) continue;
        std::vector<int> labels = components_excluding_vertex(re, v);
        std::vector<int> comp = node_components_without(re, v);

        // Component root -> dense ring label; every component of R(H) minus v
        // touches the ring when H is connected.
        std::map<int, int> root_label;
        for (int i = 0; i < m; ++i) {
            int root = comp[re.edges[re.rings[v][i]].second];
            root_label.emplace(root, labels[i]);
        }

        for (int start = 0; start < m; ++start) {
            for (int len = 1; len < m; ++len) {
                std::set<int> inside, outside;
                for (int i = 0; i < m; ++i) {
                    int off = (i - start + m) % m;
                    (off < len ? inside : outside).insert(labels[i]);
                }
                bool disjoint = true;
                for (int c : inside)
                    if (outside.count(c)) {
                        disjoint = false;
                        break;
                    }
                if (!disjoint) continue;

                auto side_of_curve = [&](int curve_id) {
                    int root = comp[curve_id];
                    return inside.count(root_label.at(root)) ? 0 : 1;
                };

                JoinSplit split;
                const auto& ring_curve = ap.curves[v];
                std::vector<Occurrence> arc_in, arc_out;
                for (int i = 0; i < m; ++i) {
                    int pos = (start + i) % m;
                    (i < len ? arc_in : arc_out).push_back(ring_curve[pos]);
                }
                split.left.curves.push_back(std::move(arc_in));
                split.right.curves.push_back(std::move(arc_out));
                for (int c = 0; c < static_cast<int>(ap.curves.size()); ++c) {
                    if (c == v) continue;
                    if (ap.curves[c].empty()) continue;  // unreachable when connected
                    (side_of_curve(c) == 0 ? split.left : split.right)
                        .curves.push_back(ap.curves[c]);
                }
                validate(split.left);
                validate(split.right);
                return split;
            }
        }
    }
    return std::nullopt;
}

std::vector<FlagStructure> join_decompose(const FlagStructure& fs) {
    std::vector<FlagStructure> factors;
    std::vector<FlagStructure> queue{fs};
    while (!queue.empty()) {
        FlagStructure cur = std::move(queue.back());
        queue.pop_back();
        if (auto split = split_once(cur)) {
            queue.push_back(flags_from_arrows(split->right));
            queue.push_back(flags_from_arrows(split->left));
        } else {
            factors.push_back(std::move(cur));
        }
    }
    // Depth-first with left pushed last keeps the factor order stable but
    // reversed per level; normalize by canonical form for determinism.
    std::stable_sort(factors.begin(), factors.end(),
                     [](const FlagStructure& a, const FlagStructure& b) {
                         return canonical_form(a) < canonical_form(b);
                     });
    return factors;
}

bool constant_poly_criterion(const FlagStructure& fs) {
    if (split_once(fs))  // also rejects disconnected inputs
        throw ValidationError("constant-polynomial criterion requires a prime hypermap");
    Classification c = classify(fs);
    return c.is_plane && edge_count(fs) == 1;
}

std::pair<bool, bool> hypertree_duality_check(const FlagStructure& fs) {
    Classification c = classify(fs);
    bool lhs = c.is_plane && c.is_bouquet;
    bool rhs = classify(full_dual(fs)).is_hypertree;
    return {lhs, rhs};
}

} // namespace hyperdual
