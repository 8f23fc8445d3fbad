#pragma once

// Fat graphs as signed rotation systems.
//
// A fat graph is a connected graph with a cyclic order of half-edges at
// every vertex (the rotation) and a twist bit per edge. Thickening vertices
// to disks and edges to bands (flipped when twisted) yields a compact
// surface whose boundary components are the boundary circuits; capping each
// circuit with a disk gives the closed surface the graph classifies to.
//
// Conventions used throughout:
//   half-edge   h = 2*edge + end, end 0 is the reference end of the edge
//   rotation    counterclockwise list of half-edges around the vertex disk
//   extremity   each attachment interval has a cw end (0) and a ccw end (1)
//   side s      the band boundary arc whose extremity at the end-0
//               attachment is s; crossing a band flips the extremity bit
//               exactly when the edge is untwisted
//   step        (edge, side, dir), dir 0 = traversed from endpoint 0 to 1
//
// Boundary tracing alternates band crossings and corner walks:
//   cross from (h, x): arrive at (other(h), x ^ 1 ^ twist)
//   arrive ccw: continue at (rotation-successor, cw)
//   arrive cw:  continue at (rotation-predecessor, ccw)

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fatsurf {

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    void fail(std::string msg) { problems.push_back(std::move(msg)); }
};

struct HalfEdge {
    int edge = -1;
    int end = 0;  // which endpoint of the edge this half occupies

    int code() const { return 2 * edge + end; }
    static HalfEdge from_code(int c) { return {c / 2, c % 2}; }
    friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
    friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

struct EdgeRec {
    std::string name;
    int v[2] = {-1, -1};
    bool twist = false;
};

struct Step {
    int edge = -1;
    int side = 0;
    int dir = 0;  // 0: endpoint 0 -> endpoint 1

    friend bool operator==(const Step&, const Step&) = default;
    friend auto operator<=>(const Step&, const Step&) = default;
};

// Corner i of a rotation of length L sits between rotation[i-1 mod L] and
// rotation[i]. A vertex with an empty rotation has the single corner 0.
struct Corner {
    int vertex = -1;
    int index = 0;

    friend bool operator==(const Corner&, const Corner&) = default;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Circuit {
    std::vector<Step> steps;
    std::vector<Corner> corners;  // corners[k] is crossed after steps[k]

    bool has_side(int edge, int side) const {
        for (const Step& s : steps)
            if (s.edge == edge && s.side == side) return true;
        return false;
    }
};

struct SurfaceClass {
    bool orientable = true;
    int genus = 0;  // orientable genus, or crosscap count when non-orientable

    int euler() const { return orientable ? 2 - 2 * genus : 2 - genus; }
    static SurfaceClass sphere() { return {true, 0}; }
    static SurfaceClass torus() { return {true, 1}; }
    static SurfaceClass projective_plane() { return {false, 1}; }
    static SurfaceClass klein_bottle() { return {false, 2}; }
    std::string describe() const;
    friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

inline std::string SurfaceClass::describe() const {
    if (orientable) {
        if (genus == 0) return "sphere";
        if (genus == 1) return "torus";
        return "orientable genus " + std::to_string(genus);
    }
    if (genus == 1) return "projective plane";
    if (genus == 2) return "Klein bottle";
    return "non-orientable crosscap " + std::to_string(genus);
}

class FatGraph {
public:
    std::vector<std::string> vertex_names;
    std::vector<EdgeRec> edges;
    std::vector<std::vector<HalfEdge>> rotations;  // one per vertex

    int num_vertices() const { return static_cast<int>(vertex_names.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    int endpoint(int edge, int end) const { return edges[edge].v[end]; }
    int vertex_of(HalfEdge h) const { return edges[h.edge].v[h.end]; }
    int degree(int v) const { return static_cast<int>(rotations[v].size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < num_vertices(); ++i)
            if (vertex_names[i] == name) return i;
        return -1;
    }
    int edge_index(const std::string& name) const {
        for (int i = 0; i < num_edges(); ++i)
            if (edges[i].name == name) return i;
        return -1;
    }

    int add_vertex(std::string name) {
        vertex_names.push_back(std::move(name));
        rotations.emplace_back();
        return num_vertices() - 1;
    }

    std::string fresh_vertex_name(const std::string& stem) const {
        for (int k = num_vertices();; ++k) {
            std::string cand = stem + std::to_string(k);
            if (vertex_index(cand) < 0) return cand;
        }
    }
    std::string fresh_edge_name(const std::string& stem) const {
        for (int k = num_edges();; ++k) {
            std::string cand = stem + std::to_string(k);
            if (edge_index(cand) < 0) return cand;
        }
    }

    // Position of h in the rotation at its vertex, -1 if unplaced.
    int rotation_position(HalfEdge h) const {
        const auto& rot = rotations[vertex_of(h)];
        for (int i = 0; i < static_cast<int>(rot.size()); ++i)
            if (rot[i] == h) return i;
        return -1;
    }
};

inline ValidationReport validate_fatgraph(const FatGraph& g) {
    ValidationReport rep;
    if (g.num_vertices() == 0) {
        rep.fail("graph has no vertices");
        return rep;
    }
    if (g.rotations.size() != g.vertex_names.size())
        rep.fail("rotation table size does not match vertex count");

    for (int e = 0; e < g.num_edges(); ++e) {
        for (int end = 0; end < 2; ++end) {
            int v = g.edges[e].v[end];
            if (v < 0 || v >= g.num_vertices())
                rep.fail("edge '" + g.edges[e].name + "' has a bad endpoint");
        }
    }
    if (!rep.ok()) return rep;

    // Every half-edge placed exactly once, at its own vertex.
    std::vector<int> seen(2 * g.num_edges(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        for (HalfEdge h : g.rotations[v]) {
            if (h.edge < 0 || h.edge >= g.num_edges() || (h.end != 0 && h.end != 1)) {
                rep.fail("rotation at '" + g.vertex_names[v] + "' references a bad half-edge");
                continue;
            }
            if (g.vertex_of(h) != v)
                rep.fail("half-edge " + g.edges[h.edge].name + "." + std::to_string(h.end) +
                         " placed at the wrong vertex '" + g.vertex_names[v] + "'");
            seen[h.code()]++;
        }
    }
    for (int e = 0; e < g.num_edges(); ++e)
        for (int end = 0; end < 2; ++end) {
            int c = 2 * e + end;
            if (seen[c] == 0)
                rep.fail("unplaced half-edge " + g.edges[e].name + "." + std::to_string(end));
            else if (seen[c] > 1)
                rep.fail("half-edge " + g.edges[e].name + "." + std::to_string(end) +
                         " appears " + std::to_string(seen[c]) + " times");
        }

    // Connectivity over vertices through edges.
    std::vector<char> reach(g.num_vertices(), 0);
    std::vector<int> stack{0};
    reach[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e = 0; e < g.num_edges(); ++e) {
            for (int end = 0; end < 2; ++end) {
                if (g.edges[e].v[end] == v) {
                    int w = g.edges[e].v[1 - end];
                    if (!reach[w]) {
                        reach[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
        }
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!reach[v]) {
            rep.fail("disconnected: vertex '" + g.vertex_names[v] + "' unreachable");
            break;
        }
    return rep;
}

namespace detail {

// Crossing state: about to cross the band of edge(h) starting at extremity
// x of the attachment interval of h.
struct TraceState {
    HalfEdge h;
    int x = 0;

    friend bool operator==(const TraceState&, const TraceState&) = default;
};

inline Step step_of(const FatGraph& g, const TraceState& s) {
    const EdgeRec& e = g.edges[s.h.edge];
    int side = (s.h.end == 0) ? s.x : (s.x ^ 1 ^ (e.twist ? 1 : 0));
    return {s.h.edge, side, s.h.end};
}

// Advance one band crossing plus one corner walk; also reports the corner
// crossed at the arrival vertex.
inline TraceState advance(const FatGraph& g, const TraceState& s, Corner* corner) {
    const EdgeRec& e = g.edges[s.h.edge];
    HalfEdge arr{s.h.edge, 1 - s.h.end};
    int x_arr = s.x ^ 1 ^ (e.twist ? 1 : 0);
    int v = g.vertex_of(arr);
    const auto& rot = g.rotations[v];
    int len = static_cast<int>(rot.size());
    int p = g.rotation_position(arr);
    TraceState next;
    if (x_arr == 1) {
        int ci = (p + 1) % len;
        if (corner) *corner = {v, ci};
        next = {rot[ci], 0};
    } else {
        int ci = p;
        if (corner) *corner = {v, ci};
        next = {rot[(p - 1 + len) % len], 1};
    }
    return next;
}

inline TraceState start_state(const FatGraph& g, int edge, int side) {
    // Forward traversal of (edge, side) starts at the end-0 half with
    // extremity equal to the side bit.
    return {{edge, 0}, side};
}

}  // namespace detail

// Deterministic boundary circuits: each starts at the least unvisited
// (edge, side, direction) triple, traversed forward. A single vertex with
// no edges yields one empty circuit at its only corner.
inline std::vector<Circuit> boundary_circuits(const FatGraph& g) {
    std::vector<Circuit> out;
    if (g.num_edges() == 0) {
        Circuit c;
        c.corners.push_back({0, 0});
        out.push_back(std::move(c));
        return out;
    }
    std::vector<char> visited(2 * g.num_edges(), 0);  // (edge, side)
    for (int e = 0; e < g.num_edges(); ++e) {
        for (int side = 0; side < 2; ++side) {
            if (visited[2 * e + side]) continue;
            Circuit c;
            detail::TraceState start = detail::start_state(g, e, side);
            detail::TraceState cur = start;
            do {
                Step st = detail::step_of(g, cur);
                visited[2 * st.edge + st.side] = 1;
                Corner corner;
                cur = detail::advance(g, cur, &corner);
                c.steps.push_back(st);
                c.corners.push_back(corner);
            } while (!(cur == start));
            out.push_back(std::move(c));
        }
    }
    return out;
}

// Map from corner to the circuit passing it. Corners of an isolated vertex
// all map to its empty circuit.
inline std::map<Corner, int> corner_to_circuit(const FatGraph& g,
                                               const std::vector<Circuit>& circuits) {
    std::map<Corner, int> m;
    for (int i = 0; i < static_cast<int>(circuits.size()); ++i)
        for (const Corner& c : circuits[i].corners) m[c] = i;
    return m;
}

// Orientability without tracing circuits: propagate vertex signs along a
// spanning tree; the surface is orientable iff every remaining edge closes
// a cycle of even total twist.
inline bool graph_orientable(const FatGraph& g) {
    int n = g.num_vertices();
    std::vector<int> sign(n, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, other endpoint)
    for (int e = 0; e < g.num_edges(); ++e) {
        adj[g.edges[e].v[0]].push_back({e, g.edges[e].v[1]});
        adj[g.edges[e].v[1]].push_back({e, g.edges[e].v[0]});
    }
    for (int root = 0; root < n; ++root) {
        if (sign[root] >= 0) continue;
        sign[root] = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [e, w] : adj[v]) {
                int t = g.edges[e].twist ? 1 : 0;
                if (g.edges[e].v[0] == g.edges[e].v[1]) {
                    if (t) return false;  // one-sided loop
                    continue;
                }
                if (sign[w] < 0) {
                    sign[w] = sign[v] ^ t;
                    stack.push_back(w);
                } else if ((sign[v] ^ sign[w] ^ t) != 0) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline SurfaceClass surface_class(const FatGraph& g) {
    int f = static_cast<int>(boundary_circuits(g).size());
    int chi = g.num_vertices() - g.num_edges() + f;
    SurfaceClass sc;
    sc.orientable = graph_orientable(g);
    sc.genus = sc.orientable ? (2 - chi) / 2 : (2 - chi);
    return sc;
}

// Restriction to a connected subgraph; rotations are filtered, twists kept.
// `vertices` must contain all endpoints of `edge_subset`.
inline FatGraph induced_subfatgraph(const FatGraph& g, const std::set<int>& vertices,
                                    const std::set<int>& edge_subset,
                                    std::vector<int>* edge_map_out = nullptr) {
    FatGraph sub;
    std::vector<int> vmap(g.num_vertices(), -1);
    for (int v : vertices) {
        vmap[v] = sub.add_vertex(g.vertex_names[v]);
    }
    std::vector<int> emap(g.num_edges(), -1);
    for (int e : edge_subset) {
        EdgeRec r = g.edges[e];
        r.v[0] = vmap[r.v[0]];
        r.v[1] = vmap[r.v[1]];
        emap[e] = static_cast<int>(sub.edges.size());
        sub.edges.push_back(r);
    }
    for (int v : vertices) {
        for (HalfEdge h : g.rotations[v]) {
            if (emap[h.edge] >= 0)
                sub.rotations[vmap[v]].push_back({emap[h.edge], h.end});
        }
    }
    if (edge_map_out) *edge_map_out = emap;
    return sub;
}

// Convenience overload: vertex set spanned by the edges.
inline FatGraph induced_subfatgraph(const FatGraph& g, const std::set<int>& edge_subset,
                                    std::vector<int>* edge_map_out = nullptr) {
    std::set<int> verts;
    for (int e : edge_subset) {
        verts.insert(g.edges[e].v[0]);
        verts.insert(g.edges[e].v[1]);
    }
    return induced_subfatgraph(g, verts, edge_subset, edge_map_out);
}

enum class Sidedness { OneSided, TwoSided };

// Ribbon neighborhood of an embedded cycle: one boundary component means a
// Moebius band, two mean an annulus. `cycle` must induce a subgraph whose
// vertices all have degree 2.
inline std::optional<Sidedness> circuit_sidedness(const FatGraph& g,
                                                  const std::set<int>& cycle) {
    if (cycle.empty()) return std::nullopt;
    FatGraph sub = induced_subfatgraph(g, cycle);
    if (!validate_fatgraph(sub).ok()) return std::nullopt;
    for (int v = 0; v < sub.num_vertices(); ++v)
        if (sub.degree(v) != 2) return std::nullopt;
    int f = static_cast<int>(boundary_circuits(sub).size());
    return f == 1 ? Sidedness::OneSided : Sidedness::TwoSided;
}

// Reverse the rotation at v and toggle twists of incident non-loop edges.
// Produces an equivalent fat graph (same circuits up to side relabeling).
inline FatGraph vertex_flip(const FatGraph& g, int v) {
    FatGraph out = g;
    std::reverse(out.rotations[v].begin(), out.rotations[v].end());
    for (int e = 0; e < out.num_edges(); ++e) {
        bool at0 = out.edges[e].v[0] == v;
        bool at1 = out.edges[e].v[1] == v;
        if (at0 != at1) out.edges[e].twist = !out.edges[e].twist;
    }
    return out;
}

// Canonical cyclic form of a circuit as (edge, dir) word, invariant under
// rotation and reversal. Side bits are dropped because they relabel under
// vertex flips.
inline std::vector<std::pair<int, int>> circuit_word(const Circuit& c) {
    size_t n = c.steps.size();
    std::vector<std::pair<int, int>> best;
    auto consider = [&](const std::vector<std::pair<int, int>>& w) {
        for (size_t s = 0; s < n; ++s) {
            std::vector<std::pair<int, int>> rot(n);
            for (size_t i = 0; i < n; ++i) rot[i] = w[(s + i) % n];
            if (best.empty() || rot < best) best = rot;
        }
    };
    std::vector<std::pair<int, int>> fwd(n), rev(n);
    for (size_t i = 0; i < n; ++i) fwd[i] = {c.steps[i].edge, c.steps[i].dir};
    for (size_t i = 0; i < n; ++i) {
        const Step& s = c.steps[n - 1 - i];
        rev[i] = {s.edge, s.dir ^ 1};
    }
    if (n == 0) return {};
    consider(fwd);
    consider(rev);
    return best;
}

// Merge the two edges at a degree-2 vertex into one, removing the vertex.
// The merged edge runs from the far end of the first rotation entry to the
// far end of the second; its twist is the parity of the two twists.
struct SmoothResult {
    FatGraph graph;
    int merged_edge = -1;              // index in the new graph
    std::vector<int> edge_map;         // old edge -> new edge (-1 for removed)
    int removed_a = -1, removed_b = -1;  // old edge indices merged away
    // Side correspondence: side s of the merged edge equals side
    // side_of_a(s) of old edge `removed_a` (both name the same band arc).
    int side_of_a[2] = {0, 1};
};

inline std::optional<SmoothResult> smooth_degree2(const FatGraph& g, int v,
                                                  const std::string& merged_name) {
    if (g.degree(v) != 2) return std::nullopt;
    HalfEdge ha = g.rotations[v][0], hb = g.rotations[v][1];
    if (ha.edge == hb.edge) return std::nullopt;  // loop closure is not a graph
    SmoothResult res;
    res.removed_a = ha.edge;
    res.removed_b = hb.edge;
    const EdgeRec& ea = g.edges[ha.edge];
    const EdgeRec& eb = g.edges[hb.edge];
    HalfEdge far_a{ha.edge, 1 - ha.end};
    HalfEdge far_b{hb.edge, 1 - hb.end};

    FatGraph out;
    std::vector<int> vmap(g.num_vertices(), -1);
    for (int w = 0; w < g.num_vertices(); ++w)
        if (w != v) vmap[w] = out.add_vertex(g.vertex_names[w]);
    res.edge_map.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (e == ha.edge || e == hb.edge) continue;
        EdgeRec r = g.edges[e];
        r.v[0] = vmap[r.v[0]];
        r.v[1] = vmap[r.v[1]];
        res.edge_map[e] = static_cast<int>(out.edges.size());
        out.edges.push_back(r);
    }
    EdgeRec merged;
    merged.name = merged_name;
    merged.v[0] = vmap[g.vertex_of(far_a)];
    merged.v[1] = vmap[g.vertex_of(far_b)];
    merged.twist = ea.twist ^ eb.twist;
    res.merged_edge = static_cast<int>(out.edges.size());
    out.edges.push_back(merged);

    for (int w = 0; w < g.num_vertices(); ++w) {
        if (w == v) continue;
        for (HalfEdge h : g.rotations[w]) {
            if (h == far_a)
                out.rotations[vmap[w]].push_back({res.merged_edge, 0});
            else if (h == far_b)
                out.rotations[vmap[w]].push_back({res.merged_edge, 1});
            else if (res.edge_map[h.edge] >= 0)
                out.rotations[vmap[w]].push_back({res.edge_map[h.edge], h.end});
        }
    }

    // Merged side m has extremity m at far_a. Translate to old edge a's own
    // side labels, which are defined at a's end 0.
    for (int m = 0; m < 2; ++m) {
        int s = (far_a.end == 0) ? m : (m ^ 1 ^ (ea.twist ? 1 : 0));
        res.side_of_a[m] = s;
    }
    res.graph = std::move(out);
    return res;
}

}  // namespace fatsurf
