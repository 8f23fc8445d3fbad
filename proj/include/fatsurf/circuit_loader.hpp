#pragma once

// Reconstructs a signed rotation system from a circuit presentation: a
// graph plus the boundary circuits as cyclic words of directed edge
// traversals. Fails when the corner adjacencies of the circuits do not form
// a single circular order at some vertex.
//
// The rotation at each vertex is the corner-adjacency cycle. Twists are
// recovered by solving a small GF(2) system linking the unknown departure
// extremities of consecutive steps; leftover degrees of freedom are vertex
// flips and are fixed to zero. The reconstruction is verified by re-tracing.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fatsurf/fatgraph.hpp"
#include "fatsurf/gf2.hpp"

namespace fatsurf {

struct CircuitPresentation {
    std::vector<std::string> vertex_names;
    // name, endpoint 0 name, endpoint 1 name (twists are not part of the
    // presentation; they are what the loader reconstructs)
    struct PEdge {
        std::string name, v0, v1;
    };
    std::vector<PEdge> edges;
    // dir 0 traverses from endpoint 0 to endpoint 1
    std::vector<std::vector<std::pair<std::string, int>>> circuits;
};

struct CircuitLoadResult {
    std::optional<FatGraph> graph;
    std::vector<std::string> problems;
    bool ok() const { return graph.has_value(); }
};



inline CircuitLoadResult load_from_circuits(const CircuitPresentation& pres) {
    CircuitLoadResult res;
    FatGraph g;
    for (const auto& vn : pres.vertex_names) g.add_vertex(vn);
    for (const auto& pe : pres.edges) {
        EdgeRec r;
        r.name = pe.name;
        r.v[0] = g.vertex_index(pe.v0);
        r.v[1] = g.vertex_index(pe.v1);
        r.twist = false;
        if (r.v[0] < 0 || r.v[1] < 0) {
            res.problems.push_back("edge '" + pe.name + "' has unknown endpoint");
            return res;
        }
        g.edges.push_back(r);
    }
    if (g.num_edges() == 0) {
        if (g.num_vertices() == 1 && pres.circuits.size() <= 1) {
            res.graph = std::move(g);
            return res;
        }
        res.problems.push_back("edgeless presentation must be a single vertex");
        return res;
    }

    struct FlatStep {
        int circuit, pos;
        int edge, dir;
    };
    std::vector<FlatStep> steps;
    std::vector<int> circuit_len;
    std::vector<std::vector<int>> edge_steps(g.num_edges());
    for (int ci = 0; ci < static_cast<int>(pres.circuits.size()); ++ci) {
        const auto& cw = pres.circuits[ci];
        if (cw.empty()) {
            res.problems.push_back("circuit " + std::to_string(ci) + " is empty");
            return res;
        }
        circuit_len.push_back(static_cast<int>(cw.size()));
        for (int k = 0; k < static_cast<int>(cw.size()); ++k) {
            int e = g.edge_index(cw[k].first);
            if (e < 0) {
                res.problems.push_back("circuit references unknown edge '" + cw[k].first + "'");
                return res;
            }
            edge_steps[e].push_back(static_cast<int>(steps.size()));
            steps.push_back({ci, k, e, cw[k].second & 1});
        }
    }
    for (int e = 0; e < g.num_edges(); ++e)
        if (edge_steps[e].size() != 2) {
            res.problems.push_back("edge '" + g.edges[e].name + "' traversed " +
                                   std::to_string(edge_steps[e].size()) + " times, expected 2");
            return res;
        }

    auto head_half = [&](const FlatStep& s) { return HalfEdge{s.edge, s.dir == 0 ? 1 : 0}; };
    auto tail_half = [&](const FlatStep& s) { return HalfEdge{s.edge, s.dir == 0 ? 0 : 1}; };

    // Corner pairs between consecutive steps define adjacency of half-edges
    // around the shared vertex.
    int n_steps = static_cast<int>(steps.size());
    std::vector<int> step_base(pres.circuits.size(), 0);
    for (int ci = 1; ci < static_cast<int>(pres.circuits.size()); ++ci)
        step_base[ci] = step_base[ci - 1] + circuit_len[ci - 1];
    auto next_step = [&](int s) {
        const FlatStep& fs = steps[s];
        return step_base[fs.circuit] + (fs.pos + 1) % circuit_len[fs.circuit];
    };

    std::vector<std::vector<std::pair<HalfEdge, HalfEdge>>> corner_pairs(g.num_vertices());
    for (int s = 0; s < n_steps; ++s) {
        HalfEdge arr = head_half(steps[s]);
        HalfEdge dep = tail_half(steps[next_step(s)]);
        if (g.vertex_of(arr) != g.vertex_of(dep)) {
            res.problems.push_back("circuit " + std::to_string(steps[s].circuit) +
                                   " is not a walk: consecutive steps meet different vertices");
            return res;
        }
        corner_pairs[g.vertex_of(arr)].push_back({arr, dep});
    }

    // Walk the corner multigraph at each vertex into a single cycle.
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<HalfEdge> local;
        for (int e = 0; e < g.num_edges(); ++e)
            for (int end = 0; end < 2; ++end)
                if (g.edges[e].v[end] == v) local.push_back({e, end});
        std::sort(local.begin(), local.end());
        if (local.empty()) {
            res.problems.push_back("vertex '" + g.vertex_names[v] + "' is isolated");
            return res;
        }
        if (corner_pairs[v].size() != local.size()) {
            res.problems.push_back("corner count mismatch at vertex '" + g.vertex_names[v] + "'");
            return res;
        }
        std::map<HalfEdge, std::vector<std::pair<HalfEdge, int>>> adj;  // (neighbor, pair id)
        for (int i = 0; i < static_cast<int>(corner_pairs[v].size()); ++i) {
            auto [a, b] = corner_pairs[v][i];
            adj[a].push_back({b, i});
            adj[b].push_back({a, i});
        }
        for (HalfEdge h : local)
            if (adj[h].size() != 2) {
                res.problems.push_back("corners at vertex '" + g.vertex_names[v] +
                                       "' do not form a single circular order");
                return res;
            }
        std::vector<char> used(corner_pairs[v].size(), 0);
        std::vector<HalfEdge> cycle{local[0]};
        HalfEdge cur = local[0];
        for (size_t n = 0; n < local.size(); ++n) {
            const auto& options = adj[cur];
            int pick = -1;  // lowest unused pair id, for determinism
            for (int oi = 0; oi < static_cast<int>(options.size()); ++oi)
                if (!used[options[oi].second] && pick < 0) pick = oi;
            if (pick < 0) break;
            used[options[pick].second] = 1;
            cur = options[pick].first;
            if (n + 1 < local.size()) cycle.push_back(cur);
        }
        bool closed = (cur == local[0]) && cycle.size() == local.size();
        for (char u : used)
            if (!u) closed = false;
        if (!closed) {
            res.problems.push_back("corners at vertex '" + g.vertex_names[v] +
                                   "' do not form a single circular order");
            return res;
        }
        g.rotations[v] = cycle;
    }

    // GF(2) unknowns: departure extremity a_s per step, twist t_e per edge.
    // Crossing plus corner walk gives a_next = a_s xor t_e. Corners at
    // vertices of degree >= 3 pin a_next from the rotation. The two
    // traversals of an edge must use distinct sides.
    int vars = n_steps + g.num_edges();
    detail::Gf2System sys(vars);
    auto a_var = [&](int s) { return s; };
    auto t_var = [&](int e) { return n_steps + e; };
    for (int s = 0; s < n_steps; ++s) {
        int ns = next_step(s);
        sys.add_relation({a_var(s), a_var(ns), t_var(steps[s].edge)}, 0);
        HalfEdge arr = head_half(steps[s]);
        HalfEdge dep = tail_half(steps[ns]);
        int v = g.vertex_of(arr);
        const auto& rot = g.rotations[v];
        int len = static_cast<int>(rot.size());
        if (len >= 3) {
            int p = g.rotation_position(arr);
            HalfEdge succ = rot[(p + 1) % len];
            HalfEdge pred = rot[(p - 1 + len) % len];
            int x_arr;
            if (dep == succ)
                x_arr = 1;
            else if (dep == pred)
                x_arr = 0;
            else {
                res.problems.push_back("corner adjacency inconsistent at vertex '" +
                                       g.vertex_names[v] + "'");
                return res;
            }
            sys.add_relation({a_var(ns)}, x_arr ^ 1);
        }
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        int s0 = edge_steps[e][0], s1 = edge_steps[e][1];
        int end0 = tail_half(steps[s0]).end;
        int end1 = tail_half(steps[s1]).end;
        if (end0 == end1) {
            sys.add_relation({a_var(s0), a_var(s1)}, 1);
        } else {
            sys.add_relation({a_var(s0), a_var(s1), t_var(e)}, 0);
        }
    }
    auto solution = sys.solve();
    if (!solution) {
        res.problems.push_back("circuits admit no consistent twist assignment");
        return res;
    }
    for (int e = 0; e < g.num_edges(); ++e) g.edges[e].twist = (*solution)[t_var(e)] != 0;

    ValidationReport vr = validate_fatgraph(g);
    if (!vr.ok()) {
        res.problems = vr.problems;
        return res;
    }

    // The reconstruction must re-trace to the given circuits.
    std::vector<std::vector<std::pair<int, int>>> want, got;
    for (const auto& cw : pres.circuits) {
        Circuit c;
        for (auto& [en, dir] : cw) c.steps.push_back({g.edge_index(en), 0, dir & 1});
        want.push_back(circuit_word(c));
    }
    for (const Circuit& c : boundary_circuits(g)) got.push_back(circuit_word(c));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) {
        res.problems.push_back("reconstructed rotation system does not reproduce the circuits");
        return res;
    }
    res.graph = std::move(g);
    return res;
}

}  // namespace fatsurf
