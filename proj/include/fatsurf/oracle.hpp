#pragma once

// Independent surface classifier: builds the closed 2-complex explicitly,
// one polygon per boundary circuit glued along matching edge sides, then
// counts cells and propagates face orientations.
//
// This deliberately shares nothing with surface_class() beyond the traced
// circuits themselves: the 0-cells are recovered as corner orbits of the
// polygon gluing (not read off the graph), and orientability comes from
// 2-coloring faces across shared edges (not from twist parities).

#include <vector>

#include "fatsurf/fatgraph.hpp"

namespace fatsurf {

namespace detail {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int classes() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i)
            if (find(i) == i) ++c;
        return c;
    }
};

}  // namespace detail

inline SurfaceClass oracle_classify(const FatGraph& g) {
    if (g.num_edges() == 0) return SurfaceClass::sphere();
    std::vector<Circuit> circuits = boundary_circuits(g);
    int f = static_cast<int>(circuits.size());

    // Locate the two traversals of every edge.
    struct Traversal {
        int face = -1, pos = -1, dir = 0;
        int len = 0;
    };
    std::vector<std::vector<Traversal>> uses(g.num_edges());
    std::vector<int> offset(f, 0);
    int total = 0;
    for (int i = 0; i < f; ++i) {
        offset[i] = total;
        total += static_cast<int>(circuits[i].steps.size());
        for (int k = 0; k < static_cast<int>(circuits[i].steps.size()); ++k) {
            const Step& s = circuits[i].steps[k];
            uses[s.edge].push_back({i, k, s.dir, static_cast<int>(circuits[i].steps.size())});
        }
    }

    // Corner (i, k) sits before step k of polygon i; the tail corner of a
    // forward traversal lies at endpoint 0, its head corner at endpoint 1.
    auto corner_id = [&](int face, int k, int len) { return offset[face] + ((k % len + len) % len); };
    detail::DisjointSet corners(total);
    auto end0_corner = [&](const Traversal& t) {
        return t.dir == 0 ? corner_id(t.face, t.pos, t.len) : corner_id(t.face, t.pos + 1, t.len);
    };
    auto end1_corner = [&](const Traversal& t) {
        return t.dir == 0 ? corner_id(t.face, t.pos + 1, t.len) : corner_id(t.face, t.pos, t.len);
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& u = uses[e];
        if (u.size() != 2) return {false, -1};  // not a surface gluing
        corners.unite(end0_corner(u[0]), end0_corner(u[1]));
        corners.unite(end1_corner(u[0]), end1_corner(u[1]));
    }
    int zero_cells = corners.classes();
    int chi = zero_cells - g.num_edges() + f;

    // Face 2-coloring: gluing along an edge is orientation-consistent when
    // the two traversals run in opposite directions.
    std::vector<int> color(f, -1);
    bool orientable = true;
    for (int start = 0; start < f && orientable; ++start) {
        if (color[start] >= 0) continue;
        color[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty() && orientable) {
            int face = stack.back();
            stack.pop_back();
            for (int e = 0; e < g.num_edges(); ++e) {
                const auto& u = uses[e];
                if (u[0].face != face && u[1].face != face) continue;
                int need = (u[0].dir == u[1].dir) ? 1 : 0;
                if (u[0].face == u[1].face) {
                    if (need == 1) orientable = false;
                    continue;
                }
                int other = (u[0].face == face) ? u[1].face : u[0].face;
                int want = color[face] ^ need;
                if (color[other] < 0) {
                    color[other] = want;
                    stack.push_back(other);
                } else if (color[other] != want) {
                    orientable = false;
                }
            }
        }
    }

    SurfaceClass sc;
    sc.orientable = orientable;
    sc.genus = orientable ? (2 - chi) / 2 : (2 - chi);
    return sc;
}

}  // namespace fatsurf
