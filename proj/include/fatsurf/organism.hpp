#pragma once

// Organisms: a fat graph together with a partition of its boundary circuits
// into cells, and the induced sub-organism relation.
//
// Circuits are addressed by their deterministic trace index. Cell ids are
// stable under operations that do not touch the cell.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fatsurf/fatgraph.hpp"
#include "fatsurf/oracle.hpp"

namespace fatsurf {

struct Cell {
    int id = -1;
    std::set<int> circuits;
};

struct Organism {
    FatGraph graph;
    std::vector<Cell> cells;
    int next_cell_id = 0;

    int cell_of_circuit(int circuit) const {
        for (int i = 0; i < static_cast<int>(cells.size()); ++i)
            if (cells[i].circuits.count(circuit)) return i;
        return -1;
    }
    const Cell* cell_by_id(int id) const {
        for (const Cell& c : cells)
            if (c.id == id) return &c;
        return nullptr;
    }
    Cell* cell_by_id(int id) {
        for (Cell& c : cells)
            if (c.id == id) return &c;
        return nullptr;
    }
    int allocate_cell_id() { return next_cell_id++; }
};

inline Organism make_organism(FatGraph g, const std::vector<std::set<int>>& partition) {
    Organism o;
    o.graph = std::move(g);
    for (const auto& part : partition) o.cells.push_back({o.next_cell_id++, part});
    return o;
}

// Every circuit in its own cell.
inline Organism discrete_organism(FatGraph g) {
    size_t f = boundary_circuits(g).size();
    std::vector<std::set<int>> parts;
    for (size_t i = 0; i < f; ++i) parts.push_back({static_cast<int>(i)});
    return make_organism(std::move(g), parts);
}

inline ValidationReport validate_organism(const Organism& o) {
    ValidationReport rep = validate_fatgraph(o.graph);
    if (!rep.ok()) return rep;
    int f = static_cast<int>(boundary_circuits(o.graph).size());
    std::vector<int> owner(f, -1);
    std::set<int> ids;
    for (const Cell& c : o.cells) {
        if (!ids.insert(c.id).second) rep.fail("duplicate cell id " + std::to_string(c.id));
        if (c.circuits.empty()) rep.fail("empty cell " + std::to_string(c.id));
        for (int ci : c.circuits) {
            if (ci < 0 || ci >= f) {
                rep.fail("cell " + std::to_string(c.id) + " references unknown circuit " +
                         std::to_string(ci));
                continue;
            }
            if (owner[ci] >= 0)
                rep.fail("not a partition: circuit " + std::to_string(ci) +
                         " appears in two cells");
            owner[ci] = c.id;
        }
    }
    for (int ci = 0; ci < f; ++ci)
        if (owner[ci] < 0)
            rep.fail("not a partition: circuit " + std::to_string(ci) + " unassigned");
    return rep;
}

// Restriction of an organism to a connected subgraph. Two sided edges of
// the ambient graph are equivalent when they share a cell or are the two
// sides of a removed edge; cells of the restriction are the classes.
inline std::optional<Organism> induced_suborganism(const Organism& big,
                                                   const std::set<int>& vertices,
                                                   const std::set<int>& edge_subset,
                                                   std::vector<int>* edge_map_out = nullptr) {
    std::vector<int> emap;
    FatGraph sub = induced_subfatgraph(big.graph, vertices, edge_subset, &emap);
    if (!validate_fatgraph(sub).ok()) return std::nullopt;
    if (edge_map_out) *edge_map_out = emap;

    std::vector<Circuit> big_circuits = boundary_circuits(big.graph);
    std::vector<Circuit> sub_circuits = boundary_circuits(sub);

    Organism out;
    out.graph = std::move(sub);

    if (edge_subset.empty()) {
        // A single vertex: one empty circuit, one cell.
        out.cells.push_back({out.next_cell_id++, {0}});
        return out;
    }

    int ne = big.graph.num_edges();
    detail::DisjointSet classes(2 * ne);
    for (const Cell& cell : big.cells) {
        int anchor = -1;
        for (int ci : cell.circuits) {
            for (const Step& s : big_circuits[ci].steps) {
                int key = 2 * s.edge + s.side;
                if (anchor < 0)
                    anchor = key;
                else
                    classes.unite(anchor, key);
            }
        }
    }
    for (int e = 0; e < ne; ++e)
        if (!edge_subset.count(e)) classes.unite(2 * e + 0, 2 * e + 1);

    // Sides keep their bit under restriction, so a sub sided edge (e', s)
    // is the ambient sided edge (emap^-1(e'), s).
    std::vector<int> back(out.graph.num_edges(), -1);
    for (int e = 0; e < ne; ++e)
        if (emap[e] >= 0) back[emap[e]] = e;

    std::map<int, std::set<int>> by_class;
    for (int ci = 0; ci < static_cast<int>(sub_circuits.size()); ++ci) {
        const Step& s = sub_circuits[ci].steps.front();
        int key = 2 * back[s.edge] + s.side;
        by_class[classes.find(key)].insert(ci);
    }
    for (auto& [cls, circuits] : by_class) out.cells.push_back({out.next_cell_id++, circuits});
    return out;
}

inline std::optional<Organism> induced_suborganism(const Organism& big,
                                                   const std::set<int>& edge_subset,
                                                   std::vector<int>* edge_map_out = nullptr) {
    std::set<int> verts;
    for (int e : edge_subset) {
        verts.insert(big.graph.edges[e].v[0]);
        verts.insert(big.graph.edges[e].v[1]);
    }
    return induced_suborganism(big, verts, edge_subset, edge_map_out);
}

namespace detail {

// Match circuits of two fat graphs related by an edge map that preserves
// end order and side bits. Returns, per circuit of `a`, the index of the
// circuit of `b` holding the image sided edges, or nullopt on mismatch.
inline std::optional<std::vector<int>> match_circuits(const std::vector<Circuit>& a,
                                                      const std::vector<Circuit>& b,
                                                      const std::vector<int>& edge_map) {
    std::map<std::pair<int, int>, int> where_b;
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
        for (const Step& s : b[i].steps) where_b[{s.edge, s.side}] = i;
    std::vector<int> match(a.size(), -1);
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        for (const Step& s : a[i].steps) {
            auto it = where_b.find({edge_map[s.edge], s.side});
            if (it == where_b.end()) return std::nullopt;
            if (match[i] < 0)
                match[i] = it->second;
            else if (match[i] != it->second)
                return std::nullopt;
        }
        if (match[i] < 0) return std::nullopt;  // empty circuit cannot match
    }
    return match;
}

inline bool cyclic_equal(const std::vector<HalfEdge>& a, const std::vector<HalfEdge>& b) {
    if (a.size() != b.size()) return false;
    size_t n = a.size();
    if (n == 0) return true;
    for (size_t off = 0; off < n; ++off) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(off + i) % n];
        if (ok) return true;
    }
    return false;
}

}  // namespace detail

// Suppress a degree-2 vertex at the organism level. Circuits only contract,
// so cells carry over one for one.
struct OrganismSmoothResult {
    Organism organism;
    std::vector<int> edge_map;  // old edge -> new edge, -1 for the merged pair
    int merged_edge = -1;
};

inline std::optional<OrganismSmoothResult> smooth_organism(const Organism& o, int vertex,
                                                           const std::string& merged_name) {
    auto sm = smooth_degree2(o.graph, vertex, merged_name);
    if (!sm) return std::nullopt;
    OrganismSmoothResult res;
    res.edge_map = sm->edge_map;
    res.merged_edge = sm->merged_edge;

    // Sided-edge correspondence into the smoothed graph. Sides of the two
    // merged edges land on the merged edge's sides.
    const EdgeRec& eb = o.graph.edges[sm->removed_b];
    HalfEdge hb = o.graph.rotations[vertex][1];
    int t_m = sm->graph.edges[sm->merged_edge].twist ? 1 : 0;
    int side_of_b[2];
    for (int m = 0; m < 2; ++m) {
        int x_fb = m ^ 1 ^ t_m;  // extremity at the far end of the second edge
        side_of_b[m] = (hb.end == 1) ? x_fb : (x_fb ^ 1 ^ (eb.twist ? 1 : 0));
    }
    auto map_side = [&](int e, int s) -> std::pair<int, int> {
        if (e == sm->removed_a) {
            for (int m = 0; m < 2; ++m)
                if (sm->side_of_a[m] == s) return {res.merged_edge, m};
        }
        if (e == sm->removed_b) {
            for (int m = 0; m < 2; ++m)
                if (side_of_b[m] == s) return {res.merged_edge, m};
        }
        return {res.edge_map[e], s};
    };

    std::vector<Circuit> before = boundary_circuits(o.graph);
    std::vector<Circuit> after = boundary_circuits(sm->graph);
    std::map<std::pair<int, int>, int> where;
    for (int j = 0; j < static_cast<int>(after.size()); ++j)
        for (const Step& st : after[j].steps) where[{st.edge, st.side}] = j;
    std::vector<int> match(before.size(), -1);
    for (int i = 0; i < static_cast<int>(before.size()); ++i) {
        if (before[i].steps.empty()) return std::nullopt;
        auto key = map_side(before[i].steps[0].edge, before[i].steps[0].side);
        auto it = where.find(key);
        if (it == where.end()) return std::nullopt;
        match[i] = it->second;
    }

    Organism out;
    out.graph = sm->graph;
    out.next_cell_id = o.next_cell_id;
    for (const Cell& c : o.cells) {
        Cell nc;
        nc.id = c.id;
        for (int ci : c.circuits) nc.circuits.insert(match[ci]);
        if (nc.circuits.size() != c.circuits.size()) return std::nullopt;
        out.cells.push_back(nc);
    }
    res.organism = std::move(out);
    return res;
}

// Strict sub-organism test. The embedding maps edge indices of `small` into
// `big`, preserving end order; the vertex map is derived from it. Rotations
// must restrict on the nose (vertex-flip gauge is not searched) and the
// induced cell partition must equal small's.
inline bool is_suborganism(const Organism& small, const Organism& big,
                           const std::vector<int>& edge_map) {
    const FatGraph& sg = small.graph;
    const FatGraph& bg = big.graph;
    if (static_cast<int>(edge_map.size()) != sg.num_edges()) return false;
    if (sg.num_edges() == 0) return false;
    std::set<int> image;
    for (int be : edge_map) {
        if (be < 0 || be >= bg.num_edges()) return false;
        if (!image.insert(be).second) return false;
    }
    // Vertex map from endpoints, end order preserved.
    std::vector<int> vmap(sg.num_vertices(), -1);
    for (int e = 0; e < sg.num_edges(); ++e) {
        if (sg.edges[e].twist != bg.edges[edge_map[e]].twist) return false;
        for (int end = 0; end < 2; ++end) {
            int sv = sg.edges[e].v[end];
            int bv = bg.edges[edge_map[e]].v[end];
            if (vmap[sv] < 0)
                vmap[sv] = bv;
            else if (vmap[sv] != bv)
                return false;
        }
    }
    for (int v = 0; v < sg.num_vertices(); ++v)
        if (vmap[v] < 0) return false;
    {
        std::set<int> distinct(vmap.begin(), vmap.end());
        if (distinct.size() != vmap.size()) return false;
    }
    // Rotations restrict exactly (as cyclic sequences).
    for (int v = 0; v < sg.num_vertices(); ++v) {
        std::vector<HalfEdge> expect;
        for (HalfEdge h : sg.rotations[v]) expect.push_back({edge_map[h.edge], h.end});
        std::vector<HalfEdge> got;
        for (HalfEdge h : bg.rotations[vmap[v]])
            if (image.count(h.edge)) got.push_back(h);
        if (!detail::cyclic_equal(expect, got)) return false;
    }

    auto induced = induced_suborganism(big, image);
    if (!induced) return false;

    // Compose small -> big -> induced on edges.
    std::vector<int> big_to_ind(bg.num_edges(), -1);
    {
        std::vector<int> emap;
        induced_subfatgraph(bg, image, &emap);
        big_to_ind = emap;
    }
    std::vector<int> small_to_ind(sg.num_edges());
    for (int e = 0; e < sg.num_edges(); ++e) small_to_ind[e] = big_to_ind[edge_map[e]];

    auto match = detail::match_circuits(boundary_circuits(sg), boundary_circuits(induced->graph),
                                        small_to_ind);
    if (!match) return false;

    std::set<std::set<int>> small_parts, induced_parts;
    for (const Cell& c : small.cells) {
        std::set<int> mapped;
        for (int ci : c.circuits) mapped.insert((*match)[ci]);
        if (mapped.size() != c.circuits.size()) return false;
        small_parts.insert(mapped);
    }
    for (const Cell& c : induced->cells) induced_parts.insert(c.circuits);
    return small_parts == induced_parts;
}

}  // namespace fatsurf
