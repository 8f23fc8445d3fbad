#pragma once

// Tame animals: an organism together with the closed surface it lives on
// and coherent boundary orientations per cell. Cells glue onto the ribbon
// as holed spheres, which pins the Euler characteristic to
//
//     chi = (V - E) + sum over cells of (2 - b_C)
//
// and makes orientability decidable by a parity system over vertex-disk
// flips and whole-cell flips: side s of an edge, traversed with direction d
// by a circuit oriented o in cell C, glues orientably iff
//
//     r_u xor c_C = d xor o xor s xor 1      (u = endpoint 0 of the edge)
//
// together with r_u xor r_w = twist along every edge.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fatsurf/gf2.hpp"
#include "fatsurf/mitosis.hpp"
#include "fatsurf/organism.hpp"

namespace fatsurf {

struct TameAnimal {
    Organism organism;
    SurfaceClass surface;
    std::vector<int> orientation;  // per circuit: 0 traverses the canonical trace direction
};

inline int tame_euler_identity(const Organism& o) {
    int chi = o.graph.num_vertices() - o.graph.num_edges();
    for (const Cell& c : o.cells) chi += 2 - static_cast<int>(c.circuits.size());
    return chi;
}

namespace detail {

// Satisfiability of the gluing parity system given fixed circuit
// orientations decides orientability of the glued surface.
inline bool gluing_orientable(const Organism& o, const std::vector<int>& orientation) {
    const FatGraph& g = o.graph;
    std::vector<Circuit> circuits = boundary_circuits(g);
    int nv = g.num_vertices();
    int ncells = static_cast<int>(o.cells.size());
    ParityUnionFind uf(nv + ncells);
    for (int e = 0; e < g.num_edges(); ++e) {
        const EdgeRec& r = g.edges[e];
        if (!uf.relate(r.v[0], r.v[1], r.twist ? 1 : 0)) return false;
    }
    std::vector<int> cell_of(circuits.size(), -1);
    for (int i = 0; i < ncells; ++i)
        for (int ci : o.cells[i].circuits) cell_of[ci] = i;
    for (int ci = 0; ci < static_cast<int>(circuits.size()); ++ci) {
        for (const Step& s : circuits[ci].steps) {
            int u = g.edges[s.edge].v[0];
            int rhs = s.dir ^ orientation[ci] ^ s.side ^ 1;
            if (!uf.relate(u, nv + cell_of[ci], rhs)) return false;
        }
    }
    return true;
}

}  // namespace detail

inline ValidationReport verify_tame(const TameAnimal& t) {
    ValidationReport rep = validate_organism(t.organism);
    if (!rep.ok()) return rep;
    size_t f = boundary_circuits(t.organism.graph).size();
    if (t.orientation.size() != f)
        rep.fail("orientation table covers " + std::to_string(t.orientation.size()) +
                 " circuits, expected " + std::to_string(f));
    if (!t.surface.orientable && t.surface.genus < 1)
        rep.fail("non-orientable surface needs at least one crosscap");
    int chi = tame_euler_identity(t.organism);
    if (chi != t.surface.euler())
        rep.fail("euler identity: cells give " + std::to_string(chi) + ", surface has " +
                 std::to_string(t.surface.euler()));
    if (!rep.ok()) return rep;
    if (t.surface.orientable && !graph_orientable(t.organism.graph))
        rep.fail("orientable surface over a non-orientable fat graph");
    bool computed = detail::gluing_orientable(t.organism, t.orientation);
    if (computed != t.surface.orientable)
        rep.fail(std::string("orientation bookkeeping gives ") +
                 (computed ? "an orientable" : "a non-orientable") + " gluing, surface is " +
                 (t.surface.orientable ? "orientable" : "non-orientable"));
    return rep;
}

inline SurfaceClass connected_sum(const SurfaceClass& a, const SurfaceClass& b) {
    SurfaceClass out;
    out.orientable = a.orientable && b.orientable;
    int chi = a.euler() + b.euler() - 2;
    out.genus = out.orientable ? (2 - chi) / 2 : (2 - chi);
    return out;
}

// Surface change of a benign mitosis.
inline std::optional<SurfaceClass> surface_effect(const SurfaceClass& base, ExtensionTag tag,
                                                  bool split) {
    switch (tag) {
        case ExtensionTag::Type0: return base;
        case ExtensionTag::Type1_1: return connected_sum(base, SurfaceClass::projective_plane());
        case ExtensionTag::Type1_2:
            return split ? base : connected_sum(base, SurfaceClass::torus());
        case ExtensionTag::Type2: return base;  // the benign twin only
    }
    return std::nullopt;
}

// Which summand a type-1 mitosis contributes.
inline SurfaceClass summand_of(ExtensionTag tag, bool split) {
    if (tag == ExtensionTag::Type1_1) return SurfaceClass::projective_plane();
    if (tag == ExtensionTag::Type1_2 && !split) return SurfaceClass::torus();
    return SurfaceClass::sphere();
}

namespace detail {

// Direction of the run of `circuit`'s steps inside `host`: 0 when they
// appear with their canonical directions, 1 when reversed. Falls back to
// nullopt when no step of the circuit occurs in the host.
inline std::optional<int> run_direction(const Circuit& circuit, const Circuit& host) {
    for (const Step& s : circuit.steps) {
        for (const Step& h : host.steps) {
            if (h.edge == s.edge && h.side == s.side) return h.dir == s.dir ? 0 : 1;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// The benign member of a type-2 twin pair: the splice threading both
// divided circuits along their cell-coherent orientations.
struct BenignTwinResult {
    ExtensionSpec spec;
    std::string error;
    bool ok() const { return error.empty(); }
};

inline BenignTwinResult benign_twin(const TameAnimal& t, const ExtensionSpec& s) {
    BenignTwinResult out;
    auto eff = extension_effect(t.organism.graph, s);
    if (!eff || eff->type.tag != ExtensionTag::Type2) {
        out.error = "spec is not a type 2 extension";
        return out;
    }
    int c1 = eff->type.divided[0], c2 = eff->type.divided[1];
    if (t.organism.cell_of_circuit(c1) != t.organism.cell_of_circuit(c2)) {
        out.error = "divided circuits lie in different cells";
        return out;
    }
    auto coherent = [&](const ExtensionEffect& e) -> std::optional<bool> {
        std::vector<Circuit> base = boundary_circuits(t.organism.graph);
        std::vector<Circuit> after = boundary_circuits(e.extended);
        const Circuit& merged = after[e.new_circuits[0]];
        auto r1 = detail::run_direction(base[c1], merged);
        auto r2 = detail::run_direction(base[c2], merged);
        if (!r1 || !r2) return std::nullopt;
        return (*r1 ^ t.orientation[c1]) == (*r2 ^ t.orientation[c2]);
    };
    auto here = coherent(*eff);
    auto twin_spec = twin_of(s);
    auto twin_eff = extension_effect(t.organism.graph, *twin_spec);
    auto there = twin_eff ? coherent(*twin_eff) : std::nullopt;
    if (here.has_value() && *here && there.has_value() && *there) {
        out.error = "internal consistency failure: both twins thread coherently";
        return out;
    }
    if (here.has_value() && *here) {
        out.spec = s;
        return out;
    }
    if (there.has_value() && *there) {
        out.spec = *twin_spec;
        return out;
    }
    out.error = "internal consistency failure: neither twin threads coherently";
    return out;
}

struct TameMitosisResult {
    TameAnimal animal;
    ExtensionType type;
    std::vector<int> circuit_map;
    std::vector<int> new_circuits;
    int fresh_cell_id = -1;
    std::string error;
    bool ok() const { return error.empty(); }
};

// Advance a tame animal by a benign mitosis: organism bookkeeping, exact
// surface arithmetic, and orientation extension. New circuits inherit the
// direction of the divided run they carry; when a new circuit carries no
// old step the bits of the new circuits are searched so the result stays
// consistent with the declared surface.
inline TameMitosisResult apply_benign_mitosis(const TameAnimal& t, const MitosisRecord& m) {
    TameMitosisResult res;
    auto classified = classify_extension(t.organism.graph, m.spec);
    if (!classified) {
        res.error = "extension does not apply";
        return res;
    }
    if (classified->tag == ExtensionTag::Type2) {
        BenignTwinResult bt = benign_twin(t, m.spec);
        if (!bt.ok()) {
            res.error = bt.error;
            return res;
        }
        if (!(bt.spec == m.spec)) {
            res.error = "cancerous type 2 mitosis: treat it first";
            return res;
        }
    }
    MitosisResult mr = apply_mitosis(t.organism, m);
    if (!mr.ok()) {
        res.error = mr.error;
        return res;
    }
    auto new_surface =
        surface_effect(t.surface, classified->tag, classified->tag == ExtensionTag::Type1_2 && m.split);
    if (!new_surface) {
        res.error = "no surface effect";
        return res;
    }

    std::vector<Circuit> before = boundary_circuits(t.organism.graph);
    std::vector<Circuit> after = boundary_circuits(mr.organism.graph);
    std::vector<int> orient(after.size(), -1);
    for (int i = 0; i < static_cast<int>(before.size()); ++i)
        if (mr.circuit_map[i] >= 0) orient[mr.circuit_map[i]] = t.orientation[i];

    std::vector<int> undecided;
    for (int nc : mr.new_circuits) {
        std::optional<int> assigned;
        for (int d : mr.type.divided) {
            auto run = detail::run_direction(before[d], after[nc]);
            if (run) {
                assigned = t.orientation[d] ^ *run;
                break;
            }
        }
        if (assigned)
            orient[nc] = *assigned;
        else
            undecided.push_back(nc);
    }
    for (int nc : undecided) orient[nc] = 0;

    TameAnimal out;
    out.organism = mr.organism;
    out.surface = *new_surface;
    out.orientation = orient;

    if (detail::gluing_orientable(out.organism, out.orientation) != out.surface.orientable) {
        // Search the new circuits' bits for a consistent extension.
        int k = static_cast<int>(mr.new_circuits.size());
        bool fixed = false;
        for (int mask = 1; mask < (1 << k) && !fixed; ++mask) {
            std::vector<int> probe = orient;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) probe[mr.new_circuits[i]] ^= 1;
            if (detail::gluing_orientable(out.organism, probe) == out.surface.orientable) {
                out.orientation = probe;
                fixed = true;
            }
        }
        if (!fixed) {
            res.error = "internal consistency failure: no orientation extension matches the surface";
            return res;
        }
    }

    res.animal = std::move(out);
    res.type = *classified;
    res.circuit_map = mr.circuit_map;
    res.new_circuits = mr.new_circuits;
    res.fresh_cell_id = mr.fresh_cell_id;
    return res;
}

// Construct a tame animal over a declared surface, choosing orientations.
inline std::optional<TameAnimal> make_tame(const Organism& o, const SurfaceClass& surface) {
    if (tame_euler_identity(o) != surface.euler()) return std::nullopt;
    if (!surface.orientable && surface.genus < 1) return std::nullopt;
    const FatGraph& g = o.graph;
    std::vector<Circuit> circuits = boundary_circuits(g);
    int f = static_cast<int>(circuits.size());
    TameAnimal t;
    t.organism = o;
    t.surface = surface;
    t.orientation.assign(f, 0);

    if (!surface.orientable) {
        if (detail::gluing_orientable(o, t.orientation) == false) return t;
        // Orientable gluing over an orientable graph: break one circuit.
        for (int ci = 0; ci < f; ++ci) {
            t.orientation[ci] ^= 1;
            if (!detail::gluing_orientable(o, t.orientation)) return t;
            t.orientation[ci] ^= 1;
        }
        return std::nullopt;
    }

    if (!graph_orientable(g)) return std::nullopt;
    // Solve for orientations: unknowns are r_v, c_C, o_ci.
    int nv = g.num_vertices();
    int ncells = static_cast<int>(o.cells.size());
    detail::Gf2System sys(nv + ncells + f);
    std::vector<int> cell_of(f, -1);
    for (int i = 0; i < ncells; ++i)
        for (int ci : o.cells[i].circuits) cell_of[ci] = i;
    for (int e = 0; e < g.num_edges(); ++e)
        sys.add_relation({g.edges[e].v[0], g.edges[e].v[1]}, g.edges[e].twist ? 1 : 0);
    for (int ci = 0; ci < f; ++ci)
        for (const Step& s : circuits[ci].steps)
            sys.add_relation({g.edges[s.edge].v[0], nv + cell_of[ci], nv + ncells + ci},
                             s.dir ^ s.side ^ 1);
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    for (int ci = 0; ci < f; ++ci) t.orientation[ci] = (*sol)[nv + ncells + ci];
    // Per-cell normal form: the lowest circuit of each cell runs forward.
    for (const Cell& c : o.cells) {
        int low = *c.circuits.begin();
        if (t.orientation[low] == 1)
            for (int ci : c.circuits) t.orientation[ci] ^= 1;
    }
    if (!verify_tame(t).ok()) return std::nullopt;
    return t;
}

// The seed: an untwisted loop on the sphere, its two disk cells.
inline TameAnimal seed_sphere_animal() {
    FatGraph g;
    int v = g.add_vertex("v0");
    g.edges.push_back({"a0", {v, v}, false});
    g.rotations[v] = {{0, 0}, {0, 1}};
    Organism o = make_organism(std::move(g), {{0}, {1}});
    auto t = make_tame(o, SurfaceClass::sphere());
    return *t;
}

}  // namespace fatsurf
