#pragma once

// Elementary extensions of fat graphs and mitoses of organisms.
//
// An elementary extension adds a single edge. Its ends land at corners of
// the existing rotations (or at one fresh vertex). Corner i of a rotation
// inserts between positions i-1 and i; when both ends land on the same
// corner the end-0 half is placed immediately before the end-1 half.
//
// The splice bit selects between the two twin extensions sharing the same
// corners; it is realized as an extra flip of the new band, so the
// effective twist is twist xor splice.

#include <optional>
#include <string>
#include <vector>

#include "fatsurf/organism.hpp"

namespace fatsurf {

struct Attachment {
    bool new_endpoint = false;
    int vertex = -1;
    int corner = 0;

    static Attachment fresh() { return {true, -1, 0}; }
    static Attachment at(int vertex, int corner) { return {false, vertex, corner}; }
    friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct ExtensionSpec {
    std::string edge_name;  // empty selects a generated name
    Attachment ends[2];
    int splice = 0;
    int twist = 0;

    friend bool operator==(const ExtensionSpec&, const ExtensionSpec&) = default;
};

enum class ExtensionTag { Type0, Type1_1, Type1_2, Type2 };

inline std::string tag_name(ExtensionTag t) {
    switch (t) {
        case ExtensionTag::Type0: return "Type0";
        case ExtensionTag::Type1_1: return "Type1_1";
        case ExtensionTag::Type1_2: return "Type1_2";
        case ExtensionTag::Type2: return "Type2";
    }
    return "?";
}

struct ExtensionType {
    ExtensionTag tag = ExtensionTag::Type0;
    std::vector<int> divided;  // circuit indices of the base graph
    int new_circuits = 0;

    friend bool operator==(const ExtensionType&, const ExtensionType&) = default;
};

namespace detail {

inline bool attachment_ok(const FatGraph& g, const Attachment& a) {
    if (a.new_endpoint) return true;
    if (a.vertex < 0 || a.vertex >= g.num_vertices()) return false;
    int len = std::max(g.degree(a.vertex), 1);
    return a.corner >= 0 && a.corner < len;
}

}  // namespace detail

inline std::optional<FatGraph> apply_extension(const FatGraph& g, const ExtensionSpec& s) {
    if (s.ends[0].new_endpoint && s.ends[1].new_endpoint) return std::nullopt;
    if (!detail::attachment_ok(g, s.ends[0]) || !detail::attachment_ok(g, s.ends[1]))
        return std::nullopt;
    FatGraph out = g;
    int e = out.num_edges();
    EdgeRec rec;
    rec.name = s.edge_name.empty() ? out.fresh_edge_name("e") : s.edge_name;
    if (out.edge_index(rec.name) >= 0) return std::nullopt;
    rec.twist = ((s.twist ^ s.splice) & 1) != 0;

    int verts[2];
    for (int k = 0; k < 2; ++k)
        verts[k] = s.ends[k].new_endpoint ? out.add_vertex(out.fresh_vertex_name("v"))
                                          : s.ends[k].vertex;
    rec.v[0] = verts[0];
    rec.v[1] = verts[1];
    out.edges.push_back(rec);

    auto insert_half = [&](int end, int pos) {
        auto& rot = out.rotations[verts[end]];
        rot.insert(rot.begin() + pos, HalfEdge{e, end});
    };
    if (s.ends[0].new_endpoint) {
        out.rotations[verts[0]].push_back({e, 0});
        insert_half(1, s.ends[1].corner);
    } else if (s.ends[1].new_endpoint) {
        out.rotations[verts[1]].push_back({e, 1});
        insert_half(0, s.ends[0].corner);
    } else if (verts[0] != verts[1]) {
        insert_half(0, s.ends[0].corner);
        insert_half(1, s.ends[1].corner);
    } else {
        int i0 = s.ends[0].corner, i1 = s.ends[1].corner;
        if (i0 >= i1) {  // larger index first keeps the other position valid
            insert_half(0, i0);
            insert_half(1, i1);
        } else {
            insert_half(1, i1);
            insert_half(0, i0);
        }
    }
    return out;
}

// Circuits of the base that survive keep their exact step sequence, so
// divided and new circuits fall out of a literal comparison.
struct ExtensionEffect {
    FatGraph extended;
    ExtensionType type;
    std::vector<int> circuit_map;    // base circuit -> extended circuit, -1 if divided
    std::vector<int> new_circuits;   // extended circuit indices
};

inline std::optional<ExtensionEffect> extension_effect(const FatGraph& g,
                                                       const ExtensionSpec& s) {
    auto extended = apply_extension(g, s);
    if (!extended) return std::nullopt;
    ExtensionEffect eff;
    eff.extended = std::move(*extended);
    std::vector<Circuit> before = boundary_circuits(g);
    std::vector<Circuit> after = boundary_circuits(eff.extended);
    std::vector<char> matched(after.size(), 0);
    eff.circuit_map.assign(before.size(), -1);
    for (int i = 0; i < static_cast<int>(before.size()); ++i) {
        for (int j = 0; j < static_cast<int>(after.size()); ++j) {
            if (matched[j]) continue;
            if (before[i].steps == after[j].steps && !before[i].steps.empty()) {
                eff.circuit_map[i] = j;
                matched[j] = 1;
                break;
            }
        }
        if (eff.circuit_map[i] < 0) eff.type.divided.push_back(i);
    }
    for (int j = 0; j < static_cast<int>(after.size()); ++j)
        if (!matched[j]) eff.new_circuits.push_back(j);
    eff.type.new_circuits = static_cast<int>(eff.new_circuits.size());

    bool type0 = s.ends[0].new_endpoint || s.ends[1].new_endpoint;
    if (type0)
        eff.type.tag = ExtensionTag::Type0;
    else if (eff.type.divided.size() == 1)
        eff.type.tag = eff.type.new_circuits == 1 ? ExtensionTag::Type1_1 : ExtensionTag::Type1_2;
    else
        eff.type.tag = ExtensionTag::Type2;
    return eff;
}

inline std::optional<ExtensionType> classify_extension(const FatGraph& g,
                                                       const ExtensionSpec& s) {
    auto eff = extension_effect(g, s);
    if (!eff) return std::nullopt;
    return eff->type;
}

inline std::optional<ExtensionSpec> twin_of(const ExtensionSpec& s) {
    if (s.ends[0].new_endpoint || s.ends[1].new_endpoint) return std::nullopt;
    ExtensionSpec t = s;
    t.splice ^= 1;
    return t;
}

struct MitosisRecord {
    ExtensionSpec spec;
    int cell_id = -1;
    bool split = false;           // Type1_2 only
    std::set<int> split_keep;     // circuits staying with the old cell id
    std::set<int> split_move;     // circuits moving to the fresh cell
};

struct MitosisResult {
    Organism organism;
    ExtensionType type;
    std::vector<int> circuit_map;   // base circuit -> new circuit, -1 if divided
    std::vector<int> new_circuits;  // new circuit indices (trace order)
    int fresh_cell_id = -1;         // split daughter, when created
    std::string error;              // non-empty on failure
    bool ok() const { return error.empty(); }
};

inline MitosisResult apply_mitosis(const Organism& o, const MitosisRecord& m) {
    MitosisResult res;
    auto eff = extension_effect(o.graph, m.spec);
    if (!eff) {
        res.error = "extension does not apply";
        return res;
    }
    const Cell* host = o.cell_by_id(m.cell_id);
    if (!host) {
        res.error = "unknown cell " + std::to_string(m.cell_id);
        return res;
    }
    for (int d : eff->type.divided)
        if (!host->circuits.count(d)) {
            res.error = "divided circuit " + std::to_string(d) + " is outside cell " +
                        std::to_string(m.cell_id);
            return res;
        }
    if (m.split && eff->type.tag != ExtensionTag::Type1_2) {
        res.error = "split assignment requires a type 1.2 extension";
        return res;
    }

    res.type = eff->type;
    res.circuit_map = eff->circuit_map;
    res.new_circuits = eff->new_circuits;

    Organism out;
    out.graph = eff->extended;
    out.next_cell_id = o.next_cell_id;
    for (const Cell& c : o.cells) {
        Cell nc;
        nc.id = c.id;
        for (int ci : c.circuits)
            if (eff->circuit_map[ci] >= 0) nc.circuits.insert(eff->circuit_map[ci]);
        out.cells.push_back(nc);
    }
    Cell* target = out.cell_by_id(m.cell_id);

    if (eff->type.tag == ExtensionTag::Type1_2 && m.split) {
        std::set<int> rest;
        for (int ci : host->circuits)
            if (eff->circuit_map[ci] >= 0) rest.insert(ci);
        std::set<int> declared = m.split_keep;
        declared.insert(m.split_move.begin(), m.split_move.end());
        if (declared != rest ||
            m.split_keep.size() + m.split_move.size() != rest.size()) {
            res.error = "split assignment is not a partition of the cell's other circuits";
            return res;
        }
        Cell fresh;
        fresh.id = out.allocate_cell_id();
        res.fresh_cell_id = fresh.id;
        target->circuits.clear();
        for (int ci : m.split_keep) target->circuits.insert(eff->circuit_map[ci]);
        for (int ci : m.split_move) fresh.circuits.insert(eff->circuit_map[ci]);
        target->circuits.insert(eff->new_circuits[0]);
        fresh.circuits.insert(eff->new_circuits[1]);
        out.cells.push_back(fresh);
    } else {
        for (int nc : eff->new_circuits) target->circuits.insert(nc);
    }
    res.organism = std::move(out);
    return res;
}

}  // namespace fatsurf
