#pragma once

// Cancer treatment: a cancerous type-2 mitosis (the twin that cannot be
// drawn in the cell) is replaced by a detour. The requested arc e is
// subdivided into f', f, f''; the detour f' sigma'^-1 M' sigma'' f'' closes
// as a benign type-2 mitosis (M' carries a twist, so the detour and the
// middle arc f together bound a one-sided loop), and f itself then closes
// as a benign type-1 mitosis. The treated organism contains the cancerous
// one: e survives as the path f' f f''.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fatsurf/tame.hpp"

namespace fatsurf {

struct CancerTreatmentRecord {
    ExtensionSpec cancerous;
    int cell_id = -1;
    // vertices of the gadget in the treated graph
    int q1 = -1, p1 = -1, p2 = -1, q2 = -1;
    // edges of the gadget in the treated graph: f', sigma', M', sigma'', f'', f
    int f_pre = -1, sigma1 = -1, loop_arc = -1, sigma2 = -1, f_post = -1, f_mid = -1;
    std::vector<MitosisRecord> mitoses;  // full replacement sequence
    int benign_type2_index = -1;         // the detour closure
    int benign_type1_index = -1;         // the middle arc
};

struct TreatmentResult {
    TameAnimal animal;
    CancerTreatmentRecord record;
    std::string error;
    bool ok() const { return error.empty(); }
};

namespace detail {

// The cancerous organism in both end orders of the added edge (the treated
// path may come out with either orientation).
inline std::vector<Organism> cancer_targets(const Organism& base, const ExtensionSpec& s,
                                            int cell_id) {
    std::vector<Organism> out;
    MitosisRecord m;
    m.spec = s;
    m.cell_id = cell_id;
    auto fwd = apply_mitosis(base, m);
    if (fwd.ok()) out.push_back(std::move(fwd.organism));
    ExtensionSpec rev = s;
    std::swap(rev.ends[0], rev.ends[1]);
    m.spec = rev;
    auto bwd = apply_mitosis(base, m);
    if (bwd.ok()) out.push_back(std::move(bwd.organism));
    return out;
}

// Restrict `treated` to the base plus the f' f f'' path, smooth the two
// subdivision vertices, and compare against a cancer target.
inline bool contains_cancerous(const Organism& treated, const CancerTreatmentRecord& rec,
                               int base_edges, int base_vertices,
                               const std::vector<Organism>& targets) {
    std::set<int> verts, edgesub;
    for (int v = 0; v < treated.graph.num_vertices(); ++v)
        if (v != rec.p1 && v != rec.p2) verts.insert(v);
    for (int e = 0; e < treated.graph.num_edges(); ++e)
        if (e != rec.sigma1 && e != rec.loop_arc && e != rec.sigma2) edgesub.insert(e);
    std::vector<int> emap;
    auto ind = induced_suborganism(treated, verts, edgesub, &emap);
    if (!ind) return false;

    auto rank_of = [&](int v) { return static_cast<int>(std::distance(verts.begin(), verts.find(v))); };
    auto s1 = smooth_organism(*ind, rank_of(rec.q1), "path1");
    if (!s1) return false;
    int q2_in_ind = rank_of(rec.q2);
    int q2_in_s1 = q2_in_ind - (rank_of(rec.q1) < q2_in_ind ? 1 : 0);
    auto s2 = smooth_organism(s1->organism, q2_in_s1, "path");
    if (!s2) return false;

    std::vector<int> final_map(base_edges + 1, -1);
    for (int e = 0; e < base_edges; ++e) {
        int a = emap[e];
        int b = s1->edge_map[a];
        if (b < 0) return false;
        final_map[e] = s2->edge_map[b];
        if (final_map[e] < 0) return false;
    }
    final_map[base_edges] = s2->merged_edge;
    for (const Organism& target : targets)
        if (is_suborganism(target, s2->organism, final_map)) return true;
    return false;
}

}  // namespace detail

inline TreatmentResult treat_cancer(const TameAnimal& t, const ExtensionSpec& s) {
    TreatmentResult out;
    auto cls = classify_extension(t.organism.graph, s);
    if (!cls || cls->tag != ExtensionTag::Type2) {
        out.error = "spec is not a type 2 extension";
        return out;
    }
    BenignTwinResult bt = benign_twin(t, s);
    if (!bt.ok()) {
        out.error = bt.error;
        return out;
    }
    if (bt.spec == s) {
        out.error = "spec is already benign";
        return out;
    }

    int host = t.organism.cells[t.organism.cell_of_circuit(cls->divided[0])].id;
    std::vector<Organism> targets = detail::cancer_targets(t.organism, s, host);
    if (targets.empty()) {
        out.error = "cancerous mitosis does not apply";
        return out;
    }

    CancerTreatmentRecord rec;
    rec.cancerous = s;
    rec.cell_id = host;
    int base_edges = t.organism.graph.num_edges();
    int base_vertices = t.organism.graph.num_vertices();

    TameAnimal cur = t;
    auto cell_at = [&](const Attachment& a) {
        auto circuits = boundary_circuits(cur.organism.graph);
        auto c2c = corner_to_circuit(cur.organism.graph, circuits);
        auto it = c2c.find({a.vertex, a.corner});
        return it == c2c.end() ? -1
                               : cur.organism.cells[cur.organism.cell_of_circuit(it->second)].id;
    };
    auto pendant = [&](const Attachment& from, const std::string& stem, int twist,
                       int* new_vertex, int* new_edge) -> std::string {
        MitosisRecord m;
        m.spec.edge_name = cur.organism.graph.fresh_edge_name(stem);
        m.spec.ends[0] = from;
        m.spec.ends[1] = Attachment::fresh();
        m.spec.twist = twist;
        m.cell_id = cell_at(from);
        if (m.cell_id < 0) return "no cell at attachment corner";
        auto res = apply_benign_mitosis(cur, m);
        if (!res.ok()) return res.error;
        cur = res.animal;
        *new_edge = cur.organism.graph.num_edges() - 1;
        *new_vertex = cur.organism.graph.num_vertices() - 1;
        rec.mitoses.push_back(m);
        return "";
    };

    // f' and the detour sigma' M' sigma'' hang off the first corner.
    std::string err;
    if (!(err = pendant(s.ends[0], "f", 0, &rec.q1, &rec.f_pre)).empty() ||
        !(err = pendant(Attachment::at(rec.q1, 0), "s", 0, &rec.p1, &rec.sigma1)).empty() ||
        !(err = pendant(Attachment::at(rec.p1, 0), "m", 1, &rec.p2, &rec.loop_arc)).empty() ||
        !(err = pendant(Attachment::at(rec.p2, 0), "s", 0, &rec.q2, &rec.sigma2)).empty()) {
        out.error = "gadget construction failed: " + err;
        return out;
    }

    // Closing the detour is the benign type-2 mitosis.
    Attachment far = s.ends[1];
    if (far.vertex == s.ends[0].vertex && far.corner > s.ends[0].corner)
        far.corner += 1;  // f' insertion shifted the later corners
    {
        ExtensionSpec close;
        close.edge_name = cur.organism.graph.fresh_edge_name("f");
        close.ends[0] = Attachment::at(rec.q2, 0);
        close.ends[1] = far;
        BenignTwinResult benign = benign_twin(cur, close);
        if (!benign.ok()) {
            out.error = "detour closure: " + benign.error;
            return out;
        }
        MitosisRecord m;
        m.spec = benign.spec;
        auto eff = classify_extension(cur.organism.graph, m.spec);
        m.cell_id = cur.organism.cells[cur.organism.cell_of_circuit(eff->divided[0])].id;
        auto res = apply_benign_mitosis(cur, m);
        if (!res.ok()) {
            out.error = "detour closure failed: " + res.error;
            return out;
        }
        cur = res.animal;
        rec.f_post = cur.organism.graph.num_edges() - 1;
        rec.mitoses.push_back(m);
        rec.benign_type2_index = static_cast<int>(rec.mitoses.size()) - 1;
    }

    // The middle arc f: search the corner pair and threading that restores
    // the cancerous path, then close it as the benign type-1 mitosis.
    for (int cq1 = 0; cq1 < 2; ++cq1) {
        for (int cq2 = 0; cq2 < 2; ++cq2) {
            for (int splice = 0; splice < 2; ++splice) {
                ExtensionSpec mid;
                mid.edge_name = cur.organism.graph.fresh_edge_name("f");
                mid.ends[0] = Attachment::at(rec.q1, cq1);
                mid.ends[1] = Attachment::at(rec.q2, cq2);
                mid.splice = splice;
                auto mc = classify_extension(cur.organism.graph, mid);
                if (!mc) continue;
                if (mc->tag != ExtensionTag::Type1_1 && mc->tag != ExtensionTag::Type1_2) continue;
                MitosisRecord m;
                m.spec = mid;
                m.cell_id =
                    cur.organism.cells[cur.organism.cell_of_circuit(mc->divided[0])].id;
                auto res = apply_benign_mitosis(cur, m);
                if (!res.ok()) continue;
                CancerTreatmentRecord probe = rec;
                probe.f_mid = res.animal.organism.graph.num_edges() - 1;
                probe.mitoses.push_back(m);
                probe.benign_type1_index = static_cast<int>(probe.mitoses.size()) - 1;
                if (!detail::contains_cancerous(res.animal.organism, probe, base_edges,
                                                base_vertices, targets))
                    continue;
                out.animal = res.animal;
                out.record = probe;
                return out;
            }
        }
    }
    out.error = "internal consistency failure: no middle arc restores the cancerous path";
    return out;
}

// Check used by callers and suites: the treated organism contains the
// cancerous one as a sub-organism, through restriction and smoothing.
inline bool treated_contains_cancerous(const Organism& base, const CancerTreatmentRecord& rec,
                                       const Organism& treated) {
    std::vector<Organism> targets =
        detail::cancer_targets(base, rec.cancerous, rec.cell_id);
    if (targets.empty()) return false;
    return detail::contains_cancerous(treated, rec, base.graph.num_edges(),
                                      base.graph.num_vertices(), targets);
}

}  // namespace fatsurf
