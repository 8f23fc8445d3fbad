#include <catch2/catch_amalgamated.hpp>

#include "fatsurf/mitosis.hpp"
#include "support/extensions.hpp"
#include "support/gadgets.hpp"
#include "support/partitions.hpp"

using namespace fatsurf;
using namespace fatsurf::testing;

namespace {

// Two corners lying on circuits chosen by predicate: same circuit or not.
std::pair<Attachment, Attachment> corners_on(const FatGraph& g, bool same_circuit) {
    auto circuits = boundary_circuits(g);
    auto c2c = corner_to_circuit(g, circuits);
    for (auto& [ca, ia] : c2c)
        for (auto& [cb, ib] : c2c) {
            if (ca == cb) continue;
            if ((ia == ib) == same_circuit)
                return {Attachment::at(ca.vertex, ca.index), Attachment::at(cb.vertex, cb.index)};
        }
    FAIL("no corner pair found");
    return {};
}

}  // namespace

TEST_CASE("extension application") {
    SECTION("pendant edge to a fresh vertex") {
        FatGraph g = loop_graph(false);
        ExtensionSpec s;
        s.ends[0] = Attachment::at(0, 0);
        s.ends[1] = Attachment::fresh();
        auto ext = apply_extension(g, s);
        REQUIRE(ext.has_value());
        CHECK(ext->num_vertices() == 2);
        CHECK(ext->num_edges() == 2);
        CHECK(validate_fatgraph(*ext).ok());
        // removing the new edge restores the base graph
        FatGraph back = induced_subfatgraph(*ext, std::set<int>{0});
        CHECK(back.num_edges() == 1);
        CHECK(boundary_circuits(back).size() == boundary_circuits(g).size());
    }
    SECTION("chord on the theta graph stays valid for both splices") {
        FatGraph g = theta_graph();
        auto [a, b] = corners_on(g, true);
        for (int splice = 0; splice < 2; ++splice) {
            ExtensionSpec s;
            s.ends[0] = a;
            s.ends[1] = b;
            s.splice = splice;
            auto ext = apply_extension(g, s);
            REQUIRE(ext.has_value());
            CHECK(ext->num_edges() == 4);
            CHECK(validate_fatgraph(*ext).ok());
        }
    }
    SECTION("the two splices of a chord give different circuit sets") {
        FatGraph g = theta_graph();
        auto [a, b] = corners_on(g, true);
        ExtensionSpec s;
        s.ends[0] = a;
        s.ends[1] = b;
        auto e0 = extension_effect(g, s);
        s.splice = 1;
        auto e1 = extension_effect(g, s);
        REQUIRE(e0.has_value());
        REQUIRE(e1.has_value());
        CHECK(boundary_circuits(e0->extended).size() != boundary_circuits(e1->extended).size());
    }
    SECTION("two fresh endpoints are rejected") {
        ExtensionSpec s;
        s.ends[0] = Attachment::fresh();
        s.ends[1] = Attachment::fresh();
        CHECK_FALSE(apply_extension(loop_graph(false), s).has_value());
    }
    SECTION("bad corner index is rejected") {
        ExtensionSpec s;
        s.ends[0] = Attachment::at(0, 7);
        s.ends[1] = Attachment::fresh();
        CHECK_FALSE(apply_extension(loop_graph(false), s).has_value());
    }
}

TEST_CASE("extension classification") {
    SECTION("pendant edge is type 0 with one divided, one new") {
        FatGraph g = loop_graph(false);
        ExtensionSpec s;
        s.ends[0] = Attachment::at(0, 0);
        s.ends[1] = Attachment::fresh();
        auto t = classify_extension(g, s);
        REQUIRE(t.has_value());
        CHECK(t->tag == ExtensionTag::Type0);
        CHECK(t->divided.size() == 1);
        CHECK(t->new_circuits == 1);
    }
    SECTION("same-circuit chord twins realize both new-circuit counts") {
        FatGraph g = theta_graph();
        auto [a, b] = corners_on(g, true);
        ExtensionSpec s;
        s.ends[0] = a;
        s.ends[1] = b;
        auto t0 = classify_extension(g, s);
        auto t1 = classify_extension(g, *twin_of(s));
        REQUIRE(t0.has_value());
        REQUIRE(t1.has_value());
        std::set<ExtensionTag> tags{t0->tag, t1->tag};
        CHECK(tags == std::set<ExtensionTag>{ExtensionTag::Type1_1, ExtensionTag::Type1_2});
        CHECK(t0->divided == t1->divided);
    }
    SECTION("cross-circuit chord is type 2 with one new circuit either way") {
        FatGraph g = theta_graph();
        auto [a, b] = corners_on(g, false);
        ExtensionSpec s;
        s.ends[0] = a;
        s.ends[1] = b;
        for (int splice = 0; splice < 2; ++splice) {
            s.splice = splice;
            auto t = classify_extension(g, s);
            REQUIRE(t.has_value());
            CHECK(t->tag == ExtensionTag::Type2);
            CHECK(t->divided.size() == 2);
            CHECK(t->new_circuits == 1);
        }
    }
    SECTION("growth from a point") {
        FatGraph g = point_graph();
        ExtensionSpec s;
        s.ends[0] = Attachment::at(0, 0);
        s.ends[1] = Attachment::fresh();
        auto t = classify_extension(g, s);
        REQUIRE(t.has_value());
        CHECK(t->tag == ExtensionTag::Type0);
    }
}

TEST_CASE("twin involution") {
    FatGraph g = theta_graph();
    auto [a, b] = corners_on(g, false);
    ExtensionSpec s;
    s.ends[0] = a;
    s.ends[1] = b;
    auto t = twin_of(s);
    REQUIRE(t.has_value());
    CHECK(*twin_of(*t) == s);
    SECTION("type 0 has no twin") {
        ExtensionSpec p;
        p.ends[0] = a;
        p.ends[1] = Attachment::fresh();
        CHECK_FALSE(twin_of(p).has_value());
    }
}

TEST_CASE("circuit-count deltas match the type table") {
    for_each_fatgraph_upto(2, [](const FatGraph& g) {
        int f = static_cast<int>(boundary_circuits(g).size());
        for (const ExtensionSpec& s : all_extension_specs(g)) {
            auto eff = extension_effect(g, s);
            REQUIRE(eff.has_value());
            int f2 = static_cast<int>(boundary_circuits(eff->extended).size());
            switch (eff->type.tag) {
                case ExtensionTag::Type0: CHECK(f2 == f); break;
                case ExtensionTag::Type1_1: CHECK(f2 == f); break;
                case ExtensionTag::Type1_2: CHECK(f2 == f + 1); break;
                case ExtensionTag::Type2: CHECK(f2 == f - 1); break;
            }
            // splice flips never change the divided set
            if (!s.ends[0].new_endpoint && !s.ends[1].new_endpoint) {
                auto twin_eff = extension_effect(g, *twin_of(s));
                REQUIRE(twin_eff.has_value());
                CHECK(eff->type.divided == twin_eff->type.divided);
            }
        }
    });
}

TEST_CASE("mitosis cell bookkeeping") {
    SECTION("type 2 merge keeps the cell count") {
        Organism o = make_organism(theta_graph(), {{0, 1, 2}});
        auto [a, b] = corners_on(o.graph, false);
        MitosisRecord m;
        m.spec.ends[0] = a;
        m.spec.ends[1] = b;
        m.cell_id = o.cells[0].id;
        auto res = apply_mitosis(o, m);
        REQUIRE(res.ok());
        CHECK(res.type.tag == ExtensionTag::Type2);
        CHECK(res.organism.cells.size() == o.cells.size());
    }
    SECTION("split type 1.2 divides the cell") {
        Organism o = make_organism(loop_graph(false), {{0, 1}});
        // find a 1.2 spec on circuit 0
        auto circuits = boundary_circuits(o.graph);
        auto c2c = corner_to_circuit(o.graph, circuits);
        for (const ExtensionSpec& s : all_extension_specs(o.graph, false)) {
            auto t = classify_extension(o.graph, s);
            if (!t || t->tag != ExtensionTag::Type1_2) continue;
            MitosisRecord m;
            m.spec = s;
            m.cell_id = o.cells[0].id;
            m.split = true;
            // the divided circuit leaves one other circuit to distribute
            int other = 1 - t->divided[0];
            m.split_keep = {other};
            m.split_move = {};
            auto res = apply_mitosis(o, m);
            REQUIRE(res.ok());
            CHECK(res.organism.cells.size() == 2);
            CHECK(res.fresh_cell_id >= 0);
            CHECK(is_suborganism(o, res.organism, {0}));
            return;
        }
        FAIL("no split spec found");
    }
    SECTION("type 0 changes neither cells nor circuit count") {
        Organism o = make_organism(theta_graph(), {{0}, {1}, {2}});
        MitosisRecord m;
        m.spec.ends[0] = Attachment::at(0, 0);
        m.spec.ends[1] = Attachment::fresh();
        auto circuits = boundary_circuits(o.graph);
        auto c2c = corner_to_circuit(o.graph, circuits);
        m.cell_id = o.cells[o.cell_of_circuit(c2c[{0, 0}])].id;
        auto res = apply_mitosis(o, m);
        REQUIRE(res.ok());
        CHECK(res.organism.cells.size() == 3);
        CHECK(boundary_circuits(res.organism.graph).size() == circuits.size());
    }
    SECTION("divided circuits spanning cells are rejected") {
        Organism o = make_organism(theta_graph(), {{0}, {1}, {2}});
        auto [a, b] = corners_on(o.graph, false);
        MitosisRecord m;
        m.spec.ends[0] = a;
        m.spec.ends[1] = b;
        m.cell_id = o.cells[0].id;
        auto res = apply_mitosis(o, m);
        CHECK_FALSE(res.ok());
    }
}

TEST_CASE("every legal mitosis contains the base as a sub-organism") {
    for_each_fatgraph_upto(2, [](const FatGraph& g) {
        int f = static_cast<int>(boundary_circuits(g).size());
        std::vector<int> id_map(g.num_edges());
        for (int i = 0; i < g.num_edges(); ++i) id_map[i] = i;
        if (g.num_edges() == 0) return;
        for_each_partition(f, [&](const std::vector<std::set<int>>& parts) {
            Organism o = make_organism(g, parts);
            for (const ExtensionSpec& s : all_extension_specs(g)) {
                auto t = classify_extension(g, s);
                REQUIRE(t.has_value());
                int host = -1;
                bool one_cell = true;
                for (int d : t->divided) {
                    int c = o.cell_of_circuit(d);
                    if (host < 0)
                        host = c;
                    else if (host != c)
                        one_cell = false;
                }
                if (!one_cell) continue;
                MitosisRecord m;
                m.spec = s;
                m.cell_id = o.cells[host].id;
                auto res = apply_mitosis(o, m);
                REQUIRE(res.ok());
                size_t before = o.cells.size();
                CHECK(res.organism.cells.size() == before);
                CHECK(is_suborganism(o, res.organism, id_map));
            }
        });
    });
}
