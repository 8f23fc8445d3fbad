#include <catch2/catch_amalgamated.hpp>

#include "fatsurf/organism.hpp"
#include "support/gadgets.hpp"
#include "support/partitions.hpp"

using namespace fatsurf;
using namespace fatsurf::testing;

namespace {

std::set<std::set<int>> partition_of(const Organism& o) {
    std::set<std::set<int>> parts;
    for (const Cell& c : o.cells) parts.insert(c.circuits);
    return parts;
}

std::vector<int> identity_map(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    return m;
}

}  // namespace

TEST_CASE("organism validation") {
    FatGraph loop = loop_graph(false);
    CHECK(validate_organism(make_organism(loop, {{0, 1}})).ok());
    CHECK(validate_organism(make_organism(loop, {{0}, {1}})).ok());

    Organism bad = make_organism(loop, {{0, 1}, {1}});
    ValidationReport r = validate_organism(bad);
    REQUIRE_FALSE(r.ok());
    bool mentions = false;
    for (auto& p : r.problems)
        if (p.find("not a partition") != std::string::npos) mentions = true;
    CHECK(mentions);
}

TEST_CASE("restriction merges cells through removed edges") {
    SECTION("full subset leaves cells unchanged") {
        Organism o = make_organism(theta_graph(), {{0}, {1}, {2}});
        auto sub = induced_suborganism(o, {0, 1, 2});
        REQUIRE(sub.has_value());
        CHECK(partition_of(*sub) == partition_of(o));
    }
    SECTION("torus bouquet restricted to one loop lands in one cell") {
        Organism o = make_organism(interleaved_bouquet(), {{0}});
        auto sub = induced_suborganism(o, std::set<int>{0});
        REQUIRE(sub.has_value());
        REQUIRE(boundary_circuits(sub->graph).size() == 2);
        CHECK(sub->cells.size() == 1);
        CHECK(partition_of(*sub) == std::set<std::set<int>>{{0, 1}});
    }
    SECTION("theta with three cells drops to a bigon with two cells") {
        Organism o = make_organism(theta_graph(), {{0}, {1}, {2}});
        auto sub = induced_suborganism(o, std::set<int>{0, 1});
        REQUIRE(sub.has_value());
        REQUIRE(boundary_circuits(sub->graph).size() == 2);
        CHECK(sub->cells.size() == 2);
    }
    SECTION("restriction to a single vertex is the point organism") {
        Organism o = make_organism(theta_graph(), {{0, 1, 2}});
        auto sub = induced_suborganism(o, std::set<int>{0}, std::set<int>{});
        REQUIRE(sub.has_value());
        CHECK(sub->graph.num_edges() == 0);
        CHECK(sub->cells.size() == 1);
    }
}

TEST_CASE("sub-organism relation") {
    Organism bouquet = make_organism(interleaved_bouquet(), {{0}});
    SECTION("identity embedding") {
        CHECK(is_suborganism(bouquet, bouquet, identity_map(2)));
    }
    SECTION("loop with two cells is not a sub-organism of the bouquet") {
        Organism loop2 = make_organism(loop_graph(false), {{0}, {1}});
        CHECK_FALSE(is_suborganism(loop2, bouquet, {0}));
    }
    SECTION("loop with one cell is a sub-organism of the bouquet") {
        Organism loop1 = make_organism(loop_graph(false), {{0, 1}});
        CHECK(is_suborganism(loop1, bouquet, {0}));
    }
    SECTION("twist mismatch is rejected") {
        Organism tl = make_organism(loop_graph(true), {{0}});
        CHECK_FALSE(is_suborganism(tl, bouquet, {0}));
    }
}

TEST_CASE("restriction monotonicity under cell merges") {
    for_each_fatgraph_upto(2, [](const FatGraph& g) {
        int f = static_cast<int>(boundary_circuits(g).size());
        int e = g.num_edges();
        for_each_partition(f, [&](const std::vector<std::set<int>>& parts) {
            if (parts.size() < 2) return;
            Organism fine = make_organism(g, parts);
            // merge the first two cells
            std::vector<std::set<int>> coarse_parts;
            std::set<int> merged = parts[0];
            merged.insert(parts[1].begin(), parts[1].end());
            coarse_parts.push_back(merged);
            for (size_t i = 2; i < parts.size(); ++i) coarse_parts.push_back(parts[i]);
            Organism coarse = make_organism(g, coarse_parts);
            for (int mask = 1; mask < (1 << e); ++mask) {
                std::set<int> subset;
                for (int i = 0; i < e; ++i)
                    if (mask >> i & 1) subset.insert(i);
                auto sub_fine = induced_suborganism(fine, subset);
                auto sub_coarse = induced_suborganism(coarse, subset);
                if (!sub_fine || !sub_coarse) continue;
                // every coarse cell is a union of fine cells
                for (const Cell& cc : sub_coarse->cells) {
                    std::set<int> covered;
                    for (const Cell& fc : sub_fine->cells) {
                        bool inside = true;
                        for (int ci : fc.circuits)
                            if (!cc.circuits.count(ci)) inside = false;
                        if (inside) covered.insert(fc.circuits.begin(), fc.circuits.end());
                    }
                    REQUIRE(covered == cc.circuits);
                }
            }
        });
    });
}

TEST_CASE("restriction is transitive on nested subsets") {
    for_each_fatgraph_upto(2, [](const FatGraph& g) {
        int f = static_cast<int>(boundary_circuits(g).size());
        int e = g.num_edges();
        for_each_partition(f, [&](const std::vector<std::set<int>>& parts) {
            Organism big = make_organism(g, parts);
            for (int mid = 1; mid < (1 << e); ++mid) {
                std::set<int> mid_set;
                for (int i = 0; i < e; ++i)
                    if (mid >> i & 1) mid_set.insert(i);
                std::vector<int> emap;
                auto om = induced_suborganism(big, mid_set, &emap);
                if (!om) continue;
                for (int small = 1; small < (1 << e); ++small) {
                    if ((small & mid) != small) continue;
                    std::set<int> small_in_g, small_in_mid;
                    for (int i = 0; i < e; ++i)
                        if (small >> i & 1) {
                            small_in_g.insert(i);
                            small_in_mid.insert(emap[i]);
                        }
                    auto direct = induced_suborganism(big, small_in_g);
                    if (!direct) continue;
                    auto nested = induced_suborganism(*om, small_in_mid);
                    REQUIRE(nested.has_value());
                    // compare partitions through circuit matching
                    std::vector<int> d2n_edges(direct->graph.num_edges());
                    {
                        // both restrictions enumerate edges in subset order
                        std::vector<int> order_direct(small_in_g.begin(), small_in_g.end());
                        std::vector<int> order_nested(small_in_mid.begin(), small_in_mid.end());
                        std::map<int, int> g_to_mid_sorted;
                        for (size_t i = 0; i < order_direct.size(); ++i)
                            g_to_mid_sorted[order_direct[i]] = emap[order_direct[i]];
                        // nested edge index = position of emap[g edge] in sorted mid subset
                        for (size_t i = 0; i < order_direct.size(); ++i) {
                            int target = emap[order_direct[i]];
                            auto it = std::find(order_nested.begin(), order_nested.end(), target);
                            REQUIRE(it != order_nested.end());
                            d2n_edges[i] = static_cast<int>(it - order_nested.begin());
                        }
                    }
                    auto match = fatsurf::detail::match_circuits(boundary_circuits(direct->graph),
                                                                 boundary_circuits(nested->graph),
                                                                 d2n_edges);
                    REQUIRE(match.has_value());
                    std::set<std::set<int>> direct_parts, nested_parts;
                    for (const Cell& c : direct->cells) {
                        std::set<int> mapped;
                        for (int ci : c.circuits) mapped.insert((*match)[ci]);
                        direct_parts.insert(mapped);
                    }
                    for (const Cell& c : nested->cells) nested_parts.insert(c.circuits);
                    REQUIRE(direct_parts == nested_parts);
                }
            }
        });
    });
}
