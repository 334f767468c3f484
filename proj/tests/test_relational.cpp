#include "mw/relational.hpp"

#include <doctest.h>

#include <random>

using namespace mw;

namespace {

BinaryStructure path3()
{
    return make_structure("p3", make_signature({"E"}), {"a", "b", "c"},
                          {{"E", {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}}}});
}

// independent brute-force oracle: try every pair of disjoint vertex subsets
int biclique_brute(const Graph& g)
{
    int n = static_cast<int>(g.vertices().size());
    int best = 0;
    for (int am = 1; am < (1 << n); ++am)
        for (int bm = 1; bm < (1 << n); ++bm) {
            if (am & bm) continue;
            int asz = __builtin_popcount(am), bsz = __builtin_popcount(bm);
            if (asz != bsz || asz <= best) continue;
            bool full = true;
            for (int i = 0; i < n && full; ++i)
                for (int j = 0; j < n && full; ++j)
                    if ((am >> i & 1) && (bm >> j & 1)
                        && !g.adjacent(g.vertices()[i], g.vertices()[j]))
                        full = false;
            if (full) best = asz;
        }
    return best;
}

} // namespace

TEST_CASE("gaifman joins co-occurring elements and drops loops")
{
    auto s = make_structure("s", make_signature({"Q", "R"}), {"a", "b", "c"},
                            {{"R", {{"a", "b"}}}, {"Q", {}}});
    Graph g = gaifman(s);
    CHECK(g.s.rel("E") == PairSet{{"a", "b"}, {"b", "a"}});

    auto loops = make_structure("s", make_signature({"R"}), {"a", "b"}, {{"R", {{"a", "a"}}}});
    CHECK(gaifman(loops).s.rel("E").empty());

    // idempotent under the graph view
    CHECK(gaifman(gaifman(s).s) == gaifman(s));
}

TEST_CASE("reduct keeps the universe and restricts the relations")
{
    auto s = path3();
    CHECK(reduct(s, {"E"}) == s);
    auto empty = reduct(s, {});
    CHECK(empty.universe == s.universe);
    CHECK(empty.signature.symbols.empty());
    CHECK_THROWS_AS(reduct(s, {"F"}), std::invalid_argument);

    BinaryStructure expanded = complement_expand(as_graph(path3()));
    CHECK(reduct(expanded, {"E"}) == path3());
}

TEST_CASE("biclique number on fixed graphs")
{
    Graph k22 = make_graph("k22", {"a", "b", "x", "y"},
                           {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
    CHECK(biclique_number(k22, 10) == 2);

    Graph p4 = make_graph("p4", {"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
    CHECK(biclique_number(p4, 10) == 1);

    Graph edgeless = make_graph("n3", {"a", "b", "c"}, {});
    CHECK(biclique_number(edgeless, 10) == 0);

    CHECK_THROWS_AS(biclique_number(p4, 3), LimitError);
}

TEST_CASE("biclique number agrees with brute force and is edge-monotone")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        std::vector<std::string> vs;
        for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
        std::vector<Pair> edges;
        std::vector<Pair> free_pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (rng() % 2) edges.push_back({vs[i], vs[j]});
                else free_pairs.push_back({vs[i], vs[j]});
            }
        Graph g = make_graph("g", vs, edges);
        int value = biclique_number(g, 16);
        CHECK(value == biclique_brute(g));
        CHECK(value <= n / 2);
        if (!free_pairs.empty()) {
            edges.push_back(free_pairs[rng() % free_pairs.size()]);
            CHECK(biclique_number(make_graph("g", vs, edges), 16) >= value);
        }
    }
}

TEST_CASE("complement expansion partitions the distinct pairs")
{
    Graph k2 = make_graph("k2", {"a", "b"}, {{"a", "b"}});
    auto e1 = complement_expand(k2);
    CHECK(e1.rel("F").empty());
    CHECK(e1.rel("E") == PairSet{{"a", "b"}, {"b", "a"}});

    Graph n2 = make_graph("n2", {"a", "b"}, {});
    auto e2 = complement_expand(n2);
    CHECK(e2.rel("E").empty());
    CHECK(e2.rel("F") == PairSet{{"a", "b"}, {"b", "a"}});

    auto e3 = complement_expand(as_graph(path3()));
    CHECK(e3.rel("E") == path3().rel("E"));
    CHECK(e3.rel("F") == PairSet{{"a", "c"}, {"c", "a"}});

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        std::vector<std::string> vs;
        for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
        std::vector<Pair> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.push_back({vs[i], vs[j]});
        auto ex = complement_expand(make_graph("g", vs, edges));
        for (const auto& u : vs)
            for (const auto& v : vs) {
                if (u == v) continue;
                CHECK(ex.rel("E").count({u, v}) + ex.rel("F").count({u, v}) == 1);
            }
    }
}

TEST_CASE("matches_via checks bijective relation-exact mappings")
{
    auto s = path3();
    std::map<std::string, std::string> id{{"a", "a"}, {"b", "b"}, {"c", "c"}};
    CHECK(matches_via(s, s, id));

    auto renamed = make_structure("q3", make_signature({"E"}), {"x", "y", "z"},
                                  {{"E", {{"x", "y"}, {"y", "x"}, {"y", "z"}, {"z", "y"}}}});
    CHECK(matches_via(s, renamed, {{"a", "x"}, {"b", "y"}, {"c", "z"}}));
    CHECK_FALSE(matches_via(s, renamed, {{"a", "y"}, {"b", "x"}, {"c", "z"}}));

    auto k3 = make_structure("k3", make_signature({"E"}), {"a", "b", "c"},
                             {{"E",
                               {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}, {"a", "c"}, {"c", "a"}}}});
    CHECK_FALSE(matches_via(s, k3, id));
    CHECK_FALSE(matches_via(s, s, {{"a", "a"}, {"b", "b"}})); // not total
}

TEST_CASE("structure construction validates its inputs")
{
    CHECK_THROWS_AS(make_structure("s", make_signature({"E"}), {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_structure("s", make_signature({"E"}), {"a"}, {{"E", {{"a", "b"}}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_signature({"E", "E"}), std::invalid_argument);
    CHECK_THROWS_AS(as_graph(make_structure("s", make_signature({"E"}), {"a", "b"},
                                            {{"E", {{"a", "b"}}}})),
                    std::invalid_argument); // missing reverse
    CHECK_THROWS_AS(make_graph("g", {"a"}, {{"a", "a"}}), std::invalid_argument);
}
