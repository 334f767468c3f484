#include "mw/merge_model.hpp"
#include "mw/ranked_model.hpp"
#include "mw/verify.hpp"

#include <doctest.h>

#include <random>

using namespace mw;

namespace {

// the merge-model of the sequence fixture for the path a-b-c
MergeModel model_p3()
{
    TreeOrder order = make_tree_order({"Root", "N_ac", "L_a", "L_b", "L_c"},
                                      {{"N_ac", "Root"},
                                       {"L_a", "N_ac"},
                                       {"L_c", "N_ac"},
                                       {"L_b", "Root"}});
    return make_merge_model("p3", make_signature({"E"}), order,
                            {{{"E", 0}, {{"N_ac", "N_ac"}}}, {{"E", 1}, {{"Root", "Root"}}}});
}

} // namespace

TEST_CASE("the path fixture is a valid merge-model")
{
    CHECK(validate_model(model_p3()).ok);
}

TEST_CASE("comparable S endpoints violate condition (2)")
{
    auto m = model_p3();
    m.s_tuples[{"E", 1}].insert({"Root", "L_a"});
    auto rep = validate_model(m);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition (2)") != std::string::npos);
}

TEST_CASE("removing the root loops violates condition (5)")
{
    auto m = model_p3();
    m.s_tuples.erase({"E", 1}); // drop the root loop
    auto rep = validate_model(m);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition (5)") != std::string::npos);
    CHECK(rep.detail.find("L_a") != std::string::npos);
    CHECK(rep.detail.find("L_b") != std::string::npos);
}

TEST_CASE("a genuine cross violates condition (3), nested pairs do not")
{
    // two branches with two S levels wired straight: legal
    TreeOrder order = make_tree_order({"r", "x", "x1", "y", "y1", "lx", "ly"},
                                      {{"x", "r"},
                                       {"x1", "x"},
                                       {"lx", "x1"},
                                       {"y", "r"},
                                       {"y1", "y"},
                                       {"ly", "y1"}});
    auto nested = make_merge_model("m", make_signature({"E"}), order,
                                   {{{"E", 1}, {{"x", "y"}, {"x1", "y1"}}},
                                    {{"E", 0}, {{"r", "r"}}}});
    CHECK(validate_model(nested).ok);

    // crossing the deeper pair violates condition (3)
    auto crossed = make_merge_model("m", make_signature({"E"}), order,
                                    {{{"E", 1}, {{"x", "y1"}, {"x1", "y"}}},
                                     {{"E", 0}, {{"r", "r"}}}});
    auto rep = validate_model(crossed);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition (3)") != std::string::npos);

    // nested pairs sharing a coordinate are legal
    auto shared = make_merge_model("m", make_signature({"E"}), order,
                                   {{{"E", 1}, {{"x", "y"}, {"x1", "y"}}},
                                    {{"E", 0}, {{"r", "r"}}}});
    CHECK(validate_model(shared).ok);
}

TEST_CASE("contradictory defaults violate condition (4)")
{
    auto m = model_p3();
    m.s_tuples[{"E", 0}].insert({"Root", "Root"});
    auto rep = validate_model(m);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("condition (4)") != std::string::npos);
}

TEST_CASE("hats on the path fixture")
{
    auto m = model_p3();
    CHECK(hat(m, "L_a", "L_c") == Pair{"N_ac", "N_ac"});
    CHECK(hat(m, "L_a", "L_b") == Pair{"Root", "Root"});
    CHECK(hat(m, "L_b", "L_c") == Pair{"Root", "Root"});
    CHECK_THROWS_AS(hat(m, "L_a", "L_a"), std::invalid_argument);
    CHECK_THROWS_AS(hat(m, "Root", "L_a"), std::invalid_argument);
}

TEST_CASE("hat is swap-covariant on symmetric tuple sets")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_structure(rng, 5, Profile::sym_E);
        auto rm = model_of_sequence(greedy_sequence(g, 1), g);
        bool symmetric = true;
        for (const auto& [key, pairs] : rm.model.s_tuples)
            for (const auto& [x, y] : pairs)
                if (!pairs.count({y, x})) symmetric = false;
        if (!symmetric) continue;
        detail::TreeIndex ix(rm.model.order);
        auto leaves = ix.leaves();
        for (int u : leaves)
            for (int v : leaves) {
                if (u == v) continue;
                auto h = hat(rm.model, ix.nodes[u], ix.nodes[v]);
                auto h2 = hat(rm.model, ix.nodes[v], ix.nodes[u]);
                CHECK(h2 == Pair{h.second, h.first});
            }
    }
}

TEST_CASE("interpretation of the path fixture is the path")
{
    auto s = interpret(model_p3());
    CHECK(s.universe == std::vector<std::string>{"L_a", "L_b", "L_c"});
    CHECK(s.rel("E")
          == PairSet{{"L_a", "L_b"}, {"L_b", "L_a"}, {"L_b", "L_c"}, {"L_c", "L_b"}});

    // a single-node model interprets to a one-element empty structure
    auto single = make_merge_model("one", make_signature({"E"}), make_tree_order({"v"}, {}), {});
    auto si = interpret(single);
    CHECK(si.universe == std::vector<std::string>{"v"});
    CHECK(si.rel("E").empty());

    // only root loops with default true: complete relations
    TreeOrder order = make_tree_order({"r", "a", "b"}, {{"a", "r"}, {"b", "r"}});
    auto full = make_merge_model("m", make_signature({"E"}), order,
                                 {{{"E", 1}, {{"r", "r"}}}});
    CHECK(interpret(full).rel("E") == PairSet{{"a", "b"}, {"b", "a"}});
}

TEST_CASE("skeleton and compactification")
{
    auto m = model_p3();
    CHECK(skeleton(m)
          == std::set<std::string>{"Root", "N_ac", "L_a", "L_b", "L_c"});
    CHECK(compactify(m) == m); // already compact

    // chain with an idle middle node
    TreeOrder chain = make_tree_order({"r", "x", "leaf"}, {{"x", "r"}, {"leaf", "x"}});
    auto idle = make_merge_model("m", make_signature({"E"}), chain,
                                 {{{"E", 1}, {{"r", "r"}}}});
    CHECK(skeleton(idle) == std::set<std::string>{"r", "leaf"});
    auto compacted = compactify(idle);
    CHECK(compacted.order.nodes == std::vector<std::string>{"leaf", "r"});
    CHECK(compacted.order.parent.at("leaf") == "r");
    CHECK(interpret(compacted) == interpret(idle));
    CHECK(compactify(compacted) == compacted);

    // either tuple position keeps a node skeletal
    TreeOrder wide = make_tree_order({"r", "a", "b", "c"}, {{"a", "r"}, {"b", "r"}, {"c", "r"}});
    auto one_tuple = make_merge_model("m", make_signature({"E"}), wide,
                                      {{{"E", 1}, {{"a", "b"}, {"r", "r"}}},
                                       {{"E", 0}, {}}});
    CHECK(skeleton(one_tuple) == std::set<std::string>{"r", "a", "b", "c"});
}

TEST_CASE("interpretation survives compactification on random models")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_structure(rng, 6, detail::profile_cycle(trial));
        auto rm = model_of_sequence(greedy_sequence(g, 1), g);
        CHECK(interpret(compactify(rm.model)) == interpret(rm.model));
    }
}

TEST_CASE("sequenceability")
{
    CHECK(is_sequenceable(model_p3()));

    // two sibling subtrees whose descendants S-connect to the other root
    TreeOrder order = make_tree_order({"r", "a", "b", "a1", "b1"},
                                      {{"a", "r"}, {"b", "r"}, {"a1", "a"}, {"b1", "b"}});
    auto cyc = make_merge_model("m", make_signature({"E"}), order,
                                {{{"E", 1}, {{"a1", "b"}, {"b1", "a"}, {"r", "r"}}}});
    CHECK_FALSE(is_sequenceable(cyc));

    // all tuples at the root: no strict-descent arc at all
    auto loops = make_merge_model("m", make_signature({"E"}),
                                  make_tree_order({"r", "a", "b"}, {{"a", "r"}, {"b", "r"}}),
                                  {{{"E", 1}, {{"r", "r"}}}});
    CHECK(is_sequenceable(loops));
}

TEST_CASE("looplessness")
{
    CHECK_FALSE(is_loopless(model_p3()));
    auto empty = make_merge_model("m", make_signature({"E"}),
                                  make_tree_order({"v"}, {}), {});
    CHECK(is_loopless(empty));
}

TEST_CASE("the sigma-part of the path fixture is edgeless")
{
    // only loops carry tuples, so the Gaifman graph of the unordered part has
    // no edges and the biclique number is 0
    auto g = gaifman(s_part(model_p3()));
    CHECK(g.vertices().size() == 5);
    CHECK(g.s.rel("E").empty());
    CHECK(bomega(model_p3(), 16) == 0);
}

TEST_CASE("models of valid sequences always validate")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_structure(rng, 6, detail::profile_cycle(trial));
        auto rm = model_of_sequence(greedy_sequence(g, 1), g);
        CHECK(validate_model(rm.model).ok);
        // hat candidates below any leaf pair form a chain with a maximum:
        // interpret throws otherwise
        CHECK_NOTHROW(interpret(rm.model));
    }
}
