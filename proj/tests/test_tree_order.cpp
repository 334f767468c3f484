#include "mw/tree_order.hpp"

#include <doctest.h>

using namespace mw;

namespace {

TreeOrder chain_rxy()
{
    return make_tree_order({"r", "x", "y"}, {{"x", "r"}, {"y", "x"}});
}

} // namespace

TEST_CASE("tree-order validation")
{
    CHECK(validate_tree_order(make_tree_order({"v"}, {})).ok);

    auto cyc = make_tree_order({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    auto rep = validate_tree_order(cyc);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("cycle") != std::string::npos);

    CHECK(validate_tree_order(chain_rxy()).ok);
    CHECK_FALSE(validate_tree_order(make_tree_order({"a", "b"}, {})).ok);      // two roots
    CHECK_FALSE(validate_tree_order(make_tree_order({"a"}, {{"a", "a"}})).ok); // self parent
    CHECK_FALSE(validate_tree_order(make_tree_order({"a"}, {{"a", "z"}})).ok); // unknown parent
}

TEST_CASE("comparability classification")
{
    auto t = chain_rxy();
    CHECK(comparable(t, "r", "y") == Cmp::less);
    CHECK(comparable(t, "y", "r") == Cmp::greater);
    CHECK(comparable(t, "x", "x") == Cmp::equal);

    auto sib = make_tree_order({"r", "a", "b"}, {{"a", "r"}, {"b", "r"}});
    CHECK(comparable(sib, "a", "b") == Cmp::incomparable);
    CHECK_THROWS_AS(comparable(sib, "a", "zz"), std::invalid_argument);

    // transitive on the strict part
    auto deep = make_tree_order({"r", "x", "y", "z"}, {{"x", "r"}, {"y", "x"}, {"z", "y"}});
    CHECK(comparable(deep, "r", "z") == Cmp::less);
}

TEST_CASE("cover property of parents")
{
    auto deep = make_tree_order({"r", "x", "y", "z"}, {{"x", "r"}, {"y", "x"}, {"z", "y"}});
    detail::TreeIndex ix(deep);
    for (const auto& node : deep.nodes) {
        auto pit = deep.parent.find(node);
        if (pit == deep.parent.end()) continue;
        CHECK(comparable(deep, pit->second, node) == Cmp::less);
        for (const auto& other : deep.nodes) {
            if (other == node || other == pit->second) continue;
            bool between = comparable(deep, pit->second, other) == Cmp::less
                           && comparable(deep, other, node) == Cmp::less;
            CHECK_FALSE(between);
        }
    }
}

TEST_CASE("antichains")
{
    auto t = make_tree_order({"r", "a", "b", "a1", "a2"},
                             {{"a", "r"}, {"b", "r"}, {"a1", "a"}, {"a2", "a"}});
    CHECK(is_antichain(t, {"a1", "a2", "b"}, true)); // the leaves, maximal
    CHECK_FALSE(is_antichain(t, {"r", "a1"}, false));
    CHECK(is_antichain(t, {"r"}, true)); // root comparable to everything
    CHECK(is_antichain(t, {"a", "b"}, true));
    CHECK_FALSE(is_antichain(t, {"a1", "b"}, true)); // a2 incomparable to both
    CHECK_THROWS_AS(is_antichain(t, {"zz"}, false), std::invalid_argument);
}

TEST_CASE("leaves are the nodes without children")
{
    auto t = make_tree_order({"r", "a", "b", "a1"}, {{"a", "r"}, {"b", "r"}, {"a1", "a"}});
    detail::TreeIndex ix(t);
    std::set<std::string> leaves;
    for (int l : ix.leaves()) leaves.insert(ix.nodes[l]);
    CHECK(leaves == std::set<std::string>{"a1", "b"});
}
