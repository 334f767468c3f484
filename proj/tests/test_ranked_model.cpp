#include "mw/lift.hpp"
#include "mw/ranked_model.hpp"
#include "mw/verify.hpp"

#include <doctest.h>

#include <random>

using namespace mw;

namespace {

BinaryStructure path3()
{
    return make_structure("p3", make_signature({"E"}), {"a", "b", "c"},
                          {{"E", {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}}}});
}

MergeSequence sigma_p3()
{
    MergeSequence seq;
    seq.structure_ref = "p3";
    seq.steps.push_back({{{"a"}, {"b"}, {"c"}}, {}});
    seq.steps.push_back({{{"a", "c"}, {"b"}}, {}});
    seq.steps.push_back({{{"a", "b", "c"}}, {{"a", "c"}, {"c", "a"}}});
    seq.steps.push_back({{{"a", "b", "c"}}, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}}});
    return seq;
}

RankedMergeModel rm_p3() { return model_of_sequence(sigma_p3(), path3()); }

Interval iv(long long lo, long long hi) { return Interval{Rat(lo), Rat(hi)}; }

} // namespace

TEST_CASE("rationals")
{
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(1, 3));
    CHECK(to_string(Rat(3)) == "3");
    CHECK(to_string(Rat(3, 2)) == "3/2");
    CHECK(parse_rational("7/3") == Rat(7, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("the model of the path sequence carries the clean fixture ranking")
{
    auto rm = rm_p3();
    CHECK(rm.model.order.nodes
          == std::vector<std::string>{"a", "a+b+c", "a+c", "b", "c"});
    CHECK(rm.ranking.at("a") == iv(1, 1));
    CHECK(rm.ranking.at("b") == iv(1, 2));
    CHECK(rm.ranking.at("c") == iv(1, 1));
    CHECK(rm.ranking.at("a+c") == iv(2, 2));
    CHECK(rm.ranking.at("a+b+c") == iv(3, 3));
    CHECK(rm.model.tuples("E", 0) == PairSet{{"a+c", "a+c"}});
    CHECK(rm.model.tuples("E", 1) == PairSet{{"a+b+c", "a+b+c"}});

    auto rep = validate_ranking(rm);
    CHECK(rep.ok);
    CHECK(rep.clean);

    std::map<std::string, std::string> to_input{{"a", "a"}, {"b", "b"}, {"c", "c"}};
    CHECK(matches_via(interpret(rm.model), path3(), to_input));
}

TEST_CASE("ranking validation rejects broken clauses and spots non-clean rankings")
{
    auto rm = rm_p3();

    // a root interval stretched right is a valid ranking but not clean
    auto stretched = rm;
    stretched.ranking["a+b+c"] = iv(3, 4);
    auto rep = validate_ranking(stretched);
    CHECK(rep.ok);
    CHECK_FALSE(rep.clean);
    CHECK(rep.clean_detail.find("root") != std::string::npos);

    // swapping parent and child intervals breaks clause (1)
    auto swapped = rm;
    swapped.ranking["a+c"] = iv(3, 3);
    swapped.ranking["a+b+c"] = iv(2, 2);
    auto rep2 = validate_ranking(swapped);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.detail.find("clause (1)") != std::string::npos);

    // separating S-partners breaks clause (2)
    TreeOrder order = make_tree_order({"r", "x", "y"}, {{"x", "r"}, {"y", "r"}});
    auto m = make_merge_model("m", make_signature({"E"}), order,
                              {{{"E", 1}, {{"x", "y"}, {"r", "r"}}}});
    RankedMergeModel bad{m, {{"x", iv(1, 1)}, {"y", iv(2, 2)}, {"r", iv(3, 3)}}};
    auto rep3 = validate_ranking(bad);
    CHECK_FALSE(rep3.ok);
    CHECK(rep3.detail.find("clause (2)") != std::string::npos);
}

TEST_CASE("cleaning the raw occurrence ranking of the path sequence")
{
    // the raw occurrence intervals give the root [3,4]; cleaning restores the
    // fixture (f-values 1,1,1,2,3 and ranks 1,1,1,2,3)
    auto rm = rm_p3();
    auto raw = rm;
    raw.ranking["a+b+c"] = iv(3, 4);
    CHECK(cleaning(raw) == rm);

    // cleaning a clean model changes nothing
    CHECK(cleaning(rm) == rm);

    // shifting all leaves down and keeping the non-leaf order gives the same
    // cleaning
    auto shifted = rm;
    for (const auto& leaf : {"a", "b", "c"}) {
        shifted.ranking[leaf].lo = shifted.ranking[leaf].lo - Rat(10);
    }
    CHECK(validate_ranking(shifted).ok);
    CHECK(cleaning(shifted) == rm);
}

TEST_CASE("sequence of the path model reproduces the fixture")
{
    auto rm = rm_p3();
    auto seq = sequence_of_model(rm);
    MergeSequence expected = sigma_p3();
    CHECK(seq.structure_ref == "p3");
    CHECK(seq.steps == expected.steps);

    // a single-node model gives the one-step sequence
    auto single = RankedMergeModel{make_merge_model("one", make_signature({"E"}),
                                                    make_tree_order({"v"}, {}), {}),
                                   {{"v", iv(1, 1)}}};
    auto sseq = sequence_of_model(single);
    CHECK(sseq.steps.size() == 1);
    CHECK(sseq.steps[0].parts == std::vector<std::vector<std::string>>{{"v"}});
    CHECK(sseq.steps[0].reveals.empty());

    // non-clean input is rejected
    auto stretched = rm;
    stretched.ranking["a+b+c"] = iv(3, 4);
    CHECK_THROWS_AS(sequence_of_model(stretched), std::invalid_argument);
}

TEST_CASE("merge-walk reach on the path fixture")
{
    auto rm = rm_p3();
    using Set = std::set<std::string>;
    CHECK(merge_walk_reach(rm, "a", Rat(2), 1) == Set{"a+c"});
    CHECK(merge_walk_reach(rm, "b", Rat(2), 1) == Set{"b"});
    CHECK(merge_walk_reach(rm, "a", Rat(1), 3) == Set{"a"});
    CHECK(ranked_width(rm, 1) == 1);
    CHECK_THROWS_AS(merge_walk_reach(rm, "a", Rat(3), 1), std::invalid_argument);
    CHECK_THROWS_AS(merge_walk_reach(rm, "a+c", Rat(2), 1), std::invalid_argument);

    auto single = RankedMergeModel{make_merge_model("one", make_signature({"E"}),
                                                    make_tree_order({"v"}, {}), {}),
                                   {{"v", iv(1, 1)}}};
    CHECK(ranked_width(single, 1) == 0); // empty tau range
}

TEST_CASE("integer tau lies in a chain interval iff it lies in the parent gap")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_structure(rng, 6, detail::profile_cycle(trial));
        auto rm = model_of_sequence(greedy_sequence(g, 1), g);
        detail::TreeIndex ix(rm.model.order);
        long long m = rm.interval(ix.nodes[ix.root]).lo.num;
        for (const auto& x : rm.model.order.nodes) {
            int xi = ix.at(x);
            if (ix.parent[xi] < 0) continue;
            const std::string& p = ix.nodes[ix.parent[xi]];
            for (long long tau = 1; tau <= m; ++tau) {
                bool slot = rm.interval(x).lo <= Rat(tau) && Rat(tau) < rm.interval(p).lo;
                CHECK(slot == rm.interval(x).contains(Rat(tau)));
            }
        }
    }
}

TEST_CASE("layers of clean models are maximal antichains")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_structure(rng, 6, detail::profile_cycle(trial));
        auto rm = model_of_sequence(greedy_sequence(g, 1), g);
        detail::TreeIndex ix(rm.model.order);
        long long m = rm.interval(ix.nodes[ix.root]).lo.num;
        for (long long i = 1; i <= m; ++i) {
            std::set<std::string> layer;
            for (const auto& x : rm.model.order.nodes)
                if (rm.interval(x).contains(Rat(i))) layer.insert(x);
            CHECK(is_antichain(rm.model.order, layer, true));
        }
    }
}

TEST_CASE("ranked compactification on the chain example")
{
    auto rm = rm_p3();
    CHECK(compactify_ranked(rm) == rm); // already compact and clean

    TreeOrder chain = make_tree_order({"r", "x", "leaf"}, {{"x", "r"}, {"leaf", "x"}});
    auto idle = make_merge_model("m", make_signature({"E"}), chain,
                                 {{{"E", 1}, {{"r", "r"}}}});
    RankedMergeModel ranked{idle, {{"leaf", iv(1, 1)}, {"x", iv(2, 2)}, {"r", iv(3, 3)}}};
    auto compacted = compactify_ranked(ranked);
    CHECK(compacted.model.order.nodes == std::vector<std::string>{"leaf", "r"});
    CHECK(compacted.ranking.at("leaf") == iv(1, 1));
    CHECK(compacted.ranking.at("r") == iv(2, 2));
    CHECK(is_compact(compacted));
    CHECK(compactify_ranked(compacted) == compacted);
    CHECK(interpret(compacted.model) == interpret(ranked.model));
}

TEST_CASE("lift of the path fixture has eight nodes and doubles at most")
{
    auto rm = rm_p3();
    auto lifted = lift_model(rm);
    CHECK(lifted.model.order.nodes.size() == 8);
    CHECK(validate_model(lifted.model).ok);
    auto rep = validate_ranking(lifted);
    CHECK(rep.ok);
    CHECK(rep.clean);
    CHECK(is_compact(lifted));

    // the S_E,0 loop at a+c lifts to a loop at the encoding leaf a+c@1
    CHECK(lifted.model.tuples("S__E__0", 1) == PairSet{{"a+c@1", "a+c@1"}});

    CHECK(matches_via(interpret(lifted.model), without_loops(as_structure(rm.model)),
                      lift_leaf_map(rm.model)));
    for (int r : {1, 2, 3})
        CHECK(ranked_width(lifted, r) <= 2 * ranked_width(rm, r));

    // single-node input: fresh root plus one encoding leaf plus root loops
    auto single = RankedMergeModel{make_merge_model("one", make_signature({"E"}),
                                                    make_tree_order({"v"}, {}), {}),
                                   {{"v", iv(1, 1)}}};
    auto lifted1 = lift_model(single);
    CHECK(lifted1.model.order.nodes == std::vector<std::string>{"@root", "v@-1"});
    CHECK(validate_model(lifted1.model).ok);
    CHECK(lifted1.model.tuples("prec", 0) == PairSet{{"@root", "@root"}});

    // non-compact input is rejected
    TreeOrder chain = make_tree_order({"r", "x", "leaf"}, {{"x", "r"}, {"leaf", "x"}});
    auto idle = make_merge_model("m", make_signature({"E"}), chain,
                                 {{{"E", 1}, {{"r", "r"}}}});
    RankedMergeModel ranked{idle, {{"leaf", iv(1, 1)}, {"x", iv(2, 2)}, {"r", iv(3, 3)}}};
    CHECK_THROWS_AS(lift_model(ranked), std::invalid_argument);
}

TEST_CASE("round-trip width agreement on the fixture")
{
    auto rm = rm_p3();
    auto seq = sequence_of_model(rm);
    auto interp = interpret(rm.model);
    for (int r : {1, 2, 3}) CHECK(width(seq, interp, r) == ranked_width(rm, r));
}
