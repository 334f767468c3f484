#include "mw/merge_sequence.hpp"
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

BinaryStructure complete(int n)
{
    std::vector<std::string> vs;
    for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
    PairSet e;
    for (const auto& u : vs)
        for (const auto& v : vs)
            if (u != v) e.insert({u, v});
    return make_structure("k" + std::to_string(n), make_signature({"E"}), vs, {{"E", e}});
}

BinaryStructure edgeless(int n)
{
    std::vector<std::string> vs;
    for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
    return make_structure("n" + std::to_string(n), make_signature({"E"}), vs, {});
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

} // namespace

TEST_CASE("validate_sequence accepts the path fixture and rejects mutations")
{
    auto g = path3();
    CHECK(validate_sequence(sigma_p3(), g).ok);

    // removing the step-3 reveal leaves {a,b,c} mixed in E
    auto broken = sigma_p3();
    broken.steps[2].reveals.clear();
    broken.steps[3].reveals.insert({"a", "c"});
    broken.steps[3].reveals.insert({"c", "a"});
    auto rep = validate_sequence(broken, g);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("step 3") != std::string::npos);
    CHECK(rep.detail.find("mixed in E") != std::string::npos);
    CHECK(rep.detail.find("P = Q") != std::string::npos);

    // single-vertex structure: one step, nothing to reveal
    auto one = make_structure("one", make_signature({"E"}), {"v"}, {});
    MergeSequence trivial{"one", {{{{"v"}}, {}}}};
    CHECK(validate_sequence(trivial, one).ok);

    // element-name mismatch
    auto other = make_structure("other", make_signature({"E"}), {"x", "y", "z"}, {});
    CHECK_FALSE(validate_sequence(sigma_p3(), other).ok);

    // refinement violation
    auto coarse = sigma_p3();
    coarse.steps[1].parts = {{"a", "b"}, {"c"}};
    CHECK_FALSE(validate_sequence(coarse, g).ok);
}

TEST_CASE("reach on the path fixture")
{
    auto g = path3();
    auto seq = sigma_p3();
    using Parts = std::vector<std::vector<std::string>>;
    CHECK(reach(seq, g, "a", 3, 1) == Parts{{"a", "c"}});
    CHECK(reach(seq, g, "b", 3, 1) == Parts{{"b"}});
    CHECK(reach(seq, g, "a", 4, 1) == Parts{{"a", "b", "c"}});
    CHECK_THROWS_AS(reach(seq, g, "a", 1, 1), std::out_of_range);
    CHECK_THROWS_AS(reach(seq, g, "a", 5, 1), std::out_of_range);
}

TEST_CASE("width of fixed sequences")
{
    auto g = path3();
    CHECK(width(sigma_p3(), g, 1) == 1);

    auto one = make_structure("one", make_signature({"E"}), {"v"}, {});
    CHECK(width(MergeSequence{"one", {{{{"v"}}, {}}}}, one) == 0);

    // collapsing steps 2-3 into one step forces reach size 2 over singletons
    MergeSequence coarse;
    coarse.structure_ref = "p3";
    coarse.steps.push_back({{{"a"}, {"b"}, {"c"}}, {}});
    coarse.steps.push_back({{{"a", "b", "c"}}, {{"a", "c"}, {"c", "a"}}});
    coarse.steps.push_back({{{"a", "b", "c"}}, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}}});
    CHECK(validate_sequence(coarse, g).ok);
    CHECK(width(coarse, g, 1) == 2);

    // width is monotone in the radius
    CHECK(width(sigma_p3(), g, 2) >= width(sigma_p3(), g, 1));
    CHECK(width(coarse, g, 2) >= width(coarse, g, 1));
}

TEST_CASE("exact oracle on small named structures")
{
    auto p3 = path3();
    auto result = mw_exact(p3, 1);
    CHECK(result.value == 1);
    CHECK(validate_sequence(result.witness, p3).ok);
    CHECK(width(result.witness, p3, 1) == 1);

    CHECK(mw_exact(complete(3), 1).value == 1);
    CHECK(mw_exact(edgeless(3), 1).value == 1);
    auto single = make_structure("one", make_signature({"E"}), {"v"}, {});
    CHECK(mw_exact(single, 1).value == 0);
    CHECK(mw_exact_unreduced(single, 1) == 0);

    CHECK_THROWS_AS(mw_exact(complete(4), 1, 3), LimitError);
}

TEST_CASE("oracle witnesses validate and attain the value")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_structure(rng, 4, trial % 2 ? Profile::dir_E : Profile::sym_E);
        for (int r : {1, 2}) {
            auto res = mw_exact(g, r, 4);
            CHECK(validate_sequence(res.witness, g).ok);
            CHECK(width(res.witness, g, r) == res.value);
        }
    }
}

TEST_CASE("oracle is deterministic")
{
    std::mt19937_64 rng(5);
    auto g = random_structure(rng, 4, Profile::dir_EF);
    auto a = mw_exact(g, 1, 4);
    auto b = mw_exact(g, 1, 4);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
}

TEST_CASE("greedy sequences are valid and bounded below by the oracle")
{
    auto single = make_structure("one", make_signature({"E"}), {"v"}, {});
    auto gs = greedy_sequence(single, 1);
    CHECK(gs.steps.size() == 1);
    CHECK(validate_sequence(gs, single).ok);

    auto k2 = complete(2);
    auto gk2 = greedy_sequence(k2, 1);
    CHECK(gk2.steps.size() == 3);
    CHECK(validate_sequence(gk2, k2).ok);
    CHECK(gk2.steps[1].reveals.empty()); // uniform edges force nothing
    CHECK(width(gk2, k2, 1) == 1);

    auto p3 = path3();
    CHECK(validate_sequence(greedy_sequence(p3, 1), p3).ok);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_structure(rng, 4, detail::profile_cycle(trial));
        auto seq = greedy_sequence(g, 1);
        CHECK(validate_sequence(seq, g).ok);
        CHECK(width(seq, g, 1) >= mw_exact(g, 1, 4).value);
    }
}
