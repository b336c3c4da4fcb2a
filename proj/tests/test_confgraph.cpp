#include <catch2/catch_amalgamated.hpp>

#include "dproc/config_graph.hpp"
#include "dproc/fixtures.hpp"

using namespace dproc;

TEST_CASE("projection") {
    DegreeSequence ds(std::vector<int>{2, 2});
    PointMap pm(ds);
    SECTION("empty matching") {
        ConfigGraph g(ds, {});
        CHECK(g.project().edge_count() == 0);
    }
    SECTION("parallel point pairs become a doubled edge") {
        ConfigGraph g(ds, {{pm.pid({1, 1}), pm.pid({2, 1})}, {pm.pid({1, 2}), pm.pid({2, 2})}});
        MultiGraph mg = g.project();
        CHECK(mg.edge_count() == 2);
        CHECK_FALSE(mg.is_simple());
        CHECK(mg.degrees() == std::vector<int>{2, 2});
    }
    SECTION("intra-vertex pairs are rejected") {
        CHECK_THROWS_AS(ConfigGraph(ds, {{pm.pid({1, 1}), pm.pid({1, 2})}}),
                        std::invalid_argument);
    }
}

TEST_CASE("counterexample fixture projects to the depicted simple graph") {
    auto fx = counterexample_instance();
    MultiGraph mg = fx.plus.project();
    CHECK(mg.edge_count() == 10);
    CHECK(mg.is_simple());
    CHECK(mg.degrees() == std::vector<int>{2, 2, 2, 4, 2, 2, 3, 3});
    MultiGraph mm = fx.minus.project();
    CHECK(mm.is_simple());
    CHECK(mm.degrees() == mg.degrees());
}

TEST_CASE("small edge count") {
    auto fx = counterexample_instance();
    CHECK(small_edge_count(fx.plus, 2) == 2);
    CHECK(small_edge_count(fx.minus, 2) == 1);
    CHECK(small_edge_count(ConfigGraph(fx.ds, {}), 2) == 0);
    // X_k(G) equals X_k of the projection
    auto deg = fx.plus.project().degrees();
    for (int k = 1; k <= 4; ++k)
        CHECK(small_edge_count(fx.plus, k) == small_edge_count(fx.plus.project(), deg, k));
    // every edge is small at k = Delta
    CHECK(small_edge_count(fx.plus, 4) == 10);
}

TEST_CASE("edge classification") {
    auto fx = counterexample_instance();
    // x-y joins two degree-3 vertices: large at k=2
    CHECK(classify_edge(fx.plus, {fx.anchor.x, fx.anchor.y}, 2) == EdgeClass::large);
    // B.2-V2.1 joins degrees 2 and 4: mixed
    PointMap pm(fx.ds);
    CHECK(classify_edge(fx.plus, {pm.pid({2, 2}), pm.pid({4, 1})}, 2) == EdgeClass::mixed);
    CHECK(classify_edge(fx.plus, {fx.anchor.a, fx.anchor.b}, 2) == EdgeClass::small);
    CHECK_THROWS_AS(classify_edge(fx.plus, {fx.anchor.a, fx.anchor.x}, 2),
                    std::invalid_argument);
    // with k = Delta everything is small
    CHECK(classify_edge(fx.plus, {fx.anchor.x, fx.anchor.y}, 4) == EdgeClass::small);
    // mixed count identity on complete graphs
    for (int k = 1; k <= 3; ++k) {
        long long mixed = 0;
        for (auto e : fx.plus.pairs())
            if (classify_edge(fx.plus, e, k) == EdgeClass::mixed) ++mixed;
        CHECK(mixed == fx.ds.small_point_count(k) - 2 * small_edge_count(fx.plus, k));
    }
}

TEST_CASE("point-level neighborhood") {
    auto fx = counterexample_instance();
    PointMap pm(fx.ds);
    SECTION("all points have empty external neighborhood") {
        std::set<int> all;
        for (int p = 0; p < pm.total_points(); ++p) all.insert(p);
        CHECK(neighbors(fx.plus, all).empty());
    }
    SECTION("A,B,X,Y neighborhood is the six external partner points") {
        std::set<int> s;
        for (int v : {1, 2, 7, 8})
            for (int c = 1; c <= fx.ds.degree(v - 1); ++c) s.insert(pm.pid({v, c}));
        auto nb = neighbors(fx.plus, s);
        std::set<int> expected = {pm.pid({3, 1}), pm.pid({4, 1}), pm.pid({3, 2}),
                                  pm.pid({4, 3}), pm.pid({6, 2}), pm.pid({5, 2})};
        CHECK(nb == expected);
    }
    SECTION("unmatched points have no neighbors") {
        ConfigGraph g(fx.ds, {});
        std::set<int> s = {0, 1, 2};
        CHECK(neighbors(g, s).empty());
    }
}

TEST_CASE("serialization round trip") {
    auto fx = counterexample_instance();
    std::string text = fx.plus.serialize();
    CHECK(ConfigGraph::parse(text) == fx.plus);
    CHECK(text.substr(0, text.find('\n')) == "2 2 2 2 2 3 3 4");

    MultiGraph mg = fx.plus.project();
    CHECK(MultiGraph::from_edge_list(mg.to_edge_list()) == mg);
}

TEST_CASE("gamma profile") {
    DegreeSequence ds(std::vector<int>{1, 1, 1, 1});
    PointMap pm(ds);
    EdgeSequence seq{{{pm.pid({1, 1}), pm.pid({2, 1})}, {pm.pid({3, 1}), pm.pid({4, 1})}}};
    CHECK(gamma_profile(ds, seq) == std::vector<int>{4, 2, 0});

    auto fx = counterexample_instance();
    EdgeSequence full{fx.plus.pairs()};
    auto gamma = gamma_profile(fx.ds, full);
    CHECK(gamma.front() == 8);
    CHECK(gamma.back() == 0);
    for (size_t i = 1; i < gamma.size(); ++i) {
        int drop = gamma[i - 1] - gamma[i];
        CHECK((drop >= 0 && drop <= 2));
    }
}
