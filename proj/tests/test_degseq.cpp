#include <catch2/catch_amalgamated.hpp>

#include "dproc/degree_sequence.hpp"
#include "dproc/enumerate.hpp"

using namespace dproc;

TEST_CASE("degree counts") {
    CHECK(DegreeSequence({2, 2, 2, 2}).degree_counts() ==
          std::map<int, long long>{{2, 4}});
    // the counterexample instance's degrees
    DegreeSequence fig(std::vector<int>{2, 2, 2, 2, 2, 3, 3, 4});
    CHECK(fig.degree_counts() == std::map<int, long long>{{2, 5}, {3, 2}, {4, 1}});
    CHECK(DegreeSequence({1, 1}).degree_counts() == std::map<int, long long>{{1, 2}});
    // identities: sum n_j = n, sum j n_j = 2m
    long long total = 0, weighted = 0;
    for (auto [j, c] : fig.degree_counts()) {
        total += c;
        weighted += j * c;
    }
    CHECK(total == fig.n());
    CHECK(weighted == 2 * fig.m());
}

TEST_CASE("graphicality") {
    CHECK(is_graphic(DegreeSequence({2, 2, 2, 2})));
    CHECK_FALSE(is_graphic(DegreeSequence({1, 1, 1})));  // odd sum
    CHECK_FALSE(is_graphic(DegreeSequence({3, 3, 1, 1})));
}

TEST_CASE("graphicality agrees with exhaustive search up to n = 7") {
    for_each_degree_multiset(/*max_m=*/10, /*max_delta=*/6, [&](const std::vector<int>& degs) {
        if (degs.size() > 7) return;
        DegreeSequence ds(degs);
        bool found = false;
        for_each_simple_graph(ds, [&](const std::vector<std::pair<int, int>>&) {
            found = true;
            return false;  // stop at the first witness
        });
        INFO("degrees " << Catch::Detail::stringify(degs));
        CHECK(is_graphic(ds) == found);
    });
}

TEST_CASE("mu evaluation") {
    DegreeSequence fig(std::vector<int>{2, 2, 2, 2, 2, 3, 3, 4});
    CHECK(mu(fig, 2) == Rational(5, 2));
    CHECK_THROWS_AS(mu(DegreeSequence({1, 1}), 1), std::invalid_argument);

    // mu/n -> 1/32 for half degree-1, half degree-7
    DegreeSequence big = DegreeSequence::parse("1:500 7:500");
    CHECK(mu(big, 1) == Rational(1000) / 32);

    // mu <= m always
    for (auto degs : {std::vector<int>{1, 2, 3, 4}, {2, 2, 3, 3}, {1, 1, 7, 7}}) {
        DegreeSequence ds(degs);
        for (int k = 1; k < ds.delta(); ++k) CHECK(mu(ds, k) <= Rational(ds.m()));
    }
}

TEST_CASE("window membership") {
    CHECK(window_check(DegreeSequence::parse("1:50 7:50"), 1, Rational(1, 4)));
    CHECK_FALSE(window_check(DegreeSequence::parse("2:100"), 1, Rational(1, 10)));
    CHECK(window_check(DegreeSequence({2, 2, 2, 2, 2, 3, 3, 4}), 2, Rational(1, 4)));
}

TEST_CASE("parsing") {
    CHECK(DegreeSequence::parse("2 2 2 2").degrees() == std::vector<int>{2, 2, 2, 2});
    CHECK(DegreeSequence::parse("1:3 2:2").degrees() == std::vector<int>{1, 1, 1, 2, 2});
    CHECK_THROWS_AS(DegreeSequence::parse("0 1 1"), std::invalid_argument);
    CHECK(DegreeSequence::parse("0 1 1", /*lenient=*/true).degrees() ==
          std::vector<int>{0, 1, 1});
    CHECK_THROWS_AS(DegreeSequence::parse(""), std::invalid_argument);
}

TEST_CASE("rational rendering") {
    CHECK(decimal_string(Rational(1, 3), 6) == "0.333333");
    CHECK(decimal_string(Rational(1, 2), 0) == "0");   // half-even
    CHECK(decimal_string(Rational(3, 2), 0) == "2");
    CHECK(decimal_string(Rational(-1, 8), 3) == "-0.125");
    CHECK(rational_string(Rational(5, 2)) == "5/2");
    CHECK(rational_string(Rational(4)) == "4");
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-7") == Rational(-7));
}
