#include <doctest.h>

#include <random>

#include "tvpath/signal.hpp"

using namespace tvpath;

TEST_CASE("make_signal keeps canonical input unchanged") {
    const std::vector<double> L{1, 2, 1, 2, 1, 2};
    const std::vector<double> f{2, 1, 3, 5, 6, 4};
    const Signal s = make_signal(L, f);
    CHECK(s.size() == 6);
    CHECK(s.lengths() == L);
    CHECK(s.values() == f);
    CHECK(s.min_value() == 1.0);
    CHECK(s.max_value() == 6.0);
}

TEST_CASE("make_signal merges adjacent equal values") {
    const Signal s = make_signal(std::vector<double>{1, 1}, std::vector<double>{5, 5});
    CHECK(s.size() == 1);
    CHECK(s.length(0) == 2.0);
    CHECK(s.value(0) == 5.0);
}

TEST_CASE("make_signal rejects bad input") {
    CHECK_THROWS_AS(make_signal(std::vector<double>{}, std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_signal(std::vector<double>{1, 0, 1}, std::vector<double>{0, 1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_signal(std::vector<double>{1}, std::vector<double>{1.0 / 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_signal(std::vector<double>{1, 1}, std::vector<double>{1}),
                    std::invalid_argument);
}

TEST_CASE("signal_from_samples run-length encodes") {
    const Signal s =
        signal_from_samples(std::vector<double>{0, 0, 1, 1, 1}, 1.0);
    CHECK(s.lengths() == std::vector<double>{2, 3});
    CHECK(s.values() == std::vector<double>{0, 1});

    const Signal one = signal_from_samples(std::vector<double>{7}, 0.5);
    CHECK(one.lengths() == std::vector<double>{0.5});
    CHECK(one.values() == std::vector<double>{7});

    const Signal three = signal_from_samples(std::vector<double>{1, 2, 1}, 1.0);
    CHECK(three.lengths() == std::vector<double>{1, 1, 1});
    CHECK(three.values() == std::vector<double>{1, 2, 1});

    CHECK_THROWS_AS(signal_from_samples(std::vector<double>{}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(signal_from_samples(std::vector<double>{1}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("staircase_points traces the step function") {
    const Signal one = make_signal(std::vector<double>{2}, std::vector<double>{9});
    const auto pts1 = staircase_points(one, std::vector<double>{3});
    REQUIRE(pts1.size() == 2);
    CHECK(pts1[0] == std::pair{0.0, 3.0});
    CHECK(pts1[1] == std::pair{2.0, 3.0});

    const Signal s6 = make_signal(std::vector<double>{1, 2, 1, 2, 1, 2},
                                  std::vector<double>{2, 1, 3, 5, 6, 4});
    const auto pts6 = staircase_points(s6, s6.values());
    CHECK(pts6.size() == 12);
    CHECK(pts6[0] == std::pair{0.0, 2.0});
    CHECK(pts6[11] == std::pair{9.0, 4.0});

    const Signal s2 = make_signal(std::vector<double>{1, 1}, std::vector<double>{0, 1});
    const auto pts2 = staircase_points(s2, std::vector<double>{0, 1});
    REQUIRE(pts2.size() == 4);
    CHECK(pts2[1] == std::pair{1.0, 0.0});
    CHECK(pts2[2] == std::pair{1.0, 1.0});

    CHECK_THROWS_AS(staircase_points(s2, std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("canonicalization is idempotent and conserves length") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> len(0.1, 3.0);
    std::uniform_int_distribution<int> val(0, 2);  // small range forces merges
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> L, f;
        const int k = 1 + trial % 10;
        double total = 0.0;
        for (int i = 0; i < k; ++i) {
            L.push_back(len(rng));
            f.push_back(static_cast<double>(val(rng)));
            total += L.back();
        }
        const Signal s = make_signal(L, f);
        for (std::size_t i = 1; i < s.size(); ++i)
            CHECK(s.value(i) != s.value(i - 1));
        CHECK(s.total_length() == doctest::Approx(total).epsilon(1e-14));

        const Signal again = make_signal(s.lengths(), s.values());
        CHECK(again.lengths() == s.lengths());
        CHECK(again.values() == s.values());
    }
}
