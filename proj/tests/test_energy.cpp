#include <doctest.h>

#include <cmath>
#include <random>

#include "tvpath/energy.hpp"
#include "tvpath/signal.hpp"

using namespace tvpath;

namespace {

Signal six_signal() {
    return make_signal(std::vector<double>{1, 2, 1, 2, 1, 2},
                       std::vector<double>{2, 1, 3, 5, 6, 4});
}

}  // namespace

TEST_CASE("total_variation") {
    CHECK(total_variation(std::vector<double>{3.7}) == 0.0);
    CHECK(total_variation(std::vector<double>{2, 1, 3, 5, 6, 4}) == 8.0);
    CHECK(total_variation(std::vector<double>{0, 1, 0}) == 2.0);
    CHECK_THROWS_AS(total_variation(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("energy_G breakdown") {
    const Signal s = six_signal();
    SUBCASE("fidelity vanishes at v = f") {
        const auto e = energy_G(s, s.values(), 2.0, 3.0);
        CHECK(e.fidelity == 0.0);
        CHECK(e.total == 8.0);
    }
    SUBCASE("hand-evaluated k = 2 case") {
        const Signal s2 = make_signal(std::vector<double>{1, 1}, std::vector<double>{0, 1});
        const auto e = energy_G(s2, std::vector<double>{0.25, 0.75}, 2.0, 2.0);
        CHECK(e.tv == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(e.fidelity == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(e.total == doctest::Approx(0.75).epsilon(1e-15));
    }
    SUBCASE("constant candidate on the k = 6 signal") {
        const std::vector<double> v(6, 31.0 / 9.0);
        const auto e = energy_G(s, v, 2.0, 9.0 / 122.0);
        CHECK(e.tv == 0.0);
        CHECK(e.fidelity == doctest::Approx(236.0 / 9.0).epsilon(1e-13));
        CHECK(e.total == doctest::Approx(118.0 / 61.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(energy_G(s, std::vector<double>{1.0}, 2.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("check_optimality") {
    const Signal s = six_signal();
    SUBCASE("large-lambda stage solution is optimal") {
        const std::vector<double> v{1.75, 1.25, 3, 5, 5.5, 4.125};
        CHECK(check_optimality(s, v, 2.0, 2.0, 1e-9).optimal);
    }
    SUBCASE("f itself is never optimal") {
        for (double lambda : {0.1, 1.0, 10.0, 1000.0})
            CHECK_FALSE(check_optimality(s, s.values(), 2.0, lambda, 1e-9).optimal);
    }
    SUBCASE("constant weighted mean is optimal for small lambda") {
        const std::vector<double> v(6, 31.0 / 9.0);
        CHECK(check_optimality(s, v, 2.0, 0.05, 1e-9).optimal);
    }
    SUBCASE("p <= 1 is rejected") {
        CHECK_THROWS_AS(check_optimality(s, s.values(), 1.0, 1.0, 1e-9),
                        std::invalid_argument);
    }
}

TEST_CASE("energy_G is convex along random chords") {
    const Signal s = six_signal();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> val(-2.0, 8.0);
    std::uniform_real_distribution<double> theta(0.0, 1.0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(6), w(6), mix(6);
            for (int i = 0; i < 6; ++i) {
                v[i] = val(rng);
                w[i] = val(rng);
            }
            const double t = theta(rng);
            for (int i = 0; i < 6; ++i) mix[i] = t * v[i] + (1.0 - t) * w[i];
            const double lhs = energy_G(s, mix, p, 0.7).total;
            const double rhs = t * energy_G(s, v, p, 0.7).total +
                               (1.0 - t) * energy_G(s, w, p, 0.7).total;
            CHECK(lhs <= rhs + 1e-10);
        }
    }
}

TEST_CASE("fidelity gradient matches central finite differences") {
    const Signal s = six_signal();
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> val(1.0, 6.0);
    const double h = 1e-6;
    for (double p : {1.5, 2.0, 3.0}) {
        std::vector<double> v(6);
        for (int i = 0; i < 6; ++i) v[i] = val(rng);
        for (int i = 0; i < 6; ++i) {
            const double grad =
                p * s.length(i) * signed_pow(v[i] - s.value(i), p - 1.0);
            std::vector<double> vp = v, vm = v;
            vp[i] += h;
            vm[i] -= h;
            const double fd =
                (energy_G(s, vp, p, 1.0).fidelity - energy_G(s, vm, p, 1.0).fidelity) /
                (2.0 * h);
            CHECK(grad == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("stationarity certificate is global by convexity") {
    const Signal s = six_signal();
    const std::vector<double> v{1.75, 1.25, 3, 5, 5.5, 4.125};  // optimal at lambda=2
    const double ref = energy_G(s, v, 2.0, 2.0).total;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> val(1.0, 6.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> w(6);
        for (int i = 0; i < 6; ++i) w[i] = val(rng);
        CHECK(ref <= energy_G(s, w, 2.0, 2.0).total + 1e-12);
    }
}
