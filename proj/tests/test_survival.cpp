#include "mkpca/survival.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace mkpca;

TEST_CASE("chi_square_sf closed forms") {
    CHECK(chi_square_sf(0.0, 1) == 1.0);
    CHECK(chi_square_sf(0.0, 7) == 1.0);

    // df = 2 is an exponential: sf(x) = exp(-x/2); at x = 2 ln 2 exactly 0.5.
    CHECK(chi_square_sf(2.0 * std::log(2.0), 2) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.1, 1.0, 5.0, 20.0, 80.0}) {
        CHECK(chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
    }

    // df = 1 reduces to the two-sided normal tail: sf(x) = erfc(sqrt(x/2)).
    CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    for (double x : {0.01, 0.5, 1.0, 2.0, 10.0, 50.0, 120.0}) {
        CHECK(chi_square_sf(x, 1) ==
              doctest::Approx(std::erfc(std::sqrt(x / 2.0))).epsilon(1e-10));
    }
}

TEST_CASE("chi_square_sf matches an independent recurrence oracle over the domain") {
    // Q(df+2, x) = Q(df, x) + (x/2)^(df/2) exp(-x/2) / Gamma(df/2 + 1), seeded with the
    // df = 1 (erfc) and df = 2 (exponential) closed forms. The oracle never touches the
    // series / continued-fraction implementation it checks.
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0, 20.0, 50.0, 100.0, 150.0,
                     200.0}) {
        double odd = std::erfc(std::sqrt(x / 2.0));
        double even = std::exp(-x / 2.0);
        for (int df = 1; df <= 20; ++df) {
            double expect = (df % 2 == 1) ? odd : even;
            CHECK(chi_square_sf(x, df) == doctest::Approx(expect).epsilon(1e-10));
            double half = static_cast<double>(df) / 2.0;
            double term = std::exp(half * std::log(x / 2.0) - x / 2.0 - std::lgamma(half + 1.0));
            if (df % 2 == 1) {
                odd += term;
            } else {
                even += term;
            }
        }
    }
}

TEST_CASE("chi_square_sf against frozen high-precision values") {
    CHECK(chi_square_sf(10.0, 4) == doctest::Approx(0.04042768199451280).epsilon(1e-12));
    CHECK(chi_square_sf(3.5, 7) == doctest::Approx(0.83522548261034214).epsilon(1e-12));
    CHECK(chi_square_sf(0.01, 3) == doctest::Approx(0.99973483494134439).epsilon(1e-12));
    // scale(0) makes these relative checks; with the default scale the tiny magnitudes
    // would pass vacuously.
    CHECK(chi_square_sf(150.0, 20) ==
          doctest::Approx(6.2856816739333810e-22).epsilon(1e-9).scale(0.0));
    CHECK(chi_square_sf(200.0, 20) ==
          doctest::Approx(1.1253473960842734e-31).epsilon(1e-9).scale(0.0));
    CHECK(chi_square_sf(200.0, 1) ==
          doctest::Approx(2.0884875837625448e-45).epsilon(1e-9).scale(0.0));
}

TEST_CASE("chi_square_sf is decreasing in x and increasing in df") {
    for (int df : {1, 2, 5, 12}) {
        double prev = 1.0;
        for (double x = 0.5; x <= 60.0; x += 0.5) {
            double value = chi_square_sf(x, df);
            CHECK(value < prev);
            prev = value;
        }
    }
    for (double x : {0.5, 3.0, 11.0, 40.0}) {
        for (int df = 1; df < 20; ++df) {
            CHECK(chi_square_sf(x, df + 1) > chi_square_sf(x, df));
        }
    }
    CHECK_THROWS_AS(chi_square_sf(-1.0, 2), ConfigError);
    CHECK_THROWS_AS(chi_square_sf(1.0, 0), ConfigError);
}

namespace {

std::vector<SurvivalRecord> records_of(const std::vector<double>& times,
                                       const std::vector<bool>& events) {
    std::vector<SurvivalRecord> records;
    for (std::size_t i = 0; i < times.size(); ++i) {
        records.push_back(
            SurvivalRecord{"s" + std::to_string(i), times[i], events[i]});
    }
    return records;
}

}  // namespace

TEST_CASE("logrank on identical groups is exactly null") {
    auto records = records_of({1, 2, 3, 1, 2, 3}, {true, true, false, true, true, false});
    std::vector<int> groups = {0, 0, 0, 1, 1, 1};
    LogRankResult result = logrank_test(groups, records);
    CHECK(result.chi_square == 0.0);
    CHECK(result.degrees_of_freedom == 1);
    CHECK(result.p_value == 1.0);
}

TEST_CASE("logrank matches the hand-computed 6-record instance") {
    // Group A events at {1,2,3}, group B events at {4,5,6}. Risk tables by hand:
    //   t=1: n=6, nA=3, d=1 -> E_A += 1/2,  V += 1/4
    //   t=2: n=5, nA=2, d=1 -> E_A += 2/5,  V += 6/25
    //   t=3: n=4, nA=1, d=1 -> E_A += 1/4,  V += 3/16
    //   t=4..6: nA=0, no contribution (t=6 has n=1, variance term skipped)
    // O_A = 3, E_A = 1.15, V = 0.6775, chi2 = (1.85)^2 / 0.6775 = 1369/271.
    auto records = records_of({1, 2, 3, 4, 5, 6}, {true, true, true, true, true, true});
    std::vector<int> groups = {0, 0, 0, 1, 1, 1};
    LogRankResult result = logrank_test(groups, records);
    CHECK(result.chi_square == doctest::Approx(1369.0 / 271.0).epsilon(1e-9));
    CHECK(result.degrees_of_freedom == 1);
    CHECK(result.p_value == doctest::Approx(0.024602349953641791).epsilon(1e-9));
}

TEST_CASE("logrank is invariant under group relabeling") {
    auto records = records_of({3, 6, 2, 9, 4, 8, 1, 7, 5, 10},
                              {true, false, true, true, true, false, true, true, false, true});
    std::vector<int> groups = {0, 1, 2, 0, 1, 2, 0, 1, 2, 0};
    LogRankResult base = logrank_test(groups, records);

    std::vector<int> relabeled(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        relabeled[i] = (groups[i] + 1) % 3;  // cyclic relabel
    }
    LogRankResult swapped = logrank_test(relabeled, records);
    CHECK(swapped.chi_square == doctest::Approx(base.chi_square).epsilon(1e-9));
    CHECK(swapped.p_value == doctest::Approx(base.p_value).epsilon(1e-9));
    CHECK(swapped.degrees_of_freedom == base.degrees_of_freedom);
}

TEST_CASE("a sample censored at time zero changes nothing") {
    auto records = records_of({2, 4, 6, 3, 5, 7}, {true, true, false, true, false, true});
    std::vector<int> groups = {0, 0, 0, 1, 1, 1};
    LogRankResult base = logrank_test(groups, records);

    auto extended = records;
    extended.push_back(SurvivalRecord{"zero", 0.0, false});
    auto groups2 = groups;
    groups2.push_back(0);
    LogRankResult with_zero = logrank_test(groups2, extended);
    CHECK(with_zero.chi_square == doctest::Approx(base.chi_square).epsilon(1e-12));
    CHECK(with_zero.p_value == doctest::Approx(base.p_value).epsilon(1e-12));
}

TEST_CASE("logrank error paths") {
    auto records = records_of({1, 2, 3}, {true, true, true});
    CHECK_THROWS_AS(logrank_test({0, 0, 0}, records), ConfigError);
    CHECK_THROWS_AS(logrank_test({0, 1}, records), ConfigError);

    auto zeros = records_of({0, 0, 0, 0}, {false, false, false, false});
    CHECK_THROWS_WITH_AS(logrank_test({0, 0, 1, 1}, zeros),
                         doctest::Contains("censored at time 0"), DataError);

    // One group exists only as censored-at-zero samples: never at risk at any event.
    auto mixed = records_of({5, 6, 0, 0}, {true, true, false, false});
    CHECK_THROWS_WITH_AS(logrank_test({0, 0, 1, 1}, mixed),
                         doctest::Contains("never at risk"), DataError);
}

TEST_CASE("logrank with no events at all is null") {
    auto records = records_of({5, 6, 7, 8}, {false, false, false, false});
    LogRankResult result = logrank_test({0, 0, 1, 1}, records);
    CHECK(result.chi_square == 0.0);
    CHECK(result.p_value == 1.0);
}

TEST_CASE("kaplan_meier flat curve when everything is censored") {
    auto records = records_of({3, 8, 11}, {false, false, false});
    auto curve = kaplan_meier(records);
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].time == 0.0);
    CHECK(curve[0].survival == 1.0);
}

TEST_CASE("kaplan_meier steps through two events") {
    auto records = records_of({1, 2}, {true, true});
    auto curve = kaplan_meier(records);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].survival == 1.0);
    CHECK(curve[1].time == 1.0);
    CHECK(curve[1].survival == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(curve[2].time == 2.0);
    CHECK(curve[2].survival == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kaplan_meier matches the hand-computed 5-record table") {
    // Events at 1, 3, 5 with censoring at 2 and 4:
    //   t=1: n=5, d=1 -> S = 4/5
    //   t=3: n=3, d=1 -> S = 4/5 * 2/3 = 8/15
    //   t=5: n=1, d=1 -> S = 0
    auto records = records_of({1, 2, 3, 4, 5}, {true, false, true, false, true});
    auto curve = kaplan_meier(records);
    REQUIRE(curve.size() == 4);
    CHECK(curve[1].survival == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(curve[2].survival == doctest::Approx(8.0 / 15.0).epsilon(1e-12));
    CHECK(curve[3].survival == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kaplan_meier stays in [0,1] and never increases") {
    mkpca::testing::Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> times;
        std::vector<bool> events;
        std::size_t n = 2 + rng.index(20);
        for (std::size_t i = 0; i < n; ++i) {
            times.push_back(std::floor(rng.uniform() * 15.0));
            events.push_back(rng.uniform() < 0.7);
        }
        auto curve = kaplan_meier(records_of(times, events));
        double prev = 1.0;
        for (const auto& point : curve) {
            CHECK(point.survival >= 0.0);
            CHECK(point.survival <= 1.0);
            CHECK(point.survival <= prev + 1e-15);
            prev = point.survival;
        }
    }
}
