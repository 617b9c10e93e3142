#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "duplex/bandwidth.hpp"

using namespace duplex;

TEST_CASE("frequency grid", "[bandwidth]") {
    const FrequencyGrid g{-10.0, 10.0, 41};
    CHECK(g.spacing() == Catch::Approx(0.5));
    CHECK(g.values().front() == -10.0);
    CHECK(g.values().back() == 10.0);
    CHECK_NOTHROW(FrequencyGrid::from_values({0.0, 0.5, 1.0}));
    CHECK_THROWS_AS(FrequencyGrid::from_values({0.0, 0.5, 1.2}), std::invalid_argument);
}

TEST_CASE("frequency integration basics", "[bandwidth]") {
    const ConvexRegion square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    SECTION("single region with unit spacing is unchanged") {
        const ConvexRegion out = frequency_integrated_region({square}, 1.0);
        CHECK(out.size() == 4);
        CHECK(out.area() == Catch::Approx(1.0));
    }
    SECTION("two identical squares at half spacing reproduce the original") {
        const ConvexRegion out = frequency_integrated_region({square, square}, 0.5);
        CHECK(out.area() == Catch::Approx(1.0));
        CHECK(out.support({1.0, 0.0}) == Catch::Approx(1.0));
    }
    SECTION("empty input is rejected") {
        CHECK_THROWS_AS(frequency_integrated_region({}, 1.0), std::invalid_argument);
    }
}

TEST_CASE("band analysis of the reference device", "[bandwidth]") {
    const DeviceFamily fam{5.0, 9.0, 1.0};
    const FrequencyGrid freq{-10.0, 10.0, 41};
    const BandSummary band = band_analysis(fam, freq, EncodingGrid{1e-3, 1e3, 31}, 2);

    SECTION("advantage window is a single interval around zero detuning") {
        REQUIRE(band.advantage_intervals.size() == 1);
        const auto [lo, hi] = band.advantage_intervals.front();
        CHECK(lo < 0.0);
        CHECK(hi > 0.0);
    }
    SECTION("integrated region strictly contains the unidirectional triangle") {
        for (const Vec2& v : band.unidirectional.vertices()) {
            CHECK(band.integrated.contains(v, 1e-9));
        }
        CHECK(band.integrated.area() > band.unidirectional.area() + 1e-3);
    }
    SECTION("profile records consistent capacities") {
        for (const BandPoint& bp : band.profile) {
            const double t = detail::device_channel(fam, bp.delta, bp.delta).t();
            CHECK(bp.i_max == Catch::Approx(pure_loss_capacity(t)).margin(1e-12));
            CHECK(bp.max_sum >= bp.i_max - 1e-9);
            if (bp.advantage) {
                CHECK(bp.best_point.x + bp.best_point.y ==
                      Catch::Approx(bp.max_sum).margin(1e-9));
            }
        }
    }
}

TEST_CASE("uncoupled device has no advantage window", "[bandwidth]") {
    const DeviceFamily fam{0.0, 9.0, 1.0};
    const auto intervals =
        advantage_window(fam, FrequencyGrid{-5.0, 5.0, 11}, EncodingGrid{1e-2, 1e2, 11}, 1);
    CHECK(intervals.empty());
}

TEST_CASE("window endpoints are stable under grid refinement", "[bandwidth]") {
    const DeviceFamily fam{5.0, 9.0, 1.0};
    const FrequencyGrid coarse{-6.0, 6.0, 25};
    const FrequencyGrid fine{-6.0, 6.0, 49};
    const EncodingGrid enc{1e-3, 1e3, 25};
    const auto wc = advantage_window(fam, coarse, enc, 2);
    const auto wf = advantage_window(fam, fine, enc, 2);
    REQUIRE(wc.size() == 1);
    REQUIRE(wf.size() == 1);
    const double cell = coarse.spacing();
    CHECK(std::abs(wc.front().first - wf.front().first) <= cell + 1e-12);
    CHECK(std::abs(wc.front().second - wf.front().second) <= cell + 1e-12);
}
