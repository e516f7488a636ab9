#include <cmath>

#include "blindlink/antenna.hpp"
#include "doctest.h"

using namespace blindlink;

namespace {

constexpr double deg = M_PI / 180.0;

}  // namespace

TEST_SUITE("antenna") {

TEST_CASE("phased array: boresight peak and analytic nulls") {
    const PhasedArrayAntenna pa(16, 0.75e-3);
    CHECK(pa.gain(200e9, 0.0) == 1.0);
    CHECK(pa.gain(200e9, 3.0 * deg) == doctest::Approx(0.5418155410612064).epsilon(1e-10));
    CHECK(pa.gain(200e9, -3.0 * deg) == pa.gain(200e9, 3.0 * deg));

    CHECK(pa.null_angle(200e9, 1) / deg == doctest::Approx(7.1757619403901).epsilon(1e-12));
    CHECK(pa.null_angle(200e9, 2) / deg == doctest::Approx(14.467278036981462).epsilon(1e-12));
    CHECK(pa.null_angle(100e9, 1) / deg == doctest::Approx(14.467278036981462).epsilon(1e-12));

    // The pattern really vanishes at the computed null directions.
    for (unsigned m = 1; m <= 7; ++m) {
        CHECK(pa.gain(200e9, pa.null_angle(200e9, m)) < 1e-20);
    }
}

TEST_CASE("phased array: nulls move inward as frequency grows") {
    const PhasedArrayAntenna pa(16, 0.75e-3);
    double prev = pa.null_angle(100e9, 1);
    for (double f : {150e9, 200e9, 300e9, 400e9}) {
        const double cur = pa.null_angle(f, 1);
        CHECK(cur < prev);
        prev = cur;
    }
    // sin(null) scales exactly like 1/f.
    CHECK(std::sin(pa.null_angle(100e9, 1)) ==
          doctest::Approx(2.0 * std::sin(pa.null_angle(200e9, 1))).epsilon(1e-14));
}

TEST_CASE("phased array: null index validation") {
    const PhasedArrayAntenna pa(16, 0.75e-3);
    CHECK_THROWS_AS(pa.null_angle(200e9, 0), OutOfRange);
    CHECK_THROWS_AS(pa.null_angle(200e9, 16), OutOfRange);  // grating direction, not a null
    CHECK_THROWS_AS(pa.null_angle(100e9, 8), OutOfRange);   // sin > 1
    CHECK_THROWS_AS(PhasedArrayAntenna(1, 0.75e-3), BadGeometry);
    CHECK_THROWS_AS(PhasedArrayAntenna(16, 0.0), BadGeometry);
    CHECK_THROWS_AS(pa.gain(0.0, 0.1), OutOfRange);
}

TEST_CASE("dish: Airy pattern anchors") {
    const ParabolicDishAntenna dish(0.016, 0.010);
    CHECK(dish.gain(200e9, 0.0) == 1.0);
    CHECK(dish.gain(200e9, 2.0 * deg) == doctest::Approx(0.7027380987057634).epsilon(1e-9));
    CHECK(dish.gain(200e9, -2.0 * deg) == dish.gain(200e9, 2.0 * deg));
    CHECK(dish.boresight_gain_dbi(200e9) ==
          doctest::Approx(30.509582961722245).epsilon(1e-12));

    // First Airy zero: u = 3.8317059702075123.
    const double null_theta =
        std::asin(3.8317059702075123 * speed_of_light / (M_PI * 0.016 * 200e9));
    CHECK(null_theta / deg == doctest::Approx(6.56123022128408).epsilon(1e-12));
    CHECK(dish.gain(200e9, null_theta) < 1e-20);

    // Second zero too.
    const double null2 =
        std::asin(7.015586669815619 * speed_of_light / (M_PI * 0.016 * 200e9));
    CHECK(dish.gain(200e9, null2) < 1e-20);
}

TEST_CASE("dish: small-angle series joins the Bessel branch smoothly") {
    const ParabolicDishAntenna dish(0.016, 0.010);
    // u crosses the 1e-6 series threshold near theta = 2.98e-8 rad at 200 GHz.
    const double lo = dish.gain(200e9, 2.9e-8);
    const double hi = dish.gain(200e9, 3.1e-8);
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lo >= hi - 1e-12);
    CHECK_THROWS_AS(ParabolicDishAntenna(0.0, 0.01), BadGeometry);
    CHECK_THROWS_AS(ParabolicDishAntenna(0.016, -1.0), BadGeometry);
}

TEST_CASE("leaky wave: cutoff and beam steering") {
    const LeakyWaveAntenna lw(1e-3, 1.0);
    CHECK(lw.cutoff_hz() == doctest::Approx(149896229000.0).epsilon(1e-15));
    CHECK(lw.peak_angle(300e9) / deg == doctest::Approx(29.97711785710141).epsilon(1e-12));
    CHECK(lw.peak_angle(std::sqrt(2.0) * lw.cutoff_hz()) / deg ==
          doctest::Approx(45.0).epsilon(1e-12));

    // Peak gain is 1 at the steering angle and decays away from it.
    CHECK(lw.gain(300e9, lw.peak_angle(300e9)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lw.gain(300e9, 35.0 * deg) ==
          doctest::Approx(1.1415394189856568e-05).epsilon(1e-9));
    for (double t = -90.0; t <= 90.0; t += 0.5) {
        CHECK(lw.gain(300e9, t * deg) <= 1.0 + 1e-12);
    }

    // The beam walks toward boresight as frequency rises.
    CHECK(lw.peak_angle(400e9) < lw.peak_angle(300e9));
    CHECK(lw.peak_angle(200e9) > lw.peak_angle(300e9));
}

TEST_CASE("leaky wave: below-cutoff frequencies are rejected") {
    const LeakyWaveAntenna lw(1e-3, 1.0);
    CHECK_THROWS_AS(lw.gain(140e9, 0.1), BelowCutoff);
    CHECK_THROWS_AS(lw.gain(lw.cutoff_hz(), 0.1), BelowCutoff);
    CHECK_THROWS_AS(lw.peak_angle(100e9), BelowCutoff);
    CHECK_NOTHROW(lw.gain(lw.cutoff_hz() * 1.0000001, 0.1));
    CHECK_THROWS_AS(LeakyWaveAntenna(0.0, 1.0), BadGeometry);
    CHECK_THROWS_AS(LeakyWaveAntenna(1e-3, 0.0), BadGeometry);
}

TEST_CASE("leaky wave: larger attenuation widens the beam") {
    const LeakyWaveAntenna narrow(1e-3, 1.0);
    const LeakyWaveAntenna wide(1e-3, 50.0);
    const double off_peak = 35.0 * deg;
    CHECK(narrow.gain(300e9, off_peak) < wide.gain(300e9, off_peak));
    CHECK(wide.gain(300e9, wide.peak_angle(300e9)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonal horn: smooth Gaussian rolloff with no nulls") {
    const DiagonalHornAntenna horn(0.020, 0.011);
    CHECK(horn.waist_m() == doctest::Approx(0.00473).epsilon(1e-15));
    CHECK(horn.gain(200e9, 0.0) == 1.0);
    CHECK(horn.gain(200e9, 5.0 * deg) ==
          doctest::Approx(0.22469537478091903).epsilon(1e-12));
    CHECK(horn.gain(200e9, -5.0 * deg) == horn.gain(200e9, 5.0 * deg));

    // Strictly decreasing in |theta| and strictly positive everywhere.
    double prev = 2.0;
    for (double t = 0.0; t <= 90.0; t += 0.25) {
        const double g = horn.gain(300e9, t * deg);
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
    CHECK_THROWS_AS(DiagonalHornAntenna(0.0, 0.011), BadGeometry);
    CHECK_THROWS_AS(DiagonalHornAntenna(0.020, 0.0), BadGeometry);
}

TEST_CASE("horn with block: quadrature matches an independent integration") {
    const HornWithBlockAntenna horn(0.003, 0.004);
    CHECK(horn.field_amplitude(100e9, 0.0) ==
          doctest::Approx(0.0018386297597524158).epsilon(1e-12));
    CHECK(horn.gain(200e9, 3.0 * deg) ==
          doctest::Approx(0.5723549811379269).epsilon(1e-9));
    CHECK(horn.gain(200e9, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("horn with block: pattern minima scale inversely with frequency") {
    const HornWithBlockAntenna horn(0.003, 0.004);
    const auto z100 = horn.first_field_zero(100e9, 1e-4, 15.0 * deg);
    const auto z200 = horn.first_field_zero(200e9, 1e-4, 15.0 * deg);
    const auto z400 = horn.first_field_zero(400e9, 1e-4, 15.0 * deg);
    REQUIRE(z100.has_value());
    REQUIRE(z200.has_value());
    REQUIRE(z400.has_value());
    CHECK(*z100 / deg == doctest::Approx(14.03812038238713).epsilon(1e-6));
    CHECK(*z200 / deg == doctest::Approx(6.966194484706876).epsilon(1e-6));
    CHECK(*z400 / deg == doctest::Approx(3.4766552269947906).epsilon(1e-6));

    // Each zero is a genuine pattern minimum: the gain there is tiny.
    CHECK(horn.gain(100e9, *z100) < 1e-15);
    CHECK(horn.gain(200e9, *z200) < 1e-15);
    CHECK(horn.gain(400e9, *z400) < 1e-15);

    // The diagonal horn without a block has no sign change in the same window.
    const HornWithBlockAntenna tiny_block(0.003, 2e-9);
    CHECK_FALSE(tiny_block.first_field_zero(200e9, 1e-4, 15.0 * deg).has_value());
}

TEST_CASE("horn with block: vanishing block recovers the pure Gaussian beam") {
    const HornWithBlockAntenna tiny_block(0.003, 2e-9);
    const double f = 100e9;
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
        const double gauss =
            std::exp(-2.0 * std::pow(M_PI * 0.003 * f * std::sin(t * deg) / speed_of_light, 2));
        CHECK(tiny_block.gain(f, t * deg) == doctest::Approx(gauss).epsilon(1e-6));
    }
}

TEST_CASE("horn with block: boresight dominates every direction") {
    const HornWithBlockAntenna horn(0.003, 0.004);
    for (double f : {100e9, 250e9, 500e9}) {
        for (double t = -90.0; t <= 90.0; t += 1.0) {
            CHECK(horn.gain(f, t * deg) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("horn with block: geometry validation") {
    CHECK_THROWS_AS(HornWithBlockAntenna(0.0, 0.004), BadGeometry);
    CHECK_THROWS_AS(HornWithBlockAntenna(0.003, 0.0), BadGeometry);
    // A block covering the whole aperture radiates nothing.
    const HornWithBlockAntenna opaque(0.003, 0.040);
    CHECK(opaque.field_amplitude(100e9, 0.0) == 0.0);
    CHECK_THROWS_AS(opaque.gain(100e9, 0.0), BadGeometry);
}

TEST_CASE("isotropic reference antenna") {
    const auto iso = make_isotropic_antenna();
    CHECK(iso->gain(123e9, 0.7) == 1.0);
    CHECK(iso->gain(1e12, -1.2) == 1.0);
    CHECK(iso->name() == "isotropic");
}

}  // TEST_SUITE
