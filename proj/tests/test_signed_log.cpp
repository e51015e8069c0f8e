#include <cmath>
#include <random>

#include "doctest.h"
#include "spin_relax/signed_log.hpp"

using spinrelax::SignedLogValue;

TEST_SUITE("signed_log") {

TEST_CASE("round trip across the double range") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 2000; ++k) {
        const double mag = std::pow(10.0, -300.0 + 600.0 * (rng() >> 11) * 0x1.0p-53);
        const double v = (rng() & 1 ? 1.0 : -1.0) * mag;
        const double back = SignedLogValue::from_linear(v).to_linear();
        CHECK(std::abs(back - v) <= 1e-12 * std::abs(v));
    }
}

TEST_CASE("zero handling") {
    CHECK(SignedLogValue::from_linear(0.0).sign == 0);
    CHECK(SignedLogValue::from_linear(-0.0).sign == 0);
    CHECK(SignedLogValue::from_linear(0.0).to_linear() == 0.0);
    CHECK((SignedLogValue::one() * SignedLogValue::zero()).is_zero());
}

TEST_CASE("underflow linearizes to zero without error") {
    const SignedLogValue tiny{-1, -5000.0};
    CHECK(tiny.to_linear() == 0.0);
    CHECK(tiny.sign == -1);
    CHECK(tiny.log10_magnitude() == doctest::Approx(-5000.0 / std::log(10.0)));
}

TEST_CASE("multiplication and signed addition") {
    const auto a = SignedLogValue::from_linear(-3.5);
    const auto b = SignedLogValue::from_linear(2.0);
    CHECK((a * b).to_linear() == doctest::Approx(-7.0).epsilon(1e-14));
    CHECK(add(a, b).to_linear() == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(add(b, a).to_linear() == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(add(a, SignedLogValue::from_linear(3.5)).is_zero());
    // far-apart magnitudes
    const auto big = SignedLogValue{1, 500.0};
    CHECK(add(big, SignedLogValue{-1, -500.0}).logmag == doctest::Approx(500.0));
}

}  // TEST_SUITE
