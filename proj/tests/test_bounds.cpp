#include <cmath>

#include "doctest.h"
#include "spin_relax/bounds.hpp"
#include "spin_relax/dynamics.hpp"
#include "spin_relax/lattice.hpp"

using namespace spinrelax;

namespace {
constexpr double kPi = 3.14159265358979324;
}

TEST_SUITE("bounds") {

TEST_CASE("bound exponents") {
    const auto e1 = exponents(1.5, 2);
    CHECK(e1.qplus == 0.0);
    CHECK(e1.qminus == 0.0);
    CHECK(e1.pplus == doctest::Approx(4.0 / 3.0));
    CHECK(e1.pminus == doctest::Approx(0.8));

    const auto e0 = exponents(0.0, 2);
    CHECK(e0.qplus == 1.0);
    CHECK(e0.qminus == 0.0);
    CHECK(e0.pplus == 2.0);
    CHECK(e0.pminus == 2.0);  // min{2, d/(1+alpha)} at alpha = 0, d = 2

    CHECK(exponents(1.0, 2).qplus == 0.0);  // boundary alpha = d/2
    CHECK_THROWS_AS(exponents(-0.1, 2), std::invalid_argument);
    CHECK_THROWS_AS(exponents(1.0, 4), std::invalid_argument);
}

TEST_CASE("triangular constants reproduce the reported centre-pair values") {
    const auto c = tri_constants(1.5, 2.0, 1.0);
    CHECK(std::abs(c.cplus - 11.04) / 11.04 < 0.005);
    CHECK(std::abs(c.cminus - 1.119) / 1.119 < 0.005);
}

TEST_CASE("triangular constants below the branch point") {
    const auto c = tri_constants(0.5, 2.0, 1.0);
    const double expect = 64.0 * std::pow(3.0, -0.5) / (kPi * kPi * 0.5);
    CHECK(c.cplus == doctest::Approx(expect).epsilon(1e-14));
    CHECK(c.cminus == doctest::Approx(1.0 / 0.5 * std::pow(2.0 / kPi, 4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("short-range limit makes the minus bound uninformative") {
    // For the centre pair (delta = 2) the coefficient decays like
    // (1/alpha)(4 alpha/pi)^{2/(1+alpha)} -> 0, so the bound stops decaying
    // and the relaxation-time bound blows up: nothing useful survives the
    // nearest-neighbour limit.
    const double c32 = tri_constants(1.5, 2.0, 1.0).cminus;
    const double c5 = tri_constants(5.0, 2.0, 1.0).cminus;
    const double c50 = tri_constants(50.0, 2.0, 1.0).cminus;
    CHECK(c50 < c5);
    CHECK(c5 < c32);
    CHECK(tau_bound(50.0, 2.0, 1.0) > tau_bound(5.0, 2.0, 1.0));
    CHECK(tau_bound(5.0, 2.0, 1.0) > tau_bound(1.5, 2.0, 1.0));
    CHECK(tau_bound(50.0, 2.0, 1.0) > 1e30);  // vacuous bound
}

TEST_CASE("poles are rejected") {
    CHECK_THROWS_AS(tri_constants(1.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tri_constants(0.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bound_p_plus(1.0, 1.0, 100, 1.0), std::invalid_argument);
}

TEST_CASE("plus bound against direct evaluation") {
    const double t = 10.0, alpha = 2.5;
    const auto v = bound_p_plus(t, alpha, 721, 1.0);
    CHECK(v.sign == 1);
    CHECK(v.logmag ==
          doctest::Approx(-std::pow(8.0 * t / kPi, 2.0 / alpha) / (alpha - 1.0)).epsilon(1e-14));
    // alpha < 1 branch carries the system size
    const auto w = bound_p_plus(0.5, 0.75, 721, 1.0);
    const double expect =
        -64.0 * 0.25 * std::pow(721.0 / 3.0, 0.25) / (kPi * kPi * 0.25);
    CHECK(w.logmag == doctest::Approx(expect).epsilon(1e-14));
    // at the validity threshold the bound is still a probability-sized number
    CHECK(bound_p_plus(0.0, 2.5, 721, 1.0).to_linear() <= 1.0);
    CHECK(bound_p_plus(3.0, 2.5, 721, 1.0).to_linear() <= 1.0);
}

TEST_CASE("minus bound against direct evaluation") {
    const double t = 7.0, alpha = 0.75, delta = 2.0;
    const auto v = bound_p_minus(t, alpha, delta, 1.0);
    const double expect = -(delta * delta / (4.0 * alpha)) *
                          std::pow(4.0 * alpha * t / kPi, 2.0 / (1.0 + alpha));
    CHECK(v.logmag == doctest::Approx(expect).epsilon(1e-14));
    CHECK(bound_p_minus(0.0, 1.5, 2.0, 1.0).logmag == 0.0);  // exponent vanishes at t = 0
}

TEST_CASE("bound positivity and correlator combination") {
    for (double t : {0.0, 0.5, 3.0, 20.0}) {
        const double bp = bound_p_plus(t, 1.5, 100, 1.0).to_linear();
        const double bm = bound_p_minus(t, 1.5, 2.0, 1.0).to_linear();
        CHECK(bp > 0.0);
        CHECK(bp <= 1.0);
        CHECK(bm > 0.0);
        CHECK(bm <= 1.0);
        CHECK(bound_correlator(0.8, t, 1.5, 100, 2.0, 1.0) ==
              doctest::Approx(0.4 * (bm + bp)).epsilon(1e-12));
    }
}

TEST_CASE("cutoff radii follow the asymptotic forms") {
    const double t = 12.0, alpha = 2.5;
    const auto r = cutoff_radii(t, alpha, 1.0);
    CHECK(r.r0plus == doctest::Approx(std::pow(8.0 * t / kPi, 1.0 / alpha)).epsilon(1e-14));
    CHECK(r.r0minus ==
          doctest::Approx(std::pow(4.0 * alpha * t / kPi, 1.0 / (1.0 + alpha))).epsilon(1e-14));
    CHECK(r.minus_valid == (r.r0minus >= 4.0));
    CHECK_FALSE(cutoff_radii(0.1, 2.5, 1.0).minus_valid);
    CHECK(cutoff_radii(1000.0, 2.5, 1.0).minus_valid);
}

TEST_CASE("relaxation-time bound values") {
    const double tau = tau_bound(1.5, 2.0, 1.0);
    const double direct = std::pow(2.0 * std::sqrt(1.5) / 2.0, 2.5) * kPi / 6.0;
    CHECK(tau == doctest::Approx(direct).epsilon(1e-14));
    CHECK(std::abs(tau - 0.869) < 0.001);
    // monotone vanishing with separation
    CHECK(tau_bound(1.5, 20.0, 1.0) < 1e-2 * tau);
    CHECK(tau_bound(1.5, 2000.0, 1.0) < 1e-7);
}

TEST_CASE("tau_bound is continuous across the cplus branch point") {
    // only cminus enters; nothing special happens near alpha = 1
    double prev = tau_bound(0.90, 2.0, 1.0);
    for (double a = 0.905; a < 1.1; a += 0.005) {
        const double cur = tau_bound(a, 2.0, 1.0);
        CHECK(std::abs(cur - prev) < 0.02);
        prev = cur;
    }
}

TEST_CASE("decay regime classification") {
    CHECK(decay_regime(0.5, 2) == DecayRegime::Compressed);
    CHECK(decay_regime(1.5, 2) == DecayRegime::Stretched);
    CHECK(decay_regime(1.0, 2) == DecayRegime::GaussianBoundary);
    CHECK(decay_regime(0.5, 1) == DecayRegime::Stretched);
}

TEST_CASE("envelope fit recovers a known slope") {
    // synthetic series log10|v| = -3 u with u = t^0.8, fluctuations +- 0.3
    std::vector<double> times;
    std::vector<SignedLogValue> values;
    for (int k = 1; k <= 4000; ++k) {
        const double t = 0.05 * k;
        const double u = std::pow(t, 0.8);
        const double wiggle = 0.3 * std::sin(37.0 * t);
        times.push_back(t);
        values.push_back({1, (-3.0 * u + wiggle) * 2.302585092994046});
    }
    const auto fit = fit_log_envelope(times, values, 0.8, 20, -2.0, -150.0);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(0.01));
    CHECK(fit.r2 > 0.999);
    CHECK(fit.span_decades > 100.0);
}

}  // TEST_SUITE
