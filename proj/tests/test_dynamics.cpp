#include <cmath>
#include <random>

#include "doctest.h"
#include "spin_relax/dynamics.hpp"
#include "spin_relax/lattice.hpp"

using namespace spinrelax;

namespace {

CouplingMatrix hex_couplings(int L, double alpha, double J = 1.0) {
    return CouplingMatrix::power_law(build_lattice(LatticeKind::TriangularHex, L), J, alpha);
}

std::pair<std::size_t, std::size_t> hex_center_pair(int L) {
    return center_pair(build_lattice(LatticeKind::TriangularHex, L));
}

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("moment validation") {
    CHECK_THROWS_AS(InitialMoments::uniform(1.2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(InitialMoments::uniform(0.5, -1.3), std::invalid_argument);
    auto m = InitialMoments::uniform(0.5, 0.25);
    CHECK_THROWS_AS(m.set_sxx(2, 2, 0.1), std::invalid_argument);
    m.set_sxx(3, 1, 0.75);
    CHECK(m.sxx(1, 3) == 0.75);  // symmetric storage
    CHECK(m.sxx(3, 1) == 0.75);
    CHECK_THROWS_AS(m.sxxx(0, 1, 2), std::invalid_argument);  // not populated
    const auto p = InitialMoments::product_state({0.5, -0.4, 0.8});
    CHECK(p.sxx(0, 2) == doctest::Approx(0.4));
    CHECK(p.sxxx(0, 1, 2) == doctest::Approx(-0.16));
}

TEST_CASE("bare products: empty product and t = 0") {
    const auto two = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 2), 1.0, 1.0);
    const auto v = p_plus(two, 0, 1, 3.7);
    CHECK(v.sign == 1);
    CHECK(v.logmag == 0.0);
    const auto hex = hex_couplings(3, 1.5);
    const auto w = p_plus(hex, 0, 1, 0.0);
    CHECK(w.sign == 1);
    CHECK(w.logmag == 0.0);
    CHECK_THROWS_AS(p_plus(hex, 2, 2, 1.0), std::invalid_argument);
}

TEST_CASE("p_minus is exactly one for uniform couplings") {
    const auto c = hex_couplings(3, 0.0);
    for (double t : {0.3, 2.7, 41.0}) {
        const auto v = p_minus(c, 0, 5, t);
        CHECK(v.sign == 1);
        CHECK(v.logmag == 0.0);
    }
}

TEST_CASE("corr_xx immediate values") {
    const auto m = InitialMoments::uniform(0.9, 0.7);
    const auto hex = hex_couplings(3, 1.5);
    CHECK(corr_xx(m, hex, 0, 1, 0.0, 0.0) == doctest::Approx(0.7).epsilon(1e-14));
    const auto two = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 2), 1.0, 1.0);
    for (double t : {0.1, 1.0, 9.0})
        CHECK(corr_xx(m, two, 0, 1, t, 0.0) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("corr_yy immediate values and sum rule") {
    const auto m = InitialMoments::uniform(0.9, 0.7);
    const auto hex = hex_couplings(3, 0.7);
    CHECK(corr_yy(m, hex, 0, 3, 0.0, 0.0) == 0.0);
    const auto two = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 2), 1.0, 1.0);
    CHECK(corr_yy(m, two, 0, 1, 2.2, 0.0) == 0.0);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 60; ++k) {
        const double t = u01(rng) * 10.0, B = u01(rng) * 2.0;
        const double lhs = corr_xx(m, hex, 0, 3, t, B) + corr_yy(m, hex, 0, 3, t, B);
        const double rhs = 2.0 * 0.5 * m.sxx(0, 3) * p_minus(hex, 0, 3, t).to_linear();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("corr_xy vanishes without field and at t = 0") {
    const auto m = InitialMoments::uniform(1.0, 1.0);
    const auto hex = hex_couplings(3, 1.2);
    for (double t : {0.4, 3.0}) CHECK(corr_xy(m, hex, 1, 4, t, 0.0) == 0.0);
    CHECK(corr_xy(m, hex, 1, 4, 0.0, 1.3) == 0.0);
    // B = pi/(8t) turns the plus product on at full weight
    const double t = 0.83, B = 3.14159265358979324 / (8.0 * t);
    const double expect = -0.5 * p_plus(hex, 1, 4, t).to_linear();
    CHECK(corr_xy(m, hex, 1, 4, t, B) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("p_z basics") {
    const auto m = InitialMoments::uniform(0.8, 0.64);
    const auto hex = hex_couplings(3, 1.5);
    CHECK(p_z(m, hex, 0, 2, 0.0) == 0.0);
    const auto m0 = InitialMoments::uniform(0.0, 0.5);
    CHECK(p_z(m0, hex, 0, 2, 1.7) == 0.0);
    // two sites: |<sigma^y sigma^z>| = |s sin(2 t J)|
    const auto two = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 2), 1.0, 1.0);
    const double t = 0.9;
    CHECK(std::abs(corr_yz(m, two, 0, 1, t, 0.0)) ==
          doctest::Approx(std::abs(0.8 * std::sin(2.0 * t))).epsilon(1e-13));
    CHECK(corr_xz(m, two, 0, 1, t, 0.0) == 0.0);
}

TEST_CASE("corr_zz vanishes identically") {
    CHECK(corr_zz(0, 1, 0.0) == 0.0);
    CHECK(corr_zz(3, 7, 123.0) == 0.0);
    CHECK(corr_zz(1, 2, 1e9) == 0.0);
    CHECK_THROWS_AS(corr_zz(2, 2, 1.0), std::invalid_argument);
}

TEST_CASE("one-spin expectations") {
    const auto m = InitialMoments::uniform(0.6, 0.36);
    const auto two = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 2), 1.0, 1.0);
    CHECK(one_spin_x(m, two, 0, 0.0, 0.7) == doctest::Approx(0.6).epsilon(1e-14));
    const double t = 1.3;
    CHECK(one_spin_x(m, two, 0, t, 0.0) ==
          doctest::Approx(0.6 * std::cos(2.0 * t)).epsilon(1e-13));
    CHECK(one_spin_y(m, two, 0, t, 0.0) == 0.0);
}

TEST_CASE("three-spin ladder correlator") {
    const auto m = InitialMoments::uniform(0.5, 0.25, 0.125);
    const auto hex = hex_couplings(2, 1.0);
    const auto v0 = corr_ppp(m, hex, 0, 1, 2, 0.0, 0.0);
    CHECK(v0.real() == doctest::Approx(0.125 / 8.0).epsilon(1e-14));
    CHECK(v0.imag() == 0.0);
    // three sites: pure phase rotation
    const auto three = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 3), 1.0, 2.0);
    const double t = 0.7, B = 1.1;
    const auto v = corr_ppp(m, three, 0, 1, 2, t, B);
    CHECK(std::abs(v) == doctest::Approx(0.125 / 8.0).epsilon(1e-13));
    CHECK(std::arg(v) == doctest::Approx(-6.0 * B * t + 2.0 * 3.14159265358979324).epsilon(1e-10));
    const auto no3 = InitialMoments::uniform(0.5, 0.25);
    CHECK_THROWS_AS(corr_ppp(no3, hex, 0, 1, 2, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("moment bound holds everywhere") {
    const auto m = InitialMoments::uniform(0.77, 0.55);
    const auto hex = hex_couplings(3, 0.9);
    std::mt19937_64 rng(41);
    for (int k = 0; k < 50; ++k) {
        const double t = u01(rng) * 30.0, B = u01(rng) * 2.0;
        CHECK(std::abs(corr_xx(m, hex, 0, 4, t, B)) <= 0.55 + 1e-14);
        CHECK(std::abs(corr_yy(m, hex, 0, 4, t, B)) <= 0.55 + 1e-14);
        CHECK(std::abs(one_spin_x(m, hex, 2, t, B)) <= 0.77 + 1e-14);
    }
}

TEST_CASE("quasi-periodicity for rational couplings") {
    // alpha = 0, J = 1: every cosine argument is an even integer multiple of t
    const auto c = hex_couplings(2, 0.0);
    const auto m = InitialMoments::uniform(0.9, 0.8);
    const double pi = 3.14159265358979324;
    std::mt19937_64 rng(43);
    for (double B : {0.0, 1.0}) {
        for (int k = 0; k < 25; ++k) {
            const double t = u01(rng) * 5.0;
            CHECK(corr_xx(m, c, 1, 4, t, B) ==
                  doctest::Approx(corr_xx(m, c, 1, 4, t + pi, B)).epsilon(1e-12));
            CHECK(corr_yz(m, c, 1, 4, t, B) ==
                  doctest::Approx(corr_yz(m, c, 1, 4, t + pi, B)).epsilon(1e-12));
            CHECK(one_spin_x(m, c, 3, t, B) ==
                  doctest::Approx(one_spin_x(m, c, 3, t + pi, B)).epsilon(1e-12));
        }
    }
}

TEST_CASE("correlators are linear in the initial moments") {
    const auto c = hex_couplings(3, 1.1);
    const auto m1 = InitialMoments::uniform(0.4, 0.3);
    const auto m2 = InitialMoments::uniform(0.4, 0.6);
    std::mt19937_64 rng(47);
    for (int k = 0; k < 40; ++k) {
        const double t = u01(rng) * 12.0, B = u01(rng);
        CHECK(corr_xx(m2, c, 0, 3, t, B) ==
              doctest::Approx(2.0 * corr_xx(m1, c, 0, 3, t, B)).epsilon(1e-13));
    }
}

TEST_CASE("normalized correlators are initial-state independent") {
    const auto c = hex_couplings(3, 0.6);
    const auto m1 = InitialMoments::uniform(0.9, 0.8);
    const auto m2 = InitialMoments::uniform(0.2, 0.35);
    std::mt19937_64 rng(53);
    for (int k = 0; k < 40; ++k) {
        const double t = u01(rng) * 8.0, B = u01(rng) * 2.0;
        const double n1 = corr_xx(m1, c, 1, 4, t, B) / 0.8;
        const double n2 = corr_xx(m2, c, 1, 4, t, B) / 0.35;
        CHECK(n1 == doctest::Approx(n2).epsilon(1e-12));
    }
}

TEST_CASE("plateau of the pair correlator at alpha = 1/2") {
    const auto [i, j] = hex_center_pair(16);
    const auto c = hex_couplings(16, 0.5);
    const auto m = InitialMoments::uniform(1.0, 1.0);
    // midway through the prethermalized window the correlator sits near half
    // its initial value while the one-spin expectation has already decayed
    const double t = 0.15;
    const double corr = corr_xx(m, c, i, j, t, 0.0);
    CHECK(corr > 0.4);
    CHECK(corr < 0.6);
    CHECK(std::abs(one_spin_x(m, c, i, t, 0.0)) < 0.05);
}

TEST_CASE("evaluate_series matches pointwise operations and is thread stable") {
    const auto c = hex_couplings(3, 1.3);
    const auto m = InitialMoments::uniform(0.9, 0.81);
    const auto times = linear_grid(0.0, 4.0, 401);
    const std::size_t idx[2] = {1, 4};
    const double B = 0.6;
    const auto s1 = evaluate_series(m, c, Observable::XX, idx, times, B, 1);
    const auto s4 = evaluate_series(m, c, Observable::XX, idx, times, B, 4);
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(s1.values[k].to_linear() ==
              doctest::Approx(corr_xx(m, c, 1, 4, times[k], B)).epsilon(1e-12));
        CHECK(s1.values[k].sign == s4.values[k].sign);
        CHECK(s1.values[k].logmag == s4.values[k].logmag);
    }
    const auto syz = evaluate_series(m, c, Observable::YZ, idx, times, B, 2);
    for (std::size_t k = 0; k < times.size(); k += 13)
        CHECK(syz.values[k].to_linear() ==
              doctest::Approx(corr_yz(m, c, 1, 4, times[k], B)).epsilon(1e-12));
    const auto sx = evaluate_series(m, c, Observable::X, {idx, 1}, times, B, 2);
    for (std::size_t k = 0; k < times.size(); k += 17)
        CHECK(sx.values[k].to_linear() ==
              doctest::Approx(one_spin_x(m, c, 1, times[k], B)).epsilon(1e-12));
}

TEST_CASE("grids validate and are monotone") {
    CHECK_THROWS_AS(linear_grid(1.0, 0.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 10), std::invalid_argument);
    const auto g = geometric_grid(0.01, 100.0, 257);
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
    const auto p = power_spaced_grid(10.0, 0.8, 100);
    CHECK(p.front() == 0.0);
    CHECK(p.back() == doctest::Approx(10.0));
}

TEST_CASE("recurrence scan on constant series is empty") {
    const auto two = CouplingMatrix::power_law(build_lattice(LatticeKind::Chain, 2), 1.0, 1.0);
    const auto m = InitialMoments::uniform(1.0, 1.0);
    const std::size_t idx[2] = {0, 1};
    const auto s = evaluate_series(m, two, Observable::XX, idx, linear_grid(0.0, 50.0, 2001), 0.0);
    CHECK(recurrence_scan(s, 0.5).empty());
    CHECK_THROWS_AS(recurrence_scan(s, 1.5), std::invalid_argument);
}

TEST_CASE("relaxation time of a synthetic Gaussian and a flat series") {
    CorrelatorSeries s;
    s.observable = Observable::XX;
    s.times = linear_grid(0.0, 4.0, 4001);
    for (double t : s.times)
        s.values.push_back(SignedLogValue::from_linear(std::exp(-t * t)));
    CHECK(relaxation_time(s) == doctest::Approx(1.0).epsilon(2e-3));

    const auto c = hex_couplings(2, 0.0);
    const auto m = InitialMoments::uniform(1.0, 1.0);
    const std::size_t idx[2] = {1, 4};
    const auto flat = evaluate_series(m, c, Observable::PMinus, idx, linear_grid(0.0, 30.0, 3001), 0.0);
    CHECK(std::isinf(relaxation_time(flat)));
}

}  // TEST_SUITE
