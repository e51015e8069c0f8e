#include <cmath>
#include <random>

#include "doctest.h"
#include "spin_relax/dynamics.hpp"
#include "spin_relax/lattice.hpp"
#include "spin_relax/oracle.hpp"

using namespace spinrelax;

namespace {

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("product-state weights") {
    const double aligned[3] = {1.0, 1.0, 1.0};
    const auto pure = build_product_state(aligned);
    double total = 0.0;
    int nonzero = 0;
    for (double w : pure.weights) {
        total += w;
        if (w != 0.0) ++nonzero;
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(nonzero == 1);  // fully polarized: a single configuration

    const double mixed[3] = {0.0, 0.0, 0.0};
    const auto mm = build_product_state(mixed);
    for (double w : mm.weights) CHECK(w == doctest::Approx(0.125));

    std::mt19937_64 rng(73);
    std::vector<double> sx(6);
    for (auto& v : sx) v = 2.0 * u01(rng) - 1.0;
    const auto st = build_product_state(sx);
    double sum = 0.0;
    for (double w : st.weights) {
        CHECK(w >= 0.0);
        sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("size guard") {
    std::vector<double> sx(13, 0.5);
    CHECK_THROWS_AS(build_product_state(sx), std::invalid_argument);
    const auto lat = build_lattice(LatticeKind::Chain, 13);
    const auto c = CouplingMatrix::power_law(lat, 1.0, 1.0);
    CHECK_THROWS_AS(make_oracle_context(c, 0.0), std::invalid_argument);
}

TEST_CASE("t = 0 reproduces the input moments") {
    std::mt19937_64 rng(79);
    const auto lat = build_lattice(LatticeKind::Chain, 5);
    const auto c = CouplingMatrix::power_law(lat, 1.0, 1.4);
    std::vector<double> sx(5);
    for (auto& v : sx) v = 2.0 * u01(rng) - 1.0;
    const auto state = build_product_state(sx);
    const auto ctx = make_oracle_context(c, 0.9);
    for (std::size_t i = 0; i < 5; ++i) {
        const PauliTerm xo[1] = {{i, 'X'}};
        CHECK(evolve_expectation(state, ctx, 0.0, xo) == doctest::Approx(sx[i]).epsilon(1e-12));
        const PauliTerm zo[1] = {{i, 'Z'}};
        CHECK(evolve_expectation(state, ctx, 0.0, zo) == doctest::Approx(0.0).epsilon(1e-12));
    }
    const PauliTerm xx[2] = {{0, 'X'}, {3, 'X'}};
    CHECK(evolve_expectation(state, ctx, 0.0, xx) ==
          doctest::Approx(sx[0] * sx[3]).epsilon(1e-12));
}

TEST_CASE("zz correlations vanish for the diagonal-in-x class") {
    const auto lat = build_lattice(LatticeKind::Chain, 6);
    const auto c = CouplingMatrix::power_law(lat, 1.0, 0.7);
    const auto state = build_product_state(std::vector<double>{0.3, -0.8, 0.5, 0.9, -0.2, 0.6});
    const auto ctx = make_oracle_context(c, 1.1);
    const PauliTerm zz[2] = {{1, 'Z'}, {4, 'Z'}};
    for (double t : {0.0, 0.6, 2.9, 17.0})
        CHECK(evolve_expectation(state, ctx, t, zz) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("energy is conserved") {
    const auto lat = build_lattice(LatticeKind::Chain, 6);
    const auto c = CouplingMatrix::power_law(lat, 1.0, 0.9);
    const auto state = build_product_state(std::vector<double>{0.9, 0.2, -0.6, 0.4, 0.8, -0.1});
    const auto ctx = make_oracle_context(c, 0.8);
    const double e0 = energy_expectation(state, ctx, 0.0);
    for (double t : {0.5, 2.0, 9.0})
        CHECK(energy_expectation(state, ctx, t) == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("global purity is constant under the unitary evolution") {
    const auto lat = build_lattice(LatticeKind::Chain, 4);
    const auto c = CouplingMatrix::power_law(lat, 1.0, 1.3);
    const auto state = build_product_state(std::vector<double>{0.7, -0.3, 0.5, 0.1});
    const auto ctx = make_oracle_context(c, 0.6);
    const std::size_t all[4] = {0, 1, 2, 3};
    const auto rho0 = reduced_density(state, ctx, 0.0, all);
    const double g0 = (rho0 * rho0).trace().real();
    for (double t : {0.4, 1.9, 7.3}) {
        const auto rho = reduced_density(state, ctx, t, all);
        CHECK((rho * rho).trace().real() == doctest::Approx(g0).epsilon(1e-12));
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    }
}

TEST_CASE("hex fragment pair correlator agrees with the closed form") {
    auto lat = build_lattice(LatticeKind::TriangularHex, 2);  // 7 sites
    lat.positions.push_back({2.0, 0.0, 0.0});                 // 8th site
    const auto c = CouplingMatrix::power_law(lat, 1.0, 1.5);
    std::vector<double> sx(8, 0.85);
    const auto state = build_product_state(sx);
    const auto moments = InitialMoments::product_state(sx);
    const auto ctx = make_oracle_context(c, 0.0);
    const PauliTerm xx[2] = {{1, 'X'}, {4, 'X'}};
    const double t = 0.7;
    CHECK(evolve_expectation(state, ctx, t, xx) ==
          doctest::Approx(corr_xx(moments, c, 1, 4, t, 0.0)).epsilon(1e-10));
}

TEST_CASE("randomized verification batch stays within tolerance") {
    VerificationConfig cfg;
    cfg.instances = 25;
    cfg.times_per_instance = 6;
    cfg.seed = 99;
    cfg.threads = 2;
    const auto report = run_verification(cfg);
    CHECK(report.passed);
    CHECK(report.max_abs_dev <= 1e-10);
    CHECK(report.entries.size() == 10);
    for (const auto& e : report.entries) CHECK(e.max_abs_dev <= 1e-10);
    const auto json = to_json(report);
    CHECK(json.find("\"passed\": true") != std::string::npos);
    CHECK(json.find("one_spin_x") != std::string::npos);
}

}  // TEST_SUITE
