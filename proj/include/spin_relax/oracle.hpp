#ifndef SPIN_RELAX_ORACLE_HPP
#define SPIN_RELAX_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "spin_relax/lattice.hpp"

namespace spinrelax {

// Brute-force reference evolution for N <= 12 spins. The initial state is a
// weighted ensemble over the 2^N sigma^x product-basis configurations
// (mixed whenever some |s_i^x| < 1); the ensemble is always enumerated, never
// sampled. Evolution applies per-configuration phases in the sigma^z basis,
// where the Hamiltonian is diagonal.
struct DenseState {
    int n_sites = 0;
    std::vector<double> sx;       // defining per-site first moments
    std::vector<double> weights;  // 2^N ensemble weights over x-basis configs
};

inline constexpr int kOracleMaxSites = 12;

DenseState build_product_state(std::span<const double> sx);

struct PauliTerm {
    std::size_t site;
    char axis;  // 'X', 'Y' or 'Z'
};

// Diagonal energies E_z of H = -sum_{i<j} J_ij Z_i Z_j - B sum_i Z_i,
// reusable across times and observables.
struct OracleContext {
    int n_sites = 0;
    std::vector<double> energies;  // indexed by z-basis configuration
};

OracleContext make_oracle_context(const CouplingMatrix& c, double B);

double evolve_expectation(const DenseState& state, const OracleContext& ctx, double t,
                          std::span<const PauliTerm> obs);
double evolve_expectation(const DenseState& state, const CouplingMatrix& c, double B, double t,
                          std::span<const PauliTerm> obs);

// <prod sigma^+_site>(t) for the listed sites.
std::complex<double> evolve_ladder_expectation(const DenseState& state,
                                               const OracleContext& ctx, double t,
                                               std::span<const std::size_t> sites);

// Partial trace of the evolved density operator onto `keep` (row-major
// 2^k x 2^k, keep order defines the tensor slot order).
Eigen::MatrixXcd reduced_density(const DenseState& state, const OracleContext& ctx, double t,
                                 std::span<const std::size_t> keep);

// <J_z^2> after a global rotation by theta about the x axis.
double jz2_expectation(const DenseState& state, const OracleContext& ctx, double t,
                       double theta);

double energy_expectation(const DenseState& state, const OracleContext& ctx, double t);

// Randomized comparison of every analytic formula against the brute-force
// evolution: chains and triangular-hex fragments, N <= 10, random exponents,
// fields, moments and times.
struct VerificationConfig {
    int instances = 200;
    int times_per_instance = 10;
    unsigned seed = 20130613;
    double tolerance = 1e-10;
    double alpha_max = 3.0;
    double b_max = 2.0;
    double t_max = 20.0;
    int threads = 0;
};

struct VerificationReport {
    struct Entry {
        std::string observable;
        double max_abs_dev = 0.0;
        std::size_t samples = 0;
    };
    std::vector<Entry> entries;
    double max_abs_dev = 0.0;
    double tolerance = 0.0;
    int instances = 0;
    bool passed = false;
    double elapsed_seconds = 0.0;
};

VerificationReport run_verification(const VerificationConfig& cfg);

std::string to_json(const VerificationReport& report);

}  // namespace spinrelax

#endif
