#ifndef SPIN_RELAX_TOMOGRAPHY_HPP
#define SPIN_RELAX_TOMOGRAPHY_HPP

#include <Eigen/Dense>
#include <cstddef>

#include "spin_relax/dynamics.hpp"

namespace spinrelax {

// Every one- and two-spin expectation of a pair (i, j) at one instant:
// one[0][a] = <sigma_i^a>, one[1][a] = <sigma_j^a>, two[a][b] =
// <sigma_i^a sigma_j^b> with a, b in {x, y, z} = {0, 1, 2}.
struct MomentSet {
    double one[2][3]{};
    double two[3][3]{};
};

MomentSet moments_at(const InitialMoments& m, const CouplingMatrix& c, std::size_t i,
                     std::size_t j, double t, double B);

enum class PairSite { I, J };

Eigen::Matrix2cd rho_one(const MomentSet& ms, PairSite which);

// Two-spin reduced density matrix in the sigma^z tensor basis. Throws
// std::domain_error when the moments are not realizable as a quantum state
// (minimum eigenvalue below -psd_tol).
Eigen::Matrix4cd rho_two(const MomentSet& ms, double psd_tol = 1e-9);

double purity(const Eigen::Matrix2cd& rho);
double purity(const Eigen::Matrix4cd& rho);

// The four distinct moduli of rho_two for the field-free symmetric class:
// common diagonal, |rho_14|, |rho_23| and the |rho_12| class.
struct OffDiagModuli {
    double diag, m14, m23, m12;
};

OffDiagModuli offdiag_moduli(const Eigen::Matrix4cd& rho);

// Second moment <J_z^2> after a global rotation by theta about x,
// J_z = sum_i sigma_i^z / 2. O(N^3); sweeps should go through
// jz2_pair_sums once per time and reuse the sums across theta.
double jz2_theta(const InitialMoments& m, const CouplingMatrix& c, double theta, double t,
                 double B, int threads = 1);

// S_yy = sum_{i != j} <sigma_i^y sigma_j^y>, S_yzzy = sum_{i != j}
// <sigma_i^y sigma_j^z + sigma_i^z sigma_j^y>; then
// <J_z^2>_theta = N/4 + (sin^2(theta) S_yy - sin(theta)cos(theta) S_yzzy)/4.
struct PairSums {
    double s_yy, s_yzzy;
};

PairSums jz2_pair_sums(const InitialMoments& m, const CouplingMatrix& c, double t, double B,
                       int threads = 1);

}  // namespace spinrelax

#endif
