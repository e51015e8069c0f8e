#include "spin_relax/tomography.hpp"

#include <cmath>
#include <stdexcept>

#include "spin_relax/kernels.hpp"
#include "spin_relax/threading.hpp"

namespace spinrelax {

MomentSet moments_at(const InitialMoments& m, const CouplingMatrix& c, std::size_t i,
                     std::size_t j, double t, double B) {
    if (i == j) throw std::invalid_argument("moments_at requires distinct sites");
    MomentSet ms;
    const double c2 = std::cos(2.0 * B * t), s2 = std::sin(2.0 * B * t);
    const double c4 = std::cos(4.0 * B * t), s4 = std::sin(4.0 * B * t);

    const auto ri = c.row(i), rj = c.row(j);
    std::vector<double> sum2, diff2, site_i, site_j, one_i, one_j;
    for (std::size_t k = 0; k < c.n_sites(); ++k) {
        if (k != i) one_i.push_back(2.0 * ri[k]);
        if (k != j) one_j.push_back(2.0 * rj[k]);
        if (k == i || k == j) continue;
        sum2.push_back(2.0 * (ri[k] + rj[k]));
        diff2.push_back(2.0 * (ri[k] - rj[k]));
        site_i.push_back(2.0 * ri[k]);
        site_j.push_back(2.0 * rj[k]);
    }
    const double jij = ri[j];

    const double bare_i = cos_product(one_i, t).to_linear();
    const double bare_j = cos_product(one_j, t).to_linear();
    ms.one[0][0] = m.sx(i) * c2 * bare_i;
    ms.one[0][1] = -m.sx(i) * s2 * bare_i;
    ms.one[1][0] = m.sx(j) * c2 * bare_j;
    ms.one[1][1] = -m.sx(j) * s2 * bare_j;
    // sigma^z commutes with the Hamiltonian and starts at zero for this class

    const double half_sxx = 0.5 * m.sxx(i, j);
    const double pp = half_sxx * cos_product(sum2, t).to_linear();
    const double pm = half_sxx * cos_product(diff2, t).to_linear();
    const double pz_ij = -m.sx(i) * std::sin(2.0 * t * jij) * cos_product(site_i, t).to_linear();
    const double pz_ji = -m.sx(j) * std::sin(2.0 * t * jij) * cos_product(site_j, t).to_linear();

    ms.two[0][0] = pm + c4 * pp;   // xx
    ms.two[1][1] = pm - c4 * pp;   // yy
    ms.two[0][1] = -s4 * pp;       // xy
    ms.two[1][0] = -s4 * pp;       // yx
    ms.two[0][2] = s2 * pz_ij;     // xz
    ms.two[1][2] = c2 * pz_ij;     // yz
    ms.two[2][0] = s2 * pz_ji;     // zx
    ms.two[2][1] = c2 * pz_ji;     // zy
    ms.two[2][2] = 0.0;            // zz
    return ms;
}

Eigen::Matrix2cd rho_one(const MomentSet& ms, PairSite which) {
    const auto* s = ms.one[which == PairSite::I ? 0 : 1];
    const std::complex<double> I(0.0, 1.0);
    Eigen::Matrix2cd rho;
    rho << 1.0 + s[2], s[0] - I * s[1], s[0] + I * s[1], 1.0 - s[2];
    return 0.5 * rho;
}

Eigen::Matrix4cd rho_two(const MomentSet& ms, double psd_tol) {
    const auto* si = ms.one[0];
    const auto* sj = ms.one[1];
    const auto& s = ms.two;
    const std::complex<double> I(0.0, 1.0);
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    r(0, 0) = 1.0 + si[2] + sj[2] + s[2][2];
    r(1, 1) = 1.0 + si[2] - sj[2] - s[2][2];
    r(2, 2) = 1.0 - si[2] + sj[2] - s[2][2];
    r(3, 3) = 1.0 - si[2] - sj[2] + s[2][2];
    r(0, 1) = sj[0] - I * sj[1] + s[2][0] - I * s[2][1];
    r(0, 2) = si[0] - I * si[1] + s[0][2] - I * s[1][2];
    r(0, 3) = s[0][0] - s[1][1] - I * s[0][1] - I * s[1][0];
    r(1, 2) = s[0][0] + s[1][1] + I * s[0][1] - I * s[1][0];
    r(1, 3) = si[0] - I * si[1] - s[0][2] + I * s[1][2];
    r(2, 3) = sj[0] - I * sj[1] - s[2][0] + I * s[2][1];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < a; ++b) r(a, b) = std::conj(r(b, a));
    r *= 0.25;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(r, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::domain_error("moments are inconsistent: reconstructed two-spin state is "
                                "not positive semidefinite");
    return r;
}

double purity(const Eigen::Matrix2cd& rho) { return (rho * rho).trace().real(); }

double purity(const Eigen::Matrix4cd& rho) { return (rho * rho).trace().real(); }

OffDiagModuli offdiag_moduli(const Eigen::Matrix4cd& rho) {
    return {std::abs(rho(0, 0)), std::abs(rho(0, 3)), std::abs(rho(1, 2)),
            std::abs(rho(0, 1))};
}

PairSums jz2_pair_sums(const InitialMoments& m, const CouplingMatrix& c, double t, double B,
                       int threads) {
    const std::size_t n = c.n_sites();
    const double c2 = std::cos(2.0 * B * t), c4 = std::cos(4.0 * B * t);

    // rows cached once; each worker accumulates over its slice of i
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = c.row(i);

    std::vector<double> yy_part(n, 0.0), yz_part(n, 0.0);
    parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
        std::vector<double> sum2, diff2, site_i;
        for (std::size_t i = b; i < e; ++i) {
            double acc_yy = 0.0, acc_yz = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                sum2.clear();
                diff2.clear();
                site_i.clear();
                const auto& ri = rows[i];
                const auto& rj = rows[j];
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    sum2.push_back(2.0 * (ri[k] + rj[k]));
                    diff2.push_back(2.0 * (ri[k] - rj[k]));
                    site_i.push_back(2.0 * ri[k]);
                }
                const double half_sxx = 0.5 * m.sxx(i, j);
                const double pp = half_sxx * cos_product(sum2, t).to_linear();
                const double pm = half_sxx * cos_product(diff2, t).to_linear();
                acc_yy += pm - c4 * pp;
                // <y_i z_j> + <z_i y_j> picks up both orientations of the pair
                const double pz_ij = -m.sx(i) * std::sin(2.0 * t * ri[j]) *
                                     cos_product(site_i, t).to_linear();
                acc_yz += 2.0 * c2 * pz_ij;
            }
            yy_part[i] = acc_yy;
            yz_part[i] = acc_yz;
        }
    });
    PairSums sums{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        sums.s_yy += yy_part[i];
        sums.s_yzzy += yz_part[i];
    }
    return sums;
}

double jz2_theta(const InitialMoments& m, const CouplingMatrix& c, double theta, double t,
                 double B, int threads) {
    const auto sums = jz2_pair_sums(m, c, t, B, threads);
    const double st = std::sin(theta), ct = std::cos(theta);
    return static_cast<double>(c.n_sites()) / 4.0 +
           0.25 * (st * st * sums.s_yy - st * ct * sums.s_yzzy);
}

}  // namespace spinrelax
