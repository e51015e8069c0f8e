#ifndef SPIN_RELAX_DYNAMICS_HPP
#define SPIN_RELAX_DYNAMICS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spin_relax/lattice.hpp"
#include "spin_relax/signed_log.hpp"

namespace spinrelax {

// Moments of an initial state diagonal in the sigma^x product basis: first
// moments s_i^x, second moments s_ij^xx and optional third moments
// s_ijk^xxx. These are the only parameters of the initial state the exact
// dynamics consumes. Backed by uniform values (optionally product-state
// moments derived from per-site s^x) plus sparse overrides, so large
// lattices never materialize per-pair tables.
class InitialMoments {
  public:
    static InitialMoments uniform(double sx, double sxx,
                                  std::optional<double> sxxx = std::nullopt);
    // Product state: s_ij^xx = s_i s_j, s_ijk^xxx = s_i s_j s_k.
    static InitialMoments product_state(std::vector<double> sx);

    void set_sx(std::size_t i, double v);
    void set_sxx(std::size_t i, std::size_t j, double v);
    void set_sxxx(std::size_t i, std::size_t j, std::size_t k, double v);

    double sx(std::size_t i) const;
    double sxx(std::size_t i, std::size_t j) const;
    bool has_sxxx() const;
    double sxxx(std::size_t i, std::size_t j, std::size_t k) const;

  private:
    InitialMoments() = default;
    bool product_mode_ = false;
    double uniform_sx_ = 0.0, uniform_sxx_ = 0.0;
    std::optional<double> uniform_sxxx_;
    std::vector<double> site_sx_;  // product mode
    std::map<std::uint64_t, double> sx_over_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> sxx_over_;
    std::map<std::array<std::uint64_t, 3>, double> sxxx_over_;
};

enum class Observable { XX, YY, XY, XZ, YZ, ZZ, X, Y, PPlus, PMinus, PZ, PPP };

Observable observable_from_string(const std::string& s);
std::string to_string(Observable o);

struct CorrelatorSeries {
    Observable observable;
    std::array<std::size_t, 3> indices{};  // pair uses [0],[1]; PPP uses all three
    int n_indices = 2;
    double B = 0.0;
    std::vector<double> times;  // strictly increasing
    std::vector<SignedLogValue> values;
    std::vector<SignedLogValue> values_im;  // populated for PPP only
    // provenance recorded in CSV headers
    double alpha = 0.0, j_scale = 0.0;
    int L = 0;
    std::size_t n_sites = 0;
};

// Time grids (units of 1/J).
std::vector<double> linear_grid(double t0, double t1, std::size_t n);
std::vector<double> geometric_grid(double t0, double t1, std::size_t n);
// Grid equally spaced in the rescaled time u = t^p, starting at 0.
std::vector<double> power_spaced_grid(double t_max, double p, std::size_t n);

// Bare dephasing products Pi_{k != i,j} cos[2 (J_ki +/- J_kj) t]. The moment
// prefactor of P^{+/-}_{ij} is applied by the corr_* wrappers.
SignedLogValue p_plus(const CouplingMatrix& c, std::size_t i, std::size_t j, double t);
SignedLogValue p_minus(const CouplingMatrix& c, std::size_t i, std::size_t j, double t);

// Exact two-spin correlators for a longitudinal field B (B = 0 recovers the
// field-free results). Values whose log-domain magnitude underflows the
// double range linearize to signed zero; that is documented behaviour, not
// an error.
double corr_xx(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B);
double corr_yy(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B);
double corr_xy(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B);
double corr_xz(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B);
double corr_yz(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B);
double corr_zz(std::size_t i, std::size_t j, double t);

// P^z_{ij} = -s_i^x sin(2 t J_ij) Pi_{k != i,j} cos(2 t J_ik). Asymmetric in
// (i, j): the first index carries the transverse operator.
double p_z(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
           double t);

double one_spin_x(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, double t,
                  double B);
double one_spin_y(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, double t,
                  double B);

// <sigma_i^+ sigma_j^+ sigma_k^+>(t); requires third moments.
std::complex<double> corr_ppp(const InitialMoments& m, const CouplingMatrix& c, std::size_t i,
                              std::size_t j, std::size_t k, double t, double B);

CorrelatorSeries evaluate_series(const InitialMoments& m, const CouplingMatrix& c,
                                 Observable obs, std::span<const std::size_t> indices,
                                 std::vector<double> times, double B, int threads = 1);

// Times where the normalized correlator re-exceeds `threshold` after having
// first fallen below threshold/2. Normalization is by the first sample,
// which must be nonzero (start grids at t = 0).
std::vector<double> recurrence_scan(const CorrelatorSeries& s, double threshold);

// Smallest grid time with |normalized value| <= 1/e whose whole dwell window
// [t, 1.5 t] stays <= 1/e; +infinity when no such time lies in the grid.
double relaxation_time(const CorrelatorSeries& s);

}  // namespace spinrelax

#endif
