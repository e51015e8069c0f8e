#ifndef SPIN_RELAX_SERIES_IO_HPP
#define SPIN_RELAX_SERIES_IO_HPP

#include <iosfwd>
#include <vector>

#include "spin_relax/dynamics.hpp"
#include "spin_relax/signed_log.hpp"

namespace spinrelax {

// Correlator series: header comment with observable, indices, alpha, B, L, N,
// then rows t,sign,log10_magnitude,linear_value (plus the imaginary triple
// for three-spin series).
void write_series_csv(const CorrelatorSeries& s, std::ostream& os);

// Bound overlay aligned with a dynamics grid: t,bound_minus_log10,bound_plus_log10.
void write_bounds_csv(const std::vector<double>& times, double alpha, std::size_t N,
                      double delta, double J, std::ostream& os);

// Relaxation-time bound table: alpha,tau_bound.
void write_tau_table_csv(const std::vector<double>& alphas, double delta, double J,
                         std::ostream& os);

struct TomographyRow {
    double t, gamma_i, gamma_ij, mod_diag, mod_14, mod_23, mod_12;
};

void write_tomography_csv(const std::vector<TomographyRow>& rows, std::ostream& os);

struct SqueezeRow {
    double theta, t, jz2;
};

void write_squeeze_csv(const std::vector<SqueezeRow>& rows, std::ostream& os);

}  // namespace spinrelax

#endif
