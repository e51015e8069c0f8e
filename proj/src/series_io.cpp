#include "spin_relax/series_io.hpp"

#include <ostream>

#include "spin_relax/bounds.hpp"
#include "spin_relax/csv.hpp"

namespace spinrelax {

void write_series_csv(const CorrelatorSeries& s, std::ostream& os) {
    os << "# observable=" << to_string(s.observable) << " indices=";
    for (int k = 0; k < s.n_indices; ++k) os << (k ? "/" : "") << s.indices[static_cast<std::size_t>(k)];
    os << " alpha=" << format_double(s.alpha) << " B=" << format_double(s.B)
       << " J=" << format_double(s.j_scale) << " L=" << s.L << " N=" << s.n_sites << "\n";
    const bool complex_series = !s.values_im.empty();
    os << "t,sign,log10_magnitude,linear_value";
    if (complex_series) os << ",sign_im,log10_magnitude_im,linear_im";
    os << "\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const auto& v = s.values[k];
        os << format_double(s.times[k]) << ',' << v.sign << ','
           << format_double(v.log10_magnitude()) << ',' << format_double(v.to_linear());
        if (complex_series) {
            const auto& w = s.values_im[k];
            os << ',' << w.sign << ',' << format_double(w.log10_magnitude()) << ','
               << format_double(w.to_linear());
        }
        os << "\n";
    }
}

void write_bounds_csv(const std::vector<double>& times, double alpha, std::size_t N,
                      double delta, double J, std::ostream& os) {
    os << "# bounds alpha=" << format_double(alpha) << " N=" << N
       << " delta=" << format_double(delta) << " J=" << format_double(J) << "\n";
    os << "t,bound_minus_log10,bound_plus_log10\n";
    for (double t : times) {
        os << format_double(t) << ','
           << format_double(bound_p_minus(t, alpha, delta, J).log10_magnitude()) << ','
           << format_double(bound_p_plus(t, alpha, N, J).log10_magnitude()) << "\n";
    }
}

void write_tau_table_csv(const std::vector<double>& alphas, double delta, double J,
                         std::ostream& os) {
    os << "# relaxation-time bound delta=" << format_double(delta)
       << " J=" << format_double(J) << "\n";
    os << "alpha,tau_bound\n";
    for (double a : alphas)
        os << format_double(a) << ',' << format_double(tau_bound(a, delta, J)) << "\n";
}

void write_tomography_csv(const std::vector<TomographyRow>& rows, std::ostream& os) {
    os << "t,gamma_i,gamma_ij,mod_diag,mod_14,mod_23,mod_12\n";
    for (const auto& r : rows) {
        os << format_double(r.t) << ',' << format_double(r.gamma_i) << ','
           << format_double(r.gamma_ij) << ',' << format_double(r.mod_diag) << ','
           << format_double(r.mod_14) << ',' << format_double(r.mod_23) << ','
           << format_double(r.mod_12) << "\n";
    }
}

void write_squeeze_csv(const std::vector<SqueezeRow>& rows, std::ostream& os) {
    os << "theta,t,jz2\n";
    for (const auto& r : rows)
        os << format_double(r.theta) << ',' << format_double(r.t) << ','
           << format_double(r.jz2) << "\n";
}

}  // namespace spinrelax
