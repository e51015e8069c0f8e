#ifndef SPIN_RELAX_BOUNDS_HPP
#define SPIN_RELAX_BOUNDS_HPP

#include <cstddef>
#include <span>

#include "spin_relax/signed_log.hpp"

namespace spinrelax {

// Exponents of the thermodynamic-limit decay bounds
//   P-bar^{+/-} = (xx0/2) exp[-C^{+/-} N^{q^{+/-}} t^{p^{+/-}}]
// as functions of the coupling exponent alpha and dimension d.
struct BoundExponents {
    double qplus, qminus, pplus, pminus;
    double alpha;
    int d;
};

BoundExponents exponents(double alpha, int d);

// Bound constants for the symmetric centre pair (separation delta) on the
// two-dimensional triangular lattice. cplus has a pole at alpha = 1 and
// cminus one at alpha = 0; both are rejected rather than interpolated.
struct TriangularBoundConstants {
    double cplus, cminus;
    double alpha, delta;
};

TriangularBoundConstants tri_constants(double alpha, double delta, double J);

// Log-domain upper bounds on the bare products. The plus bound uses the
// finite system's N in its alpha < 1 branch and is N-free for alpha > 1.
SignedLogValue bound_p_plus(double t, double alpha, std::size_t N, double J);
SignedLogValue bound_p_minus(double t, double alpha, double delta, double J);

// (xx0/2) * (bound_p_minus + bound_p_plus), linearized.
double bound_correlator(double xx0, double t, double alpha, std::size_t N, double delta,
                        double J);

// Cutoff radii beyond which every cosine argument of the respective product
// is below pi/2. The minus branch asymptotics need the cutoff ring outside
// the pair: valid once r0minus >= delta + margin.
struct CutoffRadii {
    double r0plus, r0minus;
    bool minus_valid;
};

CutoffRadii cutoff_radii(double t, double alpha, double J, double delta = 2.0,
                         double margin = 2.0);

// Upper bound on the relaxation time of the centre-pair correlator,
// tau <= (2 sqrt(alpha)/delta)^(1+alpha) * pi / (4 alpha J).
double tau_bound(double alpha, double delta, double J);

enum class DecayRegime { Compressed, Stretched, GaussianBoundary };

// Compressed exponential for alpha < d-1, stretched for alpha > d-1.
DecayRegime decay_regime(double alpha, int d);

// Least-squares line through per-bin running maxima of log10 magnitude
// against the rescaled time u = t^p. Bins are equal-width in u between the
// first sample at or below env_start_log10 and the first at or below
// env_end_log10 (both in decades, negative).
struct EnvelopeFit {
    double r2 = 0.0;
    double slope = 0.0, intercept = 0.0;
    double span_decades = 0.0;
    std::size_t bins_used = 0;
    double u_start = 0.0, u_end = 0.0;  // fitted window in rescaled time
    double t_start = 0.0, t_end = 0.0;
};

EnvelopeFit fit_log_envelope(std::span<const double> times,
                             std::span<const SignedLogValue> values, double p,
                             std::size_t nbins, double env_start_log10,
                             double env_end_log10);

}  // namespace spinrelax

#endif
