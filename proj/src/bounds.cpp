#include "spin_relax/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spinrelax {

namespace {
constexpr double kPi = 3.14159265358979324;
}  // namespace

BoundExponents exponents(double alpha, int d) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    const double dd = d;
    BoundExponents e{};
    e.alpha = alpha;
    e.d = d;
    e.qplus = std::max(0.0, 1.0 - 2.0 * alpha / dd);
    e.qminus = std::max(0.0, 1.0 - 2.0 * (1.0 + alpha) / dd);
    e.pplus = alpha == 0.0 ? 2.0 : std::min(2.0, dd / alpha);
    e.pminus = std::min(2.0, dd / (1.0 + alpha));
    return e;
}

TriangularBoundConstants tri_constants(double alpha, double delta, double J) {
    if (!(delta > 0.0)) throw std::invalid_argument("pair separation delta must be > 0");
    if (alpha == 1.0)
        throw std::invalid_argument("cplus has a pole at alpha = 1 (branch split); "
                                    "evaluate on either side instead");
    if (alpha <= 0.0)
        throw std::invalid_argument("cminus diverges as 1/alpha; alpha must be > 0");
    TriangularBoundConstants c{};
    c.alpha = alpha;
    c.delta = delta;
    if (alpha < 1.0) {
        c.cplus = 64.0 * J * J * std::pow(3.0, alpha - 1.0) / (kPi * kPi * (1.0 - alpha));
    } else {
        // cutoff ring at r0 = (4Jt/pi)^(1/alpha), mirroring the minus branch
        c.cplus = 4.0 / (alpha - 1.0) * std::pow(4.0 * J / kPi, 2.0 / alpha);
    }
    c.cminus = delta * delta / (4.0 * alpha) *
               std::pow(4.0 * alpha * J / kPi, 2.0 / (1.0 + alpha));
    return c;
}

SignedLogValue bound_p_plus(double t, double alpha, std::size_t N, double J) {
    if (alpha == 1.0) throw std::invalid_argument("plus bound is undefined at alpha = 1");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    double expo;
    if (alpha < 1.0) {
        expo = 64.0 * J * J * t * t * std::pow(static_cast<double>(N) / 3.0, 1.0 - alpha) /
               (kPi * kPi * (1.0 - alpha));
    } else {
        expo = std::pow(8.0 * J * t / kPi, 2.0 / alpha) / (alpha - 1.0);
    }
    return {1, -expo};
}

SignedLogValue bound_p_minus(double t, double alpha, double delta, double J) {
    if (!(alpha > 0.0)) throw std::invalid_argument("minus bound needs alpha > 0");
    const double expo = delta * delta / (4.0 * alpha) *
                        std::pow(4.0 * alpha * J * t / kPi, 2.0 / (1.0 + alpha));
    return {1, -expo};
}

double bound_correlator(double xx0, double t, double alpha, std::size_t N, double delta,
                        double J) {
    const SignedLogValue sum =
        add(bound_p_minus(t, alpha, delta, J), bound_p_plus(t, alpha, N, J));
    return 0.5 * xx0 * sum.to_linear();
}

CutoffRadii cutoff_radii(double t, double alpha, double J, double delta, double margin) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("cutoff radii need alpha > 0");
    CutoffRadii r{};
    r.r0plus = std::pow(8.0 * J * t / kPi, 1.0 / alpha);
    r.r0minus = std::pow(4.0 * alpha * J * t / kPi, 1.0 / (1.0 + alpha));
    r.minus_valid = r.r0minus >= delta + margin;
    return r;
}

double tau_bound(double alpha, double delta, double J) {
    if (!(alpha > 0.0) || !(delta > 0.0) || !(J > 0.0))
        throw std::invalid_argument("tau_bound needs alpha, delta, J > 0");
    return std::pow(2.0 * std::sqrt(alpha) / delta, 1.0 + alpha) * kPi / (4.0 * alpha * J);
}

DecayRegime decay_regime(double alpha, int d) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    const double boundary = d - 1.0;
    if (alpha == boundary) return DecayRegime::GaussianBoundary;
    return alpha < boundary ? DecayRegime::Compressed : DecayRegime::Stretched;
}

EnvelopeFit fit_log_envelope(std::span<const double> times,
                             std::span<const SignedLogValue> values, double p,
                             std::size_t nbins, double env_start_log10,
                             double env_end_log10) {
    if (times.size() != values.size() || times.size() < 16)
        throw std::invalid_argument("envelope fit needs matched series of >= 16 samples");
    if (nbins < 4) throw std::invalid_argument("envelope fit needs >= 4 bins");
    if (!(env_end_log10 < env_start_log10))
        throw std::invalid_argument("window depths must decrease");

    // The window is located on a fine envelope (running maxima), not on raw
    // samples: raw minima spike far below the envelope long before the
    // envelope itself reaches a given depth.
    constexpr std::size_t kFine = 256;
    const double u_lo = std::pow(times.front(), p), u_hi = std::pow(times.back(), p);
    const double dfine = (u_hi - u_lo) / static_cast<double>(kFine);
    std::vector<double> fine(kFine, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < times.size(); ++k) {
        auto b = static_cast<std::size_t>((std::pow(times[k], p) - u_lo) / dfine);
        if (b >= kFine) b = kFine - 1;
        fine[b] = std::max(fine[b], values[k].log10_magnitude());
    }
    std::size_t f0 = kFine, f1 = kFine;
    for (std::size_t b = 0; b < kFine; ++b) {
        if (!std::isfinite(fine[b])) continue;
        if (f0 == kFine && fine[b] <= env_start_log10) f0 = b;
        if (f0 != kFine && fine[b] <= env_end_log10) {
            f1 = b;
            break;
        }
    }
    if (f0 >= kFine || f1 >= kFine || f1 <= f0)
        throw std::invalid_argument("series never reaches the requested envelope window");
    const double u0 = u_lo + static_cast<double>(f0) * dfine;
    const double u1 = u_lo + static_cast<double>(f1 + 1) * dfine;

    std::vector<double> xs(nbins), ys(nbins, -std::numeric_limits<double>::infinity());
    const double du = (u1 - u0) / static_cast<double>(nbins);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double u = std::pow(times[k], p);
        if (u < u0 || u > u1) continue;
        auto b = static_cast<std::size_t>((u - u0) / du);
        if (b >= nbins) b = nbins - 1;
        ys[b] = std::max(ys[b], values[k].log10_magnitude());
    }
    for (std::size_t b = 0; b < nbins; ++b) xs[b] = u0 + (static_cast<double>(b) + 0.5) * du;

    // least squares over populated bins
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t n = 0;
    double ymin = 0, ymax = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nbins; ++b) {
        if (!std::isfinite(ys[b])) continue;
        sx += xs[b];
        sy += ys[b];
        sxx += xs[b] * xs[b];
        sxy += xs[b] * ys[b];
        syy += ys[b] * ys[b];
        ymin = std::min(ymin, ys[b]);
        ymax = std::max(ymax, ys[b]);
        ++n;
    }
    if (n < 4) throw std::invalid_argument("too few populated envelope bins");
    const double dn = static_cast<double>(n);
    const double det = dn * sxx - sx * sx;
    EnvelopeFit fit;
    fit.bins_used = n;
    fit.u_start = u0;
    fit.u_end = u1;
    fit.t_start = std::pow(u0, 1.0 / p);
    fit.t_end = std::pow(u1, 1.0 / p);
    fit.slope = (dn * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / dn;
    double ss_res = 0.0;
    const double mean = sy / dn;
    double ss_tot = 0.0;
    for (std::size_t b = 0; b < nbins; ++b) {
        if (!std::isfinite(ys[b])) continue;
        const double r = ys[b] - (fit.slope * xs[b] + fit.intercept);
        ss_res += r * r;
        ss_tot += (ys[b] - mean) * (ys[b] - mean);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    fit.span_decades = ymax - ymin;
    return fit;
}

}  // namespace spinrelax
