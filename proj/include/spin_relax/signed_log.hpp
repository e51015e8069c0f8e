#ifndef SPIN_RELAX_SIGNED_LOG_HPP
#define SPIN_RELAX_SIGNED_LOG_HPP

#include <cmath>
#include <limits>

namespace spinrelax {

// Sign-and-log representation of a real number. Products of thousands of
// cosine factors underflow doubles after ~300 decades; series data here
// routinely spans several hundred, so all product accumulation happens in
// the log domain and is linearized only at the API boundary.
struct SignedLogValue {
    int sign = 0;  // -1, 0, +1
    double logmag = -std::numeric_limits<double>::infinity();  // ln|value|, ignored when sign == 0

    static SignedLogValue zero() { return {0, -std::numeric_limits<double>::infinity()}; }
    static SignedLogValue one() { return {1, 0.0}; }

    static SignedLogValue from_linear(double v) {
        if (v == 0.0 || std::isnan(v)) return zero();
        return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
    }

    // Linearizes; magnitudes below the double range collapse to signed zero.
    double to_linear() const {
        if (sign == 0) return 0.0;
        return static_cast<double>(sign) * std::exp(logmag);
    }

    double log10_magnitude() const { return logmag / 2.302585092994045684; }

    bool is_zero() const { return sign == 0; }

    friend SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.sign * b.sign, a.logmag + b.logmag};
    }

    SignedLogValue& operator*=(SignedLogValue b) { return *this = *this * b; }

    // Signed log-domain addition (logsumexp with cancellation handling).
    friend SignedLogValue add(SignedLogValue a, SignedLogValue b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        if (a.logmag < b.logmag) std::swap(a, b);
        const double d = b.logmag - a.logmag;  // <= 0
        if (a.sign == b.sign) return {a.sign, a.logmag + std::log1p(std::exp(d))};
        const double m = 1.0 - std::exp(d);
        if (m <= 0.0) return zero();  // exact cancellation
        return {a.sign, a.logmag + std::log(m)};
    }

    friend SignedLogValue scale(SignedLogValue a, double factor) {
        return a * from_linear(factor);
    }
};

}  // namespace spinrelax

#endif
