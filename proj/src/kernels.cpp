#include "spin_relax/kernels.hpp"

#include <cmath>

#include "spin_relax/threading.hpp"

namespace spinrelax {

// Argument reduction x = q*(pi/2) + r with |r| <= pi/4, then degree-7
// Chebyshev polynomials in r^2 for cos(r) and sin(r)/r. Quadrant and sign
// selection are done in floating point so the loop vectorizes.
void cos_block(const double* coeffs, double t, double* out, int n) {
    constexpr double two_inv_pi = 0.63661977236758138;
    constexpr double pi2_hi = 1.57079632679489656;
    constexpr double pi2_mid = 6.12323399573676604e-17;
    constexpr double pi2_lo = -1.49726980025658888e-33;
#pragma omp simd
    for (int i = 0; i < n; ++i) {
        const double x = coeffs[i] * t;
        const double q = std::nearbyint(x * two_inv_pi);
        double r = std::fma(-q, pi2_hi, x);
        r = std::fma(-q, pi2_mid, r);
        r = std::fma(-q, pi2_lo, r);
        const double r2 = r * r;

        double pc = -1.1353379638297574e-11;
        pc = std::fma(pc, r2, 2.0875582380663953e-9);
        pc = std::fma(pc, r2, -2.7557313097790086e-7);
        pc = std::fma(pc, r2, 2.4801587283881153e-5);
        pc = std::fma(pc, r2, -0.0013888888888861095);
        pc = std::fma(pc, r2, 0.041666666666666452);
        pc = std::fma(pc, r2, -0.49999999999999999);
        pc = std::fma(pc, r2, 1.0);

        double ps = -7.5780901609226864e-13;
        ps = std::fma(ps, r2, 1.6058352428871255e-10);
        ps = std::fma(ps, r2, -2.5052104779095044e-8);
        ps = std::fma(ps, r2, 2.7557319213562224e-6);
        ps = std::fma(ps, r2, -0.00019841269841253478);
        ps = std::fma(ps, r2, 0.0083333333333333207);
        ps = std::fma(ps, r2, -0.16666666666666667);
        ps = std::fma(ps, r2, 1.0);
        ps *= r;

        // cos(x) by quadrant q mod 4: {cos, -sin, -cos, +sin}(r)
        const double qh = q * 0.5;
        const double q_odd = (qh - std::floor(qh)) * 2.0;  // 0: even q, 1: odd q
        const double fq2 = (q - q_odd) * 0.5;              // floor(q/2)
        const double fq2h = fq2 * 0.5;
        const double fq2_odd = (fq2h - std::floor(fq2h)) * 2.0;
        const double val = pc + q_odd * (ps - pc);
        const double sign_cos = 1.0 - 2.0 * fq2_odd;
        const double sign = sign_cos + q_odd * (-2.0 * sign_cos);  // sin branch flips
        out[i] = val * sign;
    }
}

namespace {

constexpr int kBlock = 1024;

// One grid point: blocks of cosines, tree products, exponent extraction
// every 8 factors so the running product never drifts toward denormals.
SignedLogValue product_at(const double* coeffs, std::size_t n, double t, double* buf) {
    double prod = 1.0;
    long e2 = 0;
    for (std::size_t base = 0; base < n; base += kBlock) {
        const int m = static_cast<int>(std::min<std::size_t>(kBlock, n - base));
        cos_block(coeffs + base, t, buf, m);
        int i = 0;
        for (; i + 8 <= m; i += 8) {
            const double chunk = ((buf[i] * buf[i + 1]) * (buf[i + 2] * buf[i + 3])) *
                                 ((buf[i + 4] * buf[i + 5]) * (buf[i + 6] * buf[i + 7]));
            prod *= chunk;
            int e;
            prod = std::frexp(prod, &e);
            e2 += e;
        }
        for (; i < m; ++i) prod *= buf[i];
        if (prod == 0.0) return SignedLogValue::zero();
    }
    if (prod == 0.0) return SignedLogValue::zero();
    return {prod > 0.0 ? 1 : -1,
            std::log(std::abs(prod)) + 0.69314718055994531 * static_cast<double>(e2)};
}

}  // namespace

SignedLogValue cos_product(std::span<const double> coeffs, double t) {
    double buf[kBlock];
    return product_at(coeffs.data(), coeffs.size(), t, buf);
}

void cos_product_series(std::span<const double> coeffs, std::span<const double> times,
                        SignedLogValue* out, int threads) {
    const double* cp = coeffs.data();
    const std::size_t nc = coeffs.size();
    const double* tp = times.data();
    parallel_for(times.size(), threads, [&](std::size_t b, std::size_t e) {
        std::vector<double> buf(kBlock);
        for (std::size_t k = b; k < e; ++k) out[k] = product_at(cp, nc, tp[k], buf.data());
    });
}

}  // namespace spinrelax
