#ifndef SPIN_RELAX_KERNELS_HPP
#define SPIN_RELAX_KERNELS_HPP

#include <span>
#include <vector>

#include "spin_relax/signed_log.hpp"

namespace spinrelax {

// out[i] = cos(coeffs[i] * t). Vectorizable polynomial kernel, |err| <= ~3e-16
// for |coeffs[i] * t| up to ~1e12. Used instead of libm cos because series
// sweeps evaluate 1e9+ factors.
void cos_block(const double* coeffs, double t, double* out, int n);

// prod_k cos(coeffs[k] * t) accumulated in the log domain. Empty input gives
// exactly one; an exactly-zero cosine factor short-circuits to signed zero.
SignedLogValue cos_product(std::span<const double> coeffs, double t);

// Product series over a time grid, optionally threaded over time points.
// out must hold times.size() entries. Values are independent of the schedule.
void cos_product_series(std::span<const double> coeffs, std::span<const double> times,
                        SignedLogValue* out, int threads = 1);

}  // namespace spinrelax

#endif
