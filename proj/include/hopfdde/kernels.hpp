#ifndef HOPFDDE_KERNELS_HPP
#define HOPFDDE_KERNELS_HPP

#include <complex>

namespace hopfdde {

using cx = std::complex<double>;

// The closed forms below cancel catastrophically for small |z| (their
// numerators are O(z), O(z^2), O(z^3) differences of O(1) terms), so
// each switches to the Taylor series sum_k (-1)^k c_k z^k / (k+shift)!
// under |z| < 0.2, summed to convergence; both branches then agree to
// better than 1e-12 across the seam.

namespace detail {

// c_k = 1 for shift = 1 (plain kernel mean), c_k = k+1 otherwise
inline cx kernel_series(cx z, int shift) {
    cx acc(0.0), zp(1.0);
    double fact = 1.0;  // (shift - 1)! before the loop starts
    for (int j = 2; j <= shift - 1; ++j) fact *= j;
    for (int k = 0; k < 24; ++k) {
        fact *= (k + shift);
        const double num = shift == 1 ? 1.0 : static_cast<double>(k + 1);
        const cx term = (k % 2 ? -num : num) / fact * zp;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        zp *= z;
    }
    return acc;
}

}  // namespace detail

/// Mean of e^{-lambda s} over [0, tau] expressed through z = lambda tau:
/// kappa(z) = (1 - e^{-z}) / z, with kappa(0) = 1.
inline cx kernel_mean(cx z) {
    if (std::abs(z) < 0.2) return detail::kernel_series(z, 1);
    return (1.0 - std::exp(-z)) / z;
}

/// (1 - (1+z) e^{-z}) / z^2 = 1/2 - z/3 + z^2/8 - ...
/// (appears in d/dlambda of the averaged kernel).
inline cx kernel_mean_slope(cx z) {
    if (std::abs(z) < 0.2) return detail::kernel_series(z, 2);
    return (1.0 - (1.0 + z) * std::exp(-z)) / (z * z);
}

/// (z - 2 + 2 e^{-z} + z e^{-z}) / z^3 = 1/6 - z/12 + z^2/40 - ...
/// (the double-integral factor in the adjoint normalization constant).
inline cx kernel_pairing_factor(cx z) {
    if (std::abs(z) < 0.2) return detail::kernel_series(z, 3);
    return (z - 2.0 + 2.0 * std::exp(-z) + z * std::exp(-z)) / (z * z * z);
}

/// int_0^T e^{-mu s} ds, exact for mu = 0.
inline cx cexp_integral(cx mu, double T) {
    const cx z = mu * T;
    return T * kernel_mean(z);
}

}  // namespace hopfdde

#endif  // HOPFDDE_KERNELS_HPP
