#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qmaass {

namespace detail {

template <class Real>
Real k0_series(Real y)
{
    const Real t = y * y / 4;
    Real term = 1; // t^k / (k!)^2
    Real harmonic = 0;
    Real i0 = 1;
    Real rest = 0;
    for (int k = 1; k < 200; ++k) {
        term *= t / (Real(k) * Real(k));
        harmonic += Real(1) / Real(k);
        i0 += term;
        rest += term * harmonic;
        if (term * (harmonic + 1) < std::numeric_limits<Real>::epsilon() * Real(1e-3) * i0) {
            break;
        }
    }
    return -(std::log(y / 2) + std::numbers::egamma_v<Real>) * i0 + rest;
}

// e^{y} K0(y) = int_0^inf exp(-y (cosh t - 1)) dt by the trapezoid rule, which
// converges geometrically in 1/h for this entire, rapidly decaying integrand.
template <class Real>
Real k0_scaled_quadrature(Real y, Real rel_tol)
{
    auto f = [y](Real t) { return std::exp(-y * (std::cosh(t) - 1)); };
    const Real cutoff = std::numeric_limits<Real>::epsilon() * Real(1e-4);
    auto tail_sum = [&](Real start, Real step) {
        Real s = 0;
        for (Real t = start;; t += step) {
            const Real v = f(t);
            s += v;
            if (v < cutoff) {
                break;
            }
        }
        return s;
    };
    // The integrand has width ~ 1/sqrt(y).
    Real h = std::min(Real(0.5), 1 / std::sqrt(y));
    Real sum = f(0) / 2 + tail_sum(h, h); // sum over the grid h Z_{>=0}, endpoint halved
    Real estimate = h * sum;
    for (int level = 0; level < 20; ++level) {
        sum += tail_sum(h / 2, h); // new midpoints
        h /= 2;
        const Real next = h * sum;
        if (std::abs(next - estimate) <= rel_tol * next) {
            return next;
        }
        estimate = next;
    }
    throw std::runtime_error("bessel_k0: quadrature did not converge");
}

} // namespace detail

// K_0(y) for y > 0. Below the crossover y = 2 the I_0-based series; above it
// the exponentially scaled quadrature of the defining integral.
template <class Real = double>
Real bessel_k0(Real y, Real tol = Real(1e-15))
{
    if (!(y > 0)) {
        throw std::domain_error("bessel_k0: y must be positive");
    }
    if (y <= 2) {
        return detail::k0_series(y);
    }
    if (std::exp(-y) == 0) {
        return 0;
    }
    const Real scaled = detail::k0_scaled_quadrature(y, std::max(tol, std::numeric_limits<Real>::epsilon() * 64));
    return std::exp(-y) * scaled;
}

} // namespace qmaass
