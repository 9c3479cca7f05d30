#pragma once

// Complex kernels shared by every module: the principal logarithm, powers
// with a real exponent, and the moment kernel (1 + i log(u/v))^{-t-p}.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace zs {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Principal branch, arg in (-pi, pi]. When |z| is close to 1 the real part
// is computed as log1p(|z|^2 - 1) with |z|^2 - 1 = (x-1)(x+1) + y^2, which
// avoids the cancellation in log(hypot(x, y)).
inline Complex principal_log(Complex z)
{
    double x = z.real();
    double y = z.imag();
    if (x == 0.0 && y == 0.0)
        throw DomainError("principal_log: logarithm of zero");

    double modulus_sq_m1 = (x - 1.0) * (x + 1.0) + y * y;
    double re = std::abs(modulus_sq_m1) < 0.5 ? 0.5 * std::log1p(modulus_sq_m1)
                                              : std::log(std::hypot(x, y));
    double im = std::atan2(y, x);
    if (im == -pi)
        im = pi;
    return {re, im};
}

// log(1 + i w) for real w; exact real part via log1p(w^2) for every w.
inline Complex log_one_plus_iw(double w)
{
    return {0.5 * std::log1p(w * w), std::atan(w)};
}

namespace detail {

inline Complex checked_exp(Complex z, const char* who)
{
    // exp(709.78) is the largest finite double.
    if (z.real() > 709.0)
        throw OverflowError(std::string(who) + ": result overflows double");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw OverflowError(std::string(who) + ": non-finite exponent");
    double mag = std::exp(z.real());
    return {mag * std::cos(z.imag()), mag * std::sin(z.imag())};
}

} // namespace detail

// base^exponent on the principal branch.
inline Complex stable_pow(Complex base, double exponent)
{
    if (base == Complex{0.0, 0.0})
        throw DomainError("stable_pow: zero base");
    if (exponent == 0.0)
        return {1.0, 0.0};
    Complex log_base = base.real() == 1.0 ? log_one_plus_iw(base.imag())
                                          : principal_log(base);
    return detail::checked_exp(exponent * log_base, "stable_pow");
}

// (1 + i w)^exponent, the form every characteristic-function kernel takes.
inline Complex pow_one_plus_iw(double w, double exponent)
{
    if (exponent == 0.0 || w == 0.0)
        return {1.0, 0.0};
    return detail::checked_exp(exponent * log_one_plus_iw(w),
                               "pow_one_plus_iw");
}

struct KernelArgs
{
    double u = 1.0;
    double v = 1.0;
    double t = 1.0;
    int p = 0; // exponent is -(t + p)
};

inline void validate(const KernelArgs& args)
{
    if (!(args.u > 0.0) || !(args.v > 0.0))
        throw DomainError("kernel: u and v must be positive");
    if (!(args.t >= 1.0))
        throw DomainError("kernel: t must be at least 1");
    if (args.p < 0)
        throw DomainError("kernel: exponent offset p must be non-negative");
}

// (1 + i log(u/v))^{-t-p} with log(u/v) = log u - log v.
inline Complex kernel(const KernelArgs& args)
{
    validate(args);
    double log_ratio = std::log(args.u) - std::log(args.v);
    return pow_one_plus_iw(log_ratio, -(args.t + args.p));
}

// Same kernel when log(u/v) is already known; used in the inner loops.
inline Complex kernel_log(double log_ratio, double exponent_t)
{
    return pow_one_plus_iw(log_ratio, -exponent_t);
}

namespace detail {

// log(1+z) - z + z^2/2, accurate for small |z| where the direct form cancels.
inline Complex log1p_cubic_remainder(Complex z)
{
    if (std::abs(z) < 0.1) {
        // z^3/3 - z^4/4 + z^5/5 - ... ; |z| < 0.1 gives 1e-17 after 16 terms
        Complex power = z * z * z;
        Complex acc{0.0, 0.0};
        for (int k = 3; k < 20; ++k) {
            acc += ((k % 2 == 1) ? 1.0 : -1.0) * power / static_cast<double>(k);
            power *= z;
        }
        return acc;
    }
    return principal_log(Complex{1.0, 0.0} + z) - z + 0.5 * z * z;
}

inline Complex complex_expm1(Complex z)
{
    double x = z.real();
    double y = z.imag();
    double half_sin = std::sin(0.5 * y);
    double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
    double im = std::exp(x) * std::sin(y);
    return {re, im};
}

} // namespace detail

// exp(-t (z - z^2/2)), the quadratic approximant of (1+z)^{-t}.
inline Complex taylor_kernel(Complex z, double t)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("taylor_kernel: requires |z| < 1");
    return detail::checked_exp(-t * (z - 0.5 * z * z), "taylor_kernel");
}

// |(1+z)^{-t} - taylor_kernel(z, t)| / |(1+z)^{-t}|. The ratio of the two is
// exp(t (log(1+z) - z + z^2/2)), evaluated without cancellation.
inline double taylor_deviation(Complex z, double t)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("taylor_deviation: requires |z| < 1");
    return std::abs(detail::complex_expm1(t * detail::log1p_cubic_remainder(z)));
}

} // namespace zs
