#pragma once

// Riemann zeta on and near the critical line.
//
//   zeta_em            Euler-Maclaurin summation (reference path)
//   zeta_integral_repr fractional-part representation
//                        zeta(s) = 1 - 1/(1-s) + int_1^inf {u} d/du u^{-s} du
//                      integrated unit interval by unit interval
//   zeta_rs            Riemann-Siegel with corrections C0..C4 (sigma = 1/2)
//   zeta               dispatcher used by the Monte Carlo pipeline
//
// plus the deterministic first moment E zeta(1/2 + i X_t).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "complex_core.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "summation.hpp"

namespace zs {

struct ZetaArgument
{
    double sigma = 0.5;
    double t = 0.0;

    ZetaArgument(double sigma_, double t_) : sigma(sigma_), t(t_)
    {
        if (!(sigma_ > 0.0) || !(sigma_ <= 4.0) || !std::isfinite(t_))
            throw DomainError("ZetaArgument: need 0 < sigma <= 4 and finite t");
    }

    [[nodiscard]] Complex s() const { return {sigma, t}; }
};

enum class ZetaMethod { euler_maclaurin, integral, riemann_siegel, automatic };

inline std::string_view to_string(ZetaMethod m)
{
    switch (m) {
    case ZetaMethod::euler_maclaurin: return "em";
    case ZetaMethod::integral: return "integral";
    case ZetaMethod::riemann_siegel: return "rs";
    case ZetaMethod::automatic: return "auto";
    }
    return "auto";
}

inline ZetaMethod parse_zeta_method(std::string_view name)
{
    if (name == "em") return ZetaMethod::euler_maclaurin;
    if (name == "integral") return ZetaMethod::integral;
    if (name == "rs") return ZetaMethod::riemann_siegel;
    if (name == "auto") return ZetaMethod::automatic;
    throw ConfigError("unknown zeta method '" + std::string(name) + "'");
}

struct EvalConfig
{
    // Euler-Maclaurin main-sum length; 0 derives it from target_error.
    std::size_t series_terms = 0;
    int em_correction_order = 8;
    // Integral representation: unit intervals are integrated up to here.
    double tail_cutoff = 1e4;
    double quad_tolerance = 1e-12;
    double target_error = 1e-12;
    // zeta() switches to Riemann-Siegel on the critical line above this height.
    double rs_threshold = 1000.0;
};

struct ZetaValue
{
    Complex value;
    double error_estimate = 0.0;
    std::size_t terms = 0;
    ZetaMethod method = ZetaMethod::euler_maclaurin;
};

// Minimum main-sum length accepted on the critical line.
inline std::size_t accuracy_floor(double t)
{
    return static_cast<std::size_t>(std::ceil(3.0 * std::sqrt(std::abs(t) / two_pi)));
}

namespace detail {

// B_{2k} for k = 1..20.
inline constexpr std::array<double, 20> bernoulli_even = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

// B_{2k} / (2k)!
inline double bernoulli_over_factorial(int k)
{
    double fact = 1.0;
    for (int j = 2; j <= 2 * k; ++j)
        fact *= j;
    return bernoulli_even[static_cast<std::size_t>(k - 1)] / fact;
}

// |(s)_n| = |s (s+1) ... (s+n-1)|
inline double rising_modulus(Complex s, int n)
{
    double acc = 1.0;
    for (int j = 0; j < n; ++j)
        acc *= std::abs(s + static_cast<double>(j));
    return acc;
}

// Remainder bound after `order` Bernoulli corrections at cut N:
// |s+2p+1|/(sigma+2p+1) * |B_{2p+2}|/(2p+2)! * |(s)_{2p+1}| * N^{-sigma-2p-1}.
inline double em_remainder_bound(Complex s, int order, double n)
{
    int p = order;
    double lead = std::abs(s + static_cast<double>(2 * p + 1)) /
                  (s.real() + 2.0 * p + 1.0);
    double coef = std::abs(bernoulli_over_factorial(p + 1)) *
                  rising_modulus(s, 2 * p + 1);
    return lead * coef * std::pow(n, -(s.real() + 2.0 * p + 1.0));
}

// Sum_{k=1}^{order} B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}, given N^{-s}.
inline Complex em_corrections(Complex s, int order, double n, Complex n_pow_minus_s)
{
    Complex acc{0.0, 0.0};
    Complex factor = s * n_pow_minus_s / n; // (s)_1 N^{-s-1}
    for (int k = 1; k <= order; ++k) {
        acc += bernoulli_over_factorial(k) * factor;
        double a = 2.0 * k - 1.0;
        factor *= (s + a) * (s + a + 1.0) / (n * n);
    }
    return acc;
}

inline Complex n_pow_minus_s(Complex s, double log_n)
{
    double mag = std::exp(-s.real() * log_n);
    double phase = s.imag() * log_n;
    return {mag * std::cos(phase), -mag * std::sin(phase)};
}

inline void check_order(int order)
{
    if (order < 1 || order > 19)
        throw ConfigError("em_correction_order must be in [1, 19]");
}

} // namespace detail

inline ZetaValue zeta_em(const ZetaArgument& arg, const EvalConfig& cfg = {})
{
    Complex s = arg.s();
    if (s == Complex{1.0, 0.0})
        throw DomainError("zeta_em: pole at s = 1");
    detail::check_order(cfg.em_correction_order);
    int order = cfg.em_correction_order;

    std::size_t floor_terms = accuracy_floor(arg.t);
    std::size_t n_terms = cfg.series_terms;
    if (n_terms != 0) {
        if (n_terms < floor_terms)
            throw ConfigError("zeta_em: series_terms " + std::to_string(n_terms) +
                              " below accuracy floor " + std::to_string(floor_terms));
    } else {
        double lead = std::abs(s + static_cast<double>(2 * order + 1)) /
                      (s.real() + 2.0 * order + 1.0);
        double coef = lead * std::abs(detail::bernoulli_over_factorial(order + 1)) *
                      detail::rising_modulus(s, 2 * order + 1);
        double expo = s.real() + 2.0 * order + 1.0;
        double needed = std::pow(coef / cfg.target_error, 1.0 / expo);
        double floor_d = std::max<double>(static_cast<double>(floor_terms), 4.0);
        n_terms = static_cast<std::size_t>(std::ceil(std::max(needed, floor_d)));
    }

    double n = static_cast<double>(n_terms);
    CompensatedComplexSum acc;
    for (std::size_t k = 1; k < n_terms; ++k)
        acc.add(detail::n_pow_minus_s(s, std::log(static_cast<double>(k))));

    Complex n_s = detail::n_pow_minus_s(s, std::log(n));
    acc.add(n * n_s / (s - 1.0));
    acc.add(0.5 * n_s);
    acc.add(detail::em_corrections(s, order, n, n_s));

    ZetaValue out;
    out.value = acc.value();
    out.terms = n_terms;
    out.error_estimate = detail::em_remainder_bound(s, order, n) +
                         4.0 * 2.2e-16 * std::sqrt(n) * (1.0 + std::abs(arg.t) * std::log(n));
    out.method = ZetaMethod::euler_maclaurin;
    return out;
}

enum class IntegralMode { automatic, continuation, pre_continuation };

struct IntegralReprValue
{
    ZetaValue zeta;
    Complex constant_part;   // 1 - int_0^1 u^{-s} du, or 1 + int_1^inf u^{-s} du
    Complex sawtooth_part;   // sum of unit-interval quadratures on [1, cutoff]
    Complex tail_part;       // analytic tail on [cutoff, inf)
    double raw_tail_bound = 0.0; // |s| cutoff^{-sigma} / sigma
};

inline IntegralReprValue zeta_integral_detail(const ZetaArgument& arg,
                                              const EvalConfig& cfg = {},
                                              IntegralMode mode = IntegralMode::automatic)
{
    Complex s = arg.s();
    if (s == Complex{1.0, 0.0})
        throw DomainError("zeta_integral_repr: pole at s = 1");
    if (mode == IntegralMode::continuation && !(arg.sigma > 0.0 && arg.sigma < 1.0))
        throw DomainError("zeta_integral_repr: continuation form needs 0 < sigma < 1");
    if (mode == IntegralMode::pre_continuation && !(arg.sigma > 1.0))
        throw DomainError("zeta_integral_repr: pre-continuation form needs sigma > 1");
    detail::check_order(cfg.em_correction_order);

    double cutoff = std::floor(cfg.tail_cutoff);
    if (cutoff < 2.0)
        throw ConfigError("zeta_integral_repr: tail_cutoff must be at least 2");

    IntegralReprValue out;
    // For 0 < sigma < 1, int_0^1 u^{-s} du = 1/(1-s). For sigma > 1 the same
    // value arises as 1 + int_1^inf u^{-s} du = 1 + 1/(s-1).
    out.constant_part = 1.0 + 1.0 / (s - 1.0);

    std::size_t intervals = static_cast<std::size_t>(cutoff) - 1;
    QuadOptions opts;
    // Each interval gets an equal share of the budget; the relative floor
    // keeps GK15 from chasing its own rounding on the first few intervals.
    opts.abs_tol = cfg.quad_tolerance / static_cast<double>(intervals);
    opts.rel_tol = 1e-14;
    opts.max_intervals = 200;

    CompensatedComplexSum saw;
    double quad_error = 0.0;
    Complex minus_s = -s;
    for (std::size_t k = 1; k <= intervals; ++k) {
        double lo = static_cast<double>(k);
        auto integrand = [&](double u) {
            // {u} d/du u^{-s} = (u - n) (-s) u^{-s-1}
            return (u - lo) * minus_s * detail::n_pow_minus_s(s + 1.0, std::log(u));
        };
        auto r = integrate(integrand, lo, lo + 1.0, opts);
        saw.add(r.value);
        quad_error += r.error;
    }
    out.sawtooth_part = saw.value();

    // int_X^inf {u} f'(u) du with f = u^{-s}: {u} = 1/2 + B1({u}) gives
    // -f(X)/2 plus the periodic-Bernoulli expansion at X.
    Complex x_s = detail::n_pow_minus_s(s, std::log(cutoff));
    out.tail_part = -0.5 * x_s + detail::em_corrections(s, cfg.em_correction_order, cutoff, x_s);
    double tail_error = detail::em_remainder_bound(s, cfg.em_correction_order, cutoff);
    out.raw_tail_bound = std::abs(s) * std::pow(cutoff, -arg.sigma) / arg.sigma;
    if (tail_error > std::max(1e3 * cfg.quad_tolerance, 1e-8))
        throw ConfigError("zeta_integral_repr: tolerance unreachable at cutoff " +
                          std::to_string(cutoff) + " (tail bound " +
                          std::to_string(tail_error) + ")");

    CompensatedComplexSum total;
    total.add(out.constant_part);
    total.add(out.sawtooth_part);
    total.add(out.tail_part);
    out.zeta.value = total.value();
    out.zeta.error_estimate = quad_error + tail_error;
    out.zeta.terms = intervals;
    out.zeta.method = ZetaMethod::integral;
    return out;
}

inline ZetaValue zeta_integral_repr(const ZetaArgument& arg, const EvalConfig& cfg = {},
                                    IntegralMode mode = IntegralMode::automatic)
{
    return zeta_integral_detail(arg, cfg, mode).zeta;
}

// ---------------------------------------------------------------------------
// Riemann-Siegel
// ---------------------------------------------------------------------------

// Riemann-Siegel theta, asymptotic form; absolute error < 1e-15 for t >= 100.
inline double rs_theta(double t)
{
    double it = 1.0 / t;
    double it2 = it * it;
    double series = it * (1.0 / 48.0 +
                          it2 * (7.0 / 5760.0 + it2 * (31.0 / 80640.0 + it2 * (381.0 / 1290240.0))));
    return 0.5 * t * std::log(t / two_pi) - 0.5 * t - pi / 8.0 + series;
}

// Same series in long double, for phase differences at large t.
inline long double rs_theta_extended(long double t)
{
    const long double two_pi_l = 6.283185307179586476925286766559L;
    const long double pi_l = 3.141592653589793238462643383280L;
    long double it = 1.0L / t;
    long double it2 = it * it;
    long double series =
        it * (1.0L / 48.0L +
              it2 * (7.0L / 5760.0L + it2 * (31.0L / 80640.0L + it2 * (381.0L / 1290240.0L))));
    return 0.5L * t * std::log(t / two_pi_l) - 0.5L * t - pi_l / 8.0L + series;
}

namespace detail {

inline constexpr int rs_contour_points = 64;
inline constexpr double rs_contour_radius = 0.5;

inline Complex rs_psi(Complex p)
{
    return std::cos(two_pi * (p * p - p - 1.0 / 16.0)) / std::cos(two_pi * p);
}

struct RsTwiddles
{
    std::array<Complex, rs_contour_points> nodes{};
    std::array<std::array<Complex, rs_contour_points>, 13> inverse{};

    RsTwiddles()
    {
        for (int j = 0; j < rs_contour_points; ++j) {
            double theta = two_pi * (j + 0.5) / rs_contour_points;
            nodes[static_cast<std::size_t>(j)] = rs_contour_radius * std::polar(1.0, theta);
            for (int k = 0; k <= 12; ++k)
                inverse[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                    std::polar(1.0, -k * theta);
        }
    }
};

inline const RsTwiddles& rs_twiddles()
{
    static const RsTwiddles tw;
    return tw;
}

// Psi^{(k)}(p), k = 0..12, from the Cauchy integral on a circle around p.
// Psi = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is entire, so the trapezoid
// rule on the circle converges geometrically; nodes are offset from the real
// axis to stay clear of the removable singularities.
inline std::array<double, 13> rs_psi_derivatives(double p)
{
    const auto& tw = rs_twiddles();
    std::array<Complex, rs_contour_points> values{};
    for (int j = 0; j < rs_contour_points; ++j)
        values[static_cast<std::size_t>(j)] = rs_psi(p + tw.nodes[static_cast<std::size_t>(j)]);
    std::array<double, 13> out{};
    double factorial = 1.0;
    double radius_pow = 1.0;
    for (int k = 0; k <= 12; ++k) {
        if (k > 0) {
            factorial *= k;
            radius_pow *= rs_contour_radius;
        }
        Complex acc{0.0, 0.0};
        for (int j = 0; j < rs_contour_points; ++j)
            acc += values[static_cast<std::size_t>(j)] *
                   tw.inverse[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(k)] =
            (acc.real() / rs_contour_points) * factorial / radius_pow;
    }
    return out;
}

} // namespace detail

// Correction coefficients C0..C4 at fractional part p.
inline std::array<double, 5> rs_coefficients(double p)
{
    auto d = detail::rs_psi_derivatives(p);
    const double pi2 = pi * pi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    const double pi8 = pi4 * pi4;
    return {
        d[0],
        -d[3] / (96.0 * pi2),
        d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4),
        -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6),
        d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) +
            11.0 * d[8] / (5898240.0 * pi6) + d[12] / (2038431744.0 * pi8),
    };
}

struct HardyZ
{
    double z = 0.0;
    double theta = 0.0;
    double theta_mod = 0.0; // theta reduced mod 2 pi in extended precision
    std::size_t terms = 0;
    double error_estimate = 0.0;
};

inline constexpr double rs_min_height = 200.0;

// Z(t) = 2 sum_{n<=m} n^{-1/2} cos(theta - t log n) + remainder series.
inline HardyZ hardy_z(double t)
{
    if (!(t >= rs_min_height))
        throw DomainError("hardy_z: Riemann-Siegel path needs t >= " +
                          std::to_string(rs_min_height));
    double a = std::sqrt(t / two_pi);
    auto m = static_cast<std::size_t>(std::floor(a));
    double p = a - static_cast<double>(m);
    double theta = rs_theta(t);

    // The phase theta - t log n is formed and reduced in long double: in
    // double, the rounding of log n alone costs t * 1e-16 radians.
    const long double lt = t;
    const long double ltheta = rs_theta_extended(lt);
    const long double two_pi_l = 6.283185307179586476925286766559L;
    CompensatedSum main;
    for (std::size_t n = 1; n <= m; ++n) {
        long double phase = std::fmod(ltheta - lt * std::log(static_cast<long double>(n)), two_pi_l);
        double dn = static_cast<double>(n);
        main.add(std::cos(static_cast<double>(phase)) / std::sqrt(dn));
    }
    auto c = rs_coefficients(p);
    double inv_a = 1.0 / a;
    double remainder = c[0] + inv_a * (c[1] + inv_a * (c[2] + inv_a * (c[3] + inv_a * c[4])));
    double sign = (m % 2 == 1) ? 1.0 : -1.0; // (-1)^{m-1}

    HardyZ out;
    out.z = 2.0 * main.value() + sign * remainder / std::sqrt(a);
    out.theta = theta;
    out.theta_mod = static_cast<double>(std::fmod(ltheta, two_pi_l));
    out.terms = m;
    // Truncation after C4 plus phase rounding in t log n.
    out.error_estimate = 1e-3 * std::pow(a, -5.5) +
                         1.1e-19 * t * std::log(a + 1.0) * 2.0 * std::sqrt(static_cast<double>(m)) +
                         2.2e-16 * 2.0 * std::sqrt(static_cast<double>(m));
    return out;
}

inline ZetaValue zeta_rs(const ZetaArgument& arg)
{
    if (arg.sigma != 0.5)
        throw DomainError("zeta_rs: Riemann-Siegel path is implemented for sigma = 1/2 only");
    double t = std::abs(arg.t);
    HardyZ hz = hardy_z(t);
    // zeta(1/2 + it) = Z(t) e^{-i theta(t)}; conjugate for negative t.
    Complex value = hz.z * std::polar(1.0, -hz.theta_mod);
    if (arg.t < 0.0)
        value = std::conj(value);
    return {value, hz.error_estimate, hz.terms, ZetaMethod::riemann_siegel};
}

inline ZetaValue zeta(const ZetaArgument& arg, const EvalConfig& cfg = {},
                      ZetaMethod method = ZetaMethod::automatic)
{
    switch (method) {
    case ZetaMethod::euler_maclaurin: return zeta_em(arg, cfg);
    case ZetaMethod::integral: return zeta_integral_repr(arg, cfg);
    case ZetaMethod::riemann_siegel: return zeta_rs(arg);
    case ZetaMethod::automatic:
        if (arg.sigma == 0.5 && std::abs(arg.t) >= std::max(cfg.rs_threshold, rs_min_height))
            return zeta_rs(arg);
        return zeta_em(arg, cfg);
    }
    return zeta_em(arg, cfg);
}

// Convenience for the critical line.
inline Complex zeta_critical(double t, const EvalConfig& cfg = {})
{
    return zeta(ZetaArgument(0.5, t), cfg).value;
}

// ---------------------------------------------------------------------------
// First moment E zeta(1/2 + i X_t)
// ---------------------------------------------------------------------------

struct FirstMoment
{
    Complex value;      // 1 - I(t)
    Complex deviation;  // -I(t), kept separately: it is far below 1 ulp of 1
    double error = 0.0; // quadrature error estimate on I(t)
};

namespace detail {

// e^{-y/2} (1 - i y)^{-tau} at complex y; the base has positive real part on
// every contour used below.
inline Complex first_moment_integrand(Complex y, double tau)
{
    Complex base = Complex{1.0, 0.0} - Complex{0.0, 1.0} * y;
    return std::exp(-0.5 * y) * stable_pow(base, -tau);
}

inline void check_first_moment_t(double t)
{
    if (!(t >= 10.0))
        throw DomainError("expected_zeta: requires t >= 10");
}

} // namespace detail

// I(tau) = int_0^2 u^{-1/2} (1 + i log u)^{-tau} du on the real line, after
// u = e^{-y}: int_{-log 2}^{inf} e^{-y/2} (1 - i y)^{-tau} dy. Absolute
// accuracy only; the value is exponentially small for large tau.
inline QuadResult<Complex> first_moment_integral_direct(double tau, double abs_tol = 1e-15)
{
    const double y0 = -std::log(2.0);
    double width = 1.0 / std::sqrt(tau);
    std::vector<double> pts = {y0};
    for (double y = -8.0 * width; y <= 8.0 * width + 1e-15; y += width)
        if (y > y0)
            pts.push_back(y);
    for (double extra : {1.0, 4.0, 16.0, 90.0})
        pts.push_back(extra);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    QuadOptions opts;
    opts.abs_tol = abs_tol;
    opts.max_intervals = 50000;
    auto f = [tau](double y) {
        return std::exp(-0.5 * y) * pow_one_plus_iw(-y, -tau);
    };
    return integrate_breakpoints(f, std::span<const double>(pts), opts);
}

// Same integral on a contour pushed into the upper half y-plane, where
// (1 - i y)^{-tau} has no singularity: up the vertical line Re y = -log 2,
// then along Im y = H to the right. No cancellation occurs on this path, so
// the result carries relative (not absolute) accuracy.
inline QuadResult<Complex> first_moment_integral_contour(double tau, double rel_tol = 1e-13)
{
    const double y0 = -std::log(2.0);
    const double height = 1.0;
    QuadOptions opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = rel_tol;
    opts.max_intervals = 20000;

    auto vertical = [&](double h) {
        // y = y0 + i h, dy = i dh
        return Complex{0.0, 1.0} * detail::first_moment_integrand(Complex{y0, h}, tau);
    };
    double vpts[] = {0.0, 0.05, 0.2, 0.5, height};
    auto v = integrate_breakpoints(vertical, std::span<const double>(vpts), opts);

    auto horizontal = [&](double x) {
        return detail::first_moment_integrand(Complex{x, height}, tau);
    };
    // The horizontal leg is smaller than the vertical one; its tolerance is
    // set relative to the vertical magnitude.
    QuadOptions hopts = opts;
    hopts.rel_tol = 0.0;
    hopts.abs_tol = rel_tol * std::abs(v.value) * 0.1;
    double hpts[] = {y0, 0.0, 1.0, 4.0, 16.0, 64.0, 200.0};
    auto h = integrate_breakpoints(horizontal, std::span<const double>(hpts), hopts);

    QuadResult<Complex> out;
    // The horizontal leg runs left to right, the original path also runs left
    // to right, so the closed-contour identity is I = vertical + horizontal.
    out.value = v.value + h.value;
    out.error = v.error + h.error;
    out.evaluations = v.evaluations + h.evaluations;
    return out;
}

// E zeta(1/2 + i X_t) up to an exponentially small error:
// 1 - int_0^2 u^{-1/2} (1 + i log u)^{-t} du.
inline FirstMoment expected_zeta(double t)
{
    detail::check_first_moment_t(t);
    auto r = first_moment_integral_contour(t);
    return {Complex{1.0, 0.0} - r.value, -r.value, r.error};
}

// The N-fold integration-by-parts form. With boundary terms the recursion
//   I(tau) = i sqrt2 (1 + i log 2)^{1-tau} / (tau-1) - i/(2(tau-1)) I(tau-1)
// is exact; without them only the leading product survives.
inline Complex first_moment_ibp(double t, int folds, bool include_boundary)
{
    detail::check_first_moment_t(t);
    if (folds < 0 || static_cast<double>(folds) >= t)
        throw DomainError("first_moment_ibp: need 0 <= N < t");
    const Complex i{0.0, 1.0};
    const Complex log2_base{1.0, std::log(2.0)};
    Complex innermost = first_moment_integral_direct(t - folds).value;
    // Unroll I(t) = b(t) + c(t) I(t-1) from the inside out.
    Complex acc = innermost;
    for (int k = folds; k >= 1; --k) {
        double tau = t - k + 1; // level whose lower neighbour is acc
        Complex c = -i / (2.0 * (tau - 1.0));
        Complex b = include_boundary
                        ? i * std::sqrt(2.0) * stable_pow(log2_base, 1.0 - tau) / (tau - 1.0)
                        : Complex{0.0, 0.0};
        acc = b + c * acc;
    }
    return acc;
}

// int_2^inf {u} d/du (u^{-1/2} (1 + i log u)^{-t}) du, summed as
// sum_{n>=2} [F(n+1) - int_n^{n+1} F], F(u) = u^{-1/2} (1 + i log u)^{-t}.
inline Complex first_moment_tail(double t)
{
    detail::check_first_moment_t(t);
    auto F = [t](double u) { return pow_one_plus_iw(std::log(u), -t) / std::sqrt(u); };
    CompensatedComplexSum acc;
    double largest = 0.0;
    QuadOptions opts;
    opts.abs_tol = 1e-300;
    opts.rel_tol = 1e-12;
    for (int n = 2; n < 1000000; ++n) {
        double lo = n;
        Complex end = F(lo + 1.0);
        auto r = integrate(F, lo, lo + 1.0, opts);
        acc.add(end - r.value);
        largest = std::max(largest, std::abs(end));
        if (std::abs(end) <= 1e-25 * largest || std::abs(end) < 1e-300)
            break;
    }
    return acc.value();
}

// Exact E zeta - expected_zeta: F(2) plus the tail above.
inline Complex first_moment_remainder(double t)
{
    detail::check_first_moment_t(t);
    Complex f2 = pow_one_plus_iw(std::log(2.0), -t) / std::sqrt(2.0);
    return f2 + first_moment_tail(t);
}

} // namespace zs
