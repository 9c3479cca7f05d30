#pragma once

// Numerical checks of the intermediate objects in the second-moment argument:
// the split E|zeta - 1|^2 = A1 - 2 Re A2 + A3, the near-diagonal region R(t),
// the lattice sums F~ and G~, the diagonal identity and the band sums S5,
// S1, S2.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "complex_core.hpp"
#include "errors.hpp"
#include "gamma_process.hpp"
#include "moments.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "summation.hpp"

namespace zs {

struct RegionSpec
{
    double t = 0.0;
    double u_max = 0.0;          // t^4 unless the caller truncates
    double band_halfwidth = 0.0; // 2 sqrt(log t / t)

    static RegionSpec for_t(double t)
    {
        if (!(t > 1.0) || !std::isfinite(t))
            throw DomainError("RegionSpec: requires t > 1");
        return {t, t * t * t * t, 2.0 * std::sqrt(std::log(t) / t)};
    }

    static RegionSpec truncated(double t, double u_max)
    {
        RegionSpec r = for_t(t);
        if (!(u_max > 1.0))
            throw DomainError("RegionSpec: u_max must exceed 1");
        r.u_max = std::min(r.u_max, u_max);
        return r;
    }

    [[nodiscard]] bool contains(double u, double v) const
    {
        return u > 1.0 && u < u_max && v > 1.0 && v < u_max &&
               std::abs(std::log(u / v)) < band_halfwidth;
    }

    // Lattice cell (m, n), i.e. [m, m+1] x [n, n+1], tested through the
    // right endpoints that F~ and G~ use.
    [[nodiscard]] bool contains_cell(std::int64_t m, std::int64_t n) const
    {
        return m >= 1 && n >= 1 && static_cast<double>(m) < u_max &&
               static_cast<double>(n) < u_max &&
               std::abs(std::log((m + 1.0) / (n + 1.0))) < band_halfwidth;
    }
};

// R+(n, t): 0 < log((m+1)/(n+1)) < 2 sqrt(log t / t).
inline bool in_upper_slice(std::int64_t m, std::int64_t n, double t)
{
    double l = std::log((m + 1.0) / (n + 1.0));
    return l > 0.0 && l < 2.0 * std::sqrt(std::log(t) / t);
}

// R+^delta(n, t): 1 < (m+1)/(n+delta) < 1 + 2 sqrt(log t / t).
inline bool in_upper_slice_delta(std::int64_t m, std::int64_t n, double t, double delta)
{
    double r = (m + 1.0) / (n + delta);
    return r > 1.0 && r < 1.0 + 2.0 * std::sqrt(std::log(t) / t);
}

// ---------------------------------------------------------------------------
// A1, A2, A3

enum class AComponent { a1, a2_direct, a2_closed, a3 };

inline AComponent parse_a_component(std::string_view name)
{
    if (name == "1")
        return AComponent::a1;
    if (name == "2-direct")
        return AComponent::a2_direct;
    if (name == "2-closed")
        return AComponent::a2_closed;
    if (name == "3")
        return AComponent::a3;
    throw ConfigError("unknown A component '" + std::string(name) + "'");
}

struct AValue
{
    Complex value;
    double error = 0.0; // quadrature estimate plus truncation bounds
};

namespace detail {

inline void check_a_request(double t, double tol, bool two_dimensional)
{
    if (!(tol > 0.0))
        throw DomainError("compute_A: tol must be positive");
    if (!(t >= 10.0) || (two_dimensional && t > 1e3) || !std::isfinite(t))
        throw DomainError(two_dimensional ? "compute_A: requires 10 <= t <= 1e3"
                                          : "compute_A: requires t >= 10");
}

// Smallest integer V >= 2 with 2 V^{-1/2} scale (1 + log^2 V)^{-t/2} < target:
// the tail of any integrand bounded by scale v^{-3/2} |1 + i log v|^{-t}.
inline double kernel_tail_cutoff(double t, double scale, double target)
{
    double v = 2.0;
    while (2.0 * scale / std::sqrt(v) * std::pow(1.0 + std::log(v) * std::log(v), -0.5 * t) >=
           target) {
        v = std::ceil(v * 1.25);
        if (v > 1e8)
            throw DomainError("compute_A: tail cutoff beyond 1e8");
    }
    return v;
}

inline std::vector<double> integer_points(double a, double b)
{
    std::vector<double> pts{a};
    for (double j = std::floor(a) + 1.0; j < b; j += 1.0)
        pts.push_back(j);
    pts.push_back(b);
    return pts;
}

inline double frac(double x) { return x - std::floor(x); }

} // namespace detail

// A1 as a 2-D iterated quadrature over (0,1)^2 in the coordinates u = e^{-a},
// v = e^{-b}: integrand e^{-(a+b)/2} (1 + i(b - a))^{-t}.
inline AValue compute_A1(double t, double tol)
{
    detail::check_a_request(t, tol, true);
    const double cut = 2.0 * std::log(4.0 / tol) + 2.0; // e^{-cut/2} mass beyond
    double outer_err = 0.0;
    auto inner = [&](double b) {
        double pts[3] = {0.0, b, cut};
        QuadOptions o{.abs_tol = 0.25 * tol / cut};
        auto r = integrate_breakpoints(
            [&](double a) { return std::exp(-0.5 * a) * kernel_log(b - a, t); },
            std::span<const double>(pts, 3), o);
        outer_err = std::max(outer_err, r.error);
        return std::exp(-0.5 * b) * r.value;
    };
    auto r = integrate(inner, 0.0, cut, {.abs_tol = 0.5 * tol});
    return {r.value, r.error + outer_err * 2.0 + 4.0 * std::exp(-0.5 * cut)};
}

// Reduced form 2 Re int_0^inf e^{-w/2} (1 + i w)^{-t} dw of the same integral.
inline double A1_reduced(double t, double tol = 1e-13)
{
    const double cut = 2.0 * std::log(4.0 / tol) + 2.0;
    auto r = integrate([&](double w) { return std::exp(-0.5 * w) * kernel_log(w, t).real(); },
                       0.0, cut, {.abs_tol = tol});
    return 2.0 * r.value;
}

// A2 = -int_1^inf {v} v^{-3/2} (1 - i log v)^{-t} dv, unit interval by unit
// interval.
inline AValue compute_A2_closed(double t, double tol)
{
    detail::check_a_request(t, tol, false);
    double cutoff = detail::kernel_tail_cutoff(t, 1.0, 0.1 * tol);
    auto pts = detail::integer_points(1.0, cutoff);
    auto r = integrate_breakpoints(
        [&](double v) {
            return -detail::frac(v) * std::pow(v, -1.5) * kernel_log(-std::log(v), t);
        },
        pts, {.abs_tol = 0.5 * tol, .max_intervals = pts.size() * 64 + 1000});
    return {r.value, r.error + 0.1 * tol};
}

// A2 from its definition int_1^inf {v} h'(v) dv with
// h(v) = v^{-1/2} int_0^1 u^{-1/2} (1 + i log(u/v))^{-t} du, differentiated
// under the integral sign. Inner integral in u = e^{-a}.
inline AValue compute_A2_direct(double t, double tol)
{
    detail::check_a_request(t, tol, false);
    double cutoff = detail::kernel_tail_cutoff(t, 2.0 * t + 1.0, 0.1 * tol);
    const double a_cut = 2.0 * std::log(8.0 * (t + 1.0) / tol) + 2.0;
    double inner_err = 0.0;
    auto h_prime = [&](double v) {
        double lv = std::log(v);
        auto r = integrate(
            [&](double a) {
                double w = -a - lv;
                Complex k_t = kernel_log(w, t);
                Complex k_t1 = k_t / Complex(1.0, w);
                return std::exp(-0.5 * a) * (-0.5 * k_t + Complex(0.0, t) * k_t1);
            },
            0.0, a_cut, {.abs_tol = 0.1 * tol / cutoff});
        inner_err = std::max(inner_err, r.error);
        return std::pow(v, -1.5) * r.value;
    };
    auto pts = detail::integer_points(1.0, cutoff);
    auto r = integrate_breakpoints([&](double v) { return detail::frac(v) * h_prime(v); }, pts,
                                   {.abs_tol = 0.5 * tol,
                                    .max_intervals = pts.size() * 64 + 1000});
    return {r.value, r.error + 2.0 * inner_err + 0.1 * tol};
}

struct A3Options
{
    // Lattice rows beyond this multiple of t use the averaged sawtooth {u}{v} -> 1/4;
    // the oscillating part has no stationary point there.
    double exact_rows_factor = 4.0;
    // Add the lower-order piece (1/4) (1 + i w)^{-t} of the exact integrand.
    bool include_lower_order = false;
};

// t(t+1) iint_R {v} v^{-3/2} {u} u^{-3/2} (1 + i log(u/v))^{-t-2} du dv.
inline AValue compute_A3(double t, double tol, const A3Options& opts = {})
{
    detail::check_a_request(t, tol, true);
    const RegionSpec region = RegionSpec::for_t(t);
    const double h = region.band_halfwidth;
    const double eh = std::exp(h);
    const double v_cut = std::min(region.u_max, std::ceil(std::max(64.0, opts.exact_rows_factor * t)));
    const double scale = t * (t + 1.0);

    auto weight = [&](double w) {
        Complex k = scale * kernel_log(w, t + 2.0);
        if (opts.include_lower_order)
            k += 0.25 * kernel_log(w, t);
        return k;
    };

    double inner_err = 0.0;
    const double inner_tol = 0.1 * tol / v_cut;
    auto inner = [&](double v) {
        double lo = std::max(1.0, v / eh);
        double hi = std::min(region.u_max, v * eh);
        auto pts = detail::integer_points(lo, hi);
        double lv = std::log(v);
        auto r = integrate_breakpoints(
            [&](double u) {
                return detail::frac(u) * std::pow(u, -1.5) * weight(std::log(u) - lv);
            },
            pts, {.abs_tol = inner_tol, .rel_tol = 1e-12, .max_intervals = pts.size() * 64 + 1000});
        inner_err = std::max(inner_err, r.error);
        return detail::frac(v) * std::pow(v, -1.5) * r.value;
    };

    // Outer breakpoints: integers and the points where the inner limits pass an
    // integer, so every outer panel sees a smooth integrand.
    std::vector<double> pts = detail::integer_points(1.0, v_cut);
    for (double j = 1.0; j <= v_cut * eh + 1.0; j += 1.0) {
        for (double p : {j * eh, j / eh})
            if (p > 1.0 && p < v_cut)
                pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto r = integrate_breakpoints(inner, pts,
                                   {.abs_tol = 0.5 * tol, .max_intervals = pts.size() * 64 + 1000});

    // Rows beyond v_cut with {u}{v} replaced by its mean 1/4.
    Complex tail{0.0, 0.0};
    if (v_cut < region.u_max) {
        auto band = integrate([&](double w) { return std::exp(-0.5 * w) * weight(w); }, -h, h,
                              {.abs_tol = 1e-13 * scale, .rel_tol = 1e-13});
        tail = 0.25 * (1.0 / v_cut - 1.0 / region.u_max) * band.value;
    }
    // Truncation to R(t) is charged the t^{-2} of the reduction.
    return {r.value + tail,
            r.error + 2.0 * inner_err * (v_cut - 1.0) + std::abs(tail) + 1.0 / (t * t)};
}

inline AValue compute_A(double t, AComponent which, double tol)
{
    switch (which) {
    case AComponent::a1:
        return compute_A1(t, tol);
    case AComponent::a2_direct:
        return compute_A2_direct(t, tol);
    case AComponent::a2_closed:
        return compute_A2_closed(t, tol);
    case AComponent::a3:
        return compute_A3(t, tol);
    }
    throw ConfigError("compute_A: bad component");
}

// ---------------------------------------------------------------------------
// Combined report and the Monte Carlo oracle E|zeta(1/2 + i X_t) - 1|^2

struct ShiftedMoment
{
    double mean = 0.0;
    double se = 0.0;
    std::size_t n_samples = 0;
};

inline ShiftedMoment mc_shifted_second_moment(double t, std::size_t n_samples, std::uint64_t seed,
                                             const MomentConfig& cfg = {})
{
    check_moment_request(t, n_samples);
    auto batch = sample_batch(GammaParams(t), n_samples, seed, cfg.threads);
    auto values = sample_zeta_values(batch.values, cfg);
    const double n = static_cast<double>(n_samples);
    CompensatedSum sum;
    for (Complex z : values)
        sum.add(std::norm(z - 1.0));
    double mean = sum.value() / n;
    CompensatedSum var;
    for (Complex z : values) {
        double d = std::norm(z - 1.0) - mean;
        var.add(d * d);
    }
    return {mean, std::sqrt(var.value() / (n - 1.0) / n), n_samples};
}

struct DecompositionReport
{
    double t = 0.0;
    Complex A1;
    Complex A2; // closed form
    Complex A2_direct;
    Complex A3;
    double combined = 0.0;      // A1 - 2 Re A2 + A3
    double combined_imag = 0.0; // imaginary residue; zero up to quadrature error
    double mc_reference = 0.0;
    double mc_se = 0.0;
    std::size_t mc_samples = 0;
    double quad_tol = 0.0;
    double quad_budget = 0.0; // summed error estimates of the four integrals
};

inline DecompositionReport decompose(double t, double tol, std::size_t mc_samples,
                                     std::uint64_t seed, const MomentConfig& cfg = {})
{
    DecompositionReport rep;
    rep.t = t;
    rep.quad_tol = tol;
    auto a1 = compute_A1(t, tol);
    auto a2 = compute_A2_closed(t, tol);
    auto a2d = compute_A2_direct(t, tol);
    auto a3 = compute_A3(t, tol);
    rep.A1 = a1.value;
    rep.A2 = a2.value;
    rep.A2_direct = a2d.value;
    rep.A3 = a3.value;
    Complex combined = a1.value - 2.0 * a2.value.real() + a3.value;
    rep.combined = combined.real();
    rep.combined_imag = combined.imag();
    rep.quad_budget = a1.error + 2.0 * a2.error + a3.error;
    auto mc = mc_shifted_second_moment(t, mc_samples, seed, cfg);
    rep.mc_reference = mc.mean;
    rep.mc_se = mc.se;
    rep.mc_samples = mc.n_samples;
    return rep;
}

// ---------------------------------------------------------------------------
// Lattice sums F~ and G~

enum class LatticeSum { F, G };

// F~_{m,n} = ((m+1)(n+1))^{-1/2} exp(-t (i L + L^2 / 2)), L = log((m+1)/(n+1)).
inline Complex F_tilde(std::int64_t m, std::int64_t n, double t)
{
    double a = m + 1.0;
    double b = n + 1.0;
    double amp = 1.0 / std::sqrt(a * b);
    if (m == n)
        return {amp, 0.0};
    double l = std::log(a / b);
    return std::polar(amp * std::exp(-0.5 * t * l * l), -t * l);
}

// G~_{m,n} = (m+1)^{-1/2} int_n^{n+1} v^{-1/2} exp(-t (i L + L^2 / 2)) dv,
// L = log((m+1)/v).
inline Complex G_tilde(std::int64_t m, std::int64_t n, double t, double tol = 1e-10)
{
    double a = m + 1.0;
    auto r = integrate(
        [&](double v) {
            double l = std::log(a / v);
            return std::polar(std::exp(-0.5 * t * l * l) / std::sqrt(v), -t * l);
        },
        static_cast<double>(n), n + 1.0, {.abs_tol = tol, .rel_tol = 1e-13});
    return r.value / std::sqrt(a);
}

namespace detail {

// m with |log((m+1)/(n+1))| < h and 1 <= m < m_max.
inline std::pair<std::int64_t, std::int64_t> band_row(std::int64_t n, double h, double m_max)
{
    double c = n + 1.0;
    auto lo = static_cast<std::int64_t>(std::floor(c * std::exp(-h))) - 2;
    auto hi = static_cast<std::int64_t>(std::ceil(c * std::exp(h))) + 1;
    lo = std::max<std::int64_t>(lo, 1);
    auto inside = [&](std::int64_t m) {
        return m >= 1 && static_cast<double>(m) < m_max && std::abs(std::log((m + 1.0) / c)) < h;
    };
    while (lo <= hi && !inside(lo))
        ++lo;
    while (hi >= lo && !inside(hi))
        --hi;
    return {lo, hi};
}

inline constexpr std::size_t lattice_block_rows = 64;

} // namespace detail

// Sum of F~ or G~ over rows n in [n_lo, n_hi] and every m with
// |log((m+1)/(n+1))| < h, m < m_max. Rows are grouped in fixed blocks whose
// partial sums are combined in order, so the thread count does not matter.
inline Complex lattice_rows_sum(double t, double h, double m_max, std::int64_t n_lo,
                                std::int64_t n_hi, LatticeSum which, unsigned threads = 0)
{
    if (n_hi < n_lo)
        return {0.0, 0.0};
    const auto rows = static_cast<std::size_t>(n_hi - n_lo + 1);
    const std::size_t blocks = (rows + detail::lattice_block_rows - 1) / detail::lattice_block_rows;
    std::vector<Complex> partial(blocks);
    parallel_for(blocks, threads, [&](std::size_t b) {
        CompensatedComplexSum acc;
        std::int64_t first = n_lo + static_cast<std::int64_t>(b * detail::lattice_block_rows);
        std::int64_t last = std::min<std::int64_t>(
            n_hi, first + static_cast<std::int64_t>(detail::lattice_block_rows) - 1);
        for (std::int64_t n = first; n <= last; ++n) {
            auto [lo, hi] = detail::band_row(n, h, m_max);
            for (std::int64_t m = lo; m <= hi; ++m)
                acc.add(which == LatticeSum::F ? F_tilde(m, n, t) : G_tilde(m, n, t));
        }
        partial[b] = acc.value();
    });
    CompensatedComplexSum total;
    for (Complex z : partial)
        total.add(z);
    return total.value();
}

inline double lattice_pair_estimate(double h, double n_lo, double n_hi)
{
    // sum over rows of (n+1)(e^h - e^{-h})
    return std::sinh(h) * ((n_hi + 1.0) * (n_hi + 2.0) - n_lo * (n_lo + 1.0));
}

// Full sum over the lattice cells of the region.
inline Complex sum_F_G(double t, const RegionSpec& region, LatticeSum which,
                       double max_pairs = 5e6, unsigned threads = 0)
{
    if (t > 1e4)
        throw DomainError("sum_F_G: requires t <= 1e4");
    auto n_hi = static_cast<std::int64_t>(std::ceil(region.u_max)) - 1;
    if (lattice_pair_estimate(region.band_halfwidth, 1.0, static_cast<double>(n_hi)) > max_pairs)
        throw DomainError("sum_F_G: region too large for enumeration; truncate u_max");
    return lattice_rows_sum(t, region.band_halfwidth, region.u_max, 1, n_hi, which, threads);
}

struct WindowSum
{
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    Complex F;
    Complex G;
};

struct TailWindows
{
    double t = 0.0;
    std::vector<WindowSum> windows;
    Complex F_total;
    Complex G_total;
    double row_cap = 0.0; // largest admissible row start
    [[nodiscard]] double deviation() const { return std::abs(F_total - G_total); }
};

struct TailWindowOptions
{
    int windows = 10;
    int rows_per_window = 8;
    // Rows with more lattice pairs than this are out of reach; the geometric
    // grid then ends below t^4.
    double max_row_pairs = 1e4;
};

// Sampled rows n in (t, t^4) for the off-diagonal tail: windows of consecutive
// rows on a geometric grid.
inline TailWindows tail_window_sums(double t, const TailWindowOptions& opts = {},
                                    unsigned threads = 0)
{
    if (!(t >= 3.0))
        throw DomainError("tail_window_sums: requires t >= 3");
    if (opts.windows < 1 || opts.rows_per_window < 1)
        throw DomainError("tail_window_sums: need at least one window and one row");
    const RegionSpec region = RegionSpec::for_t(t);
    const double h = region.band_halfwidth;
    TailWindows out;
    out.t = t;
    out.row_cap = std::min(region.u_max - opts.rows_per_window - 1.0,
                           opts.max_row_pairs / (2.0 * std::sinh(h)));
    if (!(out.row_cap > t + 1.0))
        throw DomainError("tail_window_sums: row cap below t");
    CompensatedComplexSum F, G;
    for (int j = 0; j < opts.windows; ++j) {
        double frac_pos = (j + 0.5) / opts.windows;
        double start = t * std::pow(out.row_cap / t, frac_pos);
        WindowSum w;
        w.n_lo = static_cast<std::int64_t>(std::floor(start)) + 1;
        w.n_hi = w.n_lo + opts.rows_per_window - 1;
        w.F = lattice_rows_sum(t, h, region.u_max, w.n_lo, w.n_hi, LatticeSum::F, threads);
        w.G = lattice_rows_sum(t, h, region.u_max, w.n_lo, w.n_hi, LatticeSum::G, threads);
        F.add(w.F);
        G.add(w.G);
        out.windows.push_back(w);
    }
    out.F_total = F.value();
    out.G_total = G.value();
    return out;
}

// ---------------------------------------------------------------------------
// Diagonal n = m, 1 <= n <= t

inline Complex diagonal_F_sum(double t)
{
    if (!(t >= 1.0))
        throw DomainError("diagonal_F_sum: requires t >= 1");
    auto n_max = static_cast<std::int64_t>(std::floor(t));
    CompensatedComplexSum acc;
    for (std::int64_t n = 1; n <= n_max; ++n)
        acc.add(F_tilde(n, n, t));
    return acc.value();
}

// sum_{n <= t} int_1^{1+1/n} v^{-3/2} exp(-t (i log v + log^2 v / 2)) dv.
// With pieces P_j over [1 + 1/(j+1), 1 + 1/j] (P_N from 1), the sum is
// sum_j j P_j, so each point of the integrand is visited once.
inline Complex diagonal_G_sum(double t, unsigned threads = 0)
{
    if (!(t >= 1.0) || t > 1e6)
        throw DomainError("diagonal_G_sum: requires 1 <= t <= 1e6");
    const auto n_max = static_cast<std::int64_t>(std::floor(t));
    const auto count = static_cast<std::size_t>(n_max);
    std::vector<Complex> weighted(count);
    auto integrand = [t](double v) {
        double l = std::log(v);
        return std::polar(std::exp(-0.5 * t * l * l) * std::pow(v, -1.5), -t * l);
    };
    parallel_for(count, threads, [&](std::size_t idx) {
        std::int64_t j = static_cast<std::int64_t>(idx) + 1;
        double hi = 1.0 + 1.0 / static_cast<double>(j);
        double lo = j == n_max ? 1.0 : 1.0 + 1.0 / static_cast<double>(j + 1);
        double w = static_cast<double>(j);
        auto r = integrate(integrand, lo, hi,
                           {.abs_tol = 1e-11 / (w * static_cast<double>(n_max)), .rel_tol = 1e-12});
        weighted[idx] = w * r.value;
    });
    CompensatedComplexSum acc;
    for (Complex z : weighted)
        acc.add(z);
    return acc.value();
}

// sum_{1 <= n <= t} 1/(n+1) = H_{floor(t)+1} - 1 summed smallest term first.
inline double harmonic_diagonal(double t)
{
    auto n_max = static_cast<std::int64_t>(std::floor(t));
    CompensatedSum acc;
    for (std::int64_t n = n_max; n >= 1; --n)
        acc.add(1.0 / static_cast<double>(n + 1));
    return acc.value();
}

// ---------------------------------------------------------------------------
// Band sums over k - delta, n + delta

enum class DampingVariant { half_square, as_printed };

inline DampingVariant parse_damping_variant(std::string_view name)
{
    if (name == "half-square")
        return DampingVariant::half_square;
    if (name == "as-printed")
        return DampingVariant::as_printed;
    throw ConfigError("unknown damping variant '" + std::string(name) +
                      "' (expected half-square or as-printed)");
}

inline const char* to_string(DampingVariant v)
{
    return v == DampingVariant::half_square ? "half-square" : "as-printed";
}

struct BandSumReport
{
    double t = 0.0;
    double delta = 1.0;
    DampingVariant variant = DampingVariant::half_square;
    Complex S5; // rows (1/2) sqrt(t / log t) < n + delta < sqrt(t log t)
    Complex S1; // k - delta <= 2 log t, sqrt(t log t) < n + delta < t
    Complex S2; // 2 log t < k - delta, (1/2) sqrt(t / log t)(k - delta) < n + delta < t
    Complex S6; // the unsplit double sum over sqrt(t log t) <= n + delta < t
};

namespace detail {

struct BandAccumulator
{
    // [variant][S5, S1, S2, S6]
    CompensatedComplexSum sums[2][4];
};

// Adds the k-terms of row n with 0 < k - delta <= k_bound. The summand is
// (n+d)^{-1/2} (n+k)^{-1/2} q(k) with
// q(k) = exp(-(t/2) x^2 - i t (x - x^2/2)), x = (k-d)/(n+d),
// (as-printed damping multiplies by another exp(-(t/2) x^2) = |q(k)|).
// q is advanced by its second-order recurrence and re-anchored every 32 steps.
template <class Sink>
void band_row_terms(double t, double delta, std::int64_t n, double k_bound, Sink&& sink)
{
    const double D = n + delta;
    const double inv_d = 1.0 / D;
    const double ampl_row = 1.0 / std::sqrt(D);
    auto k_hi = static_cast<std::int64_t>(std::floor(k_bound + delta));
    while (k_hi >= 1 && !(k_hi - delta <= k_bound))
        --k_hi;
    const std::int64_t k_lo = delta < 1.0 ? 1 : 2; // smallest k with k - delta > 0
    if (k_hi < k_lo)
        return;

    const Complex alpha(-0.5 * t * inv_d * inv_d, 0.5 * t * inv_d * inv_d);
    const Complex beta(0.0, -t * inv_d);
    const Complex rho = std::exp(2.0 * alpha);
    const double rho_d = std::exp(-t * inv_d * inv_d);

    Complex q, r;
    double d = 0.0, rd = 0.0;
    auto anchor = [&](std::int64_t k) {
        double y = k - delta;
        q = std::exp(alpha * y * y + beta * y);
        r = std::exp(alpha * (2.0 * y + 1.0) + beta);
        d = std::exp(-0.5 * t * y * y * inv_d * inv_d);
        rd = std::exp(-0.5 * t * (2.0 * y + 1.0) * inv_d * inv_d);
    };
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        if ((k - k_lo) % 32 == 0)
            anchor(k);
        double amp = ampl_row / std::sqrt(static_cast<double>(n + k));
        Complex half = amp * q;
        sink(k, half, half * d);
        q *= r;
        r *= rho;
        d *= rd;
        rd *= rho_d;
    }
}

} // namespace detail

struct BandSumOptions
{
    unsigned threads = 0;
    std::int64_t block_rows = 4096; // fixed partition; results do not depend on threads
};

// Both damping variants from one pass.
inline std::array<BandSumReport, 2> band_sums_both(double t, double delta,
                                                   const BandSumOptions& opts = {})
{
    if (!(t >= 16.0) || t > 1e6 || !std::isfinite(t))
        throw DomainError("band_sums: requires 16 <= t <= 1e6");
    if (!(delta > 0.0 && delta <= 1.0))
        throw DomainError("band_sums: delta must lie in (0, 1]");

    const double L = std::log(t);
    const double sq = std::sqrt(L / t);
    const double s5_lo = 0.5 * std::sqrt(t / L);
    const double s5_hi = std::sqrt(t * L);
    const double k_split = 2.0 * L;

    // Row range: n + delta in (s5_lo, t), n >= 0.
    auto n_first = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(s5_lo - delta)));
    while (!(n_first + delta > s5_lo))
        ++n_first;
    auto n_last = static_cast<std::int64_t>(std::ceil(t - delta));
    while (!(n_last + delta < t))
        --n_last;

    const std::int64_t rows = n_last - n_first + 1;
    const std::size_t blocks =
        rows > 0 ? static_cast<std::size_t>((rows + opts.block_rows - 1) / opts.block_rows) : 0;
    std::vector<detail::BandAccumulator> partial(blocks);

    parallel_for(blocks, opts.threads, [&](std::size_t b) {
        auto& acc = partial[b];
        std::int64_t first = n_first + static_cast<std::int64_t>(b) * opts.block_rows;
        std::int64_t last = std::min(n_last, first + opts.block_rows - 1);
        for (std::int64_t n = first; n <= last; ++n) {
            const double D = n + delta;
            const double k_bound = 2.0 * D * sq;
            // Row terms go into plain accumulators (at most ~2 sqrt(t log t)
            // terms, all of size <= 1/n) and each row total is compensated.
            Complex row_hs[3] = {}, row_ap[3] = {};
            if (D < s5_hi) {
                detail::band_row_terms(t, delta, n, k_bound, [&](std::int64_t, Complex hs, Complex ap) {
                    row_hs[0] += hs;
                    row_ap[0] += ap;
                });
                acc.sums[0][0].add(row_hs[0]);
                acc.sums[1][0].add(row_ap[0]);
                continue;
            }
            const bool row_s1 = D > s5_hi;
            // Segment 0: S1 terms, 1: S2 terms, 2: boundary terms counted only in S6.
            detail::band_row_terms(t, delta, n, k_bound, [&](std::int64_t k, Complex hs, Complex ap) {
                double y = k - delta;
                int seg = 2;
                if (y <= k_split) {
                    if (row_s1)
                        seg = 0;
                } else if (y < 2.0 * s5_hi && s5_lo * y < D) {
                    seg = 1;
                }
                row_hs[seg] += hs;
                row_ap[seg] += ap;
            });
            acc.sums[0][1].add(row_hs[0]);
            acc.sums[1][1].add(row_ap[0]);
            acc.sums[0][2].add(row_hs[1]);
            acc.sums[1][2].add(row_ap[1]);
            acc.sums[0][3].add(row_hs[0] + row_hs[1] + row_hs[2]);
            acc.sums[1][3].add(row_ap[0] + row_ap[1] + row_ap[2]);
        }
    });

    std::array<BandSumReport, 2> out;
    for (int v = 0; v < 2; ++v) {
        CompensatedComplexSum total[4];
        for (const auto& p : partial)
            for (int s = 0; s < 4; ++s)
                total[s].add(p.sums[v][s].value());
        auto& rep = out[v];
        rep.t = t;
        rep.delta = delta;
        rep.variant = v == 0 ? DampingVariant::half_square : DampingVariant::as_printed;
        rep.S5 = total[0].value();
        rep.S1 = total[1].value();
        rep.S2 = total[2].value();
        rep.S6 = total[3].value();
    }
    return out;
}

inline BandSumReport band_sums(double t, double delta, DampingVariant variant,
                               const BandSumOptions& opts = {})
{
    auto both = band_sums_both(t, delta, opts);
    return both[variant == DampingVariant::half_square ? 0 : 1];
}

// Reference evaluation of one band term without recurrences; used by tests.
inline Complex band_term(double t, double delta, std::int64_t n, std::int64_t k,
                         DampingVariant variant)
{
    double D = n + delta;
    double x = (k - delta) / D;
    double c = variant == DampingVariant::half_square ? 0.5 : 1.0;
    double amp = 1.0 / std::sqrt(D * static_cast<double>(n + k));
    return std::polar(amp * std::exp(-c * t * x * x), -t * (x - 0.5 * x * x));
}

} // namespace zs
