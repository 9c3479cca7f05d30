#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for real- and
// complex-valued integrands on finite intervals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "summation.hpp"

namespace zs {

struct QuadOptions
{
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_intervals = 20000;
    bool throw_on_failure = true;
};

template <class T>
struct QuadResult
{
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

namespace detail {

// Kronrod abscissae; odd indices are the embedded Gauss nodes.
inline constexpr double gk15_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk15_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double g7_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> z) { return std::abs(z); }

template <class T>
struct Panel
{
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b)
{
    double centre = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    T f_centre = f(centre);
    T kronrod = gk15_weights[7] * f_centre;
    T gauss = g7_weights[3] * f_centre;
    for (int j = 0; j < 7; ++j) {
        double dx = half * gk15_nodes[j];
        T pair = f(centre - dx) + f(centre + dx);
        kronrod += gk15_weights[j] * pair;
        if (j % 2 == 1)
            gauss += g7_weights[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, magnitude(kronrod - gauss)};
}

} // namespace detail

// Integrates f over the union of the consecutive intervals defined by the
// sorted breakpoints. Integrands with known kinks or jumps should put them in
// the breakpoint list so no panel straddles one.
template <class F>
auto integrate_breakpoints(F&& f, std::span<const double> points,
                           const QuadOptions& opts = {})
    -> QuadResult<std::decay_t<decltype(f(0.0))>>
{
    using T = std::decay_t<decltype(f(0.0))>;
    QuadResult<T> result;
    if (points.size() < 2)
        return result;

    std::priority_queue<detail::Panel<T>> heap;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i + 1] > points[i]))
            continue;
        auto panel = detail::gk15<T>(f, points[i], points[i + 1]);
        total_error += panel.error;
        heap.push(panel);
        result.evaluations += 15;
    }

    auto current_value = [&heap] {
        // Sum in a fixed order independent of the heap layout.
        std::vector<detail::Panel<T>> panels;
        auto copy = heap;
        while (!copy.empty()) {
            panels.push_back(copy.top());
            copy.pop();
        }
        std::sort(panels.begin(), panels.end(),
                  [](const auto& l, const auto& r) { return l.a < r.a; });
        T acc{};
        if constexpr (std::is_same_v<T, double>) {
            CompensatedSum s;
            for (const auto& p : panels)
                s.add(p.value);
            acc = s.value();
        } else {
            CompensatedComplexSum s;
            for (const auto& p : panels)
                s.add(p.value);
            acc = s.value();
        }
        return acc;
    };

    auto tolerance = [&](double magnitude_estimate) {
        return std::max(opts.abs_tol, opts.rel_tol * magnitude_estimate);
    };

    // Running magnitude only steers the relative tolerance; the final value is
    // re-summed in order below.
    auto rough_magnitude = [&heap] {
        T acc{};
        auto copy = heap;
        while (!copy.empty()) {
            acc += copy.top().value;
            copy.pop();
        }
        return detail::magnitude(acc);
    };

    double magnitude_estimate = opts.rel_tol > 0.0 ? rough_magnitude() : 0.0;
    std::size_t step = 0;
    while (total_error > tolerance(magnitude_estimate)) {
        if (heap.size() >= opts.max_intervals) {
            result.converged = false;
            break;
        }
        auto worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval at machine resolution; cannot refine further.
            heap.push(worst);
            result.converged = false;
            break;
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        result.evaluations += 30;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (opts.rel_tol > 0.0 && (++step % 64 == 0))
            magnitude_estimate = rough_magnitude();
        if (total_error < 0.0)
            total_error = 0.0;
    }

    // Recompute the total error from scratch to shed accumulated rounding.
    double err = 0.0;
    {
        auto copy = heap;
        while (!copy.empty()) {
            err += copy.top().error;
            copy.pop();
        }
    }
    result.value = current_value();
    result.error = err;
    if (!result.converged && opts.throw_on_failure) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "adaptive quadrature did not converge: error %.3e after %zu intervals", err,
                      heap.size());
        throw QuadratureError(buf);
    }
    return result;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opts = {})
{
    double pts[2] = {a, b};
    return integrate_breakpoints(std::forward<F>(f), std::span<const double>(pts, 2),
                                 opts);
}

// Fixed 15-point Kronrod rule on [a, b] without adaptivity; used inside hot
// loops where the integrand is known to be resolved on a single panel.
template <class F>
auto kronrod15(F&& f, double a, double b)
{
    using T = std::decay_t<decltype(f(0.0))>;
    auto panel = detail::gk15<T>(f, a, b);
    QuadResult<T> r;
    r.value = panel.value;
    r.error = panel.error;
    r.evaluations = 15;
    return r;
}

} // namespace zs
