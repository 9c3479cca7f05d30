#pragma once

// Exponential sums sum_{a<n<b} g(n) e(f(n)), e(x) = exp(2 pi i x), and the
// van der Corput transforms that trade them for sums of oscillatory
// integrals. Each transform reports its error budget with unit constant so
// the implied constant can be measured as |direct - transform| / budget.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "complex_core.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "summation.hpp"

namespace zs {

// A real function with its first derivative; the second derivative is
// optional and falls back to a central difference of the first.
struct RealFn
{
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> second;
};

inline double second_derivative(const RealFn& fn, double x)
{
    if (fn.second)
        return fn.second(x);
    double h = std::max(1e-5, 1e-8 * std::abs(x));
    return (fn.derivative(x + h) - fn.derivative(x - h)) / (2.0 * h);
}

struct ExpSumSpec
{
    std::string family;
    RealFn f; // phase
    RealFn g; // amplitude
    double a = 0.0;
    double b = 1.0;
};

struct VdCParams
{
    double alpha = 0.0;
    double beta = 0.0;
    double epsilon = 0.5;
    double theta = 0.5;
    double eta = 2.0;
    double G = 0.0;
    double G1 = 0.0;
    double G2 = 0.0;
};

enum class VdcLemma { sum_to_integrals = 21, single_integral = 22, long_interval = 23 };

inline VdcLemma parse_vdc_lemma(int code)
{
    switch (code) {
    case 21: return VdcLemma::sum_to_integrals;
    case 22: return VdcLemma::single_integral;
    case 23: return VdcLemma::long_interval;
    default: throw ConfigError("lemma must be one of 21, 22, 23");
    }
}

namespace detail {

inline constexpr int invariant_samples = 1000;

inline void check_interval(const ExpSumSpec& spec)
{
    if (!(spec.b > spec.a) || !std::isfinite(spec.a) || !std::isfinite(spec.b))
        throw DomainError("ExpSumSpec: need finite a < b");
    if (!spec.f.value || !spec.f.derivative || !spec.g.value || !spec.g.derivative)
        throw DomainError("ExpSumSpec: phase and amplitude need value and derivative");
}

inline double sample_point(const ExpSumSpec& spec, int i)
{
    return spec.a + (spec.b - spec.a) * i / (invariant_samples - 1);
}

// e(x) with the integer part removed first, so large phases keep their
// fractional accuracy.
inline Complex unit_phase(double x)
{
    double frac = x - std::nearbyint(x);
    return std::polar(1.0, two_pi * frac);
}

} // namespace detail

// f'' > 0 at 1000 equally spaced points of [a, b].
inline void check_convex_phase(const ExpSumSpec& spec)
{
    detail::check_interval(spec);
    for (int i = 0; i < detail::invariant_samples; ++i) {
        double x = detail::sample_point(spec, i);
        if (!(second_derivative(spec.f, x) > 0.0))
            throw InvariantError("phase is not strictly convex at x = " + std::to_string(x));
    }
}

// |f'| <= 1 - theta and f'' of one sign, bounded away from roundoff.
inline void check_slow_phase(const ExpSumSpec& spec, double theta)
{
    detail::check_interval(spec);
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("theta must lie in (0, 1)");
    double max_slope = 0.0;
    for (int i = 0; i < detail::invariant_samples; ++i)
        max_slope = std::max(max_slope, std::abs(spec.f.derivative(detail::sample_point(spec, i))));
    if (max_slope > 1.0 - theta + 1e-12)
        throw InvariantError("|f'| exceeds 1 - theta");
    // A difference quotient of a constant slope leaves residue near eps*|f'|/h.
    double floor = 1e-10 * max_slope + std::numeric_limits<double>::min();
    int sign = 0;
    for (int i = 0; i < detail::invariant_samples; ++i) {
        double f2 = second_derivative(spec.f, detail::sample_point(spec, i));
        if (!(std::abs(f2) > floor))
            throw InvariantError("f'' vanishes on [a, b]");
        int s = f2 > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign)
            throw InvariantError("f'' changes sign on [a, b]");
        sign = s;
    }
}

// G = |g(b)| + int_a^b |g'|.
inline double variation_bound(const ExpSumSpec& spec)
{
    detail::check_interval(spec);
    std::vector<double> pts(65);
    for (int i = 0; i <= 64; ++i)
        pts[i] = spec.a + (spec.b - spec.a) * i / 64.0;
    pts.back() = spec.b;
    double scale = std::abs(spec.g.value(spec.a)) + std::abs(spec.g.value(spec.b)) + 1e-300;
    QuadOptions opts;
    opts.abs_tol = 1e-12 * scale;
    opts.throw_on_failure = false;
    auto r = integrate_breakpoints([&](double x) { return std::abs(spec.g.derivative(x)); },
                                   std::span<const double>(pts), opts);
    return std::abs(spec.g.value(spec.b)) + r.value;
}

// G2 = max |g| on [a, a+1] and [b-1, b], sampled.
inline double edge_amplitude(const ExpSumSpec& spec)
{
    double best = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double s = i / 200.0;
        best = std::max(best, std::abs(spec.g.value(std::min(spec.b, spec.a + s))));
        best = std::max(best, std::abs(spec.g.value(std::max(spec.a, spec.b - s))));
    }
    return best;
}

// alpha = f'(a), beta = f'(b) (ordered), G = G1 from the amplitude, G2 edge max.
inline VdCParams derive_params(const ExpSumSpec& spec, double epsilon = 0.5,
                               double theta = 0.5, double eta = 2.0)
{
    detail::check_interval(spec);
    VdCParams p;
    double fa = spec.f.derivative(spec.a);
    double fb = spec.f.derivative(spec.b);
    p.alpha = std::min(fa, fb);
    p.beta = std::max(fa, fb);
    p.epsilon = epsilon;
    p.theta = theta;
    p.eta = eta;
    p.G = variation_bound(spec);
    p.G1 = p.G;
    p.G2 = edge_amplitude(spec);
    return p;
}

inline void validate(const VdCParams& p)
{
    if (!(p.alpha <= p.beta))
        throw DomainError("VdCParams: need alpha <= beta");
    if (!(p.epsilon > 0.0 && p.epsilon <= 1.0))
        throw DomainError("VdCParams: epsilon must lie in (0, 1]");
    if (!(p.theta > 0.0 && p.theta < 1.0))
        throw DomainError("VdCParams: theta must lie in (0, 1)");
    if (!(p.eta > 1.0))
        throw DomainError("VdCParams: eta must exceed 1");
}

inline constexpr double max_direct_length = 1e9;

// sum_{a<n<b} g(n) e(f(n)), strict at both ends.
inline Complex exp_sum_direct(const ExpSumSpec& spec)
{
    detail::check_interval(spec);
    if (spec.b - spec.a > max_direct_length)
        throw DomainError("exp_sum_direct: interval too long");
    double first = std::floor(spec.a) + 1.0;
    double last = std::ceil(spec.b) - 1.0;
    CompensatedComplexSum acc;
    for (double n = first; n <= last; n += 1.0)
        acc.add(spec.g.value(n) * detail::unit_phase(spec.f.value(n)));
    return acc.value();
}

struct OscillatoryOptions
{
    double tol = 1e-10;
    // Panel width as a fraction of the local wavelength 1/(|f' - m| + 1).
    double wavelength_fraction = 0.25;
    std::size_t max_panels = 20000000;
};

// int_a^b g(x) e(f(x) - m x) dx on wavelength-capped panels, refined by the
// global adaptive Gauss-Kronrod driver until the error estimate <= tol.
inline QuadResult<Complex> oscillatory_integral(const RealFn& g, const RealFn& f, double a,
                                                double b, long long m,
                                                const OscillatoryOptions& opts = {})
{
    if (!(opts.tol > 0.0))
        throw DomainError("oscillatory_integral: tol must be positive");
    if (!(b > a))
        throw DomainError("oscillatory_integral: need a < b");
    const double md = static_cast<double>(m);
    std::vector<double> pts{a};
    double x = a;
    while (x < b) {
        double width = opts.wavelength_fraction / (std::abs(f.derivative(x) - md) + 1.0);
        x = std::min(b, x + width);
        pts.push_back(x);
        if (pts.size() > opts.max_panels)
            throw QuadratureError("oscillatory_integral: panel budget exhausted");
    }
    // The phase f(x) - m x is only known to ~eps (|f| + |m x|); that noise
    // sets a floor under the Kronrod error estimate, and asking for less
    // would only exhaust the interval budget.
    CompensatedSum l1;
    double phase_scale = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        l1.add(std::abs(g.value(mid)) * (pts[i + 1] - pts[i]));
        phase_scale = std::max(phase_scale, std::abs(f.value(mid)) + std::abs(md * mid));
    }
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * two_pi *
                               (phase_scale + 1.0) * l1.value();
    QuadOptions q;
    q.abs_tol = std::max(opts.tol, noise_floor);
    q.max_intervals = std::max<std::size_t>(4 * pts.size(), 2000);
    auto integrand = [&](double y) {
        // m y split exactly into a rounded product and its fma residue.
        double p = md * y;
        double residue = std::fma(md, y, -p);
        double reduced = (f.value(y) - std::nearbyint(f.value(y))) - (p - std::nearbyint(p)) - residue;
        return g.value(y) * detail::unit_phase(reduced);
    };
    return integrate_breakpoints(integrand, std::span<const double>(pts), q);
}

struct VdcTransform
{
    Complex value;
    std::size_t term_count = 0;
    long long m_lo = 0; // first shift m in the range
    double error_budget = 0.0;
    double quad_error = 0.0;
};

namespace detail {

// Integer m with lo < m < hi.
inline std::pair<long long, long long> open_integer_range(double lo, double hi)
{
    auto first = static_cast<long long>(std::floor(lo)) + 1;
    auto last = static_cast<long long>(std::ceil(hi)) - 1;
    return {first, last};
}

inline VdcTransform shifted_integral_sum(const ExpSumSpec& spec, double lo, double hi,
                                         const OscillatoryOptions& opts, unsigned threads)
{
    auto [first, last] = open_integer_range(lo, hi);
    VdcTransform out;
    out.m_lo = first;
    if (last < first)
        return out;
    auto count = static_cast<std::size_t>(last - first + 1);
    OscillatoryOptions each = opts;
    each.tol = opts.tol / static_cast<double>(count);
    std::vector<QuadResult<Complex>> parts(count);
    parallel_for(count, threads, [&](std::size_t j) {
        parts[j] = oscillatory_integral(spec.g, spec.f, spec.a, spec.b,
                                        first + static_cast<long long>(j), each);
    });
    CompensatedComplexSum acc;
    for (const auto& p : parts) {
        acc.add(p.value);
        out.quad_error += p.error;
    }
    out.value = acc.value();
    out.term_count = count;
    return out;
}

} // namespace detail

inline double budget_lemma21(const VdCParams& p)
{
    return p.G * (1.0 / p.epsilon + std::log(p.beta - p.alpha + 2.0));
}

inline double budget_lemma22(const VdCParams& p) { return p.G / p.theta; }

inline double budget_lemma23(const VdCParams& p)
{
    return p.G1 * (1.0 / p.eta + std::log1p((p.beta - p.alpha) / p.eta)) +
           p.G2 * (p.beta - p.alpha + p.eta);
}

// Sum over alpha - eps < m < beta + eps of int_a^b g e(f - m x).
inline VdcTransform vdc_lemma21(const ExpSumSpec& spec, const VdCParams& params,
                                const OscillatoryOptions& opts = {}, unsigned threads = 0)
{
    validate(params);
    check_convex_phase(spec);
    auto out = detail::shifted_integral_sum(spec, params.alpha - params.epsilon,
                                            params.beta + params.epsilon, opts, threads);
    out.error_budget = budget_lemma21(params);
    return out;
}

// The single integral int_a^b g e(f).
inline VdcTransform vdc_lemma22(const ExpSumSpec& spec, const VdCParams& params,
                                const OscillatoryOptions& opts = {})
{
    validate(params);
    check_slow_phase(spec, params.theta);
    auto r = oscillatory_integral(spec.g, spec.f, spec.a, spec.b, 0, opts);
    VdcTransform out;
    out.value = r.value;
    out.quad_error = r.error;
    out.term_count = 1;
    out.error_budget = budget_lemma22(params);
    return out;
}

// Sum over alpha - eta < m < beta + eta, for b - a > 2.
inline VdcTransform vdc_lemma23(const ExpSumSpec& spec, const VdCParams& params,
                                const OscillatoryOptions& opts = {}, unsigned threads = 0)
{
    validate(params);
    if (!(spec.b - spec.a > 2.0))
        throw InvariantError("vdc_lemma23: requires b - a > 2");
    check_convex_phase(spec);
    auto out = detail::shifted_integral_sum(spec, params.alpha - params.eta,
                                            params.beta + params.eta, opts, threads);
    out.error_budget = budget_lemma23(params);
    return out;
}

struct VdcCheck
{
    VdcLemma lemma = VdcLemma::sum_to_integrals;
    Complex direct;
    VdcTransform transform;
    double deviation = 0.0;
    double ratio = 0.0; // deviation / budget: the fitted implied constant
};

inline VdcCheck verify_vdc(VdcLemma lemma, const ExpSumSpec& spec, const VdCParams& params,
                           const OscillatoryOptions& opts = {}, unsigned threads = 0)
{
    VdcCheck c;
    c.lemma = lemma;
    switch (lemma) {
    case VdcLemma::sum_to_integrals: c.transform = vdc_lemma21(spec, params, opts, threads); break;
    case VdcLemma::single_integral: c.transform = vdc_lemma22(spec, params, opts); break;
    case VdcLemma::long_interval: c.transform = vdc_lemma23(spec, params, opts, threads); break;
    }
    c.direct = exp_sum_direct(spec);
    c.deviation = std::abs(c.direct - c.transform.value);
    c.ratio = c.deviation / c.transform.error_budget;
    return c;
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

// Named numeric parameters with defaults, e.g. parsed from "N=50,amp=-0.5".
class FamilyArgs
{
  public:
    FamilyArgs() = default;
    FamilyArgs(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

    static FamilyArgs parse(const std::string& text)
    {
        FamilyArgs args;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos)
                comma = text.size();
            std::string item = text.substr(pos, comma - pos);
            pos = comma + 1;
            if (item.empty())
                continue;
            std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError("family parameter '" + item + "' is not key=value");
            std::string key = item.substr(0, eq);
            std::string val = item.substr(eq + 1);
            char* end = nullptr;
            double v = std::strtod(val.c_str(), &end);
            if (val.empty() || *end != '\0' || !std::isfinite(v))
                throw ConfigError("family parameter '" + key + "' has a non-numeric value");
            args.values_[key] = v;
        }
        return args;
    }

    [[nodiscard]] double get(const std::string& key, double fallback) const
    {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    void set(const std::string& key, double value) { values_[key] = value; }
    [[nodiscard]] const std::map<std::string, double>& values() const { return values_; }

  private:
    std::map<std::string, double> values_;
};

namespace detail {

// g(x) = x^p with derivative.
inline RealFn power_amplitude(double p)
{
    if (p == 0.0)
        return {[](double) { return 1.0; }, [](double) { return 0.0; }, {}};
    return {[p](double x) { return std::pow(x, p); },
            [p](double x) { return p * std::pow(x, p - 1.0); }, {}};
}

} // namespace detail

inline const std::vector<std::string>& vdc_family_names()
{
    static const std::vector<std::string> names = {"quadratic", "quadratic-sqrt", "cubic",
                                                   "log-phase", "step3",          "step5",
                                                   "step6"};
    return names;
}

// quadratic       f = x^2/(2L), g = x^amp on [a, N]; L defaults to N
// quadratic-sqrt  same with amp = -1/2
// cubic           f = x^3/(3 L^2), g = x^amp on [a, N]
// log-phase       f = -c log x, g = x^amp on [a, N]
// step3           f = -(t/2pi) log(x/n), g = x^{-1/2} exp(-(t/2) log^2(x/n)) on
//                 n exp(+-2 sqrt(log t / t))
// step5           inner k-sum of the band: g = (n+x)^{-1/2} exp(-t (x-d)^2/(n+d)^2),
//                 f = -(t/2pi)((x-d)/(n+d) - (x-d)^2/(2(n+d)^2)) on [d, d + 2(n+d) sqrt(log t/t)]
// step6           n-sum at fixed k: f = (t/2pi)((k-d)^2/(2(x+d)^2) - (k-d)/(x+d)),
//                 g = (x+d)^{-1/2}(x+k)^{-1/2} exp(-t (k-d)^2/(x+d)^2) on
//                 [sqrt(t log t) - d, t - d]
inline ExpSumSpec make_vdc_family(const std::string& name, const FamilyArgs& args)
{
    ExpSumSpec spec;
    spec.family = name;
    if (name == "quadratic" || name == "quadratic-sqrt" || name == "cubic" || name == "log-phase") {
        double n_hi = args.get("N", 50.0);
        double a = args.get("a", 1.0);
        double amp = args.get("amp", name == "quadratic-sqrt" ? -0.5 : 0.0);
        spec.a = a;
        spec.b = n_hi;
        spec.g = detail::power_amplitude(amp);
        if (name == "cubic") {
            double l = args.get("L", n_hi);
            spec.f = {[l](double x) { return x * x * x / (3.0 * l * l); },
                      [l](double x) { return x * x / (l * l); },
                      [l](double x) { return 2.0 * x / (l * l); }};
        } else if (name == "log-phase") {
            double c = args.get("c", 10.0);
            spec.f = {[c](double x) { return -c * std::log(x); }, [c](double x) { return -c / x; },
                      [c](double x) { return c / (x * x); }};
        } else {
            double l = args.get("L", n_hi);
            spec.f = {[l](double x) { return x * x / (2.0 * l); }, [l](double x) { return x / l; },
                      [l](double) { return 1.0 / l; }};
        }
        if (!(a > 0.0))
            throw ConfigError("family parameter a must be positive");
    } else if (name == "step3") {
        double t = args.get("t", 1e3);
        double n = args.get("n", 1e3);
        double w = 2.0 * std::sqrt(std::log(t) / t);
        spec.a = n * std::exp(-w);
        spec.b = n * std::exp(w);
        double c = t / two_pi;
        spec.f = {[c, n](double x) { return -c * std::log(x / n); },
                  [c](double x) { return -c / x; }, [c](double x) { return c / (x * x); }};
        spec.g = {[t, n](double x) {
                      double l = std::log(x / n);
                      return std::exp(-0.5 * t * l * l) / std::sqrt(x);
                  },
                  [t, n](double x) {
                      double l = std::log(x / n);
                      return std::exp(-0.5 * t * l * l) / std::sqrt(x) * (-0.5 - t * l) / x;
                  },
                  {}};
    } else if (name == "step5") {
        double t = args.get("t", 1e4);
        double n = args.get("n", 100.0);
        double d = args.get("delta", 0.5);
        double nd = n + d;
        spec.a = d;
        spec.b = d + 2.0 * nd * std::sqrt(std::log(t) / t);
        double c = t / two_pi;
        spec.f = {[c, d, nd](double x) {
                      double y = (x - d) / nd;
                      return -c * (y - 0.5 * y * y);
                  },
                  [c, d, nd](double x) { return -c * (1.0 - (x - d) / nd) / nd; },
                  [c, nd](double) { return c / (nd * nd); }};
        spec.g = {[t, n, d, nd](double x) {
                      double y = (x - d) / nd;
                      return std::exp(-t * y * y) / std::sqrt(n + x);
                  },
                  [t, n, d, nd](double x) {
                      double y = (x - d) / nd;
                      double e = std::exp(-t * y * y) / std::sqrt(n + x);
                      return e * (-0.5 / (n + x) - 2.0 * t * y / nd);
                  },
                  {}};
    } else if (name == "step6") {
        double t = args.get("t", 1e3);
        double k = args.get("k", 2.0);
        double d = args.get("delta", 0.5);
        double kd = k - d;
        spec.a = args.get("a", std::sqrt(t * std::log(t)) - d);
        spec.b = args.get("b", t - d);
        double c = t / two_pi;
        spec.f = {[c, kd, d](double x) {
                      double y = kd / (x + d);
                      return c * (0.5 * y * y - y);
                  },
                  [c, kd, d](double x) {
                      double xd = x + d;
                      return c * (kd / (xd * xd) - kd * kd / (xd * xd * xd));
                  },
                  [c, kd, d](double x) {
                      double xd = x + d;
                      return c * (3.0 * kd * kd / (xd * xd * xd * xd) - 2.0 * kd / (xd * xd * xd));
                  }};
        spec.g = {[t, k, kd, d](double x) {
                      double y = kd / (x + d);
                      return std::exp(-t * y * y) / std::sqrt((x + d) * (x + k));
                  },
                  [t, k, kd, d](double x) {
                      double xd = x + d;
                      double y = kd / xd;
                      double e = std::exp(-t * y * y) / std::sqrt(xd * (x + k));
                      return e * (-0.5 / xd - 0.5 / (x + k) + 2.0 * t * y * y / xd);
                  },
                  {}};
    } else {
        throw ConfigError("unknown vdc family '" + name + "'");
    }
    if (!(spec.b > spec.a))
        throw ConfigError("family '" + name + "' produced an empty interval");
    return spec;
}

struct VdcCorpusEntry
{
    std::string family;
    FamilyArgs args;
    double epsilon = 0.5;
    double theta = 0.5;
    double eta = 2.0;
};

// Parameter settings exercised by the test suite and the acceptance run.
inline std::vector<VdcCorpusEntry> vdc_corpus(VdcLemma lemma)
{
    std::vector<VdcCorpusEntry> c;
    switch (lemma) {
    case VdcLemma::sum_to_integrals:
        for (double n : {50.0, 100.0, 400.0})
            for (double eps : {0.5, 1.0, 0.25})
                c.push_back({"quadratic", {{"N", n}}, eps});
        for (double n : {100.0, 1000.0})
            for (double eps : {0.5, 1.0})
                c.push_back({"quadratic-sqrt", {{"N", n}}, eps});
        c.push_back({"quadratic", {{"N", 200.5}, {"L", 20.0}}, 0.5});
        c.push_back({"quadratic", {{"N", 300.5}, {"L", 60.0}, {"amp", -0.5}}, 0.5});
        c.push_back({"cubic", {{"N", 80.5}, {"L", 20.0}}, 0.5});
        c.push_back({"cubic", {{"N", 150.5}, {"L", 50.0}, {"amp", -0.5}}, 1.0});
        c.push_back({"log-phase", {{"N", 200.5}, {"c", 30.0}}, 0.5});
        c.push_back({"log-phase", {{"N", 400.5}, {"a", 2.5}, {"c", 20.0}, {"amp", -0.5}}, 0.5});
        c.push_back({"log-phase", {{"N", 800.5}, {"a", 10.5}, {"c", 30.0}}, 1.0});
        for (double n : {60.0, 150.0})
            c.push_back({"step5", {{"t", 1e4}, {"n", n}, {"delta", 0.5}}, 0.5});
        c.push_back({"step5", {{"t", 1e5}, {"n", 300.0}, {"delta", 0.25}}, 0.5});
        c.push_back({"step5", {{"t", 1e6}, {"n", 1500.0}, {"delta", 1.0}}, 0.5});
        break;
    case VdcLemma::single_integral:
        for (double b : {200.0, 500.0, 1000.0})
            c.push_back({"quadratic", {{"N", b + 0.5}, {"L", 2.0 * b + 1.0}}, 0.5, 0.5});
        for (double b : {200.0, 800.0})
            c.push_back(
                {"quadratic", {{"N", b + 0.5}, {"L", 2.0 * b + 1.0}, {"amp", -0.5}}, 0.5, 0.5});
        for (double b : {100.0, 400.0})
            c.push_back({"quadratic", {{"N", b + 0.5}, {"L", 10.0 * b}}, 0.5, 0.85});
        c.push_back({"quadratic", {{"N", 300.5}, {"L", 400.0}, {"amp", -0.5}}, 0.5, 0.2});
        c.push_back({"cubic", {{"N", 100.5}, {"L", 200.0}}, 0.5, 0.7});
        c.push_back({"cubic", {{"N", 300.5}, {"L", 400.0}, {"amp", -0.5}}, 0.5, 0.4});
        c.push_back({"log-phase", {{"N", 400.5}, {"a", 10.5}, {"c", 5.0}}, 0.5, 0.5});
        c.push_back({"log-phase", {{"N", 900.5}, {"a", 20.5}, {"c", 3.0}, {"amp", -0.5}}, 0.5, 0.8});
        for (double t : {1e3, 1e4})
            for (double k : {1.0, 3.0, 6.0})
                c.push_back({"step6", {{"t", t}, {"k", k}, {"delta", 0.5}}, 0.5,
                             0.0 /* derived from max slope */});
        c.push_back({"step6", {{"t", 1e4}, {"k", 10.0}, {"delta", 0.25}}, 0.5, 0.0});
        c.push_back({"step6", {{"t", 1e4}, {"k", 15.0}, {"delta", 1.0}}, 0.5, 0.0});
        break;
    case VdcLemma::long_interval:
        for (double n : {100.0, 300.0})
            for (double eta : {10.0, 3.0})
                c.push_back({"quadratic", {{"N", n}}, 0.5, 0.5, eta});
        for (double n : {100.0, 1000.0})
            c.push_back({"quadratic-sqrt", {{"N", n}}, 0.5, 0.5, 10.0});
        c.push_back({"quadratic", {{"N", 250.5}, {"L", 25.0}}, 0.5, 0.5, 4.0});
        c.push_back({"cubic", {{"N", 90.5}, {"L", 30.0}}, 0.5, 0.5, 5.0});
        c.push_back({"cubic", {{"N", 200.5}, {"L", 80.0}, {"amp", -0.5}}, 0.5, 0.5, 2.5});
        c.push_back({"log-phase", {{"N", 300.5}, {"c", 40.0}}, 0.5, 0.5, 6.0});
        c.push_back({"log-phase", {{"N", 600.5}, {"a", 3.5}, {"c", 25.0}, {"amp", -0.5}}, 0.5, 0.5, 1.5});
        for (double t : {1e3, 1e4})
            for (double n : {1e3, 3e3})
                c.push_back({"step3", {{"t", t}, {"n", n}}, 0.5, 0.5, std::log(t)});
        c.push_back({"step3", {{"t", 1e3}, {"n", 200.0}}, 0.5, 0.5, std::log(1e3)});
        c.push_back({"step3", {{"t", 500.0}, {"n", 2e3}}, 0.5, 0.5, std::log(500.0)});
        c.push_back({"step3", {{"t", 2e3}, {"n", 5e3}}, 0.5, 0.5, 2.0});
        c.push_back({"step3", {{"t", 1e3}, {"n", 1e4}}, 0.5, 0.5, std::log(1e3)});
        c.push_back({"step3", {{"t", 5e3}, {"n", 800.0}}, 0.5, 0.5, std::log(5e3)});
        break;
    }
    return c;
}

// The spec and parameters for a corpus entry. A zero theta is replaced by
// 1 - max|f'|, the slack the phase actually has.
inline std::pair<ExpSumSpec, VdCParams> realize(const VdcCorpusEntry& e)
{
    ExpSumSpec spec = make_vdc_family(e.family, e.args);
    double theta = e.theta;
    if (theta == 0.0) {
        double max_slope = 0.0;
        for (int i = 0; i < detail::invariant_samples; ++i)
            max_slope = std::max(max_slope,
                                 std::abs(spec.f.derivative(detail::sample_point(spec, i))));
        theta = 1.0 - max_slope;
    }
    return {spec, derive_params(spec, e.epsilon, theta, e.eta)};
}

} // namespace zs
