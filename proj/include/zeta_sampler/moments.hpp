#pragma once

// Monte Carlo estimates of E zeta(1/2 + i X_t) and E |zeta(1/2 + i X_t)|^2,
// sweeps over t, and the residual check against log t.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"
#include "gamma_process.hpp"
#include "parallel.hpp"
#include "summation.hpp"
#include "zeta.hpp"

namespace zs {

struct MomentConfig
{
    EvalConfig zeta;
    ZetaMethod method = ZetaMethod::automatic;
    unsigned threads = 0;
};

struct MomentEstimate
{
    double t = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    Complex first_moment;
    double second_moment = 0.0;
    double se_first = 0.0;
    double se_second = 0.0;
};

// zeta(1/2 + i x_j) for every sample; slot j depends only on x_j.
inline std::vector<Complex> sample_zeta_values(std::span<const double> xs,
                                               const MomentConfig& cfg = {})
{
    std::vector<Complex> out(xs.size());
    parallel_for(xs.size(), cfg.threads, [&](std::size_t j) {
        out[j] = zeta(ZetaArgument(0.5, xs[j]), cfg.zeta, cfg.method).value;
    });
    return out;
}

// Moments from precomputed values, summed in index order.
inline MomentEstimate summarize_moments(std::span<const Complex> values, double t,
                                        std::uint64_t seed)
{
    const std::size_t n = values.size();
    if (n < 2)
        throw InvariantError("summarize_moments: need at least two values");
    const double dn = static_cast<double>(n);

    CompensatedComplexSum first;
    CompensatedSum second;
    for (Complex z : values) {
        first.add(z);
        second.add(std::norm(z));
    }
    Complex mean = first.value() / dn;
    double mean_sq = second.value() / dn;

    CompensatedSum var_re, var_im, var_sq;
    for (Complex z : values) {
        double dr = z.real() - mean.real();
        double di = z.imag() - mean.imag();
        double ds = std::norm(z) - mean_sq;
        var_re.add(dr * dr);
        var_im.add(di * di);
        var_sq.add(ds * ds);
    }
    const double denom = dn - 1.0;

    MomentEstimate est;
    est.t = t;
    est.n_samples = n;
    est.seed = seed;
    est.first_moment = mean;
    est.second_moment = mean_sq;
    est.se_first = std::sqrt((var_re.value() + var_im.value()) / denom / dn);
    est.se_second = std::sqrt(var_sq.value() / denom / dn);
    return est;
}

inline void check_moment_request(double t, std::size_t n_samples)
{
    if (!(t >= 10.0) || !std::isfinite(t))
        throw DomainError("estimate_moments: requires t >= 10");
    if (n_samples < 100)
        throw DomainError("estimate_moments: requires at least 100 samples");
}

inline MomentEstimate estimate_moments(double t, std::size_t n_samples, std::uint64_t seed,
                                       const MomentConfig& cfg = {})
{
    check_moment_request(t, n_samples);
    auto batch = sample_batch(GammaParams(t), n_samples, seed, cfg.threads);
    auto values = sample_zeta_values(batch.values, cfg);
    return summarize_moments(values, t, seed);
}

struct SweepRow
{
    double t = 0.0;
    MomentEstimate estimate;
    double se = 0.0; // se of the second moment
    double log_t = 0.0;
    double residual = 0.0; // second moment - log t
    double band = 0.0;     // sqrt(log t) log log t
};

inline double theorem_band(double t)
{
    double l = std::log(t);
    return std::sqrt(l) * std::log(l);
}

inline SweepRow make_sweep_row(const MomentEstimate& est)
{
    SweepRow row;
    row.t = est.t;
    row.estimate = est;
    row.se = est.se_second;
    row.log_t = std::log(est.t);
    row.residual = est.second_moment - row.log_t;
    row.band = theorem_band(est.t);
    return row;
}

struct SweepOptions
{
    std::size_t n_samples = 10000;
    // When positive, a row whose se_second exceeds this is rerun with a
    // larger sample count estimated from the first pass (CLT scaling).
    double target_se = 0.0;
    std::size_t max_samples = 400000;
};

inline std::vector<SweepRow> sweep(std::span<const double> t_values, const SweepOptions& opts,
                                   std::uint64_t seed, const MomentConfig& cfg = {})
{
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] >= 100.0))
            throw DomainError("sweep: every t must be at least 100");
        if (i > 0 && !(t_values[i] > t_values[i - 1]))
            throw DomainError("sweep: t values must be strictly ascending");
    }
    std::vector<SweepRow> rows;
    rows.reserve(t_values.size());
    for (double t : t_values) {
        auto est = estimate_moments(t, opts.n_samples, seed, cfg);
        if (opts.target_se > 0.0 && est.se_second > opts.target_se &&
            est.n_samples < opts.max_samples) {
            double ratio = est.se_second / opts.target_se;
            auto wanted = static_cast<std::size_t>(
                std::ceil(1.2 * ratio * ratio * static_cast<double>(est.n_samples)));
            wanted = std::min(std::max(wanted, est.n_samples + 1), opts.max_samples);
            est = estimate_moments(t, wanted, seed, cfg);
        }
        rows.push_back(make_sweep_row(est));
    }
    return rows;
}

inline std::vector<SweepRow> sweep(std::span<const double> t_values, std::size_t n_samples,
                                   std::uint64_t seed, const MomentConfig& cfg = {})
{
    SweepOptions opts;
    opts.n_samples = n_samples;
    return sweep(t_values, opts, seed, cfg);
}

struct ResidualReport
{
    double C_fit = 0.0;
    bool pass = false;          // C_fit <= ceiling
    bool ratio_decreasing = false; // |residual| / log t non-increasing up to 2 se
    double ceiling = 3.0;
};

// C_fit = max |residual| / (band + 2 se).
inline ResidualReport residual_analysis(std::span<const SweepRow> rows, double ceiling = 3.0)
{
    if (rows.size() < 3)
        throw DomainError("residual_analysis: needs at least three rows");
    ResidualReport r;
    r.ceiling = ceiling;
    for (const auto& row : rows) {
        if (!(row.band > 0.0))
            throw DomainError("residual_analysis: band must be positive (t >= 16)");
        r.C_fit = std::max(r.C_fit, std::abs(row.residual) / (row.band + 2.0 * row.se));
    }
    r.pass = r.C_fit <= ceiling;
    r.ratio_decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& lo = rows[i - 1];
        const auto& hi = rows[i];
        double prev = std::abs(lo.residual) / lo.log_t;
        double next = std::abs(hi.residual) / hi.log_t;
        double slack = 2.0 * (lo.se / lo.log_t + hi.se / hi.log_t);
        if (next > prev + slack)
            r.ratio_decreasing = false;
    }
    return r;
}

struct ChebyshevCheck
{
    double threshold = 0.0; // log t
    double fraction = 0.0;  // share of samples with |zeta| > threshold
    double bound = 0.0;     // second moment / threshold^2 + 3 binomial se
    bool pass = false;
};

inline ChebyshevCheck chebyshev_check(std::span<const Complex> values, double t)
{
    if (values.empty())
        throw InvariantError("chebyshev_check: no values");
    ChebyshevCheck c;
    c.threshold = std::log(t);
    std::size_t above = 0;
    CompensatedSum second;
    for (Complex z : values) {
        if (std::abs(z) > c.threshold)
            ++above;
        second.add(std::norm(z));
    }
    double n = static_cast<double>(values.size());
    c.fraction = static_cast<double>(above) / n;
    double m2 = second.value() / n;
    c.bound = m2 / (c.threshold * c.threshold) + 3.0 * std::sqrt(c.fraction * (1.0 - c.fraction) / n);
    c.pass = c.fraction <= c.bound;
    return c;
}

} // namespace zs
