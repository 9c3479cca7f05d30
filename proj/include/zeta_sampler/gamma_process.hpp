#pragma once

// The gamma process X_t with unit rate and unit scale: X_t ~ Gamma(shape t,
// scale 1), mean t, variance t, characteristic function (1 - iu)^{-t}.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "complex_core.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace zs {

struct GammaParams
{
    double t = 1.0;

    explicit GammaParams(double time) : t(time)
    {
        if (!(time > 0.0) || !std::isfinite(time))
            throw DomainError("GammaParams: t must be positive and finite");
    }
};

struct SampleBatch
{
    double t = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> values;
};

inline double log_gamma(double x)
{
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

// x^{t-1} e^{-x} / Gamma(t), evaluated in log space.
inline double gamma_density(double x, const GammaParams& params)
{
    if (!(x > 0.0))
        return 0.0;
    double t = params.t;
    if (t == 1.0)
        return std::exp(-x);
    return std::exp((t - 1.0) * std::log(x) - x - log_gamma(t));
}

namespace detail {

// Marsaglia-Tsang squeeze/rejection for shape >= 1.
inline double marsaglia_tsang(double shape, Xoshiro256& rng)
{
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z = rng.normal();
        double v = 1.0 + c * z;
        if (v <= 0.0)
            continue;
        v = v * v * v;
        double u = rng.uniform();
        double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2)
            return d * v;
        if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

inline double sample_gamma(double shape, Xoshiro256& rng)
{
    if (shape >= 1.0)
        return marsaglia_tsang(shape, rng);
    // Shape boost: Gamma(k) = Gamma(k+1) * U^{1/k}.
    for (;;) {
        double g = marsaglia_tsang(shape + 1.0, rng);
        double x = g * std::exp(std::log(rng.uniform()) / shape);
        if (x > 0.0)
            return x;
    }
}

} // namespace detail

// Value j depends only on (t, seed, j).
inline double sample_one(const GammaParams& params, std::uint64_t seed,
                         std::uint64_t index)
{
    auto rng = Xoshiro256::for_stream(seed, index);
    return detail::sample_gamma(params.t, rng);
}

inline SampleBatch sample_batch(const GammaParams& params, std::size_t count,
                                std::uint64_t seed, unsigned threads = 0)
{
    if (count == 0)
        throw InvariantError("sample_batch: empty batch requested");
    SampleBatch batch{params.t, seed, std::vector<double>(count)};
    parallel_for(count, threads, [&](std::size_t j) {
        batch.values[j] = sample_one(params, seed, j);
    });
    return batch;
}

inline Complex char_fn(double u, const GammaParams& params)
{
    return stable_pow(Complex{1.0, -u}, -params.t);
}

inline Complex empirical_char_fn(std::span<const double> values, double u)
{
    if (values.empty())
        throw InvariantError("empirical_char_fn: empty batch");
    CompensatedComplexSum acc;
    for (double x : values)
        acc.add({std::cos(u * x), std::sin(u * x)});
    return acc.value() / static_cast<double>(values.size());
}

inline Complex empirical_char_fn(const SampleBatch& batch, double u)
{
    return empirical_char_fn(std::span<const double>(batch.values), u);
}

// E u^{-i X_t} = (1 + i log u)^{-t}.
inline Complex log_moment_fn(double u, const GammaParams& params)
{
    if (!(u > 0.0))
        throw DomainError("log_moment_fn: u must be positive");
    return pow_one_plus_iw(std::log(u), -params.t);
}

struct SampleMoments
{
    double mean = 0.0;
    double variance = 0.0; // unbiased
};

inline SampleMoments sample_moments(std::span<const double> values)
{
    if (values.size() < 2)
        throw InvariantError("sample_moments: need at least two values");
    CompensatedSum s;
    for (double x : values)
        s.add(x);
    double mean = s.value() / static_cast<double>(values.size());
    CompensatedSum ss;
    for (double x : values)
        ss.add((x - mean) * (x - mean));
    return {mean, ss.value() / static_cast<double>(values.size() - 1)};
}

} // namespace zs
