#pragma once

// The ten acceptance criteria as callable checks, shared by the acceptance
// test binary and `zs verify-all`. Tolerances are fixed here; `quick` shrinks
// only the t-grids of criteria 5 and 9.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "gamma_process.hpp"
#include "io.hpp"
#include "moments.hpp"
#include "oscillatory.hpp"
#include "zeta.hpp"

namespace zs {

struct AcceptanceOptions
{
    bool quick = false;
    unsigned threads = 0;
    std::uint64_t seed = 42;
};

struct CriterionResult
{
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Stopwatch
{
  public:
    [[nodiscard]] double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace detail

inline CriterionResult criterion_char_fn(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    const std::size_t n = 100000;
    double worst = 0.0;
    for (double t : {1.0, 10.0, 100.0}) {
        auto batch = sample_batch(GammaParams(t), n, o.seed, o.threads);
        for (double u : {-2.0, -1.0, 1.0, 2.0})
            worst = std::max(worst, std::abs(empirical_char_fn(batch, u) -
                                             char_fn(u, GammaParams(t))));
    }
    double bound = 5.0 / std::sqrt(static_cast<double>(n));
    double s = sw.seconds();
    return {1, "characteristic function", worst <= bound && s < 10.0,
            detail::fmt("max deviation %.3e <= %.3e; %.2fs < 10s", worst, bound, s), s};
}

inline CriterionResult criterion_sampler_moments(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    const double t = 100.0;
    const std::size_t n = 1000000;
    auto batch = sample_batch(GammaParams(t), n, o.seed, o.threads);
    auto m = sample_moments(batch.values);
    double dn = static_cast<double>(n);
    double mean_bound = 5.0 * std::sqrt(t / dn);
    double var_bound = 5.0 * t * std::sqrt(3.0 / dn);
    bool pass = std::abs(m.mean - t) <= mean_bound && std::abs(m.variance - t) <= var_bound;
    return {2, "sampler moments", pass,
            detail::fmt("|mean-t| = %.3e <= %.3e, |var-t| = %.3e <= %.3e", std::abs(m.mean - t),
                        mean_bound, std::abs(m.variance - t), var_bound),
            sw.seconds()};
}

inline CriterionResult criterion_zeta_cross(const AcceptanceOptions&)
{
    detail::Stopwatch sw;
    double worst = 0.0;
    for (double sigma : {0.3, 0.5, 0.7})
        for (double t : {0.0, 1.0, 10.0, 30.0}) {
            ZetaArgument arg(sigma, t);
            worst = std::max(worst, std::abs(zeta_em(arg).value - zeta_integral_repr(arg).value));
        }
    double basel = std::abs(zeta_em(ZetaArgument(2.0, 0.0)).value - pi * pi / 6.0);
    double s = sw.seconds();
    return {3, "zeta cross-validation", worst <= 1e-8 && basel <= 1e-10 && s < 60.0,
            detail::fmt("max |EM - integral| = %.3e <= 1e-8; |zeta(2) - pi^2/6| = %.3e <= 1e-10; "
                        "%.2fs < 60s",
                        worst, basel, s),
            s};
}

inline CriterionResult criterion_first_moment(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    double dev100 = std::abs(expected_zeta(100.0).deviation);
    bool decreasing = true;
    double prev = INFINITY;
    std::string devs;
    for (double t : {50.0, 100.0, 200.0, 400.0}) {
        double d = std::abs(expected_zeta(t).deviation);
        decreasing = decreasing && d < prev;
        prev = d;
        devs += detail::fmt("%s%.2e", devs.empty() ? "" : ", ", d);
    }
    MomentConfig cfg;
    cfg.threads = o.threads;
    auto est = estimate_moments(200.0, 10000, o.seed, cfg);
    double mc_dev = std::abs(est.first_moment - 1.0);
    bool pass = dev100 <= 1e-3 && decreasing && mc_dev <= 3.0 * est.se_first;
    return {4, "first moment", pass,
            detail::fmt("|E zeta - 1| at t=100: %.2e <= 1e-3; over 50..400: %s (%s); MC at t=200: "
                        "|mean - 1| = %.4f <= 3se = %.4f",
                        dev100, devs.c_str(), decreasing ? "decreasing" : "NOT decreasing", mc_dev,
                        3.0 * est.se_first),
            sw.seconds()};
}

inline std::vector<double> sweep_grid(bool quick)
{
    if (quick)
        return {1e3, 1e4, 1e5};
    return {1e3, 1e4, 1e5, 1e6};
}

inline CriterionResult criterion_main_theorem(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    auto ts = sweep_grid(o.quick);
    SweepOptions so;
    so.n_samples = 40000;
    so.target_se = 0.19;
    MomentConfig cfg;
    cfg.threads = o.threads;
    auto rows = sweep(ts, so, o.seed, cfg);
    auto rep = residual_analysis(rows);
    double worst_se = 0.0;
    for (const auto& r : rows)
        worst_se = std::max(worst_se, r.se);
    double s = sw.seconds();
    bool pass = worst_se <= 0.2 && rep.pass && rep.ratio_decreasing && s < 300.0;
    std::string msg = detail::fmt("max se2 = %.3f <= 0.2; C_fit = %.3f <= 3; |residual|/log t %s;"
                                     " %.1fs < 300s; residuals:",
                                     worst_se, rep.C_fit,
                                     rep.ratio_decreasing ? "decreasing" : "NOT decreasing", s);
    for (const auto& r : rows)
        msg += detail::fmt(" %.0e:%.3f", r.t, r.residual);
    return {5, "second moment sweep", pass, msg, s};
}

inline CriterionResult criterion_decomposition(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    const double tol = 1e-6;
    MomentConfig cfg;
    cfg.threads = o.threads;
    bool pass = true;
    std::string msg;
    for (double t : {20.0, 50.0}) {
        auto rep = decompose(t, tol, 40000, o.seed, cfg);
        double dev = std::abs(rep.combined - rep.mc_reference);
        double budget = 3.0 * rep.mc_se + rep.quad_budget + 2.0;
        pass = pass && dev <= budget;
        msg += detail::fmt("t=%g: |%.4f - %.4f| = %.4f <= %.4f; ", t, rep.combined,
                              rep.mc_reference, dev, budget);
    }
    double a2 = std::abs(compute_A2_direct(50.0, tol).value - compute_A2_closed(50.0, tol).value);
    pass = pass && a2 <= 2.0 * tol;
    msg += detail::fmt("|A2 direct - closed| at t=50 = %.2e <= %.1e", a2, 2.0 * tol);
    return {6, "decomposition identity", pass, msg, sw.seconds()};
}

inline CriterionResult criterion_diagonal(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    double harmonic = std::abs(diagonal_F_sum(100.0).real() - harmonic_diagonal(100.0));
    bool pass = harmonic <= 1e-12;
    std::string msg = detail::fmt("|sum F~ - sum 1/(n+1)| at t=100 = %.1e <= 1e-12; ", harmonic);
    for (double t : {1e3, 1e4, 1e5}) {
        double dev = std::abs((diagonal_F_sum(t) - diagonal_G_sum(t, o.threads)).real() -
                              std::log(t));
        pass = pass && dev <= 3.0;
        msg += detail::fmt("%st=%.0e: %.3f <= 3", t == 1e3 ? "" : ", ", t, dev);
    }
    return {7, "diagonal identity", pass, msg, sw.seconds()};
}

inline CriterionResult criterion_vdc(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    bool pass = true;
    std::string msg;
    for (auto lemma : {VdcLemma::sum_to_integrals, VdcLemma::single_integral,
                       VdcLemma::long_interval}) {
        auto corpus = vdc_corpus(lemma);
        double worst = 0.0;
        for (const auto& e : corpus) {
            auto [spec, params] = realize(e);
            worst = std::max(worst, verify_vdc(lemma, spec, params, {}, o.threads).ratio);
        }
        pass = pass && corpus.size() >= 20 && worst <= 10.0;
        msg += detail::fmt("lemma %d: %zu specs, max ratio %.3f <= 10; ", static_cast<int>(lemma),
                              corpus.size(), worst);
    }
    double s = sw.seconds();
    pass = pass && s < 120.0;
    msg += detail::fmt("%.1fs < 120s", s);
    return {8, "van der Corput suite", pass, msg, s};
}

inline std::vector<double> band_grid(bool quick)
{
    if (quick)
        return {1e4, 1e5};
    return {1e4, 1e5, 1e6};
}

inline CriterionResult criterion_band_sums(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    BandSumOptions bo;
    bo.threads = o.threads;
    bool pass = true;
    double worst5 = 0.0, worst12 = 0.0;
    for (double t : band_grid(o.quick)) {
        double L = std::log(t);
        for (double delta : {0.25, 0.5, 1.0})
            for (const auto& r : band_sums_both(t, delta, bo)) {
                double r5 = std::abs(r.S5) / (std::sqrt(L) * std::log(L));
                double r12 = (std::abs(r.S1) + std::abs(r.S2)) / std::log(L);
                worst5 = std::max(worst5, r5);
                worst12 = std::max(worst12, r12);
                pass = pass && r5 <= 3.0 && r12 <= 3.0;
            }
    }
    return {9, "band sums", pass,
            detail::fmt("max |S5|/(sqrt(log t) loglog t) = %.4f <= 3; max (|S1|+|S2|)/loglog t = "
                        "%.4f <= 3 (both variants, delta in {0.25, 0.5, 1})",
                        worst5, worst12),
            sw.seconds()};
}

// Serialized outputs of each computational path, for the reproducibility check.
inline std::vector<std::string> reproducibility_outputs(unsigned threads, std::uint64_t seed)
{
    std::vector<std::string> out;
    RunConfig cfg;
    cfg.seed = seed;

    cfg.subcommand = "sample";
    out.push_back(csv_document(sample_table(cfg, sample_batch(GammaParams(10.0), 2000, seed, threads))));

    MomentConfig mc;
    mc.threads = threads;
    cfg.subcommand = "moment";
    out.push_back(json_document(cfg, to_json(estimate_moments(1e3, 4000, seed, mc))));

    cfg.subcommand = "sweep";
    std::vector<double> ts{1e3, 1e4, 1e5};
    auto rows = sweep(ts, 2000, seed, mc);
    out.push_back(csv_document(sweep_table(cfg, rows)));

    cfg.subcommand = "vdc";
    CsvTable vt;
    vt.config = cfg;
    vt.columns = vdc_columns();
    for (auto lemma : {VdcLemma::sum_to_integrals, VdcLemma::single_integral,
                       VdcLemma::long_interval}) {
        auto entry = vdc_corpus(lemma).back();
        auto [spec, params] = realize(entry);
        vt.rows.push_back(vdc_row(spec, entry.args, params, verify_vdc(lemma, spec, params, {}, threads)));
    }
    out.push_back(csv_document(vt));

    cfg.subcommand = "decompose";
    BandSumOptions bo;
    bo.threads = threads;
    auto both = band_sums_both(2e4, 0.5, bo);
    Json j;
    j["band_sums"] = Json::array({to_json(both[0]), to_json(both[1])});
    j["diagonal_G"] = to_json(diagonal_G_sum(1e4, threads));
    auto region = RegionSpec::truncated(40.0, 200.0);
    j["lattice_G"] = to_json(sum_F_G(40.0, region, LatticeSum::G, 5e6, threads));
    j["mc"] = mc_shifted_second_moment(50.0, 2000, seed, mc).mean;
    out.push_back(json_document(cfg, j));
    return out;
}

inline CriterionResult criterion_reproducibility(const AcceptanceOptions& o)
{
    detail::Stopwatch sw;
    auto a = reproducibility_outputs(1, o.seed);
    auto b = reproducibility_outputs(4, o.seed);
    auto c = reproducibility_outputs(4, o.seed);
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] || b[i] != c[i])
            ++mismatched;
    return {10, "reproducibility", mismatched == 0,
            detail::fmt("%zu of %zu serialized outputs identical across repeat runs and 1 vs 4 "
                        "threads",
                        a.size() - mismatched, a.size()),
            sw.seconds()};
}

using CriterionFn = std::function<CriterionResult(const AcceptanceOptions&)>;

inline const std::vector<CriterionFn>& acceptance_criteria()
{
    static const std::vector<CriterionFn> all = {
        criterion_char_fn,     criterion_sampler_moments, criterion_zeta_cross,
        criterion_first_moment, criterion_main_theorem,   criterion_decomposition,
        criterion_diagonal,     criterion_vdc,            criterion_band_sums,
        criterion_reproducibility};
    return all;
}

// Runs one criterion; library exceptions count as a failure with the message.
inline CriterionResult run_criterion(std::size_t index, const AcceptanceOptions& o)
{
    const auto& fn = acceptance_criteria().at(index);
    try {
        return fn(o);
    } catch (const std::exception& e) {
        return {static_cast<int>(index + 1), "criterion " + std::to_string(index + 1), false,
                std::string("exception: ") + e.what(), 0.0};
    }
}

inline std::string format_result(const CriterionResult& r)
{
    return detail::fmt("[%s] criterion %d (%s): ", r.pass ? "PASS" : "FAIL", r.id,
                       r.name.c_str()) +
           r.detail;
}

inline Json to_json(const CriterionResult& r)
{
    Json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    return j;
}

} // namespace zs
