#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "zeta_sampler/oscillatory.hpp"

using zs::Complex;

namespace {

zs::RealFn constant(double c)
{
    return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

zs::RealFn linear(double c)
{
    return {[c](double x) { return c * x; }, [c](double) { return c; }, [](double) { return 0.0; }};
}

zs::RealFn quadratic(double scale)
{
    return {[scale](double x) { return scale * x * x; }, [scale](double x) { return 2 * scale * x; },
            {}};
}

double fitted_constant(zs::VdcLemma lemma)
{
    double worst = 0.0;
    for (const auto& entry : zs::vdc_corpus(lemma)) {
        auto [spec, params] = zs::realize(entry);
        auto check = zs::verify_vdc(lemma, spec, params);
        EXPECT_TRUE(std::isfinite(check.ratio)) << entry.family;
        worst = std::max(worst, check.ratio);
    }
    return worst;
}

} // namespace

TEST(ExpSumDirect, CountsIntegers)
{
    zs::ExpSumSpec spec{"count", constant(0.0), constant(1.0), 0.0, 10.5};
    EXPECT_LT(std::abs(zs::exp_sum_direct(spec) - Complex(10.0, 0.0)), 1e-15);
}

TEST(ExpSumDirect, EndpointsAreStrict)
{
    zs::ExpSumSpec spec{"count", constant(0.0), constant(1.0), 0.0, 10.0};
    EXPECT_LT(std::abs(zs::exp_sum_direct(spec) - Complex(9.0, 0.0)), 1e-15);
}

TEST(ExpSumDirect, AlternatingSigns)
{
    // e(n/2) = (-1)^n, n = 1..2k cancels in pairs.
    for (int k : {1, 2, 7, 100}) {
        zs::ExpSumSpec spec{"alt", linear(0.5), constant(1.0), 0.0, 2.0 * k + 0.5};
        EXPECT_LT(std::abs(zs::exp_sum_direct(spec)), 1e-12) << k;
    }
}

TEST(ExpSumDirect, GaussSumAgainstHighPrecision)
{
    zs::ExpSumSpec spec{"gauss", quadratic(1.0 / 200.0), constant(1.0), 0.0, 100.0};
    Complex want{6.071067811865475244, 7.071067811865475244};
    EXPECT_LT(std::abs(zs::exp_sum_direct(spec) - want), 1e-10);
}

TEST(ExpSumDirect, RejectsHugeInterval)
{
    zs::ExpSumSpec spec{"big", constant(0.0), constant(1.0), 0.0, 2e9};
    EXPECT_THROW(zs::exp_sum_direct(spec), zs::DomainError);
}

TEST(ExpSumDirect, PermutationInvariant)
{
    auto spec = zs::make_vdc_family("quadratic-sqrt", {{"N", 5000.0}});
    Complex forward = zs::exp_sum_direct(spec);
    std::vector<int> order;
    for (int n = 2; n < 5000; ++n)
        order.push_back(n);
    std::mt19937 rng(1);
    std::shuffle(order.begin(), order.end(), rng);
    zs::CompensatedComplexSum acc;
    for (int n : order)
        acc.add(spec.g.value(n) * std::polar(1.0, zs::two_pi * spec.f.value(n)));
    EXPECT_LT(std::abs(acc.value() - forward), 1e-12);
}

TEST(OscillatoryIntegral, ConstantIntegrand)
{
    auto r = zs::oscillatory_integral(constant(1.0), constant(0.0), 2.0, 7.5, 0, {.tol = 1e-12});
    EXPECT_LT(std::abs(r.value - Complex(5.5, 0.0)), 1e-12);
}

TEST(OscillatoryIntegral, LinearPhaseClosedForm)
{
    for (double c : {0.3, 2.0, 17.25}) {
        double a = 0.5, b = 9.0;
        auto r = zs::oscillatory_integral(constant(1.0), linear(c), a, b, 0, {.tol = 1e-11});
        Complex want = (std::polar(1.0, zs::two_pi * c * b) - std::polar(1.0, zs::two_pi * c * a)) /
                       Complex(0.0, zs::two_pi * c);
        EXPECT_LT(std::abs(r.value - want), 1e-11) << c;
        EXPECT_LE(r.error, 1e-11);
    }
}

TEST(OscillatoryIntegral, ShiftActsAsLinearPhase)
{
    auto shifted = zs::oscillatory_integral(constant(1.0), constant(0.0), 0.0, 3.3, 2, {.tol = 1e-12});
    auto direct = zs::oscillatory_integral(constant(1.0), linear(-2.0), 0.0, 3.3, 0, {.tol = 1e-12});
    EXPECT_LT(std::abs(shifted.value - direct.value), 2e-12);
}

TEST(OscillatoryIntegral, FresnelAgainstSeries)
{
    // int_0^10 e(x^2/2) dx = (C(10 sqrt 2) + i S(10 sqrt 2)) / sqrt 2
    auto r = zs::oscillatory_integral(constant(1.0), quadratic(0.5), 0.0, 10.0, 0, {.tol = 1e-10});
    Complex want{0.3535280612596454834, 0.3376380172166186912};
    EXPECT_LT(std::abs(r.value - want), 1e-10);
}

TEST(OscillatoryIntegral, HalvingToleranceStaysWithinPreviousTolerance)
{
    auto spec = zs::make_vdc_family("step3", {{"t", 1e3}, {"n", 1e3}});
    for (long long m : {-3LL, 0LL, 4LL}) {
        double tol = 1e-6;
        Complex previous = zs::oscillatory_integral(spec.g, spec.f, spec.a, spec.b, m, {.tol = tol}).value;
        for (int k = 0; k < 6; ++k) {
            tol *= 0.5;
            Complex next = zs::oscillatory_integral(spec.g, spec.f, spec.a, spec.b, m, {.tol = tol}).value;
            EXPECT_LE(std::abs(next - previous), 2.0 * tol) << "m=" << m << " tol=" << tol;
            previous = next;
        }
    }
}

TEST(OscillatoryIntegral, PanelBudgetEnforced)
{
    zs::OscillatoryOptions opts;
    opts.max_panels = 10;
    EXPECT_THROW(zs::oscillatory_integral(constant(1.0), linear(50.0), 0.0, 10.0, 0, opts),
                 zs::QuadratureError);
    EXPECT_THROW(zs::oscillatory_integral(constant(1.0), linear(1.0), 0.0, 1.0, 0, {.tol = 0.0}),
                 zs::DomainError);
}

TEST(VdcInvariants, NumericalSecondDerivative)
{
    zs::RealFn f{[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }, {}};
    EXPECT_NEAR(zs::second_derivative(f, 1.3), -std::sin(1.3), 1e-9);
}

TEST(VdcInvariants, ConvexityRequired)
{
    zs::ExpSumSpec concave{"concave", quadratic(-0.01), constant(1.0), 1.0, 50.0};
    auto p = zs::derive_params(concave);
    EXPECT_THROW(zs::vdc_lemma21(concave, p), zs::InvariantError);
}

TEST(VdcInvariants, LinearPhaseRejectedBySingleIntegralForm)
{
    zs::ExpSumSpec spec{"linear", linear(0.25), constant(1.0), 1.0, 50.0};
    zs::VdCParams p = zs::derive_params(spec);
    EXPECT_THROW(zs::vdc_lemma22(spec, p), zs::InvariantError);

    // Numerical fallback for f'' must also see the vanishing curvature.
    zs::RealFn no_second{[](double x) { return x / 4; }, [](double) { return 0.25; }, {}};
    zs::ExpSumSpec numeric{"linear", no_second, constant(1.0), 1.0, 50.0};
    EXPECT_THROW(zs::vdc_lemma22(numeric, p), zs::InvariantError);
}

TEST(VdcInvariants, SlopeLimit)
{
    zs::ExpSumSpec steep{"steep", quadratic(0.01), constant(1.0), 1.0, 100.0}; // f' up to 2
    auto p = zs::derive_params(steep);
    EXPECT_THROW(zs::vdc_lemma22(steep, p), zs::InvariantError);
}

TEST(VdcInvariants, ShortIntervalRejectedByLongForm)
{
    zs::ExpSumSpec spec{"short", quadratic(0.1), constant(1.0), 3.0, 5.0};
    auto p = zs::derive_params(spec, 0.5, 0.5, 2.0);
    EXPECT_THROW(zs::vdc_lemma23(spec, p), zs::InvariantError);
}

TEST(VdcInvariants, ParameterValidation)
{
    zs::VdCParams p;
    p.alpha = 1.0;
    p.beta = 0.0;
    EXPECT_THROW(zs::validate(p), zs::DomainError);
    p.beta = 2.0;
    p.epsilon = 1.5;
    EXPECT_THROW(zs::validate(p), zs::DomainError);
    p.epsilon = 0.5;
    p.eta = 1.0;
    EXPECT_THROW(zs::validate(p), zs::DomainError);
}

TEST(VdcParams, VariationBound)
{
    auto spec = zs::make_vdc_family("quadratic-sqrt", {{"N", 100.0}});
    auto p = zs::derive_params(spec);
    // |g(100)| + (g(1) - g(100)) = 1 for a decreasing amplitude
    EXPECT_NEAR(p.G, 1.0, 1e-10);
    EXPECT_NEAR(p.G2, 1.0, 1e-12);
    EXPECT_NEAR(p.alpha, 0.01, 1e-15);
    EXPECT_NEAR(p.beta, 1.0, 1e-15);
}

TEST(VdcLemma21, QuadraticAtFifty)
{
    auto spec = zs::make_vdc_family("quadratic", {{"N", 50.0}});
    auto p = zs::derive_params(spec, 0.5);
    auto c = zs::verify_vdc(zs::VdcLemma::sum_to_integrals, spec, p);
    EXPECT_EQ(c.transform.term_count, 2u); // m = 0, 1
    EXPECT_LE(c.ratio, 10.0);
}

TEST(VdcLemma21, SingleLatticePoint)
{
    // f' in [0.1, 0.3] and eps = 0.5: only m = 0 lies in (alpha - eps, beta + eps).
    auto spec = zs::make_vdc_family("quadratic", {{"N", 60.5}, {"a", 20.5}, {"L", 200.0}});
    auto p = zs::derive_params(spec, 0.5);
    auto t = zs::vdc_lemma21(spec, p);
    EXPECT_EQ(t.term_count, 1u);
    EXPECT_EQ(t.m_lo, 0);
    auto single = zs::oscillatory_integral(spec.g, spec.f, spec.a, spec.b, 0);
    EXPECT_LT(std::abs(t.value - single.value), 1e-9);
}

TEST(VdcLemma21, SqrtAmplitudeAtHundred)
{
    auto spec = zs::make_vdc_family("quadratic-sqrt", {{"N", 100.0}});
    auto c = zs::verify_vdc(zs::VdcLemma::sum_to_integrals, spec, zs::derive_params(spec, 0.5));
    EXPECT_LE(c.ratio, 10.0);
}

TEST(VdcLemma21, ThreadCountDoesNotChangeValue)
{
    auto spec = zs::make_vdc_family("cubic", {{"N", 80.5}, {"L", 20.0}});
    auto p = zs::derive_params(spec, 0.5);
    auto one = zs::vdc_lemma21(spec, p, {}, 1);
    auto four = zs::vdc_lemma21(spec, p, {}, 4);
    EXPECT_EQ(one.value, four.value);
    EXPECT_GT(one.term_count, 10u);
}

TEST(VdcLemma22, HalfSlopeQuadratic)
{
    for (double amp : {0.0, -0.5}) {
        auto spec = zs::make_vdc_family("quadratic", {{"N", 200.0}, {"L", 400.0}, {"amp", amp}});
        auto p = zs::derive_params(spec, 0.5, 0.5);
        auto c = zs::verify_vdc(zs::VdcLemma::single_integral, spec, p);
        EXPECT_LE(c.deviation, 10.0 * p.G * 2.0) << amp;
    }
}

TEST(VdcLemma23, EtaTenQuadratic)
{
    auto spec = zs::make_vdc_family("quadratic", {{"N", 100.0}});
    auto p = zs::derive_params(spec, 0.5, 0.5, 10.0);
    auto c = zs::verify_vdc(zs::VdcLemma::long_interval, spec, p);
    EXPECT_LE(c.ratio, 10.0);
}

TEST(VdcLemma23, StepThreeFamily)
{
    double t = 1e3;
    auto spec = zs::make_vdc_family("step3", {{"t", t}, {"n", 1e3}});
    auto p = zs::derive_params(spec, 0.5, 0.5, std::log(t));
    auto c = zs::verify_vdc(zs::VdcLemma::long_interval, spec, p);
    EXPECT_LE(c.deviation, c.transform.error_budget);
}

TEST(VdcCorpus, AtLeastTwentySpecsPerLemma)
{
    for (auto lemma : {zs::VdcLemma::sum_to_integrals, zs::VdcLemma::single_integral,
                       zs::VdcLemma::long_interval})
        EXPECT_GE(zs::vdc_corpus(lemma).size(), 20u);
}

TEST(VdcCorpus, SumToIntegralsConstant)
{
    double c = fitted_constant(zs::VdcLemma::sum_to_integrals);
    RecordProperty("fitted_C", std::to_string(c));
    EXPECT_LE(c, 10.0);
}

TEST(VdcCorpus, SingleIntegralConstant)
{
    double c = fitted_constant(zs::VdcLemma::single_integral);
    RecordProperty("fitted_C", std::to_string(c));
    EXPECT_LE(c, 10.0);
}

TEST(VdcCorpus, LongIntervalConstant)
{
    double c = fitted_constant(zs::VdcLemma::long_interval);
    RecordProperty("fitted_C", std::to_string(c));
    EXPECT_LE(c, 10.0);
}

TEST(VdcFamilies, UnknownNameAndBadArgs)
{
    EXPECT_THROW(zs::make_vdc_family("nope", {}), zs::ConfigError);
    EXPECT_THROW(zs::FamilyArgs::parse("N=abc"), zs::ConfigError);
    EXPECT_THROW(zs::FamilyArgs::parse("N"), zs::ConfigError);
    auto args = zs::FamilyArgs::parse("N=50,amp=-0.5");
    EXPECT_EQ(args.get("N", 0.0), 50.0);
    EXPECT_EQ(args.get("amp", 0.0), -0.5);
    EXPECT_EQ(args.get("missing", 3.0), 3.0);
    for (const auto& name : zs::vdc_family_names())
        EXPECT_NO_THROW(zs::make_vdc_family(name, {}));
}
