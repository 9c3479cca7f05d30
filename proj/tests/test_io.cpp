#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "zeta_sampler/io.hpp"

namespace {

zs::RunConfig config_for(const std::string& sub)
{
    zs::RunConfig c;
    c.subcommand = sub;
    c.seed = 7;
    c.output_path = "out.dat";
    c.args = zs::Json{{"t", 1000.0}, {"samples", 500}};
    c.tolerances = zs::Json{{"quad", 1e-9}};
    return c;
}

void expect_same_config(const zs::RunConfig& a, const zs::RunConfig& b)
{
    EXPECT_EQ(a.subcommand, b.subcommand);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.output_path, b.output_path);
    EXPECT_EQ(a.args, b.args);
    EXPECT_EQ(a.tolerances, b.tolerances);
}

} // namespace

TEST(Io, NumbersRoundTripExactly)
{
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0),
                     std::numeric_limits<double>::denorm_min()})
        EXPECT_EQ(zs::parse_double(zs::format_number(x)), x);
    EXPECT_EQ(zs::parse_uint(zs::format_number(std::uint64_t(18446744073709551615ull))),
              18446744073709551615ull);
    EXPECT_THROW(zs::parse_double("1.5x"), zs::ConfigError);
    EXPECT_THROW(zs::parse_uint("-3"), zs::ConfigError);
}

TEST(Io, MomentJsonRoundTrip)
{
    zs::MomentConfig mc;
    mc.threads = 2;
    auto est = zs::estimate_moments(1e3, 300, 11, mc);
    auto cfg = config_for("moment");
    auto text = zs::json_document(cfg, zs::to_json(est));
    auto doc = zs::parse_json_document(text);
    expect_same_config(doc.config, cfg);
    auto back = zs::moment_estimate_from_json(doc.result);
    EXPECT_EQ(back.t, est.t);
    EXPECT_EQ(back.n_samples, est.n_samples);
    EXPECT_EQ(back.seed, est.seed);
    EXPECT_EQ(back.first_moment, est.first_moment);
    EXPECT_EQ(back.second_moment, est.second_moment);
    EXPECT_EQ(back.se_first, est.se_first);
    EXPECT_EQ(back.se_second, est.se_second);
    EXPECT_EQ(zs::json_document(doc.config, zs::to_json(back)), text);
}

TEST(Io, DecompositionJsonRoundTrip)
{
    zs::DecompositionReport r;
    r.t = 20.0;
    r.A1 = {1.25, 1e-17};
    r.A2 = {0.1 / 3.0, -0.7};
    r.A2_direct = {0.1 / 3.0 + 1e-12, -0.7};
    r.A3 = {0.33, 2e-9};
    r.combined = 1.3335;
    r.combined_imag = -4e-10;
    r.mc_reference = 1.297;
    r.mc_se = 0.0021;
    r.mc_samples = 40000;
    r.quad_tol = 1e-6;
    r.quad_budget = 3.1e-7;
    auto cfg = config_for("decompose");
    auto text = zs::json_document(cfg, zs::to_json(r));
    auto back = zs::decomposition_from_json(zs::parse_json_document(text).result);
    EXPECT_EQ(zs::json_document(cfg, zs::to_json(back)), text);
    EXPECT_EQ(back.A2_direct, r.A2_direct);
    EXPECT_EQ(back.mc_samples, r.mc_samples);
}

TEST(Io, BandSumJsonAndCsvRoundTrip)
{
    auto both = zs::band_sums_both(400.0, 0.5);
    std::vector<zs::BandSumReport> reports(both.begin(), both.end());
    auto cfg = config_for("decompose");

    for (const auto& r : reports) {
        auto back = zs::band_sum_from_json(zs::to_json(r));
        EXPECT_EQ(back.variant, r.variant);
        EXPECT_EQ(back.S5, r.S5);
        EXPECT_EQ(back.S6, r.S6);
    }

    auto text = zs::csv_document(zs::band_sum_table(cfg, reports));
    auto table = zs::parse_csv_document(text);
    expect_same_config(table.config, cfg);
    auto back = zs::band_sums_from_table(table);
    ASSERT_EQ(back.size(), reports.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].t, reports[i].t);
        EXPECT_EQ(back[i].delta, reports[i].delta);
        EXPECT_EQ(back[i].variant, reports[i].variant);
        EXPECT_EQ(back[i].S1, reports[i].S1);
        EXPECT_EQ(back[i].S2, reports[i].S2);
        EXPECT_EQ(back[i].S5, reports[i].S5);
        EXPECT_EQ(back[i].S6, reports[i].S6);
    }
    EXPECT_EQ(zs::csv_document(zs::band_sum_table(cfg, back)), text);
}

TEST(Io, SweepCsvRoundTrip)
{
    std::vector<double> ts{1e3, 1e4, 1e5};
    auto rows = zs::sweep(ts, 200, 3);
    auto cfg = config_for("sweep");
    auto text = zs::csv_document(zs::sweep_table(cfg, rows));
    EXPECT_EQ(text.rfind("# zeta-sampler v1\n", 0), 0u);
    auto back = zs::sweep_rows_from_table(zs::parse_csv_document(text));
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(back[i].t, rows[i].t);
        EXPECT_EQ(back[i].estimate.first_moment, rows[i].estimate.first_moment);
        EXPECT_EQ(back[i].estimate.second_moment, rows[i].estimate.second_moment);
        EXPECT_EQ(back[i].estimate.se_first, rows[i].estimate.se_first);
        EXPECT_EQ(back[i].se, rows[i].se);
        EXPECT_EQ(back[i].residual, rows[i].residual);
        EXPECT_EQ(back[i].band, rows[i].band);
    }
    EXPECT_EQ(zs::csv_document(zs::sweep_table(cfg, back)), text);
}

TEST(Io, SampleCsvRoundTrip)
{
    auto batch = zs::sample_batch(zs::GammaParams(3.5), 1000, 99, 1);
    auto cfg = config_for("sample");
    auto text = zs::csv_document(zs::sample_table(cfg, batch));
    auto values = zs::sample_values_from_table(zs::parse_csv_document(text));
    EXPECT_EQ(values, batch.values);
}

TEST(Io, VdcRowMatchesColumns)
{
    auto entry = zs::vdc_corpus(zs::VdcLemma::single_integral).front();
    auto [spec, params] = zs::realize(entry);
    auto check = zs::verify_vdc(zs::VdcLemma::single_integral, spec, params);
    zs::CsvTable table;
    table.config = config_for("vdc");
    table.columns = zs::vdc_columns();
    table.rows.push_back(zs::vdc_row(spec, entry.args, params, check));
    auto back = zs::parse_csv_document(zs::csv_document(table));
    ASSERT_EQ(back.rows.size(), 1u);
    EXPECT_EQ(back.rows[0][back.column("lemma")], "22");
    EXPECT_EQ(zs::parse_double(back.rows[0][back.column("ratio")]), check.ratio);
    EXPECT_EQ(back.rows[0][back.column("params")].find(','), std::string::npos);
}

TEST(Io, RejectsMalformedDocuments)
{
    EXPECT_THROW(zs::parse_csv_document("t,n\n1,2\n"), zs::ConfigError);
    EXPECT_THROW(zs::parse_csv_document("# zeta-sampler v1\nt,n\n"), zs::ConfigError);
    auto good = zs::csv_document(zs::sample_table(config_for("sample"),
                                                  zs::sample_batch(zs::GammaParams(1.0), 3, 1, 1)));
    EXPECT_THROW(zs::parse_csv_document(good + "1,2,3\n"), zs::ConfigError);
    EXPECT_THROW(zs::parse_json_document("{\"format\": \"other\"}"), zs::ConfigError);
    EXPECT_THROW(zs::parse_json_document("{not json"), zs::ConfigError);
    zs::CsvTable t;
    t.columns = {"a", "b"};
    t.rows = {{"1"}};
    EXPECT_THROW(zs::csv_document(t), zs::InvariantError);
}

TEST(Io, ThreadCountNeverReachesOutput)
{
    auto a = zs::csv_document(zs::sample_table(config_for("sample"),
                                               zs::sample_batch(zs::GammaParams(10.0), 500, 5, 1)));
    auto b = zs::csv_document(zs::sample_table(config_for("sample"),
                                               zs::sample_batch(zs::GammaParams(10.0), 500, 5, 4)));
    EXPECT_EQ(a, b);
}
