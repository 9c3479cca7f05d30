#pragma once

// JSON and CSV persistence. Every file starts with the format tag and embeds
// the run configuration; numbers are written in shortest round-trip form so
// that re-reading a file reproduces the in-memory report bit for bit.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "decomposition.hpp"
#include "errors.hpp"
#include "gamma_process.hpp"
#include "moments.hpp"
#include "oscillatory.hpp"
#include "zeta.hpp"

namespace zs {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view format_tag = "zeta-sampler v1";

// What produced a file. Thread counts are deliberately absent: they never
// change a result.
struct RunConfig
{
    std::string subcommand;
    std::uint64_t seed = 42;
    std::string output_path;
    Json args = Json::object();       // resolved subcommand arguments
    Json tolerances = Json::object(); // named tolerance overrides
};

inline Json to_json(const RunConfig& c)
{
    Json j;
    j["subcommand"] = c.subcommand;
    j["seed"] = c.seed;
    j["output_path"] = c.output_path;
    j["args"] = c.args;
    j["tolerances"] = c.tolerances;
    return j;
}

inline RunConfig run_config_from_json(const Json& j)
{
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.output_path = j.at("output_path").get<std::string>();
    c.args = j.at("args");
    c.tolerances = j.at("tolerances");
    return c;
}

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j)
{
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

// { "format": ..., "config": ..., "result": ... } followed by a newline.
inline std::string json_document(const RunConfig& config, const Json& result)
{
    Json doc;
    doc["format"] = format_tag;
    doc["config"] = to_json(config);
    doc["result"] = result;
    return doc.dump(2) + "\n";
}

struct JsonDocument
{
    RunConfig config;
    Json result;
};

inline JsonDocument parse_json_document(std::string_view text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON document: ") + e.what());
    }
    if (!doc.contains("format") || doc["format"] != format_tag)
        throw ConfigError("JSON document lacks the zeta-sampler v1 format tag");
    return {run_config_from_json(doc.at("config")), doc.at("result")};
}

// ---------------------------------------------------------------------------
// Report <-> JSON

inline Json to_json(const ZetaValue& v, const ZetaArgument& arg)
{
    Json j;
    j["sigma"] = arg.sigma;
    j["t"] = arg.t;
    j["method"] = std::string(to_string(v.method));
    j["value"] = to_json(v.value);
    j["error_estimate"] = v.error_estimate;
    j["terms"] = v.terms;
    return j;
}

inline Json to_json(const MomentEstimate& e)
{
    Json j;
    j["t"] = e.t;
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    j["first_moment"] = to_json(e.first_moment);
    j["second_moment"] = e.second_moment;
    j["se_first"] = e.se_first;
    j["se_second"] = e.se_second;
    return j;
}

inline MomentEstimate moment_estimate_from_json(const Json& j)
{
    MomentEstimate e;
    e.t = j.at("t").get<double>();
    e.n_samples = j.at("n_samples").get<std::size_t>();
    e.seed = j.at("seed").get<std::uint64_t>();
    e.first_moment = complex_from_json(j.at("first_moment"));
    e.second_moment = j.at("second_moment").get<double>();
    e.se_first = j.at("se_first").get<double>();
    e.se_second = j.at("se_second").get<double>();
    return e;
}

inline Json to_json(const DecompositionReport& r)
{
    Json j;
    j["t"] = r.t;
    j["A1"] = to_json(r.A1);
    j["A2"] = to_json(r.A2);
    j["A2_direct"] = to_json(r.A2_direct);
    j["A3"] = to_json(r.A3);
    j["combined"] = r.combined;
    j["combined_imag"] = r.combined_imag;
    j["mc_reference"] = r.mc_reference;
    j["mc_se"] = r.mc_se;
    j["mc_samples"] = r.mc_samples;
    j["quad_tol"] = r.quad_tol;
    j["quad_budget"] = r.quad_budget;
    return j;
}

inline DecompositionReport decomposition_from_json(const Json& j)
{
    DecompositionReport r;
    r.t = j.at("t").get<double>();
    r.A1 = complex_from_json(j.at("A1"));
    r.A2 = complex_from_json(j.at("A2"));
    r.A2_direct = complex_from_json(j.at("A2_direct"));
    r.A3 = complex_from_json(j.at("A3"));
    r.combined = j.at("combined").get<double>();
    r.combined_imag = j.at("combined_imag").get<double>();
    r.mc_reference = j.at("mc_reference").get<double>();
    r.mc_se = j.at("mc_se").get<double>();
    r.mc_samples = j.at("mc_samples").get<std::size_t>();
    r.quad_tol = j.at("quad_tol").get<double>();
    r.quad_budget = j.at("quad_budget").get<double>();
    return r;
}

inline Json to_json(const BandSumReport& r)
{
    Json j;
    j["t"] = r.t;
    j["delta"] = r.delta;
    j["variant"] = to_string(r.variant);
    j["S5"] = to_json(r.S5);
    j["S1"] = to_json(r.S1);
    j["S2"] = to_json(r.S2);
    j["S6"] = to_json(r.S6);
    return j;
}

inline BandSumReport band_sum_from_json(const Json& j)
{
    BandSumReport r;
    r.t = j.at("t").get<double>();
    r.delta = j.at("delta").get<double>();
    r.variant = parse_damping_variant(j.at("variant").get<std::string>());
    r.S5 = complex_from_json(j.at("S5"));
    r.S1 = complex_from_json(j.at("S1"));
    r.S2 = complex_from_json(j.at("S2"));
    r.S6 = complex_from_json(j.at("S6"));
    return r;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_number(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t x) { return std::to_string(x); }

inline double parse_double(const std::string& s)
{
    double x = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("CSV: '" + s + "' is not a number");
    return x;
}

inline std::uint64_t parse_uint(const std::string& s)
{
    std::uint64_t x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("CSV: '" + s + "' is not an unsigned integer");
    return x;
}

struct CsvTable
{
    RunConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw ConfigError("CSV: missing column '" + std::string(name) + "'");
    }
};

// Fields never contain commas or quotes (numbers and identifiers only).
inline std::string csv_document(const CsvTable& table)
{
    std::ostringstream out;
    out << "# " << format_tag << "\n";
    out << "# config: " << to_json(table.config).dump() << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw InvariantError("CSV: row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

inline CsvTable parse_csv_document(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "# " + std::string(format_tag))
        throw ConfigError("CSV document lacks the zeta-sampler v1 header");
    CsvTable table;
    const std::string config_prefix = "# config: ";
    if (!std::getline(in, line) || line.rfind(config_prefix, 0) != 0)
        throw ConfigError("CSV document lacks the embedded configuration");
    try {
        table.config = run_config_from_json(Json::parse(line.substr(config_prefix.size())));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("CSV: bad embedded configuration: ") + e.what());
    }
    if (!std::getline(in, line))
        throw ConfigError("CSV document lacks a column header");
    table.columns = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto row = split_csv_line(line);
        if (row.size() != table.columns.size())
            throw ConfigError("CSV: row width does not match the header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

// Sweep: t, n, seed, first_re, first_im, second, se2, log_t, residual, band.
inline CsvTable sweep_table(const RunConfig& config, std::span<const SweepRow> rows)
{
    CsvTable table;
    table.config = config;
    table.columns = {"t",      "n",   "seed",  "first_re", "first_im", "second",
                     "se2",    "log_t", "residual", "band",  "se1"};
    for (const auto& r : rows) {
        const auto& e = r.estimate;
        table.rows.push_back({format_number(r.t), format_number(std::uint64_t(e.n_samples)),
                              format_number(e.seed), format_number(e.first_moment.real()),
                              format_number(e.first_moment.imag()), format_number(e.second_moment),
                              format_number(r.se), format_number(r.log_t),
                              format_number(r.residual), format_number(r.band),
                              format_number(e.se_first)});
    }
    return table;
}

inline std::vector<SweepRow> sweep_rows_from_table(const CsvTable& table)
{
    std::vector<SweepRow> rows;
    const std::size_t c_t = table.column("t"), c_n = table.column("n"),
                      c_seed = table.column("seed"), c_re = table.column("first_re"),
                      c_im = table.column("first_im"), c_m2 = table.column("second"),
                      c_se2 = table.column("se2"), c_lt = table.column("log_t"),
                      c_res = table.column("residual"), c_band = table.column("band"),
                      c_se1 = table.column("se1");
    for (const auto& f : table.rows) {
        SweepRow r;
        r.t = parse_double(f[c_t]);
        r.estimate.t = r.t;
        r.estimate.n_samples = parse_uint(f[c_n]);
        r.estimate.seed = parse_uint(f[c_seed]);
        r.estimate.first_moment = {parse_double(f[c_re]), parse_double(f[c_im])};
        r.estimate.second_moment = parse_double(f[c_m2]);
        r.se = parse_double(f[c_se2]);
        r.estimate.se_second = r.se;
        r.estimate.se_first = parse_double(f[c_se1]);
        r.log_t = parse_double(f[c_lt]);
        r.residual = parse_double(f[c_res]);
        r.band = parse_double(f[c_band]);
        rows.push_back(r);
    }
    return rows;
}

// Sample batch: index, value.
inline CsvTable sample_table(const RunConfig& config, const SampleBatch& batch)
{
    CsvTable table;
    table.config = config;
    table.columns = {"index", "value"};
    table.rows.reserve(batch.values.size());
    for (std::size_t i = 0; i < batch.values.size(); ++i)
        table.rows.push_back({format_number(std::uint64_t(i)), format_number(batch.values[i])});
    return table;
}

inline std::vector<double> sample_values_from_table(const CsvTable& table)
{
    std::vector<double> values;
    const std::size_t c_i = table.column("index"), c_v = table.column("value");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (parse_uint(table.rows[r][c_i]) != r)
            throw ConfigError("CSV: sample indices out of order");
        values.push_back(parse_double(table.rows[r][c_v]));
    }
    return values;
}

// Van der Corput checks: one row per spec.
inline std::vector<std::string> vdc_columns()
{
    return {"lemma",   "family",   "params",      "a",           "b",           "alpha",
            "beta",    "epsilon",  "theta",       "eta",         "G",           "G1",
            "G2",      "direct_re", "direct_im",  "transform_re", "transform_im", "terms",
            "budget",  "quad_error", "deviation", "ratio"};
}

// Family arguments as "k=v;k=v" (semicolons keep the CSV unquoted).
inline std::string format_family_args(const FamilyArgs& args)
{
    std::string out;
    for (const auto& [k, v] : args.values()) {
        if (!out.empty())
            out += ';';
        out += k + "=" + format_number(v);
    }
    return out;
}

inline std::vector<std::string> vdc_row(const ExpSumSpec& spec, const FamilyArgs& args,
                                        const VdCParams& p, const VdcCheck& c)
{
    return {std::to_string(static_cast<int>(c.lemma)),
            spec.family,
            format_family_args(args),
            format_number(spec.a),
            format_number(spec.b),
            format_number(p.alpha),
            format_number(p.beta),
            format_number(p.epsilon),
            format_number(p.theta),
            format_number(p.eta),
            format_number(p.G),
            format_number(p.G1),
            format_number(p.G2),
            format_number(c.direct.real()),
            format_number(c.direct.imag()),
            format_number(c.transform.value.real()),
            format_number(c.transform.value.imag()),
            format_number(std::uint64_t(c.transform.term_count)),
            format_number(c.transform.error_budget),
            format_number(c.transform.quad_error),
            format_number(c.deviation),
            format_number(c.ratio)};
}

// Band sums: one row per (t, delta, variant).
inline CsvTable band_sum_table(const RunConfig& config, std::span<const BandSumReport> reports)
{
    CsvTable table;
    table.config = config;
    table.columns = {"t",     "delta", "variant", "S5_re", "S5_im", "S1_re",
                     "S1_im", "S2_re", "S2_im",   "S6_re", "S6_im"};
    for (const auto& r : reports)
        table.rows.push_back({format_number(r.t), format_number(r.delta), to_string(r.variant),
                              format_number(r.S5.real()), format_number(r.S5.imag()),
                              format_number(r.S1.real()), format_number(r.S1.imag()),
                              format_number(r.S2.real()), format_number(r.S2.imag()),
                              format_number(r.S6.real()), format_number(r.S6.imag())});
    return table;
}

inline std::vector<BandSumReport> band_sums_from_table(const CsvTable& table)
{
    std::vector<BandSumReport> out;
    auto c = [&](std::string_view n) { return table.column(n); };
    for (const auto& f : table.rows) {
        BandSumReport r;
        r.t = parse_double(f[c("t")]);
        r.delta = parse_double(f[c("delta")]);
        r.variant = parse_damping_variant(f[c("variant")]);
        r.S5 = {parse_double(f[c("S5_re")]), parse_double(f[c("S5_im")])};
        r.S1 = {parse_double(f[c("S1_re")]), parse_double(f[c("S1_im")])};
        r.S2 = {parse_double(f[c("S2_re")]), parse_double(f[c("S2_im")])};
        r.S6 = {parse_double(f[c("S6_re")]), parse_double(f[c("S6_im")])};
        out.push_back(r);
    }
    return out;
}

// Writes to the path, or to the stream when the path is empty.
inline void emit(const std::string& text, const std::string& path, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        fallback.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw ConfigError("write to '" + path + "' failed");
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace zs
