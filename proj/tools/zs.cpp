// zs: command-line front end.
//
// Exit status: 0 success, 1 invariant or acceptance failure, 2 usage error.
// The seed comes from --seed, else ZS_SEED, else 42. ZS_THREADS sets the
// worker count and never affects output bytes.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeta_sampler/acceptance.hpp"
#include "zeta_sampler/io.hpp"

namespace {

struct UsageError : zs::Error
{
    using zs::Error::Error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag)
        return *flag;
    if (const char* env = std::getenv("ZS_SEED")) {
        try {
            return zs::parse_uint(env);
        } catch (const zs::ConfigError&) {
            throw UsageError(std::string("ZS_SEED='") + env + "' is not an unsigned integer");
        }
    }
    return 42;
}

// Named tolerance overrides accepted by --tolerance NAME=VALUE.
zs::EvalConfig apply_tolerances(const std::map<std::string, double>& overrides)
{
    zs::EvalConfig cfg;
    for (const auto& [name, value] : overrides) {
        if (!(value > 0.0))
            throw UsageError("tolerance '" + name + "' must be positive");
        if (name == "zeta_target")
            cfg.target_error = value;
        else if (name == "zeta_quad")
            cfg.quad_tolerance = value;
        else if (name == "rs_threshold")
            cfg.rs_threshold = value;
        else
            throw UsageError("unknown tolerance '" + name +
                             "' (known: zeta_target, zeta_quad, rs_threshold)");
    }
    return cfg;
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items)
{
    std::map<std::string, double> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--tolerance expects NAME=VALUE, got '" + item + "'");
        try {
            out[item.substr(0, eq)] = zs::parse_double(item.substr(eq + 1));
        } catch (const zs::ConfigError&) {
            throw UsageError("--tolerance '" + item + "' has a non-numeric value");
        }
    }
    return out;
}

struct Options
{
    std::optional<std::uint64_t> seed;
    std::string out;
    std::vector<std::string> tolerances;

    double t = 0.0;
    double sigma = 0.5;
    std::size_t count = 1000;
    std::size_t samples = 10000;
    std::string method = "auto";
    std::vector<double> t_list;
    double target_se = 0.0;
    int lemma = 21;
    std::string family;
    std::string params;
    double epsilon = 0.5;
    double theta = 0.5;
    double eta = 2.0;
    bool corpus = false;
    double tol = 1e-6;
    double delta = 0.5;
    std::string variant = "both";
    std::string grid_out;
    bool quick = false;
};

zs::RunConfig base_config(const std::string& sub, const Options& o)
{
    zs::RunConfig c;
    c.subcommand = sub;
    c.seed = resolve_seed(o.seed);
    c.output_path = o.out;
    auto tols = parse_tolerances(o.tolerances);
    for (const auto& [k, v] : tols)
        c.tolerances[k] = v;
    apply_tolerances(tols);
    return c;
}

zs::MomentConfig moment_config(const zs::RunConfig& c)
{
    zs::MomentConfig mc;
    mc.zeta = apply_tolerances(c.tolerances.get<std::map<std::string, double>>());
    return mc;
}

int run_sample(const Options& o)
{
    auto c = base_config("sample", o);
    c.args = {{"t", o.t}, {"count", o.count}};
    auto batch = zs::sample_batch(zs::GammaParams(o.t), o.count, c.seed);
    zs::emit(zs::csv_document(zs::sample_table(c, batch)), o.out, std::cout);
    return 0;
}

int run_zeta(const Options& o)
{
    auto c = base_config("zeta", o);
    c.args = {{"sigma", o.sigma}, {"t", o.t}, {"method", o.method}};
    auto method = zs::parse_zeta_method(o.method);
    zs::ZetaArgument arg(o.sigma, o.t);
    auto v = zs::zeta(arg, moment_config(c).zeta, method);
    zs::emit(zs::json_document(c, zs::to_json(v, arg)), o.out, std::cout);
    return 0;
}

int run_moment(const Options& o)
{
    auto c = base_config("moment", o);
    c.args = {{"t", o.t}, {"samples", o.samples}};
    auto est = zs::estimate_moments(o.t, o.samples, c.seed, moment_config(c));
    zs::emit(zs::json_document(c, zs::to_json(est)), o.out, std::cout);
    return 0;
}

int run_sweep(const Options& o)
{
    auto c = base_config("sweep", o);
    c.args = {{"t_list", o.t_list}, {"samples", o.samples}, {"target_se", o.target_se}};
    zs::SweepOptions so;
    so.n_samples = o.samples;
    so.target_se = o.target_se;
    auto rows = zs::sweep(o.t_list, so, c.seed, moment_config(c));
    zs::emit(zs::csv_document(zs::sweep_table(c, rows)), o.out, std::cout);
    return 0;
}

int run_vdc(const Options& o)
{
    auto c = base_config("vdc", o);
    auto lemma = zs::parse_vdc_lemma(o.lemma);
    std::vector<zs::VdcCorpusEntry> entries;
    if (o.corpus) {
        c.args = {{"lemma", o.lemma}, {"corpus", true}};
        entries = zs::vdc_corpus(lemma);
    } else {
        if (o.family.empty())
            throw UsageError("vdc: --family is required unless --corpus is given");
        c.args = {{"lemma", o.lemma}, {"family", o.family}, {"params", o.params},
                  {"epsilon", o.epsilon}, {"theta", o.theta}, {"eta", o.eta}};
        entries.push_back({o.family, zs::FamilyArgs::parse(o.params), o.epsilon, o.theta, o.eta});
    }
    zs::CsvTable table;
    table.config = c;
    table.columns = zs::vdc_columns();
    for (const auto& e : entries) {
        auto [spec, params] = zs::realize(e);
        table.rows.push_back(zs::vdc_row(spec, e.args, params, zs::verify_vdc(lemma, spec, params)));
    }
    zs::emit(zs::csv_document(table), o.out, std::cout);
    return 0;
}

int run_decompose(const Options& o)
{
    auto c = base_config("decompose", o);
    c.args = {{"t", o.t},         {"tol", o.tol},         {"delta", o.delta},
              {"variant", o.variant}, {"samples", o.samples}, {"grid_out", o.grid_out}};
    if (o.variant != "both")
        zs::parse_damping_variant(o.variant);
    bool integrals = o.t >= 10.0 && o.t <= 1e3;
    bool bands = o.t >= 16.0 && o.t <= 1e6;
    if (!integrals && !bands)
        throw zs::DomainError("decompose: requires 10 <= t <= 1e6");

    zs::Json result = zs::Json::object();
    if (integrals)
        result["decomposition"] =
            zs::to_json(zs::decompose(o.t, o.tol, o.samples, c.seed, moment_config(c)));
    std::vector<zs::BandSumReport> reports;
    if (bands) {
        for (const auto& r : zs::band_sums_both(o.t, o.delta))
            if (o.variant == "both" || o.variant == zs::to_string(r.variant))
                reports.push_back(r);
        result["band_sums"] = zs::Json::array();
        for (const auto& r : reports)
            result["band_sums"].push_back(zs::to_json(r));
    }
    if (!o.grid_out.empty()) {
        zs::RunConfig gc = c;
        gc.output_path = o.grid_out;
        zs::emit(zs::csv_document(zs::band_sum_table(gc, reports)), o.grid_out, std::cout);
    }
    zs::emit(zs::json_document(c, result), o.out, std::cout);
    return 0;
}

int run_verify_all(const Options& o)
{
    zs::AcceptanceOptions ao;
    ao.quick = o.quick;
    ao.seed = resolve_seed(o.seed);
    int failed = 0;
    const auto n = zs::acceptance_criteria().size();
    for (std::size_t i = 0; i < n; ++i) {
        auto r = zs::run_criterion(i, ao);
        std::cout << zs::format_result(r) << std::endl;
        failed += r.pass ? 0 : 1;
    }
    std::cout << (n - failed) << " of " << n << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"zs: moments of zeta on the critical line at gamma-process heights"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "RNG seed (default: ZS_SEED or 42)");
    app.add_option("--out", o.out, "Output file (default: standard output)");
    app.add_option("--tolerance", o.tolerances,
                   "Override a named tolerance, NAME=VALUE (zeta_target, zeta_quad, rs_threshold)");

    auto* sample = app.add_subcommand("sample", "Draw gamma-process values X_t (CSV)");
    sample->add_option("--t", o.t, "Time parameter t > 0")->required();
    sample->add_option("--count", o.count, "Number of samples")->capture_default_str();

    auto* zeta = app.add_subcommand("zeta", "Evaluate zeta(sigma + i t) (JSON)");
    zeta->add_option("--sigma", o.sigma, "Real part")->required();
    zeta->add_option("--t", o.t, "Imaginary part")->required();
    zeta->add_option("--method", o.method, "em, integral, rs or auto")
        ->check(CLI::IsMember({"em", "integral", "rs", "auto"}))
        ->capture_default_str();

    auto* moment = app.add_subcommand("moment", "Monte Carlo first and second moments (JSON)");
    moment->add_option("--t", o.t, "Time parameter t >= 10")->required();
    moment->add_option("--samples", o.samples, "Sample count")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Second moment against log t over a t grid (CSV)");
    sweep->add_option("--t-list", o.t_list, "Ascending t values, comma separated")
        ->delimiter(',')
        ->required();
    sweep->add_option("--samples", o.samples, "Initial sample count per t")->capture_default_str();
    sweep->add_option("--target-se", o.target_se,
                      "Rerun rows whose se of the second moment exceeds this");

    auto* vdc = app.add_subcommand("vdc", "Check a van der Corput transform (CSV)");
    vdc->add_option("--lemma", o.lemma, "21, 22 or 23")
        ->check(CLI::IsMember({21, 22, 23}))
        ->required();
    vdc->add_option("--family", o.family, "Named family")->check(CLI::IsMember(zs::vdc_family_names()));
    vdc->add_option("--params", o.params, "Family parameters, k=v,k=v");
    vdc->add_option("--epsilon", o.epsilon, "Slack epsilon")->capture_default_str();
    vdc->add_option("--theta", o.theta, "Phase slack theta (0: derive from max |f'|)")
        ->capture_default_str();
    vdc->add_option("--eta", o.eta, "Interval ratio eta")->capture_default_str();
    vdc->add_flag("--corpus", o.corpus, "Run the built-in corpus for the lemma");

    auto* decompose = app.add_subcommand("decompose", "A-integrals and band sums (JSON)");
    decompose->add_option("--t", o.t, "Time parameter")->required();
    decompose->add_option("--tol", o.tol, "Quadrature tolerance")->capture_default_str();
    decompose->add_option("--delta", o.delta, "Band shift delta in (0, 1]")->capture_default_str();
    decompose->add_option("--variant", o.variant, "half-square, as-printed or both")
        ->check(CLI::IsMember({"half-square", "as-printed", "both"}))
        ->capture_default_str();
    decompose->add_option("--samples", o.samples, "Monte Carlo samples for the reference")
        ->capture_default_str();
    decompose->add_option("--grid-out", o.grid_out, "Write the band sums as CSV here");

    auto* verify = app.add_subcommand("verify-all", "Run the acceptance criteria");
    verify->add_flag("--quick", o.quick, "Reduced t grids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        std::cerr << "\n" << app.help();
        return 2;
    }
    if (*seed_opt)
        o.seed = seed_flag;

    try {
        if (*sample)
            return run_sample(o);
        if (*zeta)
            return run_zeta(o);
        if (*moment)
            return run_moment(o);
        if (*sweep)
            return run_sweep(o);
        if (*vdc)
            return run_vdc(o);
        if (*decompose)
            return run_decompose(o);
        return run_verify_all(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const zs::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zs::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
