#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cli/model_io.hpp"
#include "cli/options.hpp"
#include "cli/report.hpp"
#include "cli/series_io.hpp"
#include "dftstat/dftstat.hpp"

namespace dftstat::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    return Format::Text;
}

struct TestFlags {
    std::optional<int> m;
    std::string lags;
    std::string bandwidth = "auto";
    std::string kernel = "daniell";
    double ridge = kDefaultRidgeFactor;
    std::string correction = "gaussian";
    std::string psi;
    std::optional<double> kappa4;
    std::string kappa;
    bool no_demean = false;
};

void add_test_flags(CLI::App& sub, TestFlags& f, const std::string& m_help) {
    auto* m = sub.add_option("--m", f.m, m_help);
    auto* lags = sub.add_option("--lags", f.lags, "explicit lags, e.g. 1,3,5..8");
    m->excludes(lags);
    sub.add_option("--bandwidth", f.bandwidth, "kernel bandwidth b, or auto for T^(-1/3)")->capture_default_str();
    sub.add_option("--kernel", f.kernel, "spectral kernel")
        ->check(CLI::IsMember({"daniell", "flat", "bartlett", "triangular"}))
        ->capture_default_str();
    sub.add_option("--ridge", f.ridge, "ridge as a fraction of the mean periodogram")->capture_default_str();
    sub.add_option("--correction", f.correction, "variance correction")
        ->check(CLI::IsMember({"gaussian", "linear", "user"}))
        ->capture_default_str();
    sub.add_option("--psi", f.psi, "MA(inf) coefficients psi_0,psi_1,... (linear correction)");
    sub.add_option("--kappa4", f.kappa4, "fourth cumulant of the innovations (linear correction)");
    sub.add_option("--kappa", f.kappa, "kappa_r for each lag (user correction)");
    sub.add_flag("--no-demean", f.no_demean, "do not subtract the sample mean");
}

std::vector<int> resolve_lags(const TestFlags& f, int default_m) {
    if (!f.lags.empty()) return parse_lag_list(f.lags);
    const int m = f.m.value_or(default_m);
    if (m < 1) throw InvalidLagError("--m must be at least 1");
    return consecutive_lags(m);
}

TestOptions resolve_options(const TestFlags& f, std::size_t lag_count) {
    TestOptions o;
    o.kernel = kernel_kind_from_string(f.kernel);
    o.bandwidth = parse_bandwidth(f.bandwidth);
    if (!(f.ridge >= 0.0)) throw InvalidInputError("--ridge must be >= 0");
    o.ridge_factor = f.ridge;
    o.demean = !f.no_demean;

    const bool psi = !f.psi.empty();
    const bool kappa = !f.kappa.empty();
    if (f.correction == "gaussian") {
        if (psi || kappa || f.kappa4) {
            throw InvalidInputError("--psi, --kappa4 and --kappa need --correction linear or user");
        }
    } else if (f.correction == "linear") {
        if (!psi) throw InvalidInputError("--correction linear needs --psi");
        if (kappa) throw InvalidInputError("--kappa belongs to --correction user");
        o.correction = LinearPluginCorrection{parse_number_list(f.psi, "--psi"), f.kappa4.value_or(0.0)};
    } else {
        if (!kappa) throw InvalidInputError("--correction user needs --kappa");
        if (psi || f.kappa4) throw InvalidInputError("--psi and --kappa4 belong to --correction linear");
        auto values = parse_number_list(f.kappa, "--kappa");
        if (values.size() != lag_count) {
            throw InvalidInputError("--kappa has " + std::to_string(values.size()) + " values for " +
                                    std::to_string(lag_count) + " lags");
        }
        o.correction = UserCorrection{std::move(values)};
    }
    return o;
}

std::vector<double> resolve_levels(const std::string& text) {
    auto levels = parse_number_list(text, "--levels");
    for (const double a : levels) {
        if (!(a > 0.0 && a < 1.0)) throw InvalidInputError("--levels: " + shortest(a) + " is not in (0, 1)");
    }
    return levels;
}

std::string join_lags(std::span<const int> lags) {
    std::string out;
    for (const int r : lags) out += (out.empty() ? "" : ",") + std::to_string(r);
    return out;
}

void warn_bandwidth(const TestResult& r, std::ostream& err) {
    if (r.bandwidth_warning) {
        err << "warning: bandwidth " << g17(r.kernel.bandwidth) << " lies outside (T^-1/2, T^-1/4) for T = "
            << r.length << "\n";
    }
}

std::filesystem::path output_dir(const std::string& dir) {
    std::filesystem::path p(dir.empty() ? "." : dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw InvalidInputError("cannot create output directory '" + p.string() + "': " + ec.message());
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw InvalidInputError("write failed for '" + path.string() + "'");
}

json model_config(const ResolvedModel& model) { return {{"name", model.name}, {"spec", model_to_json(model.spec)}}; }

json mc_test_config(const McConfig& c) {
    return {{"kernel", std::string(to_string(c.test.kernel))},
            {"bandwidth", c.test.kernel_for(c.length).bandwidth},
            {"bandwidth_auto", !c.test.bandwidth.has_value()},
            {"ridge_factor", c.test.ridge_factor},
            {"correction", correction_name(c.test.correction)},
            {"demean", c.test.demean}};
}

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

struct SeriesFlags {
    std::string input;
    std::optional<std::string> column;
    std::string transform = "none";
    std::string levels = "0.01,0.05,0.1";
    std::string format = "text";
};

void add_series_flags(CLI::App& sub, SeriesFlags& s) {
    sub.add_option("input", s.input, "series file (one value per line, '-' for stdin)")->required();
    sub.add_option("--column", s.column, "CSV column: 1-based index or header name");
    sub.add_option("--transform", s.transform, "preprocessing")
        ->check(CLI::IsMember({"none", "sqrt-abs-logdiff2"}))
        ->capture_default_str();
    sub.add_option("--levels", s.levels, "significance levels")->capture_default_str();
    sub.add_option("--format", s.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
}

std::vector<double> load_series(const SeriesFlags& s) {
    auto series = read_series_file(s.input, s.column);
    if (s.transform == "sqrt-abs-logdiff2") series = sqrt_abs_logdiff2(series);
    return series;
}

json series_config(const SeriesFlags& s) {
    return {{"input", s.input}, {"column", s.column ? json(*s.column) : json(nullptr)}, {"transform", s.transform}};
}

std::string csv_decision_header(const TestResult& r) {
    std::string out;
    for (const auto& d : r.decisions) out += ",reject_" + shortest(d.level);
    return out;
}

std::string csv_decisions(const TestResult& r) {
    std::string out;
    for (const auto& d : r.decisions) out += d.reject ? ",1" : ",0";
    return out;
}

int run_test(const TestFlags& tf, const SeriesFlags& sf, std::ostream& out, std::ostream& err) {
    const auto levels = resolve_levels(sf.levels);
    const auto lags = resolve_lags(tf, 4);
    auto options = resolve_options(tf, lags.size());
    options.levels = levels;
    const auto series = load_series(sf);
    const auto r = test_statistic(series, lags, options);
    warn_bandwidth(r, err);

    switch (parse_format(sf.format)) {
        case Format::Json: {
            json config = series_config(sf);
            config.update(test_config_json(r, options));
            out << json{{"command", "test"}, {"config", config}, {"result", result_json(r)}}.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << "length,statistic,dof,p_value" << csv_decision_header(r) << "\n";
            out << r.length << "," << g17(r.statistic) << "," << r.dof << "," << g17(r.p_value) << csv_decisions(r)
                << "\n";
            break;
        case Format::Text:
            out << "length: " << r.length << "\n";
            out << "lags: " << join_lags(r.lags) << "\n";
            out << "kernel: " << to_string(r.kernel.kind) << ", bandwidth " << g17(r.kernel.bandwidth) << "\n";
            out << "correction: " << r.correction_mode << "\n";
            out << "statistic: " << g17(r.statistic) << "\n";
            out << "dof: " << r.dof << "\n";
            out << "p_value: " << g17(r.p_value) << "\n";
            for (const auto& d : r.decisions) {
                out << "level " << shortest(d.level) << ": " << (d.reject ? "reject" : "do not reject")
                    << " (critical value " << g17(d.critical_value) << ")\n";
            }
            break;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// segment
// ---------------------------------------------------------------------------

int run_segment(const TestFlags& tf, const SeriesFlags& sf, int depth, std::ostream& out, std::ostream& err) {
    const auto levels = resolve_levels(sf.levels);
    const auto lags = resolve_lags(tf, 4);
    auto options = resolve_options(tf, lags.size());
    options.levels = levels;
    const auto series = load_series(sf);
    const auto report = segment_test(series, depth, lags, options);
    warn_bandwidth(report.blocks.front().result, err);

    switch (parse_format(sf.format)) {
        case Format::Json: {
            json config = series_config(sf);
            config.update(test_config_json(report.blocks.front().result, options));
            config["depth"] = depth;
            json blocks = json::array();
            for (const auto& b : report.blocks) {
                json item = result_json(b.result);
                item["depth"] = b.depth;
                item["block"] = b.index;
                item["first"] = b.start + 1;
                item["last"] = b.end;
                item["length"] = b.end - b.start;
                blocks.push_back(item);
            }
            out << json{{"command", "segment"},
                        {"config", config},
                        {"result", result_json(report.blocks.front().result)},
                        {"blocks", blocks}}
                       .dump(2)
                << "\n";
            break;
        }
        case Format::Csv:
            out << "depth,block,first,last,length,statistic,dof,p_value"
                << csv_decision_header(report.blocks.front().result) << "\n";
            for (const auto& b : report.blocks) {
                out << b.depth << "," << b.index << "," << b.start + 1 << "," << b.end << "," << b.end - b.start
                    << "," << g17(b.result.statistic) << "," << b.result.dof << "," << g17(b.result.p_value)
                    << csv_decisions(b.result) << "\n";
            }
            break;
        case Format::Text:
            out << "lags: " << join_lags(lags) << "\n";
            for (const auto& b : report.blocks) {
                out << "depth " << b.depth << " block " << b.index << " [" << b.start + 1 << ", " << b.end
                    << "]: statistic " << g17(b.result.statistic) << ", p_value " << g17(b.result.p_value);
                for (const auto& d : b.result.decisions) {
                    out << ", " << shortest(d.level) << " " << (d.reject ? "reject" : "accept");
                }
                out << "\n";
            }
            break;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateFlags {
    std::string model;
    std::size_t length = 512;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::size_t burn_in = 500;
    std::string output;
    bool allow_unstable = false;
};

int run_simulate(const SimulateFlags& f, std::ostream& out) {
    const auto model = resolve_model(f.model);
    GeneratorConfig gen;
    gen.length = f.length;
    gen.seed = f.seed;
    gen.stream_id = f.stream;
    gen.burn_in = f.burn_in;
    gen.allow_unstable = f.allow_unstable;
    const auto series = generate(model.spec, gen);
    std::ostringstream body;
    write_series(body, series);
    if (f.output.empty()) {
        out << body.str();
    } else {
        const std::filesystem::path path(f.output);
        if (path.has_parent_path()) output_dir(path.parent_path().string());
        write_file(path, body.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// mc and scan
// ---------------------------------------------------------------------------

struct McFlags {
    std::string model;
    std::size_t length = 512;
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    double level = 0.05;
    std::size_t burn_in = 500;
    std::size_t threads = 0;
    std::size_t bins = 50;
    std::string out_dir;
    std::string format = "text";
};

void add_mc_flags(CLI::App& sub, McFlags& f) {
    sub.add_option("model", f.model, "model preset (model1..model6) or model file")->required();
    sub.add_option("--T", f.length, "series length")->capture_default_str();
    sub.add_option("--N", f.replications, "replications")->capture_default_str();
    sub.add_option("--seed", f.seed, "master seed")->capture_default_str();
    sub.add_option("--level", f.level, "significance level")->capture_default_str();
    sub.add_option("--burn-in", f.burn_in, "burn-in steps")->capture_default_str();
    sub.add_option("--threads", f.threads, "worker threads (0 = all cores)")->capture_default_str();
    sub.add_option("--out-dir", f.out_dir, "directory for output files")->envname("DFTSTAT_OUTPUT_DIR");
    sub.add_option("--format", f.format, "summary format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
}

McConfig make_mc_config(const McFlags& f, const ModelSpec& model, std::vector<int> lags, TestOptions test) {
    McConfig c;
    c.model = model;
    c.length = f.length;
    c.lags = std::move(lags);
    c.level = f.level;
    c.replications = f.replications;
    c.seed = f.seed;
    c.test = std::move(test);
    c.burn_in = f.burn_in;
    c.threads = f.threads;
    c.bins = f.bins;
    c.validate();
    return c;
}

json mc_config_json(const McConfig& c, const ResolvedModel& model) {
    json config = {{"model", model_config(model)},
                   {"length", c.length},
                   {"lags", c.lags},
                   {"level", c.level},
                   {"replications", c.replications},
                   {"seed", c.seed},
                   {"burn_in", c.burn_in}};
    config.update(mc_test_config(c));
    return config;
}

int run_mc(const TestFlags& tf, const McFlags& f, std::ostream& out) {
    const auto model = resolve_model(f.model);
    const auto lags = resolve_lags(tf, 4);
    const auto config = make_mc_config(f, model.spec, lags, resolve_options(tf, lags.size()));
    const auto dir = output_dir(f.out_dir);
    const auto report = rejection_rate(config);

    json hist = {{"edges", report.histogram.edges},
                 {"counts", report.histogram.counts},
                 {"density", report.histogram.density}};
    json cfg = mc_config_json(config, model);
    cfg["bins"] = config.bins;
    const json doc = {{"command", "mc"},
                      {"config", cfg},
                      {"result",
                       {{"rejection_rate", report.rejection_rate},
                        {"rejections", report.rejections},
                        {"replications", config.replications},
                        {"critical_value", report.critical_value},
                        {"dof", 2 * config.lags.size()}}},
                      {"rejection_rate", report.rejection_rate},
                      {"histogram", hist}};

    std::string stats = "replication,statistic\n";
    for (std::size_t i = 0; i < report.statistics.size(); ++i) {
        stats += std::to_string(i) + "," + g17(report.statistics[i]) + "\n";
    }
    std::string histogram = "lower,upper,count,density\n";
    for (std::size_t i = 0; i < report.histogram.counts.size(); ++i) {
        histogram += g17(report.histogram.edges[i]) + "," + g17(report.histogram.edges[i + 1]) + "," +
                     std::to_string(report.histogram.counts[i]) + "," + g17(report.histogram.density[i]) + "\n";
    }
    write_file(dir / "mc.json", doc.dump(2) + "\n");
    write_file(dir / "statistics.csv", stats);
    write_file(dir / "histogram.csv", histogram);

    switch (parse_format(f.format)) {
        case Format::Json:
            out << doc.dump(2) << "\n";
            break;
        case Format::Csv:
            out << "rejection_rate,rejections,replications,critical_value\n"
                << g17(report.rejection_rate) << "," << report.rejections << "," << config.replications << ","
                << g17(report.critical_value) << "\n";
            break;
        case Format::Text:
            out << "model: " << model.name << ", T = " << config.length << ", lags " << join_lags(config.lags)
                << "\n";
            out << "rejection_rate: " << g17(report.rejection_rate) << " (" << report.rejections << " of "
                << config.replications << " at level " << shortest(config.level) << ")\n";
            out << "critical_value: " << g17(report.critical_value) << "\n";
            out << "wrote " << (dir / "mc.json").string() << ", statistics.csv, histogram.csv\n";
            break;
    }
    return kExitOk;
}

int run_scan(const TestFlags& tf, const McFlags& f, std::ostream& out) {
    const auto model = resolve_model(f.model);
    const auto lags = resolve_lags(tf, 20);
    const auto config = make_mc_config(f, model.spec, lags, resolve_options(tf, lags.size()));
    const auto dir = output_dir(f.out_dir);
    const auto scan = lag_scan(config);

    std::string csv = "lag,rejection_rate\n";
    for (std::size_t i = 0; i < scan.lags.size(); ++i) {
        csv += std::to_string(scan.lags[i]) + "," + g17(scan.rejection_rates[i]) + "\n";
    }
    write_file(dir / "scan.csv", csv);

    switch (parse_format(f.format)) {
        case Format::Json:
            out << json{{"command", "scan"},
                        {"config", mc_config_json(config, model)},
                        {"result",
                         {{"lags", scan.lags},
                          {"rejection_rates", scan.rejection_rates},
                          {"rejections", scan.rejections},
                          {"replications", scan.replications}}}}
                       .dump(2)
                << "\n";
            break;
        case Format::Csv:
            out << csv;
            break;
        case Format::Text:
            out << "model: " << model.name << ", T = " << config.length << ", N = " << config.replications
                << ", level " << shortest(config.level) << "\n";
            for (std::size_t i = 0; i < scan.lags.size(); ++i) {
                out << "lag " << scan.lags[i] << ": " << g17(scan.rejection_rates[i]) << "\n";
            }
            out << "wrote " << (dir / "scan.csv").string() << "\n";
            break;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// power
// ---------------------------------------------------------------------------

struct PowerFlags {
    std::string model;
    std::optional<int> m;
    std::string lags;
    std::optional<std::size_t> length;
    std::size_t u_grid = 0;
    std::size_t lambda_grid = 256;
    std::size_t sigma_grid = 512;
    std::string out_dir;
    std::string format = "text";
};

int run_power(const PowerFlags& f, std::ostream& out) {
    const auto model = resolve_model(f.model);
    std::vector<int> lags;
    if (!f.lags.empty()) {
        lags = parse_lag_list(f.lags);
    } else {
        const int m = f.m.value_or(10);
        if (m < 1) throw InvalidLagError("--m must be at least 1");
        lags = consecutive_lags(m);
    }
    for (const int r : lags) {
        if (r < 1) throw InvalidLagError("power: lags must be positive, got " + std::to_string(r));
    }
    if (f.sigma_grid < 64) throw InvalidInputError("--sigma-grid must be at least 64");
    PowerOptions options;
    options.grid = {f.u_grid, f.lambda_grid};
    options.length = f.length;
    options.sigma_grid = f.sigma_grid;
    validate_model(model.spec);
    const auto dir = output_dir(f.out_dir);
    const auto profile = power_profile(model.spec, lags, options);

    std::string csv = "lag,re,im,abs\n";
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const auto b = profile.b_values[i];
        csv += std::to_string(lags[i]) + "," + g17(b.real()) + "," + g17(b.imag()) + "," + g17(std::abs(b)) + "\n";
    }
    write_file(dir / "power.csv", csv);

    switch (parse_format(f.format)) {
        case Format::Json: {
            json b = json::array();
            for (const auto& v : profile.b_values) b.push_back({{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
            json result = {{"lags", lags}, {"b", b}, {"mu", profile.mu}};
            if (profile.sigma_fourier) {
                json a = json::array();
                for (const auto& v : *profile.sigma_fourier) {
                    a.push_back({{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
                }
                result["sigma_fourier"] = a;
            }
            json config = {{"model", model_config(model)},
                           {"lags", lags},
                           {"length", f.length ? json(*f.length) : json(nullptr)},
                           {"u_grid", f.u_grid},
                           {"lambda_grid", f.lambda_grid},
                           {"sigma_grid", f.sigma_grid}};
            out << json{{"command", "power"}, {"config", config}, {"result", result}}.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            out << csv;
            break;
        case Format::Text:
            out << "model: " << model.name << "\n";
            for (std::size_t i = 0; i < lags.size(); ++i) {
                out << "lag " << lags[i] << ": |B| " << g17(std::abs(profile.b_values[i]));
                if (profile.sigma_fourier) out << ", |a_r| " << g17(std::abs((*profile.sigma_fourier)[i]));
                out << "\n";
            }
            out << "wrote " << (dir / "power.csv").string() << "\n";
            break;
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Portmanteau test for second-order stationarity based on DFT covariances", "dftstat"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dftstat 0.1.0");

    TestFlags test_flags;
    SeriesFlags series_flags;
    int depth = 3;
    SimulateFlags sim_flags;
    McFlags mc_flags;
    PowerFlags power_flags;

    auto* test = app.add_subcommand("test", "test a series for second-order stationarity");
    add_series_flags(*test, series_flags);
    add_test_flags(*test, test_flags, "number of consecutive lags (default 4)");

    auto* segment = app.add_subcommand("segment", "test the full series and its halves, quarters, ...");
    add_series_flags(*segment, series_flags);
    add_test_flags(*segment, test_flags, "number of consecutive lags (default 4)");
    segment->add_option("--depth", depth, "number of halvings")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "write a simulated series");
    simulate->add_option("model", sim_flags.model, "model preset (model1..model6) or model file")->required();
    simulate->add_option("--T", sim_flags.length, "series length")->capture_default_str();
    simulate->add_option("--seed", sim_flags.seed, "master seed")->capture_default_str();
    simulate->add_option("--stream", sim_flags.stream, "stream id")->capture_default_str();
    simulate->add_option("--burn-in", sim_flags.burn_in, "burn-in steps")->capture_default_str();
    simulate->add_option("--output", sim_flags.output, "output file (default stdout)");
    simulate->add_flag("--allow-unstable", sim_flags.allow_unstable, "skip the AR root check");

    auto* mc = app.add_subcommand("mc", "Monte Carlo rejection rate");
    add_mc_flags(*mc, mc_flags);
    add_test_flags(*mc, test_flags, "number of consecutive lags (default 4)");
    mc->add_option("--bins", mc_flags.bins, "histogram bins")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "single-lag rejection rate at each lag");
    add_mc_flags(*scan, mc_flags);
    add_test_flags(*scan, test_flags, "scan lags 1..m (default 20)");

    auto* power = app.add_subcommand("power", "noncentrality B(r) of a locally stationary model");
    power->add_option("model", power_flags.model, "model preset (model1..model6) or model file")->required();
    auto* pm = power->add_option("--m", power_flags.m, "lags 1..m (default 10)");
    auto* pl = power->add_option("--lags", power_flags.lags, "explicit lags, e.g. 1..120");
    pm->excludes(pl);
    power->add_option("--T", power_flags.length, "evaluate at finite T (w_r = 2 pi r / T)");
    power->add_option("--u-grid", power_flags.u_grid, "u intervals (0 = auto)")->capture_default_str();
    power->add_option("--lambda-grid", power_flags.lambda_grid, "frequency intervals")->capture_default_str();
    power->add_option("--sigma-grid", power_flags.sigma_grid, "grid for sigma Fourier coefficients")
        ->capture_default_str();
    power->add_option("--out-dir", power_flags.out_dir, "directory for power.csv")->envname("DFTSTAT_OUTPUT_DIR");
    power->add_option("--format", power_flags.format, "summary format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (test->parsed()) return run_test(test_flags, series_flags, out, err);
        if (segment->parsed()) return run_segment(test_flags, series_flags, depth, out, err);
        if (simulate->parsed()) return run_simulate(sim_flags, out);
        if (mc->parsed()) return run_mc(test_flags, mc_flags, out);
        if (scan->parsed()) return run_scan(test_flags, mc_flags, out);
        if (power->parsed()) return run_power(power_flags, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.category() == ErrorCategory::Input ? kExitInput : kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}

}  // namespace dftstat::cli
