#include "zipfcomp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "zipfcomp/error.hpp"
#include "zipfcomp/numfmt.hpp"
#include "zipfcomp/panel.hpp"
#include "zipfcomp/rankdyn.hpp"
#include "zipfcomp/report.hpp"
#include "zipfcomp/xsection.hpp"

namespace zipfcomp {

using ojson = nlohmann::ordered_json;

namespace {

struct Options {
    std::string input;
    std::string indicator = "gdp";
    std::string aliases;
    std::string years;
    std::string out;
    int window = 10;
    bool non_overlapping = false;

    std::string y_input;
    std::string y_indicator = "gci";
    std::optional<int> fit_year;
    std::string exclude;
    std::string growth = "log";
    bool no_growth = false;

    std::string config;
    std::optional<std::uint64_t> seed;
    int threads = 0;

    std::ostream* warn = nullptr;
};

std::string read_file(const std::string& path, const char* role) {
    if (path.empty()) throw ParameterError(std::string("missing ") + role + " path");
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError(std::string("cannot read ") + role + " file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::optional<AliasMap> read_aliases(const Options& o) {
    if (o.aliases.empty()) return std::nullopt;
    std::istringstream in(read_file(o.aliases, "alias"));
    return load_aliases(in);
}

LoadResult read_panel(const std::string& path, const std::string& indicator,
                      const std::optional<AliasMap>& aliases, std::ostream* warn) {
    std::istringstream in(read_file(path, "input"));
    auto loaded = load_panel(in, indicator, aliases ? &*aliases : nullptr, path);
    if (warn && loaded.skipped_rows > 0) {
        *warn << kToolName << ": warning: " << path << ": dropped " << loaded.skipped_rows
              << " row(s) with a missing value\n";
    }
    return loaded;
}

// One country code per line; blank lines and '#' comments ignored.
std::set<std::string> read_exclusions(const std::string& path) {
    std::set<std::string> codes;
    if (path.empty()) return codes;
    std::istringstream in(read_file(path, "exclusion"));
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r,");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r,");
        codes.insert(line.substr(first, last - first + 1));
    }
    return codes;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Stages manifest.json listing every staged file plus itself, then writes everything.
void finish(OutputSet& files, const std::string& command, ojson inputs, ojson parameters,
            std::optional<std::uint64_t> seed, std::ostream& out) {
    auto names = files.names();
    names.push_back("manifest.json");
    std::sort(names.begin(), names.end());

    ojson m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = command;
    m["created_utc"] = utc_timestamp();
    m["inputs"] = std::move(inputs);
    m["parameters"] = std::move(parameters);
    m["seed"] = seed ? ojson(*seed) : ojson(nullptr);
    m["files"] = names;
    files.add("manifest.json", m.dump(2) + "\n");
    files.commit();
    out << command << ": wrote " << names.size() << " files to " << files.dir().string() << '\n';
}

GrowthKind parse_growth(const std::string& s) {
    if (s == "log") return GrowthKind::log;
    if (s == "relative") return GrowthKind::relative;
    throw ParameterError("--growth must be 'log' or 'relative', got '" + s + "'");
}

void run_ingest(const Options& o, std::ostream& out) {
    const auto aliases = read_aliases(o);
    const auto loaded = read_panel(o.input, o.indicator, aliases, o.warn);
    const auto& panel = loaded.panel;
    if (panel.empty()) throw EmptyPanelError("'" + o.input + "' holds no valid observations");

    OutputSet files(o.out);
    std::ostringstream dump;
    write_panel_csv(dump, panel, o.indicator);
    files.add("panel.csv", dump.str());

    const auto span = *panel.year_span(o.indicator);
    ojson summary;
    summary["indicator"] = o.indicator;
    summary["observations"] = panel.size();
    summary["countries"] = panel.countries(o.indicator).size();
    summary["first_year"] = span.first;
    summary["last_year"] = span.last;
    summary["skipped_rows"] = loaded.skipped_rows;

    ojson params;
    params["indicator"] = o.indicator;
    if (!o.years.empty()) {
        const auto years = parse_year_range(o.years);
        const auto balanced = balanced_subset(panel, o.indicator, years);
        std::ostringstream bal;
        write_panel_csv(bal, balanced.to_indicator_panel(), o.indicator);
        files.add("balanced.csv", bal.str());
        summary["balanced_years"] = o.years;
        summary["balanced_countries"] = balanced.n_countries();
        params["years"] = o.years;
    }
    files.add("summary.json", summary.dump(2) + "\n");

    ojson inputs;
    inputs["input"] = o.input;
    if (!o.aliases.empty()) inputs["aliases"] = o.aliases;
    finish(files, "ingest", inputs, params, std::nullopt, out);
}

void run_rank_dynamics(const Options& o, std::ostream& out) {
    const auto aliases = read_aliases(o);
    const auto loaded = read_panel(o.input, o.indicator, aliases, o.warn);
    const auto span = loaded.panel.year_span(o.indicator);
    if (!span) throw EmptyPanelError("'" + o.input + "' holds no valid observations");
    const auto years = o.years.empty() ? *span : parse_year_range(o.years);
    if (years.last - years.first < o.window) {
        throw ParameterError("window length w=" + std::to_string(o.window) + " needs at least " +
                             std::to_string(o.window + 1) + " years but the range spans " +
                             std::to_string(years.span()));
    }

    const auto panel = balanced_subset(loaded.panel, o.indicator, years);
    const auto sample = rank_changes(panel, o.window, !o.non_overlapping);
    const auto fit = fit_laplace_mle(sample);
    const auto pdf = empirical_pdf(sample);

    OutputSet files(o.out);
    files.add("deltas.csv", deltas_csv(sample));
    files.add("pdf.csv", pdf_csv(pdf, fit));
    files.add("fit.json", laplace_fit_json(fit, sample));
    add_plot(files, "rank_change_pdf", laplace_plot(pdf, fit));

    ojson inputs;
    inputs["input"] = o.input;
    if (!o.aliases.empty()) inputs["aliases"] = o.aliases;
    ojson params;
    params["indicator"] = o.indicator;
    params["years"] = std::to_string(years.first) + ":" + std::to_string(years.last);
    params["window"] = o.window;
    params["overlapping"] = !o.non_overlapping;
    params["countries"] = panel.n_countries();
    finish(files, "rank-dynamics", inputs, params, std::nullopt, out);
}

void run_cross_section(const Options& o, std::ostream& out) {
    const auto aliases = read_aliases(o);
    const auto x_loaded = read_panel(o.input, o.indicator, aliases, o.warn);
    const auto y_loaded = read_panel(o.y_input, o.y_indicator, aliases, o.warn);
    const auto exclude = read_exclusions(o.exclude);
    const auto growth_kind = parse_growth(o.growth);

    int year = 0;
    if (o.fit_year) {
        year = *o.fit_year;
    } else {
        const auto ys = y_loaded.panel.year_span(o.y_indicator);
        if (!ys) throw EmptyPanelError("'" + o.y_input + "' holds no valid observations");
        year = ys->last;
    }

    std::vector<LabeledPoint> points;
    for (const auto& country : x_loaded.panel.countries(o.indicator)) {
        const auto x = x_loaded.panel.value(country, year, o.indicator);
        const auto y = y_loaded.panel.value(country, year, o.y_indicator);
        if (x && y) points.push_back({country, *x, *y});
    }
    const auto fit = fit_power_law(points, exclude);
    const auto d = relative_competitiveness(fit);

    OutputSet files(o.out);
    files.add("fit.json", power_law_json(fit));
    files.add("dscores.csv", dscores_csv(fit, o.indicator, o.y_indicator));
    add_plot(files, "power_law", power_law_plot(fit, o.indicator, o.y_indicator));

    ojson params;
    params["x_indicator"] = o.indicator;
    params["y_indicator"] = o.y_indicator;
    params["year"] = year;
    params["excluded"] = exclude;

    if (!o.no_growth) {
        const auto window = parse_year_range(o.years.empty() ? "2008:2011" : o.years);
        if (window.first == window.last) throw ParameterError("growth window needs two distinct years");
        const auto growth_panel = balanced_subset(x_loaded.panel, o.indicator, window);
        std::map<std::string, double> growth;
        for (const auto& s : d.scores) {
            growth[s.country] = growth_rate(growth_panel, s.country, window.first, window.last, growth_kind);
        }
        const auto split = split_by_sign(d, growth);
        const auto t = two_sample_t(split.positive, split.negative);

        std::vector<XY> gd;
        std::ostringstream csv;
        csv << "country,d,growth\n";
        for (const auto& s : d.scores) {
            gd.push_back({s.d, growth.at(s.country)});
            csv << s.country << ',' << format_sig12(s.d) << ',' << format_sig12(growth.at(s.country)) << '\n';
        }
        const auto line = ols_linear(gd);
        files.add("ttest.json", ttest_json(t, split));
        files.add("growth_vs_d.csv", csv.str());
        files.add("growth_fit.json", linear_fit_json(line));
        add_plot(files, "growth_vs_d", linear_plot(gd, line, "d", "growth"));
        params["growth_years"] = std::to_string(window.first) + ":" + std::to_string(window.last);
        params["growth"] = o.growth;
    }

    ojson inputs;
    inputs["input"] = o.input;
    inputs["y_input"] = o.y_input;
    if (!o.exclude.empty()) inputs["exclude"] = o.exclude;
    if (!o.aliases.empty()) inputs["aliases"] = o.aliases;
    finish(files, "cross-section", inputs, params, std::nullopt, out);
}

void run_simulate(const Options& o, std::ostream& out) {
    bool has_seed = false;
    auto config = parse_sweep_config(read_file(o.config, "config"), &has_seed);
    if (o.seed) {
        config.seed = *o.seed;
    } else if (!has_seed) {
        std::random_device rd;
        config.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    if (o.threads < 0) throw ParameterError("--threads must be >= 0");

    const auto ensemble = sweep(config, o.threads);
    const auto fit = fit_model_regression(ensemble);
    std::vector<double> gci;
    std::vector<double> gdp;
    for (const auto& c : ensemble) {
        gci.push_back(*c.gci_th);
        gdp.push_back(c.gdp_per_capita);
    }

    OutputSet files(o.out);
    files.add("ensemble.csv", ensemble_csv(ensemble));
    ojson mf = ojson::parse(power_law_json(fit));
    mf["x"] = "gdp";
    mf["y"] = "gci_th";
    if (ensemble.size() >= 2) {
        try {
            mf["spearman"] = spearman_correlation(gci, gdp);
        } catch (const DegenerateError&) {
            mf["spearman"] = nullptr;
        }
    }
    files.add("model_fit.json", mf.dump(2) + "\n");
    add_plot(files, "model", power_law_plot(fit, "gdp", "gci_th"));

    ojson inputs;
    inputs["config"] = o.config;
    ojson params;
    params["n_countries"] = config.n_countries;
    params["n_jobs"] = config.n_jobs;
    params["mu_range"] = {config.mu_range.low, config.mu_range.high};
    params["sigma_range"] = {config.sigma_range.low, config.sigma_range.high};
    params["gamma"] = config.gamma;
    params["seed_source"] = o.seed ? "flag" : (has_seed ? "config" : "generated");
    finish(files, "simulate", inputs, params, config.seed, out);
}

void single_line(std::ostream& err, std::string msg) {
    for (auto& c : msg) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    err << kToolName << ": error: " << msg << '\n';
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text, bool* has_seed) {
    ojson j;
    try {
        j = ojson::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("sweep config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("sweep config must be a JSON object");
    static const std::set<std::string> known{"n_countries", "n_jobs", "mu_range", "sigma_range", "gamma", "seed"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw FormatError("unknown sweep config field '" + key + "'");
    }
    auto range = [&](const char* key) {
        const auto& r = j.at(key);
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
            throw FormatError(std::string("'") + key + "' must be a [low, high] pair");
        }
        return ValueRange{r[0].get<double>(), r[1].get<double>()};
    };
    auto count = [&](const char* key) {
        const auto& v = j.at(key);
        if (!v.is_number_unsigned()) throw FormatError(std::string("'") + key + "' must be a positive integer");
        return v.get<std::size_t>();
    };
    SweepConfig c;
    try {
        c.n_countries = count("n_countries");
        c.n_jobs = count("n_jobs");
        c.mu_range = range("mu_range");
        c.sigma_range = range("sigma_range");
        if (!j.at("gamma").is_number()) throw FormatError("'gamma' must be a number");
        c.gamma = j.at("gamma").get<double>();
    } catch (const nlohmann::json::out_of_range& e) {
        throw FormatError(std::string("sweep config is missing a field: ") + e.what());
    }
    const bool seeded = j.contains("seed");
    if (seeded) {
        if (!j["seed"].is_number_unsigned()) throw FormatError("'seed' must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (has_seed) *has_seed = seeded;
    c.validate();
    return c;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank dynamics, competitiveness regressions and the corruption model", kToolName};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Options o;

    auto add_data_flags = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "country,year,value CSV")->required();
        sub->add_option("--indicator", o.indicator, "indicator name")->capture_default_str();
        sub->add_option("--aliases", o.aliases, "source_name,iso3 alias CSV");
        sub->add_option("--out", o.out, "output directory")->required();
    };

    auto* ingest = app.add_subcommand("ingest", "validate a panel CSV and write its canonical dump");
    add_data_flags(ingest);
    ingest->add_option("--years", o.years, "A:B, also write the balanced subset");

    auto* ranks = app.add_subcommand("rank-dynamics", "windowed rank changes and the double-exponential fit");
    add_data_flags(ranks);
    ranks->add_option("--years", o.years, "A:B (default: full data span)");
    ranks->add_option("--window", o.window, "window length in years")->capture_default_str();
    ranks->add_flag("--non-overlapping", o.non_overlapping, "advance start years by the window length");

    auto* xsec = app.add_subcommand("cross-section", "power-law fit, relative competitiveness and growth tests");
    add_data_flags(xsec);
    xsec->add_option("--y-input", o.y_input, "country,year,value CSV of the response")->required();
    xsec->add_option("--y-indicator", o.y_indicator, "response indicator name")->capture_default_str();
    xsec->add_option("--year", o.fit_year, "cross-section year (default: last response year)");
    xsec->add_option("--exclude", o.exclude, "file of country codes left out of the fit");
    xsec->add_option("--years", o.years, "growth window A:B (default 2008:2011)");
    xsec->add_option("--growth", o.growth, "log or relative")->capture_default_str();
    xsec->add_flag("--no-growth", o.no_growth, "skip the growth split and regression");

    auto* sim = app.add_subcommand("simulate", "corruption-model ensemble sweep");
    sim->add_option("--config", o.config, "sweep config JSON")->required();
    sim->add_option("--seed", o.seed, "master seed (overrides the config)");
    sim->add_option("--threads", o.threads, "worker threads, 0 = machine parallelism")->capture_default_str();
    sim->add_option("--out", o.out, "output directory")->required();

    for (auto* sub : {ingest, ranks, xsec}) sub->add_option("--seed", o.seed, "unused; accepted for uniformity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        single_line(err, e.what());
        return static_cast<int>(ErrorKind::usage);
    }

    o.warn = &err;
    try {
        if (ingest->parsed()) run_ingest(o, out);
        else if (ranks->parsed()) run_rank_dynamics(o, out);
        else if (xsec->parsed()) run_cross_section(o, out);
        else if (sim->parsed()) run_simulate(o, out);
    } catch (const Error& e) {
        single_line(err, e.what());
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        single_line(err, e.what());
        return static_cast<int>(ErrorKind::data);
    }
    return 0;
}

}  // namespace zipfcomp
