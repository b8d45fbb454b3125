#include "zipfcomp/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "zipfcomp/error.hpp"
#include "zipfcomp/numfmt.hpp"

namespace zipfcomp {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

// JSON has no infinity; emit null for non-finite numbers.
ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

void OutputSet::add(const std::string& name, std::string content) {
    const auto [it, inserted] = files_.try_emplace(name, std::move(content));
    if (!inserted) throw ParameterError("output file '" + name + "' staged twice");
}

std::vector<std::string> OutputSet::names() const {
    std::vector<std::string> out;
    for (const auto& [name, content] : files_) out.push_back(name);
    return out;
}

const std::string& OutputSet::content(const std::string& name) const {
    const auto it = files_.find(name);
    if (it == files_.end()) throw LookupError("no staged output named '" + name + "'");
    return it->second;
}

void OutputSet::commit() const {
    std::vector<fs::path> written;
    auto rollback = [&] {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
    };
    try {
        fs::create_directories(dir_);
        for (const auto& [name, content] : files_) {
            const auto target = dir_ / name;
            fs::create_directories(target.parent_path());
            auto tmp = target;
            tmp += ".partial";
            {
                std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
                if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
                written.push_back(tmp);
                f.write(content.data(), static_cast<std::streamsize>(content.size()));
                f.flush();
                if (!f) throw IoError("write to '" + tmp.string() + "' failed");
            }
            fs::rename(tmp, target);
            written.back() = target;
        }
    } catch (const Error&) {
        rollback();
        throw;
    } catch (const fs::filesystem_error& e) {
        rollback();
        throw IoError(e.what());
    }
}

PlotData power_law_plot(const PowerLawFit& fit, const std::string& x_name, const std::string& y_name,
                        std::size_t samples) {
    if (fit.sample.empty()) throw ParameterError("power-law plot of an empty fit");
    if (samples < 2) throw ParameterError("fit line needs at least 2 samples");
    std::ostringstream points;
    points << x_name << ',' << y_name << '\n';
    double lo = fit.sample.front().ln_x;
    double hi = lo;
    for (const auto& p : fit.sample) {
        points << format_sig12(p.x) << ',' << format_sig12(p.y) << '\n';
        lo = std::min(lo, p.ln_x);
        hi = std::max(hi, p.ln_x);
    }
    std::ostringstream line;
    line << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < samples; ++i) {
        const double ln_x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double x = std::exp(ln_x);
        line << format_sig12(x) << ',' << format_sig12(fit.predict(x)) << '\n';
    }
    return {points.str(), line.str()};
}

PlotData laplace_plot(std::span<const PdfBin> pdf, const LaplaceFit& fit) {
    if (pdf.empty()) throw ParameterError("rank-change plot of an empty pdf");
    std::ostringstream points;
    std::ostringstream line;
    points << "delta,density\n";
    line << "delta,density\n";
    for (const auto& b : pdf) {
        points << b.center << ',' << format_sig12(b.density) << '\n';
        line << b.center << ',' << format_sig12(laplace_density(fit, b.center)) << '\n';
    }
    return {points.str(), line.str()};
}

PlotData linear_plot(std::span<const XY> points, const LinearFit& fit, const std::string& x_name,
                     const std::string& y_name, std::size_t samples) {
    if (points.empty()) throw ParameterError("linear plot of an empty point set");
    if (samples < 2) throw ParameterError("fit line needs at least 2 samples");
    std::ostringstream pts;
    pts << x_name << ',' << y_name << '\n';
    double lo = points.front().x;
    double hi = lo;
    for (const auto& p : points) {
        pts << format_sig12(p.x) << ',' << format_sig12(p.y) << '\n';
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    std::ostringstream line;
    line << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        line << format_sig12(x) << ',' << format_sig12(fit.predict(x)) << '\n';
    }
    return {pts.str(), line.str()};
}

void add_plot(OutputSet& out, const std::string& figure, const PlotData& plot) {
    out.add("plots/" + figure + "/points.csv", plot.points_csv);
    out.add("plots/" + figure + "/fitline.csv", plot.fitline_csv);
}

std::string deltas_csv(const RankChangeSample& sample) {
    if (sample.changes.empty()) throw ParameterError("no rank changes to write");
    std::ostringstream out;
    out << "country,t,t_plus_w,delta_rank\n";
    for (const auto& c : sample.changes) {
        out << c.country << ',' << c.start << ',' << c.end << ',' << c.delta << '\n';
    }
    return out.str();
}

std::string pdf_csv(std::span<const PdfBin> pdf, const LaplaceFit& fit) {
    if (pdf.empty()) throw ParameterError("no pdf bins to write");
    std::ostringstream out;
    out << "bin,density,model_density\n";
    for (const auto& b : pdf) {
        out << b.center << ',' << format_sig12(b.density) << ','
            << format_sig12(laplace_density(fit, b.center)) << '\n';
    }
    return out.str();
}

std::string laplace_fit_json(const LaplaceFit& fit, const RankChangeSample& sample) {
    ojson j;
    j["decay"] = number(fit.decay);
    j["n"] = fit.n;
    j["mean_abs"] = number(fit.mean_abs);
    j["log_likelihood"] = number(fit.log_likelihood);
    j["indicator"] = sample.indicator;
    j["window"] = sample.window;
    j["n_windows"] = sample.windows.size();
    j["binning"] = "unit-width integer bins";
    return dump(j);
}

std::string power_law_json(const PowerLawFit& fit) {
    ojson j;
    j["alpha"] = number(fit.alpha);
    j["ln_intercept"] = number(fit.ln_intercept);
    j["stderr"] = number(fit.stderr_alpha);
    j["correlation"] = number(fit.correlation);
    j["t_value"] = number(fit.t_value_alpha);
    j["n"] = fit.sample.size();
    return dump(j);
}

std::string dscores_csv(const PowerLawFit& fit, const std::string& x_name, const std::string& y_name) {
    if (fit.sample.empty()) throw ParameterError("no competitiveness scores to write");
    std::ostringstream out;
    out << "country," << x_name << ',' << y_name << ",d\n";
    for (const auto& p : fit.sample) {
        out << p.country << ',' << format_sig12(p.x) << ',' << format_sig12(p.y) << ','
            << format_sig12(p.residual) << '\n';
    }
    return out.str();
}

std::string ttest_json(const TTestResult& t, const SignSplit& split) {
    ojson j;
    j["t"] = number(t.t);
    j["df"] = t.df;
    j["mean_positive_d"] = number(t.mean_a);
    j["mean_negative_d"] = number(t.mean_b);
    j["n_positive_d"] = t.n_a;
    j["n_negative_d"] = t.n_b;
    j["variance"] = "pooled";
    j["positive_d_countries"] = split.positive_countries;
    j["negative_d_countries"] = split.negative_countries;
    return dump(j);
}

std::string linear_fit_json(const LinearFit& fit) {
    ojson j;
    j["slope"] = number(fit.slope);
    j["intercept"] = number(fit.intercept);
    j["stderr_slope"] = number(fit.stderr_slope);
    j["n"] = fit.n;
    return dump(j);
}

std::string ensemble_csv(std::span<const CountryOutcome> ensemble) {
    if (ensemble.empty()) throw ParameterError("empty ensemble");
    std::ostringstream out;
    out << "country_index,mu,sigma,E,GDP,gdp,gci_th\n";
    for (const auto& c : ensemble) {
        out << c.country_index << ',' << format_sig12(c.params.mu) << ',' << format_sig12(c.params.sigma)
            << ',' << format_sig12(c.e_total) << ',' << format_sig12(c.gdp_total) << ','
            << format_sig12(c.gdp_per_capita) << ','
            << (c.gci_th ? format_sig12(*c.gci_th) : std::string("uncorrupt")) << '\n';
    }
    return out.str();
}

}  // namespace zipfcomp
