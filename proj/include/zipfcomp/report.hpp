#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zipfcomp/abm.hpp"
#include "zipfcomp/rankdyn.hpp"
#include "zipfcomp/xsection.hpp"

namespace zipfcomp {

/// Output files staged in memory and written together by commit(), so a failed
/// command leaves nothing behind in the output directory.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// `name` is relative to the output directory; throws ParameterError on reuse.
    void add(const std::string& name, std::string content);

    std::vector<std::string> names() const;
    const std::string& content(const std::string& name) const;
    bool empty() const noexcept { return files_.empty(); }
    const std::filesystem::path& dir() const noexcept { return dir_; }

    /// Writes every file through a temporary name and renames it into place.
    /// On failure the files written so far are removed and IoError is thrown.
    void commit() const;

private:
    std::filesystem::path dir_;
    std::map<std::string, std::string> files_;
};

/// points.csv and fitline.csv share a header so plotting tools can overlay them.
struct PlotData {
    std::string points_csv;
    std::string fitline_csv;
};

/// Sample points plus the fitted curve at `samples` log-spaced x values.
PlotData power_law_plot(const PowerLawFit& fit, const std::string& x_name, const std::string& y_name,
                        std::size_t samples = 100);

/// Empirical density per integer bin plus the model density over the same bins.
PlotData laplace_plot(std::span<const PdfBin> pdf, const LaplaceFit& fit);

/// Points plus the fitted line at `samples` evenly spaced x values.
PlotData linear_plot(std::span<const XY> points, const LinearFit& fit, const std::string& x_name,
                     const std::string& y_name, std::size_t samples = 100);

/// Stages plots/<figure>/points.csv and plots/<figure>/fitline.csv.
void add_plot(OutputSet& out, const std::string& figure, const PlotData& plot);

std::string deltas_csv(const RankChangeSample& sample);
std::string pdf_csv(std::span<const PdfBin> pdf, const LaplaceFit& fit);
std::string laplace_fit_json(const LaplaceFit& fit, const RankChangeSample& sample);

std::string power_law_json(const PowerLawFit& fit);
std::string dscores_csv(const PowerLawFit& fit, const std::string& x_name, const std::string& y_name);
std::string ttest_json(const TTestResult& t, const SignSplit& split);
std::string linear_fit_json(const LinearFit& fit);

std::string ensemble_csv(std::span<const CountryOutcome> ensemble);

}  // namespace zipfcomp
