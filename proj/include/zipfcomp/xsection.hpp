#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace zipfcomp {

struct LabeledPoint {
    std::string label;  // country code
    double x = 0.0;
    double y = 0.0;
};

struct XY {
    double x = 0.0;
    double y = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    std::size_t n = 0;

    double predict(double x) const { return intercept + slope * x; }
};

/// Ordinary least squares of y on x with intercept. Needs n >= 3 and x not all equal.
LinearFit ols_linear(std::span<const XY> points);

struct PowerLawPoint {
    std::string country;
    double x = 0.0;
    double y = 0.0;
    double ln_x = 0.0;
    double ln_y = 0.0;
    double residual = 0.0;
};

/// y = exp(ln_intercept) * x^alpha, fitted by OLS in log-log space.
struct PowerLawFit {
    double alpha = 0.0;
    double ln_intercept = 0.0;
    double stderr_alpha = 0.0;
    double correlation = 0.0;
    double t_value_alpha = 0.0;
    std::vector<PowerLawPoint> sample;

    double predict(double x) const;
    double r_squared() const { return correlation * correlation; }
};

/// Points whose label is in `exclude` are dropped before fitting. The remaining
/// coordinates must be strictly positive, at least 3 points, and neither ln x nor
/// ln y may be constant (the correlation would be undefined).
PowerLawFit fit_power_law(std::span<const LabeledPoint> points,
                          const std::set<std::string>& exclude = {});

struct CompetitivenessScore {
    std::string country;
    double d = 0.0;  // log-space residual: positive above the fitted line
};

struct RelativeCompetitiveness {
    std::vector<CompetitivenessScore> scores;
};

RelativeCompetitiveness relative_competitiveness(const PowerLawFit& fit);

struct SignSplit {
    std::vector<std::string> positive_countries;
    std::vector<double> positive;  // growth of countries with d >= 0
    std::vector<std::string> negative_countries;
    std::vector<double> negative;  // growth of countries with d < 0
};

/// Partitions growth by the sign of d. Country sets must match exactly.
SignSplit split_by_sign(const RelativeCompetitiveness& d, const std::map<std::string, double>& growth);

struct TTestResult {
    double t = 0.0;
    int df = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

/// Pooled-variance Student t for mean(a) - mean(b).
TTestResult two_sample_t(std::span<const double> a, std::span<const double> b);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace zipfcomp
