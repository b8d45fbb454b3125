#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zipfcomp/panel.hpp"

namespace zipfcomp {

struct RankEntry {
    std::string country;
    int rank = 0;

    bool operator==(const RankEntry&) const = default;
};

/// Zipf ranking of one year: rank 1 holds the largest value. Entries follow the
/// panel's country order, so entry i of two tables refers to the same country.
struct RankTable {
    int year = 0;
    std::string indicator;
    std::vector<RankEntry> entries;

    int rank_of(const std::string& country) const;
};

RankTable rank_snapshot(const BalancedPanel& panel, int year);

struct RankChange {
    std::string country;
    int start = 0;
    int end = 0;
    int delta = 0;  // R(end) - R(start); negative is an improvement
};

/// Rank changes pooled across windows [t, t + window].
struct RankChangeSample {
    std::string indicator;
    int window = 0;
    std::vector<std::pair<int, int>> windows;
    std::vector<RankChange> changes;

    std::vector<int> deltas() const;
};

/// Overlapping windows start every year; otherwise start years advance by `window`.
RankChangeSample rank_changes(const BalancedPanel& panel, int window, bool overlapping = true);

/// Zero-location double-exponential fit p(d) = decay/2 * exp(-decay |d|).
struct LaplaceFit {
    double decay = 0.0;
    std::size_t n = 0;
    double mean_abs = 0.0;
    double log_likelihood = 0.0;
};

/// Closed-form MLE decay = n / sum|d|. Needs n >= 2 and at least one nonzero delta.
LaplaceFit fit_laplace_mle(std::span<const int> deltas);
LaplaceFit fit_laplace_mle(const RankChangeSample& sample);

struct PdfBin {
    int center = 0;
    double density = 0.0;
};

/// Unit-width integer bins covering [min delta, max delta]; densities sum to 1.
std::vector<PdfBin> empirical_pdf(std::span<const int> deltas);
std::vector<PdfBin> empirical_pdf(const RankChangeSample& sample);

/// Model density decay/2 * exp(-decay |delta|).
double laplace_density(const LaplaceFit& fit, int delta);

/// Probability 0.5 exp(-decay |delta|) that a change of at least |delta| occurs.
double exceedance_probability(const LaplaceFit& fit, int delta);

/// Draws from a continuous zero-centred Laplace with the given decay via the
/// inverse CDF, rounded to the nearest integer. Deterministic in `seed`.
std::vector<int> sample_discrete_laplace(double decay, std::size_t n, std::uint64_t seed);

}  // namespace zipfcomp
