#include "zipfcomp/rankdyn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>

#include "zipfcomp/error.hpp"

namespace zipfcomp {

int RankTable::rank_of(const std::string& country) const {
    for (const auto& e : entries) {
        if (e.country == country) return e.rank;
    }
    throw LookupError("country '" + country + "' is not ranked in " + std::to_string(year));
}

RankTable rank_snapshot(const BalancedPanel& panel, int year) {
    const auto values = panel.column(year);
    const auto n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Countries are sorted by code, so index order breaks ties lexicographically.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    RankTable table{year, panel.indicator(), {}};
    table.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i) table.entries[i].country = panel.countries()[i];
    for (std::size_t r = 0; r < n; ++r) table.entries[order[r]].rank = static_cast<int>(r + 1);
    return table;
}

std::vector<int> RankChangeSample::deltas() const {
    std::vector<int> out;
    out.reserve(changes.size());
    for (const auto& c : changes) out.push_back(c.delta);
    return out;
}

RankChangeSample rank_changes(const BalancedPanel& panel, int window, bool overlapping) {
    const auto years = panel.years();
    if (window < 1) throw ParameterError("window length must be >= 1, got " + std::to_string(window));
    if (years.last - years.first < window) {
        throw ParameterError("window length w=" + std::to_string(window) + " needs at least " +
                             std::to_string(window + 1) + " years but the panel spans " +
                             std::to_string(years.span()));
    }

    RankChangeSample sample{panel.indicator(), window, {}, {}};
    const int stride = overlapping ? 1 : window;
    for (int t = years.first; t + window <= years.last; t += stride) {
        const auto before = rank_snapshot(panel, t);
        const auto after = rank_snapshot(panel, t + window);
        sample.windows.emplace_back(t, t + window);
        for (std::size_t i = 0; i < before.entries.size(); ++i) {
            sample.changes.push_back({before.entries[i].country, t, t + window,
                                      after.entries[i].rank - before.entries[i].rank});
        }
    }
    return sample;
}

LaplaceFit fit_laplace_mle(std::span<const int> deltas) {
    if (deltas.size() < 2) {
        throw ParameterError("Laplace fit needs at least 2 deltas, got " + std::to_string(deltas.size()));
    }
    // Integer accumulation keeps the fit independent of sample order.
    long long sum_abs = 0;
    for (int d : deltas) sum_abs += std::llabs(static_cast<long long>(d));
    if (sum_abs == 0) throw DegenerateError("all rank changes are zero; the decay MLE is infinite");

    const double n = static_cast<double>(deltas.size());
    const double s = static_cast<double>(sum_abs);
    LaplaceFit fit;
    fit.n = deltas.size();
    fit.decay = n / s;
    fit.mean_abs = s / n;
    fit.log_likelihood = n * std::log(fit.decay / 2.0) - fit.decay * s;
    return fit;
}

LaplaceFit fit_laplace_mle(const RankChangeSample& sample) {
    const auto d = sample.deltas();
    return fit_laplace_mle(std::span<const int>(d));
}

std::vector<PdfBin> empirical_pdf(std::span<const int> deltas) {
    if (deltas.empty()) throw ParameterError("empirical pdf of an empty sample");
    const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
    std::vector<std::size_t> counts(static_cast<std::size_t>(*hi - *lo) + 1, 0);
    for (int d : deltas) ++counts[static_cast<std::size_t>(d - *lo)];

    const double n = static_cast<double>(deltas.size());
    std::vector<PdfBin> bins(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        bins[i] = {*lo + static_cast<int>(i), static_cast<double>(counts[i]) / n};
    }
    return bins;
}

std::vector<PdfBin> empirical_pdf(const RankChangeSample& sample) {
    const auto d = sample.deltas();
    return empirical_pdf(std::span<const int>(d));
}

double laplace_density(const LaplaceFit& fit, int delta) {
    return 0.5 * fit.decay * std::exp(-fit.decay * std::abs(static_cast<double>(delta)));
}

double exceedance_probability(const LaplaceFit& fit, int delta) {
    return 0.5 * std::exp(-fit.decay * std::abs(static_cast<double>(delta)));
}

std::vector<int> sample_discrete_laplace(double decay, std::size_t n, std::uint64_t seed) {
    if (!(decay > 0.0) || !std::isfinite(decay)) {
        throw ParameterError("Laplace decay must be positive and finite");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    std::vector<int> out(n);
    for (auto& d : out) {
        double u = unit(rng);
        while (std::abs(u) >= 0.5) u = unit(rng);
        const double x = -std::copysign(1.0, u) / decay * std::log1p(-2.0 * std::abs(u));
        d = static_cast<int>(std::lround(x));
    }
    return out;
}

}  // namespace zipfcomp
