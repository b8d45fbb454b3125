#include "zipfcomp/xsection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zipfcomp/error.hpp"

namespace zipfcomp {

namespace {

struct CenteredSums {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
};

// Two-pass centred moments.
CenteredSums centered_sums(std::span<const XY> pts) {
    CenteredSums s;
    const double n = static_cast<double>(pts.size());
    for (const auto& p : pts) {
        s.mean_x += p.x;
        s.mean_y += p.y;
    }
    s.mean_x /= n;
    s.mean_y /= n;
    for (const auto& p : pts) {
        const double dx = p.x - s.mean_x;
        const double dy = p.y - s.mean_y;
        s.sxx += dx * dx;
        s.syy += dy * dy;
        s.sxy += dx * dy;
    }
    return s;
}

bool all_equal(std::span<const XY> pts, double XY::*field) {
    return std::all_of(pts.begin(), pts.end(),
                       [&](const XY& p) { return p.*field == pts.front().*field; });
}

struct OlsCore {
    LinearFit fit;
    CenteredSums sums;
};

OlsCore ols_core(std::span<const XY> pts) {
    if (pts.size() < 3) {
        throw ParameterError("regression needs at least 3 points, got " + std::to_string(pts.size()));
    }
    for (const auto& p : pts) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("regression point is not finite");
    }
    if (all_equal(pts, &XY::x)) throw SingularDesignError("all x values are equal; slope is undefined");

    const auto s = centered_sums(pts);
    LinearFit fit;
    fit.n = pts.size();
    fit.slope = s.sxy / s.sxx;
    fit.intercept = s.mean_y - fit.slope * s.mean_x;

    double ssr = 0.0;
    for (const auto& p : pts) {
        const double r = p.y - fit.predict(p.x);
        ssr += r * r;
    }
    fit.stderr_slope = std::sqrt(ssr / static_cast<double>(pts.size() - 2) / s.sxx);
    return {fit, s};
}

}  // namespace

LinearFit ols_linear(std::span<const XY> points) { return ols_core(points).fit; }

double PowerLawFit::predict(double x) const { return std::exp(ln_intercept + alpha * std::log(x)); }

PowerLawFit fit_power_law(std::span<const LabeledPoint> points, const std::set<std::string>& exclude) {
    std::vector<const LabeledPoint*> kept;
    std::vector<XY> logs;
    for (const auto& p : points) {
        if (exclude.count(p.label)) continue;
        if (!(p.x > 0.0) || !(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw DomainError("power-law fit needs positive finite coordinates; '" + p.label +
                              "' has (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
        }
        kept.push_back(&p);
        logs.push_back({std::log(p.x), std::log(p.y)});
    }
    if (logs.size() >= 3 && all_equal(logs, &XY::y)) {
        throw SingularDesignError("all y values are equal; the log-log correlation is undefined");
    }
    const auto [lin, sums] = ols_core(logs);

    PowerLawFit fit;
    fit.alpha = lin.slope;
    fit.ln_intercept = lin.intercept;
    fit.stderr_alpha = lin.stderr_slope;
    fit.correlation = std::clamp(sums.sxy / std::sqrt(sums.sxx * sums.syy), -1.0, 1.0);
    fit.t_value_alpha = fit.alpha / fit.stderr_alpha;
    fit.sample.reserve(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const double residual = logs[i].y - lin.predict(logs[i].x);
        fit.sample.push_back({kept[i]->label, kept[i]->x, kept[i]->y, logs[i].x, logs[i].y, residual});
    }
    return fit;
}

RelativeCompetitiveness relative_competitiveness(const PowerLawFit& fit) {
    RelativeCompetitiveness out;
    out.scores.reserve(fit.sample.size());
    for (const auto& p : fit.sample) out.scores.push_back({p.country, p.residual});
    return out;
}

SignSplit split_by_sign(const RelativeCompetitiveness& d, const std::map<std::string, double>& growth) {
    if (d.scores.size() != growth.size()) {
        throw AlignmentError("competitiveness covers " + std::to_string(d.scores.size()) +
                             " countries but growth covers " + std::to_string(growth.size()));
    }
    SignSplit split;
    for (const auto& s : d.scores) {
        const auto it = growth.find(s.country);
        if (it == growth.end()) throw AlignmentError("no growth value for country '" + s.country + "'");
        if (s.d >= 0.0) {
            split.positive_countries.push_back(s.country);
            split.positive.push_back(it->second);
        } else {
            split.negative_countries.push_back(s.country);
            split.negative.push_back(it->second);
        }
    }
    return split;
}

TTestResult two_sample_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw ParameterError("t-test needs at least 2 values per group, got " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()));
    }
    auto moments = [](std::span<const double> v) {
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::pair{mean, ss};
    };
    const auto [mean_a, ss_a] = moments(a);
    const auto [mean_b, ss_b] = moments(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const int df = static_cast<int>(a.size() + b.size()) - 2;
    const double pooled = (ss_a + ss_b) / df;
    if (!(pooled > 0.0)) throw DegenerateError("pooled variance is zero; t is undefined");

    TTestResult r;
    r.mean_a = mean_a;
    r.mean_b = mean_b;
    r.n_a = a.size();
    r.n_b = b.size();
    r.df = df;
    r.t = (mean_a - mean_b) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    return r;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw AlignmentError("spearman inputs differ in length");
    if (x.size() < 2) throw ParameterError("spearman correlation needs at least 2 points");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    std::vector<XY> pts(x.size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {rx[i], ry[i]};
    const auto s = centered_sums(pts);
    if (s.sxx == 0.0 || s.syy == 0.0) throw DegenerateError("spearman correlation of a constant series");
    return s.sxy / std::sqrt(s.sxx * s.syy);
}

}  // namespace zipfcomp
