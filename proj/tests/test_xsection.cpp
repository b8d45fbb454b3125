#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zipfcomp/error.hpp"
#include "zipfcomp/xsection.hpp"

using namespace zipfcomp;

namespace {

std::vector<LabeledPoint> power_points(double c, double alpha, int n) {
    std::vector<LabeledPoint> pts;
    for (int i = 1; i <= n; ++i) {
        const double x = i;
        pts.push_back({"P" + std::to_string(i), x, c * std::pow(x, alpha)});
    }
    return pts;
}

}  // namespace

TEST_CASE("noiseless power law is recovered exactly") {
    const auto fit = fit_power_law(power_points(2.0, 0.1, 20));
    CHECK(std::abs(fit.alpha - 0.1) < 1e-10);
    CHECK(std::abs(fit.ln_intercept - std::log(2.0)) < 1e-10);
    CHECK(std::abs(fit.correlation - 1.0) < 1e-10);
    CHECK(fit.stderr_alpha < 1e-10);
    CHECK(std::abs(fit.predict(7.0) - 2.0 * std::pow(7.0, 0.1)) < 1e-10);
}

TEST_CASE("fit_power_law validation and exclusions") {
    auto pts = power_points(1.0, 0.5, 5);
    CHECK_THROWS_AS(fit_power_law(std::vector<LabeledPoint>(pts.begin(), pts.begin() + 2)), ParameterError);

    auto bad = pts;
    bad[1].y = 0.0;
    CHECK_THROWS_AS(fit_power_law(bad), DomainError);
    // an excluded bad point is never inspected
    CHECK_NOTHROW(fit_power_law(bad, {"P2"}));
    CHECK(fit_power_law(bad, {"P2"}).sample.size() == 4);

    std::vector<LabeledPoint> same_x{{"a", 2, 1}, {"b", 2, 3}, {"c", 2, 5}};
    CHECK_THROWS_AS(fit_power_law(same_x), SingularDesignError);
    std::vector<LabeledPoint> same_y{{"a", 1, 3}, {"b", 2, 3}, {"c", 4, 3}};
    CHECK_THROWS_AS(fit_power_law(same_y), SingularDesignError);
}

TEST_CASE("power-law fit invariants on random data") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lnx(0.0, 10.0);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LabeledPoint> pts;
        const int n = 3 + static_cast<int>(rng() % 60);
        for (int i = 0; i < n; ++i) {
            const double lx = lnx(rng);
            pts.push_back({"K" + std::to_string(i), std::exp(lx), std::exp(0.5 + 0.2 * lx + noise(rng))});
        }
        const auto fit = fit_power_law(pts);

        double mean_res = 0;
        std::vector<double> lx, ly;
        for (const auto& p : fit.sample) {
            mean_res += p.residual;
            lx.push_back(p.ln_x);
            ly.push_back(p.ln_y);
        }
        CHECK(std::abs(mean_res / n) < 1e-10);

        // R^2 = 1 - SSR/SST
        double ssr = 0, sst = 0;
        const double my = oracle::mean(ly);
        for (const auto& p : fit.sample) {
            ssr += p.residual * p.residual;
            sst += (p.ln_y - my) * (p.ln_y - my);
        }
        CHECK(std::abs(fit.r_squared() - (1 - ssr / sst)) < 1e-10);

        // ols_linear on the log pairs is the same regression
        std::vector<XY> logs;
        for (std::size_t i = 0; i < lx.size(); ++i) logs.push_back({lx[i], ly[i]});
        const auto lin = ols_linear(logs);
        CHECK(lin.slope == doctest::Approx(fit.alpha).epsilon(1e-12));
        CHECK(lin.intercept == doctest::Approx(fit.ln_intercept).epsilon(1e-12));
        CHECK(lin.stderr_slope == doctest::Approx(fit.stderr_alpha).epsilon(1e-12));
        CHECK(fit.t_value_alpha == doctest::Approx(fit.alpha / fit.stderr_alpha));
    }
}

TEST_CASE("relative competitiveness") {
    std::vector<LabeledPoint> pts{{"A", 1, 1}, {"B", 10, 3}, {"C", 100, 2}, {"D", 1000, 9}};
    const auto fit = fit_power_law(pts);
    const auto d = relative_competitiveness(fit);
    REQUIRE(d.scores.size() == 4);
    double sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(d.scores[i].country == pts[i].label);
        const double above = std::log(pts[i].y) - std::log(fit.predict(pts[i].x));
        CHECK(d.scores[i].d == doctest::Approx(above).epsilon(1e-12));
        sum += d.scores[i].d;
    }
    CHECK(std::abs(sum) < 1e-10);

    SUBCASE("point on the fitted line has zero score") {
        auto on_line = pts;
        on_line.push_back({"E", 50, fit.predict(50)});
        // adding a point on the old line does not move the OLS line
        const auto d2 = relative_competitiveness(fit_power_law(on_line));
        CHECK(std::abs(d2.scores.back().d) < 1e-12);
    }

    SUBCASE("rescaling y leaves scores unchanged, rescaling x shifts by -alpha ln c") {
        auto ys = pts;
        auto xs = pts;
        for (auto& p : ys) p.y *= 3.7;
        for (auto& p : xs) p.x *= 5.0;
        const auto dy = relative_competitiveness(fit_power_law(ys));
        const auto fx = fit_power_law(xs);
        const auto dx = relative_competitiveness(fx);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(dy.scores[i].d == doctest::Approx(d.scores[i].d).epsilon(1e-10));
            CHECK((dy.scores[i].d >= 0) == (d.scores[i].d >= 0));
            CHECK(dx.scores[i].d == doctest::Approx(d.scores[i].d).epsilon(1e-10));
        }
        CHECK(fx.ln_intercept == doctest::Approx(fit.ln_intercept - fit.alpha * std::log(5.0)).epsilon(1e-12));
    }
}

TEST_CASE("split_by_sign") {
    RelativeCompetitiveness d{{{"A", 0.1}, {"B", -0.2}}};
    const auto s = split_by_sign(d, {{"A", 1.0}, {"B", 2.0}});
    CHECK(s.positive == std::vector<double>{1.0});
    CHECK(s.negative == std::vector<double>{2.0});
    CHECK(s.positive_countries == std::vector<std::string>{"A"});

    RelativeCompetitiveness zero{{{"A", 0.0}, {"B", -0.0}, {"C", -1.0}}};
    const auto z = split_by_sign(zero, {{"A", 1}, {"B", 2}, {"C", 3}});
    CHECK(z.positive.size() == 2);

    RelativeCompetitiveness all_pos{{{"A", 0.1}, {"B", 0.3}, {"C", 0.2}}};
    const auto p = split_by_sign(all_pos, {{"A", 1}, {"B", 2}, {"C", 3}});
    CHECK(p.negative.empty());
    CHECK_THROWS_AS(two_sample_t(p.positive, p.negative), ParameterError);

    CHECK_THROWS_AS(split_by_sign(d, {{"A", 1.0}}), AlignmentError);
    CHECK_THROWS_AS(split_by_sign(d, {{"A", 1.0}, {"C", 2.0}}), AlignmentError);
}

TEST_CASE("two_sample_t") {
    const std::vector<double> a{1, 2, 3};
    const auto same = two_sample_t(a, a);
    CHECK(same.t == 0.0);
    CHECK(same.df == 4);

    const std::vector<double> hi{2, 4, 6};
    const std::vector<double> lo{1, 3, 5};
    const auto r = two_sample_t(hi, lo);
    // means 4 and 3, pooled variance 4, t = 1 / sqrt(8/3)
    CHECK(std::abs(r.t - 1.0 / std::sqrt(8.0 / 3.0)) < 1e-12);
    CHECK(std::abs(r.t - oracle::pooled_t(hi, lo)) < 1e-10);
    CHECK(r.df == 4);
    CHECK(r.mean_a == 4.0);
    CHECK(r.mean_b == 3.0);

    const auto swapped = two_sample_t(lo, hi);
    CHECK(swapped.t == -r.t);
    CHECK(swapped.df == r.df);

    CHECK_THROWS_AS(two_sample_t(std::vector<double>{1}, hi), ParameterError);
    CHECK_THROWS_AS(two_sample_t(std::vector<double>{2, 2}, std::vector<double>{3, 3}), DegenerateError);
}

TEST_CASE("t sign follows the mean difference and df = na + nb - 2") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(2 + rng() % 20), b(2 + rng() % 20);
        for (auto& x : a) x = z(rng);
        for (auto& x : b) x = z(rng) + 0.3;
        const auto r = two_sample_t(a, b);
        CHECK(r.df == static_cast<int>(a.size() + b.size()) - 2);
        CHECK((r.t > 0) == (r.mean_a > r.mean_b));
    }
}

TEST_CASE("ols_linear") {
    std::vector<XY> line;
    for (int i = 0; i < 10; ++i) line.push_back({static_cast<double>(i), 3.0 * i + 1.0});
    const auto f = ols_linear(line);
    CHECK(std::abs(f.slope - 3.0) < 1e-12);
    CHECK(std::abs(f.intercept - 1.0) < 1e-12);
    CHECK(f.stderr_slope < 1e-12);

    CHECK_THROWS_AS(ols_linear(std::vector<XY>{{1, 1}, {2, 2}}), ParameterError);
    CHECK_THROWS_AS(ols_linear(std::vector<XY>{{1, 1}, {1, 2}, {1, 3}}), SingularDesignError);
    CHECK_NOTHROW(ols_linear(std::vector<XY>{{1, 1}, {2, 1}, {3, 1}}));
}

TEST_CASE("ols residuals have zero mean") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<XY> pts(3 + rng() % 50);
        for (auto& p : pts) p = {z(rng) * 10, z(rng) + 100};
        const auto f = ols_linear(pts);
        double sum = 0;
        for (const auto& p : pts) sum += p.y - f.predict(p.x);
        CHECK(std::abs(sum / static_cast<double>(pts.size())) < 1e-10);
    }
}

TEST_CASE("spearman_correlation") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{2, 4, 8, 16, 32};
    const std::vector<double> r{5, 4, 3, 2, 1};
    CHECK(spearman_correlation(x, y) == doctest::Approx(1.0));
    CHECK(spearman_correlation(x, r) == doctest::Approx(-1.0));
    // ties get average ranks: y ranks {1.5, 1.5, 3, 4, 5}
    const std::vector<double> tied{1, 1, 2, 3, 4};
    CHECK(spearman_correlation(x, tied) ==
          doctest::Approx(oracle::pearson({1, 2, 3, 4, 5}, {1.5, 1.5, 3, 4, 5})).epsilon(1e-12));
    CHECK_THROWS_AS(spearman_correlation(x, std::vector<double>{1, 2}), AlignmentError);
    CHECK_THROWS_AS(spearman_correlation(x, std::vector<double>(5, 1.0)), DegenerateError);
}
