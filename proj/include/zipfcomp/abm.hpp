#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zipfcomp/xsection.hpp"

namespace zipfcomp {

/// Public-sector model of one country: N jobs with Poisson(mu) skill
/// requirements, filled by workers whose skill misses by Gaussian(0, sigma).
struct AbmParams {
    double mu = 10.0;
    double sigma = 1.0;
    std::size_t n_jobs = 10000;
    double gamma = 0.1;
    std::uint64_t seed = 0;

    void validate() const;  // throws ParameterError
    bool operator==(const AbmParams&) const = default;
};

struct CountryOutcome {
    std::size_t country_index = 0;
    double e_total = 0.0;         // sum of exp(-|x_i - X_i|)
    double gdp_total = 0.0;       // mu * e_total
    double gdp_per_capita = 0.0;  // gdp_total / n_jobs
    /// sigma^-gamma; empty when sigma == 0 and gamma > 0 (a perfectly uncorrupt country).
    std::optional<double> gci_th;
    AbmParams params;

    bool uncorrupt() const noexcept { return !gci_th.has_value(); }
    bool operator==(const CountryOutcome&) const = default;
};

/// Stable 64-bit seed for stream `stream` of `master` (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Job requirements and skill mismatches come from two independent streams derived
/// from params.seed, so changing mu leaves the mismatch draws untouched.
CountryOutcome simulate_country(const AbmParams& params);

double gci_theoretical(double sigma, double gamma);

struct ValueRange {
    double low = 0.0;
    double high = 0.0;
};

struct SweepConfig {
    std::size_t n_countries = 1000;
    std::size_t n_jobs = 10000;
    ValueRange mu_range{5.0, 20.0};
    ValueRange sigma_range{0.5, 20.0};
    double gamma = 0.1;
    std::uint64_t seed = 0;

    void validate() const;  // throws ParameterError
};

/// Parameters of country `index`: mu and sigma uniform over the configured ranges,
/// seed = derive_seed(config.seed, index).
AbmParams country_params(const SweepConfig& config, std::size_t index);

/// Reference implementation: countries simulated one after another.
std::vector<CountryOutcome> sweep_serial(const SweepConfig& config);

/// OpenMP over countries; `threads` <= 0 uses the runtime default. Output is
/// identical to sweep_serial for every thread count.
std::vector<CountryOutcome> sweep(const SweepConfig& config, int threads = 0);

/// Power-law fit of gci_th against gdp_per_capita over the ensemble.
PowerLawFit fit_model_regression(std::span<const CountryOutcome> ensemble);

}  // namespace zipfcomp
