#include "zipfcomp/abm.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "zipfcomp/error.hpp"

namespace zipfcomp {

namespace {

constexpr std::uint64_t kJobStream = 1;
constexpr std::uint64_t kMismatchStream = 2;
constexpr std::uint64_t kParamStream = 0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_range(const ValueRange& r, const char* name) {
    if (!std::isfinite(r.low) || !std::isfinite(r.high) || !(r.low > 0.0) || r.low > r.high) {
        throw ParameterError(std::string(name) + " range must satisfy 0 < low <= high");
    }
}

}  // namespace

void AbmParams::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("mu must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be nonnegative");
    if (n_jobs < 1) throw ParameterError("n_jobs must be at least 1");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be nonnegative");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(~stream));
}

double gci_theoretical(double sigma, double gamma) {
    if (!(sigma > 0.0)) throw DomainError("GCI_th needs sigma > 0, got " + std::to_string(sigma));
    if (!(gamma >= 0.0)) throw ParameterError("GCI_th needs gamma >= 0");
    return std::pow(sigma, -gamma);
}

CountryOutcome simulate_country(const AbmParams& params) {
    params.validate();
    std::mt19937_64 job_rng(derive_seed(params.seed, kJobStream));
    std::mt19937_64 mismatch_rng(derive_seed(params.seed, kMismatchStream));
    std::poisson_distribution<long long> jobs(params.mu);
    std::normal_distribution<double> mismatch(0.0, 1.0);

    // Worker skill is x_i = X_i + sigma * z_i. Only the mismatch x_i - X_i enters
    // the discrepancy, and it is used directly so it does not pick up rounding
    // from the magnitude of X_i.
    double e_total = 0.0;
    for (std::size_t i = 0; i < params.n_jobs; ++i) {
        [[maybe_unused]] const auto required = jobs(job_rng);
        const double skill_gap = params.sigma * mismatch(mismatch_rng);
        e_total += std::exp(-std::abs(skill_gap));
    }

    CountryOutcome out;
    out.e_total = e_total;
    out.gdp_total = params.mu * e_total;
    out.gdp_per_capita = out.gdp_total / static_cast<double>(params.n_jobs);
    if (params.sigma > 0.0) {
        out.gci_th = gci_theoretical(params.sigma, params.gamma);
    } else if (params.gamma == 0.0) {
        out.gci_th = 1.0;
    }
    out.params = params;
    return out;
}

void SweepConfig::validate() const {
    if (n_countries < 1) throw ParameterError("n_countries must be at least 1");
    if (n_jobs < 1) throw ParameterError("n_jobs must be at least 1");
    check_range(mu_range, "mu");
    check_range(sigma_range, "sigma");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be nonnegative");
}

AbmParams country_params(const SweepConfig& config, std::size_t index) {
    const auto sub_seed = derive_seed(config.seed, index);
    std::mt19937_64 rng(derive_seed(sub_seed, kParamStream));
    std::uniform_real_distribution<double> mu(config.mu_range.low, config.mu_range.high);
    std::uniform_real_distribution<double> sigma(config.sigma_range.low, config.sigma_range.high);
    AbmParams p;
    p.mu = config.mu_range.low == config.mu_range.high ? config.mu_range.low : mu(rng);
    p.sigma = config.sigma_range.low == config.sigma_range.high ? config.sigma_range.low : sigma(rng);
    p.n_jobs = config.n_jobs;
    p.gamma = config.gamma;
    p.seed = sub_seed;
    return p;
}

std::vector<CountryOutcome> sweep_serial(const SweepConfig& config) {
    config.validate();
    std::vector<CountryOutcome> out(config.n_countries);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = simulate_country(country_params(config, i));
        out[i].country_index = i;
    }
    return out;
}

PowerLawFit fit_model_regression(std::span<const CountryOutcome> ensemble) {
    if (ensemble.empty()) throw ParameterError("model regression on an empty ensemble");
    std::vector<LabeledPoint> points;
    points.reserve(ensemble.size());
    for (const auto& c : ensemble) {
        if (!c.gci_th || !std::isfinite(*c.gci_th)) {
            throw DegenerateError("country " + std::to_string(c.country_index) +
                                  " has no finite GCI_th (sigma = 0); exclude it before fitting");
        }
        points.push_back({std::to_string(c.country_index), c.gdp_per_capita, *c.gci_th});
    }
    return fit_power_law(points);
}

}  // namespace zipfcomp
