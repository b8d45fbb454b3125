#include <omp.h>

#include "zipfcomp/abm.hpp"

namespace zipfcomp {

std::vector<CountryOutcome> sweep(const SweepConfig& config, int threads) {
    config.validate();
    const auto n = static_cast<long long>(config.n_countries);
    std::vector<CountryOutcome> out(config.n_countries);
    const int nt = threads > 0 ? threads : omp_get_max_threads();

    // Every country owns its RNG streams, so the schedule cannot change results.
#pragma omp parallel for num_threads(nt) schedule(dynamic, 4)
    for (long long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out[idx] = simulate_country(country_params(config, idx));
        out[idx].country_index = idx;
    }
    return out;
}

}  // namespace zipfcomp
