#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace zipfcomp {

/// Inclusive range of calendar years.
struct YearRange {
    int first = 0;
    int last = 0;

    int span() const noexcept { return last - first + 1; }
    bool contains(int year) const noexcept { return year >= first && year <= last; }
    bool operator==(const YearRange&) const = default;
};

/// Parses "A:B" (inclusive, A <= B).
YearRange parse_year_range(std::string_view text);

struct ObservationKey {
    std::string country;
    int year = 0;
    std::string indicator;

    auto operator<=>(const ObservationKey&) const = default;
};

struct Observation {
    std::string country;
    int year = 0;
    std::string indicator;
    double value = 0.0;

    bool operator==(const Observation&) const = default;
};

/// Indicators whose name starts with "gdp" (case-insensitive) must be strictly positive.
bool requires_positive(std::string_view indicator);

/// Sparse (country, year, indicator) -> value store. At most one value per key,
/// all values finite, gdp-type values strictly positive.
class IndicatorPanel {
public:
    IndicatorPanel() = default;
    explicit IndicatorPanel(std::string provenance) : provenance_(std::move(provenance)) {}

    /// Throws DuplicateKeyError on a repeated key and DomainError on an invalid value.
    void insert(const Observation& obs);

    std::optional<double> value(const std::string& country, int year,
                                const std::string& indicator) const;

    std::vector<Observation> observations() const;
    std::vector<std::string> indicators() const;
    std::vector<std::string> countries(const std::string& indicator) const;
    /// Smallest range covering every year that has a value for `indicator`.
    std::optional<YearRange> year_span(const std::string& indicator) const;

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const std::string& provenance() const noexcept { return provenance_; }

    bool operator==(const IndicatorPanel& other) const { return values_ == other.values_; }

private:
    std::map<ObservationKey, double> values_;
    std::string provenance_;
};

/// Source-specific country name -> ISO-3166 alpha-3 code.
using AliasMap = std::unordered_map<std::string, std::string>;

/// Reads a `source_name,iso3` CSV.
AliasMap load_aliases(std::istream& in);

struct LoadResult {
    IndicatorPanel panel;
    /// Rows skipped because the value field was empty or non-numeric.
    std::size_t skipped_rows = 0;
};

/// Loads a `country,year,value` CSV as observations of `indicator`.
LoadResult load_panel(std::istream& in, const std::string& indicator,
                      const AliasMap* aliases = nullptr, std::string provenance = {});

/// Canonical dump: `country,year,value` sorted by (country, year), shortest
/// round-trip number formatting. Reloading gives back the identical observations.
void write_panel_csv(std::ostream& out, const IndicatorPanel& panel, const std::string& indicator);

/// Dense countries x years matrix without gaps. Countries are sorted by code.
class BalancedPanel {
public:
    BalancedPanel(std::string indicator, std::vector<std::string> countries, YearRange years,
                  std::vector<double> values);

    const std::string& indicator() const noexcept { return indicator_; }
    const std::vector<std::string>& countries() const noexcept { return countries_; }
    YearRange years() const noexcept { return years_; }
    std::size_t n_countries() const noexcept { return countries_.size(); }
    std::size_t n_years() const noexcept { return static_cast<std::size_t>(years_.span()); }

    double at(std::size_t country_index, std::size_t year_index) const {
        return values_[country_index * n_years() + year_index];
    }
    /// Values of one year across all countries (strided copy).
    std::vector<double> column(int year) const;
    std::span<const double> row(std::size_t country_index) const {
        return {values_.data() + country_index * n_years(), n_years()};
    }

    std::size_t country_index(const std::string& country) const;  // throws LookupError
    std::size_t year_index(int year) const;                        // throws LookupError
    double value(const std::string& country, int year) const;

    IndicatorPanel to_indicator_panel() const;

    bool operator==(const BalancedPanel&) const = default;

private:
    std::string indicator_;
    std::vector<std::string> countries_;
    YearRange years_;
    std::vector<double> values_;
};

/// Countries with a value for every year of `years`.
BalancedPanel balanced_subset(const IndicatorPanel& panel, const std::string& indicator,
                              YearRange years);

enum class GrowthKind {
    log,       // ln(v1 / v0)
    relative,  // (v1 - v0) / v0
};

double growth_rate(const BalancedPanel& panel, const std::string& country, int t0, int t1,
                   GrowthKind kind = GrowthKind::log);

}  // namespace zipfcomp
