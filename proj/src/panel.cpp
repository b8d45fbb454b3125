#include "zipfcomp/panel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "csv_util.hpp"
#include "zipfcomp/error.hpp"
#include "zipfcomp/numfmt.hpp"

namespace zipfcomp {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string key_text(const std::string& country, int year, const std::string& indicator) {
    return "(" + country + ", " + std::to_string(year) + ", " + indicator + ")";
}

}  // namespace

YearRange parse_year_range(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParameterError("year range '" + std::string(text) + "' must have the form A:B");
    }
    const auto a = detail::parse_int(text.substr(0, colon));
    const auto b = detail::parse_int(text.substr(colon + 1));
    if (!a || !b) throw ParameterError("year range '" + std::string(text) + "' has non-integer bounds");
    if (*a > *b) throw ParameterError("year range '" + std::string(text) + "' is empty (A > B)");
    return {*a, *b};
}

bool requires_positive(std::string_view indicator) {
    return lower(indicator).rfind("gdp", 0) == 0;
}

void IndicatorPanel::insert(const Observation& obs) {
    if (!std::isfinite(obs.value)) {
        throw DomainError("non-finite value for " + key_text(obs.country, obs.year, obs.indicator));
    }
    if (requires_positive(obs.indicator) && obs.value <= 0.0) {
        throw DomainError("nonpositive " + obs.indicator + " value for " +
                          key_text(obs.country, obs.year, obs.indicator));
    }
    auto [it, inserted] =
        values_.try_emplace(ObservationKey{obs.country, obs.year, obs.indicator}, obs.value);
    if (!inserted) {
        throw DuplicateKeyError("duplicate observation " +
                                key_text(obs.country, obs.year, obs.indicator));
    }
}

std::optional<double> IndicatorPanel::value(const std::string& country, int year,
                                            const std::string& indicator) const {
    const auto it = values_.find(ObservationKey{country, year, indicator});
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::vector<Observation> IndicatorPanel::observations() const {
    std::vector<Observation> out;
    out.reserve(values_.size());
    for (const auto& [k, v] : values_) out.push_back({k.country, k.year, k.indicator, v});
    return out;
}

std::vector<std::string> IndicatorPanel::indicators() const {
    std::set<std::string> names;
    for (const auto& [k, v] : values_) names.insert(k.indicator);
    return {names.begin(), names.end()};
}

std::vector<std::string> IndicatorPanel::countries(const std::string& indicator) const {
    std::set<std::string> names;
    for (const auto& [k, v] : values_) {
        if (k.indicator == indicator) names.insert(k.country);
    }
    return {names.begin(), names.end()};
}

std::optional<YearRange> IndicatorPanel::year_span(const std::string& indicator) const {
    std::optional<YearRange> span;
    for (const auto& [k, v] : values_) {
        if (k.indicator != indicator) continue;
        if (!span) {
            span = YearRange{k.year, k.year};
        } else {
            span->first = std::min(span->first, k.year);
            span->last = std::max(span->last, k.year);
        }
    }
    return span;
}

AliasMap load_aliases(std::istream& in) {
    AliasMap aliases;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) detail::strip_bom(line);
        if (detail::blank(line)) continue;
        const auto fields = detail::split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (fields.size() != 2 || lower(fields[0]) != "source_name" || lower(fields[1]) != "iso3") {
                throw FormatError("alias file header must be 'source_name,iso3'");
            }
            continue;
        }
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw FormatError("alias file line " + std::to_string(line_no) + ": expected 2 fields");
        }
        const auto [it, inserted] = aliases.try_emplace(fields[0], fields[1]);
        if (!inserted && it->second != fields[1]) {
            throw DuplicateKeyError("alias '" + fields[0] + "' maps to both " + it->second +
                                    " and " + fields[1]);
        }
    }
    return aliases;
}

LoadResult load_panel(std::istream& in, const std::string& indicator, const AliasMap* aliases,
                      std::string provenance) {
    LoadResult result{IndicatorPanel(std::move(provenance)), 0};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) detail::strip_bom(line);
        if (detail::blank(line)) continue;
        const auto fields = detail::split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (fields.size() != 3 || lower(fields[0]) != "country" || lower(fields[1]) != "year" ||
                lower(fields[2]) != "value") {
                throw FormatError("malformed header '" + std::string(detail::trim(line)) +
                                  "', expected 'country,year,value'");
            }
            continue;
        }
        if (fields.size() != 3) {
            throw FormatError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                              std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw FormatError("line " + std::to_string(line_no) + ": empty country");
        const auto year = detail::parse_int(fields[1]);
        if (!year) {
            throw FormatError("line " + std::to_string(line_no) + ": year '" + fields[1] +
                              "' is not an integer");
        }
        const auto value = detail::parse_finite(fields[2]);
        if (!value) {
            ++result.skipped_rows;
            continue;
        }
        std::string country = fields[0];
        if (aliases) {
            if (const auto it = aliases->find(country); it != aliases->end()) country = it->second;
        }
        result.panel.insert({std::move(country), *year, indicator, *value});
    }
    if (!header_seen) throw FormatError("missing header 'country,year,value'");
    return result;
}

void write_panel_csv(std::ostream& out, const IndicatorPanel& panel, const std::string& indicator) {
    out << "country,year,value\n";
    // Map order is (country, year, indicator), so a filtered walk is already sorted.
    for (const auto& obs : panel.observations()) {
        if (obs.indicator != indicator) continue;
        out << obs.country << ',' << obs.year << ',' << format_shortest(obs.value) << '\n';
    }
}

BalancedPanel::BalancedPanel(std::string indicator, std::vector<std::string> countries,
                             YearRange years, std::vector<double> values)
    : indicator_(std::move(indicator)),
      countries_(std::move(countries)),
      years_(years),
      values_(std::move(values)) {
    if (years_.first > years_.last) throw ParameterError("balanced panel needs a non-empty year range");
    if (values_.size() != countries_.size() * n_years()) {
        throw ParameterError("balanced panel value matrix has the wrong size");
    }
    if (!std::is_sorted(countries_.begin(), countries_.end()) ||
        std::adjacent_find(countries_.begin(), countries_.end()) != countries_.end()) {
        throw ParameterError("balanced panel countries must be unique and sorted");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("balanced panel holds a non-finite value");
    }
}

std::vector<double> BalancedPanel::column(int year) const {
    const auto yi = year_index(year);
    std::vector<double> out(n_countries());
    for (std::size_t c = 0; c < n_countries(); ++c) out[c] = at(c, yi);
    return out;
}

std::size_t BalancedPanel::country_index(const std::string& country) const {
    const auto it = std::lower_bound(countries_.begin(), countries_.end(), country);
    if (it == countries_.end() || *it != country) {
        throw LookupError("country '" + country + "' is not in the balanced panel");
    }
    return static_cast<std::size_t>(it - countries_.begin());
}

std::size_t BalancedPanel::year_index(int year) const {
    if (!years_.contains(year)) {
        throw LookupError("year " + std::to_string(year) + " is outside the panel range " +
                          std::to_string(years_.first) + ":" + std::to_string(years_.last));
    }
    return static_cast<std::size_t>(year - years_.first);
}

double BalancedPanel::value(const std::string& country, int year) const {
    return at(country_index(country), year_index(year));
}

IndicatorPanel BalancedPanel::to_indicator_panel() const {
    IndicatorPanel panel("balanced " + indicator_);
    for (std::size_t c = 0; c < n_countries(); ++c) {
        for (std::size_t y = 0; y < n_years(); ++y) {
            panel.insert({countries_[c], years_.first + static_cast<int>(y), indicator_, at(c, y)});
        }
    }
    return panel;
}

BalancedPanel balanced_subset(const IndicatorPanel& panel, const std::string& indicator,
                              YearRange years) {
    if (years.first > years.last) throw ParameterError("empty year range");
    const auto span = panel.year_span(indicator);
    if (!span) throw LookupError("indicator '" + indicator + "' has no observations");
    if (years.first < span->first || years.last > span->last) {
        throw ParameterError("year range " + std::to_string(years.first) + ":" +
                             std::to_string(years.last) + " is not covered by the data span " +
                             std::to_string(span->first) + ":" + std::to_string(span->last));
    }
    std::vector<std::string> kept;
    std::vector<double> values;
    std::vector<double> row(static_cast<std::size_t>(years.span()));
    for (const auto& country : panel.countries(indicator)) {
        bool complete = true;
        for (int y = years.first; y <= years.last && complete; ++y) {
            const auto v = panel.value(country, y, indicator);
            if (v) {
                row[static_cast<std::size_t>(y - years.first)] = *v;
            } else {
                complete = false;
            }
        }
        if (!complete) continue;
        kept.push_back(country);
        values.insert(values.end(), row.begin(), row.end());
    }
    if (kept.empty()) {
        throw EmptyPanelError("no country has complete '" + indicator + "' data for " +
                              std::to_string(years.first) + ":" + std::to_string(years.last));
    }
    return BalancedPanel(indicator, std::move(kept), years, std::move(values));
}

double growth_rate(const BalancedPanel& panel, const std::string& country, int t0, int t1,
                   GrowthKind kind) {
    if (t0 >= t1) {
        throw ParameterError("growth window needs t0 < t1, got " + std::to_string(t0) + " and " +
                             std::to_string(t1));
    }
    const double v0 = panel.value(country, t0);
    const double v1 = panel.value(country, t1);
    if (v0 <= 0.0 || v1 <= 0.0) {
        throw DomainError("growth of '" + country + "' needs positive values, got " +
                          format_sig12(v0) + " and " + format_sig12(v1));
    }
    return kind == GrowthKind::log ? std::log(v1 / v0) : (v1 - v0) / v0;
}

}  // namespace zipfcomp
