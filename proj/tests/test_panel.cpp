#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "zipfcomp/error.hpp"
#include "zipfcomp/panel.hpp"

using namespace zipfcomp;

namespace {

LoadResult load(const std::string& text, const std::string& indicator = "gdp") {
    std::istringstream in(text);
    return load_panel(in, indicator);
}

}  // namespace

TEST_CASE("load_panel maps rows to observations") {
    const auto r = load("country,year,value\nAAA,2010,100\nAAA,2011,110\nBBB,2010,50\nBBB,2011,55\n");
    CHECK(r.panel.size() == 4);
    CHECK(r.skipped_rows == 0);
    CHECK(r.panel.value("AAA", 2011, "gdp") == 110.0);
    CHECK(r.panel.countries("gdp") == std::vector<std::string>{"AAA", "BBB"});
    CHECK(r.panel.year_span("gdp") == YearRange{2010, 2011});
}

TEST_CASE("load_panel skips empty and non-numeric values with a tally") {
    const auto r = load("country,year,value\nAAA,2010,100\nAAA,2011,\nBBB,2010,n/a\n");
    CHECK(r.panel.size() == 1);
    CHECK(r.skipped_rows == 2);
    CHECK_FALSE(r.panel.value("AAA", 2011, "gdp").has_value());
}

TEST_CASE("load_panel rejects duplicate keys naming the triple") {
    try {
        load("country,year,value\nHRV,2011,1\nHRV,2011,2\n");
        FAIL("expected a duplicate-key error");
    } catch (const DuplicateKeyError& e) {
        CHECK(std::string(e.what()).find("(HRV, 2011, gdp)") != std::string::npos);
    }
}

TEST_CASE("load_panel header and field validation") {
    CHECK_THROWS_AS(load("nation,year,value\nA,1,2\n"), FormatError);
    CHECK_THROWS_AS(load("country,year\nA,1\n"), FormatError);
    CHECK_THROWS_AS(load(""), FormatError);
    CHECK_THROWS_AS(load("country,year,value\nAAA,20x0,5\n"), FormatError);
    CHECK_THROWS_AS(load("country,year,value\nAAA,2000,5,6\n"), FormatError);
    // BOM, CRLF and header case are tolerated.
    const auto r = load("\xEF\xBB\xBF" "Country,Year,Value\r\nAAA,2000,5\r\n");
    CHECK(r.panel.size() == 1);
}

TEST_CASE("gdp-type indicators must be positive") {
    CHECK_THROWS_AS(load("country,year,value\nAAA,2000,0\n", "gdp"), DomainError);
    CHECK_THROWS_AS(load("country,year,value\nAAA,2000,-3\n", "GDP_ppp"), DomainError);
    CHECK(load("country,year,value\nAAA,2000,-3\n", "debt").panel.size() == 1);
    CHECK(load("country,year,value\nAAA,2000,inf\n", "debt").skipped_rows == 1);
}

TEST_CASE("aliases map source names to ISO codes") {
    std::istringstream a("source_name,iso3\n\"Korea, Rep.\",KOR\nCroatia,HRV\n");
    const auto aliases = load_aliases(a);
    CHECK(aliases.at("Korea, Rep.") == "KOR");
    std::istringstream in("country,year,value\n\"Korea, Rep.\",2010,3\nCroatia,2010,4\nXYZ,2010,5\n");
    const auto r = load_panel(in, "gdp", &aliases);
    CHECK(r.panel.value("KOR", 2010, "gdp") == 3.0);
    CHECK(r.panel.value("HRV", 2010, "gdp") == 4.0);
    CHECK(r.panel.value("XYZ", 2010, "gdp") == 5.0);

    std::istringstream bad("name,code\nA,B\n");
    CHECK_THROWS_AS(load_aliases(bad), FormatError);
    std::istringstream clash("source_name,iso3\nA,AAA\nA,BBB\n");
    CHECK_THROWS_AS(load_aliases(clash), DuplicateKeyError);
}

TEST_CASE("balanced_subset keeps only complete countries") {
    const auto r = load(
        "country,year,value\nAAA,2000,1\nAAA,2001,2\nAAA,2002,3\n"
        "BBB,2000,4\nBBB,2002,6\n"
        "CCC,2000,7\nCCC,2001,8\nCCC,2002,9\n");
    const auto b = balanced_subset(r.panel, "gdp", {2000, 2002});
    CHECK(b.countries() == std::vector<std::string>{"AAA", "CCC"});
    CHECK(b.value("CCC", 2001) == 8.0);
    CHECK(b.n_years() == 3);

    SUBCASE("identity when all complete") {
        const auto b2 = balanced_subset(r.panel, "gdp", {2000, 2000});
        CHECK(b2.countries() == r.panel.countries("gdp"));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(balanced_subset(r.panel, "gdp", {1999, 2002}), ParameterError);
        CHECK_THROWS_AS(balanced_subset(r.panel, "gci", {2000, 2002}), LookupError);
        const auto sparse = load("country,year,value\nAAA,2000,1\nBBB,2001,2\n");
        CHECK_THROWS_AS(balanced_subset(sparse.panel, "gdp", {2000, 2001}), EmptyPanelError);
    }
}

TEST_CASE("balanced_subset is idempotent and yields finite cells (random panels)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        IndicatorPanel p;
        const int n_countries = 1 + static_cast<int>(rng() % 12);
        for (int c = 0; c < n_countries; ++c) {
            for (int y = 1990; y < 2000; ++y) {
                if (rng() % 10 == 0 && c > 0) continue;  // country 0 stays complete
                p.insert({"C" + std::to_string(c), y, "gdp", 1.0 + static_cast<double>(rng() % 1000)});
            }
        }
        const YearRange years{1990 + static_cast<int>(rng() % 3), 1997 + static_cast<int>(rng() % 3)};
        const auto once = balanced_subset(p, "gdp", years);
        const auto twice = balanced_subset(once.to_indicator_panel(), "gdp", years);
        CHECK(once == twice);
        for (std::size_t c = 0; c < once.n_countries(); ++c) {
            for (double v : once.row(c)) CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("write_panel_csv round-trips the observation set") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> value(1e-3, 1e9);
    for (int trial = 0; trial < 50; ++trial) {
        IndicatorPanel p;
        for (int c = 0; c < 6; ++c) {
            for (int y = 2000; y < 2008; ++y) {
                if (rng() % 4 == 0) continue;
                p.insert({"K" + std::to_string((c * 7919) % 13), y, "gdp", value(rng)});
            }
        }
        std::ostringstream out;
        write_panel_csv(out, p, "gdp");
        std::istringstream in(out.str());
        const auto back = load_panel(in, "gdp");
        CHECK(back.skipped_rows == 0);
        CHECK(back.panel.observations() == p.observations());
    }
}

TEST_CASE("canonical dump is sorted by country then year") {
    const auto r = load("country,year,value\nBBB,2001,2\nAAA,2001,1.5\nBBB,2000,1\nAAA,2000,0.25\n");
    std::ostringstream out;
    write_panel_csv(out, r.panel, "gdp");
    CHECK(out.str() == "country,year,value\nAAA,2000,0.25\nAAA,2001,1.5\nBBB,2000,1\nBBB,2001,2\n");
}

TEST_CASE("growth_rate") {
    const BalancedPanel p("gdp", {"AAA", "BBB"}, {2008, 2011}, {100, 105, 107, 110, 50, 50, 50, 50});
    // ln(1.1), evaluated at 30 digits with mpmath
    CHECK(growth_rate(p, "AAA", 2008, 2011) == doctest::Approx(0.0953101798043248600).epsilon(1e-14));
    CHECK(growth_rate(p, "AAA", 2008, 2011, GrowthKind::relative) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(growth_rate(p, "BBB", 2008, 2011) == 0.0);
    CHECK_THROWS_AS(growth_rate(p, "AAA", 2011, 2008), ParameterError);
    CHECK_THROWS_AS(growth_rate(p, "AAA", 2008, 2012), LookupError);
    CHECK_THROWS_AS(growth_rate(p, "ZZZ", 2008, 2011), LookupError);

    const BalancedPanel zero("debt", {"AAA"}, {2008, 2009}, {100, 0});
    CHECK_THROWS_AS(growth_rate(zero, "AAA", 2008, 2009), DomainError);
}

TEST_CASE("parse_year_range") {
    CHECK(parse_year_range("1980:2011") == YearRange{1980, 2011});
    CHECK(parse_year_range("2000:2000").span() == 1);
    CHECK_THROWS_AS(parse_year_range("2011:1980"), ParameterError);
    CHECK_THROWS_AS(parse_year_range("1980-2011"), ParameterError);
    CHECK_THROWS_AS(parse_year_range("a:b"), ParameterError);
}

TEST_CASE("BalancedPanel construction invariants") {
    CHECK_THROWS_AS(BalancedPanel("gdp", {"B", "A"}, {2000, 2000}, {1, 2}), ParameterError);
    CHECK_THROWS_AS(BalancedPanel("gdp", {"A"}, {2000, 2001}, {1}), ParameterError);
    CHECK_THROWS_AS(BalancedPanel("gdp", {"A"}, {2000, 2000}, {NAN}), DomainError);
}
