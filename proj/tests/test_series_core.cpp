#include "stresskit/calendar.hpp"
#include "stresskit/csv.hpp"
#include "stresskit/detrend.hpp"
#include "stresskit/errors.hpp"
#include "stresskit/series.hpp"

#include "support/synthetic.hpp"
#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace stresskit;

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    const double mu = mean_of(v);
    double s = 0.0;
    for (double x : v)
        s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size()));
}

} // namespace

TEST_CASE("date parsing is strict ISO-8601") {
    CHECK(parse_date("2020-02-29").has_value()); // leap day
    CHECK(format_date(*parse_date("2020-02-29")) == "2020-02-29");
    CHECK_FALSE(parse_date("2020-02-30").has_value());
    CHECK_FALSE(parse_date("2021-02-29").has_value());
    CHECK_FALSE(parse_date("2020-2-3").has_value());
    CHECK_FALSE(parse_date("2020/02/03").has_value());
    CHECK_FALSE(parse_date("2020-02-03x").has_value());
    CHECK_FALSE(parse_date("").has_value());
}

TEST_CASE("weekday grid spans business days inclusively") {
    // 2021-03-01 is a Monday.
    const auto grid = weekday_grid(make_date(2021, 3, 1), make_date(2021, 3, 12));
    CHECK(grid.size() == 10);
    CHECK(grid.front() == make_date(2021, 3, 1));
    CHECK(grid.back() == make_date(2021, 3, 12));
    for (Date d : grid)
        CHECK(is_weekday(d));
    CHECK(next_weekday(make_date(2021, 3, 5)) == make_date(2021, 3, 8)); // Fri -> Mon
}

TEST_CASE("three in-order weekday rows ingest without fills") {
    TradingCalendar cal;
    std::vector<std::pair<Date, double>> rows = {
        {make_date(2021, 3, 1), 10.0},
        {make_date(2021, 3, 2), 11.0},
        {make_date(2021, 3, 3), 12.0},
    };
    const PriceSeries s = ingest_rows(rows, cal, "X");
    CHECK(s.size() == 3);
    CHECK(s.fill_count == 0);
    CHECK(s.values == std::vector<double>{10.0, 11.0, 12.0});
}

TEST_CASE("missing interior weekday forward-fills from the previous close") {
    TradingCalendar cal;
    // Eleven grid weekdays (2021-03-01 .. 2021-03-15) with only Tuesday the
    // 2nd missing keeps the fill ratio below the 10% sparsity guard.
    std::vector<std::pair<Date, double>> rows;
    Date d = make_date(2021, 3, 1);
    for (int i = 0; i < 11; ++i) {
        if (d != make_date(2021, 3, 2))
            rows.emplace_back(d, 100.0 + i);
        d = next_weekday(d);
    }
    const PriceSeries s = ingest_rows(rows, cal, "X");
    REQUIRE(s.size() == 11);
    CHECK(s.values[0] == 100.0);
    CHECK(s.values[1] == 100.0); // carried forward across the missing Tuesday
    CHECK(s.values[2] == 102.0);
    CHECK(s.fill_count == 1);
}

TEST_CASE("malformed rows are reported with their line number") {
    testutil::TempDir dir("csv");
    const auto file = dir.file("bad.csv");

    SUBCASE("impossible date under a header") {
        testutil::write_file(file, "date,close\n2020-02-30,100\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file, TradingCalendar{}), doctest::Contains("line 2"),
                             CsvError);
    }
    SUBCASE("impossible date in a later row") {
        testutil::write_file(file, "2020-03-02,100\n2020-02-30,101\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file, TradingCalendar{}), doctest::Contains("line 2"),
                             CsvError);
    }
    SUBCASE("an unparsable first line is absorbed as the header") {
        // With no way to tell a bad date from a header, line 1 is skipped and
        // the single surviving row trips the minimum-rows check instead.
        testutil::write_file(file, "2020-02-30,100\n2020-03-02,101\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file, TradingCalendar{}),
                             doctest::Contains("at least 2 data rows"), CsvError);
    }
    SUBCASE("unparsable price") {
        testutil::write_file(file, "date,close\n2020-03-02,abc\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file, TradingCalendar{}), doctest::Contains("line 2"),
                             CsvError);
    }
    SUBCASE("non-positive price") {
        testutil::write_file(file, "2020-03-02,100\n2020-03-03,-4\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file, TradingCalendar{}), doctest::Contains("line 2"),
                             CsvError);
    }
    SUBCASE("duplicate date") {
        testutil::write_file(file, "2020-03-02,100\n2020-03-02,101\n");
        CHECK_THROWS_AS(ingest_csv(file, TradingCalendar{}), CsvError);
    }
}

TEST_CASE("excessive interior gaps fail ingestion") {
    TradingCalendar cal;
    // Two rows a full year apart: every interior weekday would be a fill.
    std::vector<std::pair<Date, double>> rows = {
        {make_date(2020, 1, 6), 100.0},
        {make_date(2021, 1, 6), 101.0},
    };
    CHECK_THROWS_AS(ingest_rows(rows, cal, "X"), CsvError);
}

TEST_CASE("ingest, serialize, ingest round-trip is the identity") {
    testutil::TempDir dir("roundtrip");
    synth::Rng rng(17);
    std::vector<double> values(300);
    double p = 120.0;
    for (auto& v : values) {
        p *= 1.0 + 0.01 * rng.gauss();
        v = p;
    }
    const PriceSeries original = synth::prices(values, "RT");

    const auto file = dir.file("rt.csv");
    write_series_csv(file, original.dates, original.values);
    const PriceSeries again = ingest_csv(file, TradingCalendar{}, "RT");

    REQUIRE(again.size() == original.size());
    CHECK(again.dates == original.dates);
    CHECK(again.values == original.values); // 17-digit rendering is exact
    CHECK(again.fill_count == 0);
}

TEST_CASE("ingest accepts BOM, CRLF, and a missing header") {
    testutil::TempDir dir("quirks");
    const auto file = dir.file("quirky.csv");
    // A BOM ahead of a data row must not demote that row to a header.
    testutil::write_file(file, "\xEF\xBB\xBF" "2021-03-01,5\r\n2021-03-02,6\r\n");
    const PriceSeries s = ingest_csv(file, TradingCalendar{});
    CHECK(s.size() == 2);
    CHECK(s.values[0] == 5.0);

    testutil::write_file(file, "2021-03-01,5\r\n2021-03-02,6\r\n");
    const PriceSeries t = ingest_csv(file, TradingCalendar{});
    CHECK(t.size() == 2);
    CHECK(t.values[1] == 6.0);
    CHECK(t.instrument_id == "quirky"); // defaults to the file stem
}

TEST_CASE("standardize matches the closed-form three-point case") {
    const auto z = standardize(std::vector<double>{1.0, 2.0, 3.0});
    REQUIRE(z.size() == 3);
    const double root = std::sqrt(1.5);
    CHECK(z[0] == doctest::Approx(-root).epsilon(1e-14));
    CHECK(z[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(z[2] == doctest::Approx(root).epsilon(1e-14));
}

TEST_CASE("standardize rejects constant windows") {
    CHECK_THROWS_AS(standardize(std::vector<double>{5.0, 5.0, 5.0}), DegenerateWindowError);
}

TEST_CASE("standardized Gaussian sample has zero mean and unit sd") {
    const auto z = standardize(synth::gaussian(1044, 99));
    CHECK(std::abs(mean_of(z)) < 1e-12);
    CHECK(std::abs(sd_of(z) - 1.0) < 1e-12);
}

TEST_CASE("moving-average detrend of a linear ramp is zero") {
    std::vector<double> ramp(10);
    for (std::size_t i = 0; i < ramp.size(); ++i)
        ramp[i] = static_cast<double>(i + 1);
    const auto y = ma_detrend(ramp, 5);
    REQUIRE(y.size() == 6);
    for (double v : y)
        CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("detrend anchors the residual at the window centre") {
    // Impulse of height 5 at index 2: the first length-5 window averages to 1
    // and its centre sample is the impulse, so y(0) = 5 - 1 = 4; the next two
    // windows still average to 1 but their centre samples are zeros.
    const std::vector<double> x = {0.0, 0.0, 5.0, 0.0, 0.0, 0.0, 0.0};
    const auto y = ma_detrend(x, 5);
    REQUIRE(y.size() == 3);
    CHECK(y[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(y[2] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("detrend is linear and annihilates degree-1 polynomials") {
    synth::Rng rng(5);
    std::vector<double> x(64);
    for (auto& v : x)
        v = rng.gauss();

    for (int tau : {3, 5, 9, 21}) { // odd scales centre exactly on a sample
        const auto base = ma_detrend(x, tau);

        std::vector<double> affine(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            affine[i] = 2.5 * x[i] + 7.0;
        const auto scaled = ma_detrend(affine, tau);
        REQUIRE(scaled.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(scaled[i] == doctest::Approx(2.5 * base[i]).epsilon(1e-12));

        std::vector<double> poly(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            poly[i] = 3.0 - 0.25 * static_cast<double>(i);
        for (double v : ma_detrend(poly, tau))
            CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("detrend output length is N - tau + 1 for every valid tau") {
    const auto x = synth::gaussian(40, 3);
    for (int tau = 2; tau <= 39; ++tau)
        CHECK(ma_detrend(x, tau).size() == x.size() - static_cast<std::size_t>(tau) + 1);
    CHECK_THROWS_AS(ma_detrend(x, 40), ConfigError);
    CHECK_THROWS_AS(ma_detrend(x, 1), ConfigError);
}

TEST_CASE("align_channels keeps identical series at full length") {
    const PriceSeries a = synth::prices(synth::gaussian(50, 1, 100.0, 1.0), "A");
    PriceSeries b = a;
    b.instrument_id = "B";
    const AlignedChannels ac = align_channels({&a, &b});
    CHECK(ac.dates.size() == 50);
    REQUIRE(ac.channels.size() == 2);
    CHECK(ac.channels[0] == ac.channels[1]);
    CHECK(ac.instrument_ids == std::vector<std::string>{"A", "B"});
}

TEST_CASE("align_channels restricts to the date intersection") {
    const auto va = synth::gaussian(200, 2, 100.0, 1.0);
    const auto vb = synth::gaussian(200, 3, 100.0, 1.0);
    PriceSeries a = synth::prices(va, "A");
    PriceSeries b = synth::prices(vb, "B");

    // Shift B forward by 120 grid days: overlap = 80 dates.
    b.dates.assign(a.dates.begin() + 120, a.dates.end());
    Date d = a.dates.back();
    while (b.dates.size() < b.values.size()) {
        d = next_weekday(d);
        b.dates.push_back(d);
    }
    const AlignedChannels ac = align_channels({&a, &b});
    CHECK(ac.dates.size() == 80);
    CHECK(ac.dates.front() == a.dates[120]);
    CHECK(ac.dates.back() == a.dates.back());
    CHECK(ac.channels[0] == std::vector<double>(va.begin() + 120, va.end()));
    CHECK(ac.channels[1] == std::vector<double>(vb.begin(), vb.begin() + 80));
}

TEST_CASE("a date missing from one of three channels is dropped from all") {
    PriceSeries a = synth::prices(synth::gaussian(30, 4, 100.0, 1.0), "A");
    PriceSeries b = synth::prices(synth::gaussian(30, 5, 100.0, 1.0), "B");
    PriceSeries c = synth::prices(synth::gaussian(30, 6, 100.0, 1.0), "C");
    const Date removed = c.dates[10];
    c.dates.erase(c.dates.begin() + 10);
    c.values.erase(c.values.begin() + 10);

    const AlignedChannels ac = align_channels({&a, &b, &c});
    CHECK(ac.dates.size() == 29);
    for (Date d : ac.dates)
        CHECK(d != removed);
}

TEST_CASE("align_channels rejects degenerate requests") {
    const PriceSeries a = synth::prices(synth::gaussian(10, 7, 100.0, 1.0), "A");
    PriceSeries apart = synth::prices(synth::gaussian(10, 8, 100.0, 1.0), "B");
    for (auto& d : apart.dates)
        d += std::chrono::days(365); // no overlap
    CHECK_THROWS_AS(align_channels({&a}), Error);
    CHECK_THROWS_AS(align_channels({&a, &apart}), Error);
}

TEST_CASE("stress CSV renders gaps as an empty value field") {
    testutil::TempDir dir("stress");
    StressSeries s;
    s.measure = Measure::mod_mse;
    s.instrument_id = "X";
    s.dates = {make_date(2021, 3, 1), make_date(2021, 3, 2)};
    s.values = {0.5, std::nullopt};
    const auto file = dir.file("s.csv");
    write_stress_csv(file, s);
    const std::string text = testutil::read_file(file);
    CHECK(text == "date,value,measure,instrument\n"
                  "2021-03-01,0.5,mod_mse,X\n"
                  "2021-03-02,,mod_mse,X\n");
    CHECK(s.gap_count() == 1);
}

TEST_CASE("measure names round-trip") {
    for (Measure m : {Measure::mod_mse, Measure::mod_mmse, Measure::inv_mod_mse,
                      Measure::inv_mod_mmse, Measure::det, Measure::alis}) {
        const auto back = measure_from_string(to_string(m));
        REQUIRE(back.has_value());
        CHECK(*back == m);
    }
    CHECK_FALSE(measure_from_string("nope").has_value());
}
