#include "stresskit/csv.hpp"

#include "stresskit/alis.hpp"
#include "stresskit/catastrophe.hpp"
#include "stresskit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stresskit {

namespace {

void strip_eol(std::string& line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trimmed(s);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size() && std::isfinite(out);
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw Error("cannot open for writing: " + file.string());
    return out;
}

} // namespace

std::string format_value(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc{})
        throw Error("value rendering failed");
    return std::string(buf, p);
}

PriceSeries ingest_csv(const std::filesystem::path& file, const TradingCalendar& calendar,
                       std::string instrument_id) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw CsvError("cannot open: " + file.string());
    if (instrument_id.empty())
        instrument_id = file.stem().string();

    std::vector<std::pair<Date, double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_eol(line);
        std::string_view view = line;
        if (lineno == 1 && view.size() >= 3 && view.substr(0, 3) == "\xef\xbb\xbf")
            view.remove_prefix(3); // UTF-8 BOM
        if (trimmed(view).empty())
            continue;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos)
            throw CsvError("expected two comma-separated fields", lineno);
        const auto date_field = trimmed(view.substr(0, comma));
        const auto value_field = trimmed(view.substr(comma + 1));
        const auto date = parse_date(date_field);
        if (!date) {
            if (lineno == 1)
                continue; // header row
            throw CsvError("malformed date '" + std::string(date_field) + "'", lineno);
        }
        double value = 0.0;
        if (!parse_double(value_field, value))
            throw CsvError("malformed price '" + std::string(value_field) + "'", lineno);
        if (value <= 0.0)
            throw CsvError("non-positive price", lineno);
        rows.emplace_back(*date, value);
    }
    return ingest_rows(std::move(rows), calendar, std::move(instrument_id));
}

PriceSeries ingest_rows(std::vector<std::pair<Date, double>> rows, const TradingCalendar& calendar,
                        std::string instrument_id) {
    if (!calendar.valid())
        throw ConfigError("invalid trading calendar");
    if (rows.size() < 2)
        throw CsvError("need at least 2 data rows");

    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first)
            throw CsvError("duplicate date " + format_date(rows[i].first));
    }

    PriceSeries out;
    out.instrument_id = std::move(instrument_id);
    out.dates = weekday_grid(rows.front().first, rows.back().first);
    if (out.dates.empty())
        throw CsvError("no trading days in the input date range");
    out.values.reserve(out.dates.size());

    // Weekend rows (if any) are folded into the following weekday by the
    // forward scan; the first grid day must have a value at or before it.
    std::size_t r = 0;
    double last = rows.front().second;
    bool seeded = false;
    for (Date d : out.dates) {
        bool fresh = false;
        while (r < rows.size() && rows[r].first <= d) {
            last = rows[r].second;
            fresh = rows[r].first == d;
            seeded = true;
            ++r;
        }
        if (!seeded)
            throw CsvError("first trading day has no price row");
        if (!fresh)
            ++out.fill_count;
        out.values.push_back(last);
    }

    if (10 * out.fill_count > out.dates.size())
        throw CsvError("too sparse: " + std::to_string(out.fill_count) + " of " +
                       std::to_string(out.dates.size()) + " trading days forward-filled");
    return out;
}

void write_series_csv(const std::filesystem::path& file, const std::vector<Date>& dates,
                      const std::vector<double>& values) {
    if (dates.size() != values.size())
        throw Error("date/value length mismatch");
    auto out = open_out(file);
    out << "date,value\n";
    for (std::size_t i = 0; i < dates.size(); ++i)
        out << format_date(dates[i]) << ',' << format_value(values[i]) << '\n';
}

void write_stress_csv(const std::filesystem::path& file, const StressSeries& series) {
    auto out = open_out(file);
    out << "date,value,measure,instrument\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.dates[i]) << ',';
        if (series.values[i])
            out << format_value(*series.values[i]);
        out << ',' << to_string(series.measure) << ',' << series.instrument_id << '\n';
    }
}

void write_alis_csv(const std::filesystem::path& file, const AlisSeries& series,
                    const AlisConfig& config) {
    auto out = open_out(file);
    out << "# lf_cut=" << format_value(config.bands.lf_cut)
        << " hf_lo=" << format_value(config.bands.hf_lo)
        << " hf_hi=" << format_value(config.bands.hf_hi)
        << " trim=" << format_value(config.trim)
        << " detrend_tau=" << config.detrend_tau
        << " offset=first_month threshold=" << format_value(series.threshold) << '\n';
    out << "month_end_date,lf,hf,alis,above_threshold\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_date(series.month_end_dates[i]) << ','
            << format_value(series.lf[i]) << ','
            << format_value(series.hf[i]) << ','
            << format_value(series.alis[i]) << ','
            << (series.alis[i] > series.threshold ? '1' : '0') << '\n';
    }
}

void write_path_csv(const std::filesystem::path& file, const CatastrophePath& path,
                    const std::vector<CrisisSegment>& segments) {
    auto out = open_out(file);
    out << "date,arousal,performance,segment_label\n";
    for (const PathPoint& pt : path.points) {
        const CrisisSegment* covering = nullptr;
        for (const CrisisSegment& seg : segments) {
            if (pt.date >= seg.start && pt.date < seg.end) {
                covering = &seg;
                break;
            }
        }
        out << format_date(pt.date) << ',' << format_value(pt.arousal) << ','
            << format_value(pt.performance) << ',' << (covering ? covering->label : "") << '\n';
    }
}

} // namespace stresskit
