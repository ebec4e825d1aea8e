#pragma once

#include "stresskit/calendar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stresskit {

/// Daily closing prices on a complete weekday grid (no missing dates,
/// holidays forward-filled at ingestion).
struct PriceSeries {
    std::string instrument_id;
    std::vector<Date> dates;
    std::vector<double> values;
    std::size_t fill_count = 0; // grid days forward-filled at ingestion

    std::size_t size() const noexcept { return dates.size(); }
};

/// Residual series left after moving-average detrending at one scale.
/// Each residual is anchored at the centre date of its averaging window.
struct DetrendedSeries {
    std::string source_id;
    int scale = 0; // trading days in the subtracted moving average
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const noexcept { return dates.size(); }
};

enum class Measure {
    mod_mse,
    mod_mmse,
    inv_mod_mse,
    inv_mod_mmse,
    det,
    alis,
};

std::string_view to_string(Measure m) noexcept;
std::optional<Measure> measure_from_string(std::string_view name) noexcept;

/// Rolling measure values, one per analysis window, dated at the window-end
/// trading day.  A disengaged value is a gap: that window's computation was
/// degenerate, but the run carried on.
struct StressSeries {
    Measure measure = Measure::mod_mse;
    std::string instrument_id;
    std::vector<Date> dates;
    std::vector<std::optional<double>> values;

    std::size_t size() const noexcept { return dates.size(); }
    std::size_t gap_count() const noexcept;
};

/// Monthly normalized low/high-frequency envelope levels, their sum, and the
/// crisis threshold (exact median of the sum).
struct AlisSeries {
    std::string instrument_id;
    std::vector<Date> month_end_dates;
    std::vector<double> lf;
    std::vector<double> hf;
    std::vector<double> alis;
    double threshold = 0.0;

    std::size_t size() const noexcept { return month_end_dates.size(); }
};

/// Several instruments restricted to their common trading dates, one value
/// channel per instrument, all channels equally long.
struct AlignedChannels {
    std::vector<std::string> instrument_ids;
    std::vector<Date> dates;
    std::vector<std::vector<double>> channels;

    std::size_t size() const noexcept { return dates.size(); }
};

/// Intersection of trading dates across all inputs (at least two series,
/// non-empty overlap required).
AlignedChannels align_channels(const std::vector<const PriceSeries*>& series);

} // namespace stresskit
