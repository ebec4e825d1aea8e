#pragma once

#include "stresskit/calendar.hpp"
#include "stresskit/series.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace stresskit {

struct AlisConfig;
struct CatastrophePath;
struct CrisisSegment;

/// 17-significant-digit decimal rendering; exact round-trip for doubles.
std::string format_value(double v);

/// Read one daily-close CSV (optional `date,close` header, ISO-8601 dates)
/// onto the complete weekday grid spanned by its rows.  Interior weekdays
/// with no row are forward-filled from the previous close and counted.
PriceSeries ingest_csv(const std::filesystem::path& file, const TradingCalendar& calendar,
                       std::string instrument_id = {});

/// Grid construction and validation on already-parsed rows.
PriceSeries ingest_rows(std::vector<std::pair<Date, double>> rows, const TradingCalendar& calendar,
                        std::string instrument_id);

/// `date,value` rows for any date-indexed series.
void write_series_csv(const std::filesystem::path& file, const std::vector<Date>& dates,
                      const std::vector<double>& values);

/// `date,value,measure,instrument` rows; gaps render as an empty value field.
void write_stress_csv(const std::filesystem::path& file, const StressSeries& series);

/// `month_end_date,lf,hf,alis,above_threshold` rows behind a one-line
/// parameter header.
void write_alis_csv(const std::filesystem::path& file, const AlisSeries& series,
                    const AlisConfig& config);

/// `date,arousal,performance,segment_label` rows; the label column names the
/// crisis segment covering the date, empty outside every segment.
void write_path_csv(const std::filesystem::path& file, const CatastrophePath& path,
                    const std::vector<CrisisSegment>& segments);

} // namespace stresskit
