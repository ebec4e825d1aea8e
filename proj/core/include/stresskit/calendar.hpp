#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stresskit {

/// Calendar dates are day-resolution time points; arithmetic in whole days.
using Date = std::chrono::sys_days;

/// Idealized trading calendar: every weekday trades, 261 days per year,
/// 21 days per month.
struct TradingCalendar {
    int days_per_year = 261;
    int days_per_month = 21;

    bool valid() const noexcept {
        return days_per_month > 0 && days_per_year >= days_per_month;
    }
};

bool is_weekday(Date d) noexcept;

/// First weekday strictly after d.
Date next_weekday(Date d) noexcept;

/// Strict ISO-8601 (YYYY-MM-DD) parse; rejects impossible dates.
std::optional<Date> parse_date(std::string_view text) noexcept;

std::string format_date(Date d);

/// Convenience constructor for literals known to be valid.
Date make_date(int year, unsigned month, unsigned day);

/// Every weekday in [first, last], inclusive.
std::vector<Date> weekday_grid(Date first, Date last);

} // namespace stresskit
