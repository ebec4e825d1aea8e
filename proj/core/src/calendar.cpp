#include "stresskit/calendar.hpp"

#include "stresskit/errors.hpp"

#include <charconv>
#include <cstdio>

namespace stresskit {

bool is_weekday(Date d) noexcept {
    const std::chrono::weekday wd{d};
    return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
}

Date next_weekday(Date d) noexcept {
    do {
        d += std::chrono::days{1};
    } while (!is_weekday(d));
    return d;
}

std::optional<Date> parse_date(std::string_view text) noexcept {
    // Fixed layout YYYY-MM-DD, all digits mandatory.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    int y = 0;
    unsigned m = 0, d = 0;
    auto num = [](std::string_view s, auto& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size();
    };
    if (!num(text.substr(0, 4), y) || !num(text.substr(5, 2), m) || !num(text.substr(8, 2), d))
        return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok())
        return std::nullopt;
    return Date{std::chrono::sys_days{ymd}};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u",
                  int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

Date make_date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok())
        throw Error("invalid calendar date");
    return Date{std::chrono::sys_days{ymd}};
}

std::vector<Date> weekday_grid(Date first, Date last) {
    std::vector<Date> grid;
    if (first > last)
        return grid;
    Date d = is_weekday(first) ? first : next_weekday(first);
    while (d <= last) {
        grid.push_back(d);
        d = next_weekday(d);
    }
    return grid;
}

} // namespace stresskit
