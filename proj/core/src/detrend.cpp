#include "stresskit/detrend.hpp"

#include "stresskit/errors.hpp"

#include <cmath>

namespace stresskit {

std::vector<double> standardize(std::span<const double> window) {
    if (window.empty())
        throw Error("cannot standardize an empty window");
    const double n = static_cast<double>(window.size());
    double mean = 0.0;
    for (double v : window)
        mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : window)
        var += (v - mean) * (v - mean);
    var /= n;
    if (var <= 0.0)
        throw DegenerateWindowError{};
    const double sd = std::sqrt(var);
    std::vector<double> out;
    out.reserve(window.size());
    for (double v : window)
        out.push_back((v - mean) / sd);
    return out;
}

std::vector<double> ma_detrend(std::span<const double> window, int scale) {
    const std::size_t n = window.size();
    if (scale < 2 || static_cast<std::size_t>(scale) >= n)
        throw ConfigError("detrend scale must satisfy 2 <= scale <= length - 1");
    const std::size_t count = n - static_cast<std::size_t>(scale) + 1;
    const std::size_t centre = static_cast<std::size_t>(scale) / 2;

    std::vector<double> out;
    out.reserve(count);
    // The running sum is rebuilt from scratch: summation-order independence
    // keeps results identical across increments and window slicing.
    for (std::size_t j = 0; j < count; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(scale); ++i)
            sum += window[j + i];
        out.push_back(window[j + centre] - sum / scale);
    }
    return out;
}

std::vector<Date> detrend_dates(std::span<const Date> dates, int scale) {
    const std::size_t n = dates.size();
    if (scale < 2 || static_cast<std::size_t>(scale) >= n)
        throw ConfigError("detrend scale must satisfy 2 <= scale <= length - 1");
    const std::size_t count = n - static_cast<std::size_t>(scale) + 1;
    const std::size_t centre = static_cast<std::size_t>(scale) / 2;
    std::vector<Date> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
        out.push_back(dates[j + centre]);
    return out;
}

DetrendedSeries make_detrended(const PriceSeries& source, int scale) {
    DetrendedSeries out;
    out.source_id = source.instrument_id;
    out.scale = scale;
    const std::vector<double> z = standardize(source.values);
    out.values = ma_detrend(z, scale);
    out.dates = detrend_dates(source.dates, scale);
    return out;
}

} // namespace stresskit
