#include "stresskit/alis.hpp"

#include "stresskit/detrend.hpp"
#include "stresskit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stresskit {

void AlisConfig::validate() const {
    if (!bands.valid())
        throw ConfigError("band spec must satisfy 0 < lf_cut < hf_lo < hf_hi <= 0.5");
    if (!(trim >= 0.0) || !(trim < 0.5))
        throw ConfigError("trim fraction must lie in [0, 0.5)");
    if (detrend_tau < 2)
        throw ConfigError("detrend scale must be >= 2");
    if (window < 1)
        throw ConfigError("window must be >= 1");
    if (increment < 1 || increment > window)
        throw ConfigError("increment must lie in [1, window]");
}

std::vector<double> trimmed_window_means(std::span<const double> envelope, int window,
                                         int increment, double trim) {
    if (window < 1 || increment < 1)
        throw ConfigError("window and increment must be >= 1");
    if (!(trim >= 0.0) || !(trim < 0.5))
        throw ConfigError("trim fraction must lie in [0, 0.5)");
    const auto win = static_cast<std::size_t>(window);
    if (envelope.size() < win)
        throw Error("window longer than the envelope");

    const std::size_t drop = static_cast<std::size_t>(std::floor(trim * static_cast<double>(win)));
    if (2 * drop >= win)
        throw ConfigError("trim leaves no samples in the window");

    std::vector<double> out;
    std::vector<double> scratch(win);
    const std::size_t stride = static_cast<std::size_t>(increment);
    for (std::size_t pos = 0; pos + win <= envelope.size(); pos += stride) {
        scratch.assign(envelope.begin() + static_cast<std::ptrdiff_t>(pos),
                       envelope.begin() + static_cast<std::ptrdiff_t>(pos + win));
        std::sort(scratch.begin(), scratch.end());
        double sum = 0.0;
        for (std::size_t i = drop; i < win - drop; ++i)
            sum += scratch[i];
        out.push_back(sum / static_cast<double>(win - 2 * drop));
    }
    return out;
}

namespace {

// Z-normalization (population stdev) used on the monthly band series.
std::vector<double> z_normalize(const std::vector<double>& v, const char* band_name) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : v)
        var += (x - mean) * (x - mean);
    var /= n;
    if (var <= 0.0)
        throw Error(std::string(band_name) + " monthly series is constant, normalization undefined");
    const double sd = std::sqrt(var);
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v)
        out.push_back((x - mean) / sd);
    return out;
}

double exact_median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

AlisSeries ia_alis(const PriceSeries& series, const TradingCalendar& calendar,
                   const AlisConfig& config) {
    config.validate();
    if (!calendar.valid())
        throw ConfigError("invalid trading calendar");
    const std::size_t min_len =
        static_cast<std::size_t>(config.window) + static_cast<std::size_t>(config.detrend_tau) - 1;
    if (series.size() < min_len)
        throw Error("series shorter than one analysis window plus the detrend span");

    // Dividing by the first price is a mathematical no-op (the band series
    // are z-normalized later) but makes the advertised scale invariance
    // exact: (a*x)/(a*x0) rounds identically to x/x0 whenever a*x is exact.
    std::vector<double> unit(series.values.size());
    const double first = series.values.front();
    for (std::size_t i = 0; i < unit.size(); ++i)
        unit[i] = series.values[i] / first;

    const std::vector<double> detrended = ma_detrend(unit, config.detrend_tau);
    const std::vector<Date> dates = detrend_dates(series.dates, config.detrend_tau);

    const std::vector<double> lf_band = bandpass(detrended, 0.0, config.bands.lf_cut);
    const std::vector<double> hf_band = bandpass(detrended, config.bands.hf_lo, config.bands.hf_hi);
    const std::vector<double> lf_env = instantaneous_amplitude(lf_band);
    const std::vector<double> hf_env = instantaneous_amplitude(hf_band);

    std::vector<double> lf =
        z_normalize(trimmed_window_means(lf_env, config.window, config.increment, config.trim), "LF");
    std::vector<double> hf =
        z_normalize(trimmed_window_means(hf_env, config.window, config.increment, config.trim), "HF");
    const double lf0 = lf.front();
    const double hf0 = hf.front();
    for (double& v : lf)
        v -= lf0;
    for (double& v : hf)
        v -= hf0;

    AlisSeries out;
    out.instrument_id = series.instrument_id;
    out.lf = std::move(lf);
    out.hf = std::move(hf);
    out.alis.reserve(out.lf.size());
    for (std::size_t d = 0; d < out.lf.size(); ++d)
        out.alis.push_back(out.lf[d] + out.hf[d]);
    out.threshold = exact_median(out.alis);

    // Month d covers the increment-long block centred in its window; the
    // block's last envelope sample dates the month.
    const std::size_t win = static_cast<std::size_t>(config.window);
    const std::size_t inc = static_cast<std::size_t>(config.increment);
    out.month_end_dates.reserve(out.alis.size());
    for (std::size_t d = 0; d < out.alis.size(); ++d) {
        const std::size_t pos = d * inc;
        std::size_t idx = pos + win / 2 + inc / 2;
        if (idx > pos + win - 1)
            idx = pos + win - 1;
        out.month_end_dates.push_back(dates[idx]);
    }
    return out;
}

} // namespace stresskit
