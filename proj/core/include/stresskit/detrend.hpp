#pragma once

#include "stresskit/series.hpp"

#include <span>
#include <vector>

namespace stresskit {

/// Shift to zero mean and scale to unit population standard deviation.
/// Throws DegenerateWindowError on zero variance.
std::vector<double> standardize(std::span<const double> window);

/// Subtract the length-scale moving average, anchoring each residual at the
/// centre sample of its averaging window: y(j) = x(j + scale/2) − mean(x(j .. j+scale−1)).
/// Output length is window.size() − scale + 1.  Requires 2 ≤ scale ≤ size − 1.
std::vector<double> ma_detrend(std::span<const double> window, int scale);

/// Dates carried along with ma_detrend's centre-sample anchoring.
std::vector<Date> detrend_dates(std::span<const Date> dates, int scale);

/// Standardize a whole series, detrend it at one scale, keep the anchor dates.
DetrendedSeries make_detrended(const PriceSeries& source, int scale);

} // namespace stresskit
