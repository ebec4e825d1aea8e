#pragma once

#include "stresskit/series.hpp"

#include <span>
#include <vector>

namespace stresskit {

/// Band edges in cycles per trading day.
struct BandSpec {
    double lf_cut = 1.0 / 240.0; // LF band is [0, lf_cut]
    double hf_lo = 1.0 / 60.0;   // HF band is [hf_lo, hf_hi]
    double hf_hi = 1.0 / 5.0;

    bool valid() const noexcept {
        return 0.0 < lf_cut && lf_cut < hf_lo && hf_lo < hf_hi && hf_hi <= 0.5;
    }
};

struct AlisConfig {
    BandSpec bands;
    double trim = 0.20;     // fraction dropped per tail inside each window
    int detrend_tau = 261;  // one trading year
    int window = 1044;      // four trading years of envelope samples
    int increment = 21;     // one trading month

    void validate() const; // throws ConfigError
};

/// Zero-phase ideal bandpass: forward real FFT, keep bins with
/// f_lo <= k/N <= f_hi (plus mirror), zero the rest, inverse transform.
/// Length preserved; needs length >= 64 and a band containing at least one
/// bin.
std::vector<double> bandpass(std::span<const double> z, double f_lo, double f_hi);

/// Envelope |analytic(b)| with the analytic signal built in the frequency
/// domain (positive frequencies doubled, negative zeroed).  Length >= 64.
std::vector<double> instantaneous_amplitude(std::span<const double> b);

/// Per window: sort, drop floor(trim * W) values at each tail, mean the
/// rest; windows advance by increment.
std::vector<double> trimmed_window_means(std::span<const double> envelope, int window,
                                         int increment, double trim);

/// Full pipeline: divide by the first price (exact-scale normalization),
/// detrend at detrend_tau, bandpass to LF/HF, envelope each, monthly trimmed
/// means, z-normalize per band, subtract each band's first month, sum, and
/// take the exact median as threshold.  Months are dated at the end of the
/// 21-sample block centred in their window.
AlisSeries ia_alis(const PriceSeries& series, const TradingCalendar& calendar,
                   const AlisConfig& config);

} // namespace stresskit
