// Frequency-domain bandpass and analytic-signal envelope on top of FFTW.
// FFTW plan creation/destruction is not thread-safe, so both go through one
// global mutex; execution on private buffers is safe concurrently.

#include "stresskit/alis.hpp"

#include "stresskit/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>

namespace stresskit {

namespace {

std::mutex g_fftw_mutex;

constexpr std::size_t kMinFftLength = 64;

// Inclusive bin range [k_lo, k_hi] of the half spectrum covered by
// [f_lo, f_hi] cycles/sample; a small absolute guard keeps bins whose exact
// frequency is a representable fraction from falling out through rounding.
struct BinRange {
    std::size_t lo;
    std::size_t hi;
    bool empty;
};

BinRange band_bins(std::size_t n, double f_lo, double f_hi) {
    const double dn = static_cast<double>(n);
    const double guard = 1e-9;
    const double lo_real = f_lo * dn;
    const double hi_real = f_hi * dn;
    const auto lo = static_cast<std::int64_t>(std::ceil(lo_real - guard));
    auto hi = static_cast<std::int64_t>(std::floor(hi_real + guard));
    const auto nyquist = static_cast<std::int64_t>(n / 2);
    if (hi > nyquist)
        hi = nyquist;
    BinRange range{};
    range.lo = lo < 0 ? 0 : static_cast<std::size_t>(lo);
    range.hi = hi < 0 ? 0 : static_cast<std::size_t>(hi);
    range.empty = lo > hi;
    return range;
}

std::vector<std::complex<double>> forward_r2c(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    if (!plan)
        throw Error("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> inverse_c2r(std::vector<std::complex<double>>& spectrum, std::size_t n) {
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                    reinterpret_cast<fftw_complex*>(spectrum.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    if (!plan)
        throw Error("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out)
        v *= scale;
    return out;
}

} // namespace

std::vector<double> bandpass(std::span<const double> z, double f_lo, double f_hi) {
    if (z.size() < kMinFftLength)
        throw Error("bandpass needs at least 64 samples");
    if (!(f_lo >= 0.0) || !(f_lo < f_hi) || !(f_hi <= 0.5))
        throw ConfigError("band must satisfy 0 <= f_lo < f_hi <= 0.5");
    const std::size_t n = z.size();
    const BinRange keep = band_bins(n, f_lo, f_hi);
    if (keep.empty)
        throw Error("band holds no frequency bin at this length");

    auto spectrum = forward_r2c(z);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (k < keep.lo || k > keep.hi)
            spectrum[k] = 0.0;
    }
    return inverse_c2r(spectrum, n);
}

std::vector<double> instantaneous_amplitude(std::span<const double> b) {
    if (b.size() < kMinFftLength)
        throw Error("envelope needs at least 64 samples");
    const std::size_t n = b.size();

    // Analytic spectrum from the half spectrum: DC and Nyquist kept,
    // strictly positive frequencies doubled, negative frequencies zero.
    const auto half = forward_r2c(b);
    std::vector<std::complex<double>> full(n, std::complex<double>{0.0, 0.0});
    full[0] = half[0];
    const bool even = n % 2 == 0;
    const std::size_t pos_hi = even ? n / 2 - 1 : n / 2;
    for (std::size_t k = 1; k <= pos_hi; ++k)
        full[k] = 2.0 * half[k];
    if (even)
        full[n / 2] = half[n / 2];

    std::vector<std::complex<double>> analytic(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(full.data()),
                                reinterpret_cast<fftw_complex*>(analytic.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan)
        throw Error("FFT planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }

    std::vector<double> envelope(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        envelope[i] = std::abs(analytic[i]) * scale;
    return envelope;
}

} // namespace stresskit
