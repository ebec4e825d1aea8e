#pragma once

#include "stresskit/series.hpp"

#include <cstddef>
#include <vector>

namespace stresskit {

/// Per-channel embedding dimensions and delays for composite delay vectors.
struct EmbeddingSpec {
    std::vector<int> dims;   // m_k, one per channel, each >= 1
    std::vector<int> delays; // l_k, same length, each >= 1

    static EmbeddingSpec uniform(std::size_t channels, int m, int l);

    std::size_t channels() const noexcept { return dims.size(); }
    bool valid() const noexcept;
    int max_dim() const noexcept;
    int max_delay() const noexcept;
    /// Sample span n = max(m_k) * max(l_k); vectors exist for i in [0, N - n).
    int span() const noexcept { return max_dim() * max_delay(); }
    /// Concatenated vector length, sum of m_k.
    int total_dim() const noexcept;
    /// Copy with channel k's dimension incremented by one.
    EmbeddingSpec extended(std::size_t k) const;
};

/// Knobs of the rolling entropy pipeline.
struct SampEnConfig {
    EmbeddingSpec embedding = EmbeddingSpec::uniform(1, 2, 1);
    double r = 0.15;    // Chebyshev tolerance, units of the standardized window's stdev
    int tau = 5;        // detrend scale, trading days
    int window = 1044;  // analysis window, samples
    int increment = 1;  // window stride, samples

    /// Throws ConfigError unless r > 0, tau >= 2, increment >= 1, and the
    /// window leaves headroom: window > tau + span + 10.
    void validate() const;
};

/// Concatenated per-channel delay blocks: vector i holds, for each channel k,
/// the samples at offsets i + j*l_k for j in [0, m_k).  Produces N - span()
/// vectors of length total_dim().
std::vector<std::vector<double>> composite_delay_vectors(
    const std::vector<std::vector<double>>& channels, const EmbeddingSpec& spec);

struct EntropyDetail {
    double value = 0.0;
    double phi_m = 0.0;     // match probability at the base dimension
    double phi_mstar = 0.0; // match probability at the extended dimension
};

/// Sample entropy -ln(phi_mstar/phi_m) of already standardized, detrended
/// channels.  Base stage: Chebyshev matches (<= r, self excluded) over the
/// N - n delay vectors, n = span.  Extended stage: each channel's dimension
/// is incremented in turn, the per-channel families are pooled into one set
/// (p * (N - n*) vectors, n* = extended span), and matches are counted over
/// the pool.  Throws UndefinedEntropyError when the pool has no matches.
EntropyDetail sample_entropy_detail(const std::vector<std::vector<double>>& channels,
                                    const EmbeddingSpec& spec, double r);

double sample_entropy(const std::vector<std::vector<double>>& channels, const SampEnConfig& cfg);

/// Rolling per-instrument entropy: per window standardize, detrend at
/// cfg.tau, then sample entropy.  Dated at window ends; degenerate or
/// undefined windows become gaps.  reciprocal = true emits 1/entropy
/// (measure inv_mod_mse), gapping windows whose entropy is not > 0.
StressSeries rolling_mod_mse(const PriceSeries& series, const SampEnConfig& cfg,
                             bool reciprocal = false, int threads = 1);

/// Multichannel variant over the aligned date intersection of >= 2 series.
StressSeries rolling_mod_mmse(const std::vector<const PriceSeries*>& channels,
                              const SampEnConfig& cfg, bool reciprocal = false, int threads = 1);

} // namespace stresskit
