#include "stresskit/entropy.hpp"

#include "stresskit/detrend.hpp"
#include "stresskit/errors.hpp"
#include "stresskit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace stresskit {

EmbeddingSpec EmbeddingSpec::uniform(std::size_t channels, int m, int l) {
    EmbeddingSpec spec;
    spec.dims.assign(channels, m);
    spec.delays.assign(channels, l);
    return spec;
}

bool EmbeddingSpec::valid() const noexcept {
    if (dims.empty() || dims.size() != delays.size())
        return false;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (dims[k] < 1 || delays[k] < 1)
            return false;
    }
    return true;
}

int EmbeddingSpec::max_dim() const noexcept {
    return *std::max_element(dims.begin(), dims.end());
}

int EmbeddingSpec::max_delay() const noexcept {
    return *std::max_element(delays.begin(), delays.end());
}

int EmbeddingSpec::total_dim() const noexcept {
    int sum = 0;
    for (int m : dims)
        sum += m;
    return sum;
}

EmbeddingSpec EmbeddingSpec::extended(std::size_t k) const {
    EmbeddingSpec spec = *this;
    spec.dims.at(k) += 1;
    return spec;
}

void SampEnConfig::validate() const {
    if (!embedding.valid())
        throw ConfigError("embedding spec invalid: need matching dims/delays lists, entries >= 1");
    if (!(r > 0.0))
        throw ConfigError("tolerance r must be > 0");
    if (tau < 2)
        throw ConfigError("detrend scale tau must be >= 2");
    if (increment < 1)
        throw ConfigError("increment must be >= 1");
    if (window <= tau + embedding.span() + 10)
        throw ConfigError("window too small: need window > tau + max(m)*max(l) + 10");
}

std::vector<std::vector<double>> composite_delay_vectors(
    const std::vector<std::vector<double>>& channels, const EmbeddingSpec& spec) {
    if (!spec.valid())
        throw ConfigError("embedding spec invalid");
    if (channels.size() != spec.channels())
        throw ConfigError("channel count does not match embedding spec");
    const std::size_t len = channels.front().size();
    for (const auto& ch : channels) {
        if (ch.size() != len)
            throw Error("channels must share one length");
    }
    const std::size_t n = static_cast<std::size_t>(spec.span());
    if (len <= n)
        throw Error("matrix too short for the embedding span");

    const std::size_t count = len - n;
    std::vector<std::vector<double>> vectors(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double>& v = vectors[i];
        v.reserve(static_cast<std::size_t>(spec.total_dim()));
        for (std::size_t k = 0; k < channels.size(); ++k) {
            const std::vector<double>& ch = channels[k];
            const std::size_t l = static_cast<std::size_t>(spec.delays[k]);
            for (int j = 0; j < spec.dims[k]; ++j)
                v.push_back(ch[i + static_cast<std::size_t>(j) * l]);
        }
    }
    return vectors;
}

namespace {

// Mean over the set of per-vector match frequencies B_i / (set size - 1),
// Chebyshev <= r, self excluded.  Rows are a flat size x dim matrix.
double match_probability(std::span<const double> rows, std::size_t size, std::size_t dim, double r) {
    std::vector<std::size_t> counts(size, 0);
    for (std::size_t i = 0; i + 1 < size; ++i) {
        const double* a = rows.data() + i * dim;
        for (std::size_t j = i + 1; j < size; ++j) {
            const double* b = rows.data() + j * dim;
            bool match = true;
            for (std::size_t d = 0; d < dim; ++d) {
                if (std::fabs(a[d] - b[d]) > r) {
                    match = false;
                    break;
                }
            }
            if (match) {
                ++counts[i];
                ++counts[j];
            }
        }
    }
    double sum = 0.0;
    for (std::size_t c : counts)
        sum += static_cast<double>(c) / static_cast<double>(size - 1);
    return sum / static_cast<double>(size);
}

std::vector<double> flatten(const std::vector<std::vector<double>>& vectors) {
    std::vector<double> flat;
    if (vectors.empty())
        return flat;
    flat.reserve(vectors.size() * vectors.front().size());
    for (const auto& v : vectors)
        flat.insert(flat.end(), v.begin(), v.end());
    return flat;
}

} // namespace

EntropyDetail sample_entropy_detail(const std::vector<std::vector<double>>& channels,
                                    const EmbeddingSpec& spec, double r) {
    if (!(r > 0.0))
        throw ConfigError("tolerance r must be > 0");
    const std::size_t p = channels.size();

    const auto base = composite_delay_vectors(channels, spec);
    if (base.size() < 2)
        throw Error("matrix too short: need at least two delay vectors");

    // Extended stage spans n* = (max(m)+1) * max(l); every per-channel
    // family is built over the same index range so the pool is rectangular.
    const std::size_t len = channels.front().size();
    const std::size_t n_star =
        static_cast<std::size_t>((spec.max_dim() + 1) * spec.max_delay());
    if (len < n_star + 2)
        throw Error("matrix too short for the extended dimension");
    const std::size_t count_star = len - n_star;
    const std::size_t ext_dim = static_cast<std::size_t>(spec.total_dim()) + 1;

    std::vector<double> pool;
    pool.reserve(p * count_star * ext_dim);
    for (std::size_t k = 0; k < p; ++k) {
        const EmbeddingSpec ext = spec.extended(k);
        const auto family = composite_delay_vectors(channels, ext);
        for (std::size_t i = 0; i < count_star; ++i)
            pool.insert(pool.end(), family[i].begin(), family[i].end());
    }
    const std::size_t pool_size = p * count_star;
    if (pool_size < 2)
        throw Error("matrix too short: extended pool needs at least two vectors");

    EntropyDetail out;
    out.phi_m = match_probability(flatten(base), base.size(),
                                  static_cast<std::size_t>(spec.total_dim()), r);
    out.phi_mstar = match_probability(pool, pool_size, ext_dim, r);
    // phi_m == 0 can coexist with phi_mstar > 0: a pooled cross-family pair
    // may match even when no base pair does, and the ratio is then undefined
    // just as surely as when the pool itself is empty of matches.
    if (out.phi_m <= 0.0 || out.phi_mstar <= 0.0)
        throw UndefinedEntropyError(out.phi_m, out.phi_mstar);
    out.value = -std::log(out.phi_mstar / out.phi_m);
    if (out.value == 0.0)
        out.value = 0.0; // a ratio of exactly 1 must not surface as -0
    return out;
}

double sample_entropy(const std::vector<std::vector<double>>& channels, const SampEnConfig& cfg) {
    EmbeddingSpec spec = cfg.embedding;
    if (spec.channels() == 1 && channels.size() > 1)
        spec = EmbeddingSpec::uniform(channels.size(), spec.dims[0], spec.delays[0]);
    return sample_entropy_detail(channels, spec, cfg.r).value;
}

namespace {

struct WindowGrid {
    std::size_t count = 0;
    std::size_t window = 0;
    std::size_t stride = 0;

    std::size_t start(std::size_t w) const { return w * stride; }
    std::size_t end(std::size_t w) const { return start(w) + window - 1; }
};

WindowGrid window_grid(std::size_t length, const SampEnConfig& cfg) {
    cfg.validate();
    const auto window = static_cast<std::size_t>(cfg.window);
    if (length < window)
        throw Error("series shorter than the analysis window");
    WindowGrid grid;
    grid.window = window;
    grid.stride = static_cast<std::size_t>(cfg.increment);
    grid.count = (length - window) / grid.stride + 1;
    return grid;
}

/// Entropy of one standardized+detrended window set, folded to the rolling
/// gap conventions: degenerate and undefined windows yield no value.
std::optional<double> window_entropy(const std::vector<std::span<const double>>& raw,
                                     const EmbeddingSpec& spec, const SampEnConfig& cfg,
                                     bool reciprocal) {
    try {
        std::vector<std::vector<double>> detrended;
        detrended.reserve(raw.size());
        for (const auto& slice : raw)
            detrended.push_back(ma_detrend(standardize(slice), cfg.tau));
        const double h = sample_entropy_detail(detrended, spec, cfg.r).value;
        if (!reciprocal)
            return h;
        if (h > 0.0)
            return 1.0 / h;
        return std::nullopt;
    } catch (const DegenerateWindowError&) {
        return std::nullopt;
    } catch (const UndefinedEntropyError&) {
        return std::nullopt;
    }
}

} // namespace

StressSeries rolling_mod_mse(const PriceSeries& series, const SampEnConfig& cfg,
                             bool reciprocal, int threads) {
    if (cfg.embedding.channels() != 1)
        throw ConfigError("per-instrument entropy needs a single-channel embedding spec");
    const WindowGrid grid = window_grid(series.size(), cfg);

    StressSeries out;
    out.measure = reciprocal ? Measure::inv_mod_mse : Measure::mod_mse;
    out.instrument_id = series.instrument_id;
    out.dates.resize(grid.count);
    out.values.resize(grid.count);
    parallel_for(grid.count, threads, [&](std::size_t w) {
        out.dates[w] = series.dates[grid.end(w)];
        const std::span<const double> slice{series.values.data() + grid.start(w), grid.window};
        out.values[w] = window_entropy({slice}, cfg.embedding, cfg, reciprocal);
    });
    return out;
}

StressSeries rolling_mod_mmse(const std::vector<const PriceSeries*>& channels,
                              const SampEnConfig& cfg, bool reciprocal, int threads) {
    const AlignedChannels aligned = align_channels(channels);
    const std::size_t p = aligned.channels.size();
    EmbeddingSpec spec = cfg.embedding;
    if (spec.channels() == 1 && p > 1)
        spec = EmbeddingSpec::uniform(p, spec.dims[0], spec.delays[0]);
    if (spec.channels() != p)
        throw ConfigError("embedding spec channel count does not match the basket");
    const WindowGrid grid = window_grid(aligned.size(), cfg);

    StressSeries out;
    out.measure = reciprocal ? Measure::inv_mod_mmse : Measure::mod_mmse;
    std::string joined;
    for (const auto& id : aligned.instrument_ids) {
        if (!joined.empty())
            joined += '+';
        joined += id;
    }
    out.instrument_id = joined;
    out.dates.resize(grid.count);
    out.values.resize(grid.count);
    parallel_for(grid.count, threads, [&](std::size_t w) {
        out.dates[w] = aligned.dates[grid.end(w)];
        std::vector<std::span<const double>> slices;
        slices.reserve(p);
        for (const auto& channel : aligned.channels)
            slices.emplace_back(channel.data() + grid.start(w), grid.window);
        out.values[w] = window_entropy(slices, spec, cfg, reciprocal);
    });
    return out;
}

} // namespace stresskit
