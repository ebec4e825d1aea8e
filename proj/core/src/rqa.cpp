#include "stresskit/rqa.hpp"

#include "stresskit/detrend.hpp"
#include "stresskit/errors.hpp"
#include "stresskit/parallel.hpp"
#include "stresskit/rng.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

namespace stresskit {

void RqaConfig::validate() const {
    if (m < 1 || l < 1)
        throw ConfigError("embedding m and l must be >= 1");
    if (!(epsilon_fraction > 0.0) || !(epsilon_fraction < 1.0))
        throw ConfigError("epsilon_fraction must lie in (0, 1)");
    if (j_min < 2)
        throw ConfigError("j_min must be >= 2");
    if (tau < 2)
        throw ConfigError("detrend scale tau must be >= 2");
    if (grid_m_lo < 1 || grid_m_hi < grid_m_lo || grid_l_lo < 1 || grid_l_hi < grid_l_lo)
        throw ConfigError("embedding search grid is empty");
    if (surrogates < 1)
        throw ConfigError("surrogate ensemble must have >= 1 member");
}

std::int64_t RecurrenceMatrix::recurrence_points() const noexcept {
    return std::accumulate(cells.begin(), cells.end(), std::int64_t{0},
                           [](std::int64_t acc, std::uint8_t c) { return acc + c; });
}

std::vector<std::vector<double>> takens_embed(std::span<const double> window, int m, int l) {
    if (m < 1 || l < 1)
        throw ConfigError("embedding m and l must be >= 1");
    const std::size_t reach = static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(l);
    if (window.size() <= reach)
        throw Error("window too short for the embedding");
    const std::size_t count = window.size() - reach;
    std::vector<std::vector<double>> vectors(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double>& v = vectors[i];
        v.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            v.push_back(window[i + static_cast<std::size_t>(j) * static_cast<std::size_t>(l)]);
    }
    return vectors;
}

namespace {

// Maximal runs along upper-triangle diagonals, doubled for symmetry.
// Runs cut off by the matrix border count with their truncated length.
void build_diag_hist(RecurrenceMatrix& rp) {
    const std::size_t q = rp.size;
    rp.diag_hist.assign(q, 0);
    for (std::size_t k = 1; k < q; ++k) {
        std::size_t run = 0;
        for (std::size_t i = 0; i + k < q; ++i) {
            if (rp.cells[i * q + (i + k)]) {
                ++run;
            } else if (run > 0) {
                rp.diag_hist[run] += 2;
                run = 0;
            }
        }
        if (run > 0)
            rp.diag_hist[run] += 2;
    }
}

} // namespace

RecurrenceMatrix recurrence_from_cells(std::size_t size, std::vector<std::uint8_t> cells,
                                       double epsilon) {
    if (size < 2)
        throw Error("recurrence matrix needs at least 2 vectors");
    if (cells.size() != size * size)
        throw Error("cell buffer does not match the declared size");
    for (std::size_t i = 0; i < size; ++i) {
        if (cells[i * size + i])
            throw Error("recurrence matrix must have a zero self-diagonal");
        for (std::size_t j = i + 1; j < size; ++j)
            if ((cells[i * size + j] != 0) != (cells[j * size + i] != 0))
                throw Error("recurrence matrix must be symmetric");
    }
    RecurrenceMatrix rp;
    rp.size = size;
    rp.epsilon = epsilon;
    rp.fully_recurrent = false;
    rp.cells = std::move(cells);
    for (auto& c : rp.cells)
        c = c ? 1 : 0;
    build_diag_hist(rp);
    return rp;
}

RecurrenceMatrix recurrence_matrix(const std::vector<std::vector<double>>& vectors,
                                   double epsilon_fraction) {
    if (!(epsilon_fraction > 0.0) || !(epsilon_fraction < 1.0))
        throw ConfigError("epsilon_fraction must lie in (0, 1)");
    const std::size_t q = vectors.size();
    if (q < 2)
        throw Error("recurrence matrix needs at least 2 vectors");
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim)
            throw Error("delay vectors must share one dimension");
    }

    // Pairwise Euclidean distances; kept for the two passes (mean, then
    // threshold) at q^2/2 doubles.
    std::vector<double> dist(q * q, 0.0);
    double mean = 0.0;
    for (std::size_t i = 0; i + 1 < q; ++i) {
        for (std::size_t j = i + 1; j < q; ++j) {
            double s = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = vectors[i][d] - vectors[j][d];
                s += diff * diff;
            }
            const double e = std::sqrt(s);
            dist[i * q + j] = e;
            mean += e;
        }
    }
    const double pairs = 0.5 * static_cast<double>(q) * static_cast<double>(q - 1);
    mean /= pairs;

    RecurrenceMatrix rp;
    rp.size = q;
    rp.epsilon = epsilon_fraction * mean;
    rp.fully_recurrent = mean == 0.0;
    rp.cells.assign(q * q, 0);
    for (std::size_t i = 0; i + 1 < q; ++i) {
        for (std::size_t j = i + 1; j < q; ++j) {
            if (dist[i * q + j] <= rp.epsilon) {
                rp.cells[i * q + j] = 1;
                rp.cells[j * q + i] = 1;
            }
        }
    }

    build_diag_hist(rp);
    return rp;
}

double det(const RecurrenceMatrix& rp, int j_min) {
    if (j_min < 2)
        throw ConfigError("j_min must be >= 2");
    if (rp.fully_recurrent)
        return 1.0;
    std::int64_t total = 0;
    std::int64_t deterministic = 0;
    for (std::size_t j = 1; j < rp.diag_hist.size(); ++j) {
        const std::int64_t points = static_cast<std::int64_t>(j) * rp.diag_hist[j];
        total += points;
        if (j >= static_cast<std::size_t>(j_min))
            deterministic += points;
    }
    if (total == 0)
        throw UndefinedDetError{};
    return static_cast<double>(deterministic) / static_cast<double>(total);
}

void write_pgm(const RecurrenceMatrix& rp, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw Error("cannot open for writing: " + file.string());
    out << "P5\n" << rp.size << ' ' << rp.size << "\n255\n";
    std::vector<unsigned char> row(rp.size);
    for (std::size_t i = 0; i < rp.size; ++i) {
        for (std::size_t j = 0; j < rp.size; ++j)
            row[j] = rp.cells[i * rp.size + j] ? 0 : 255;
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

StressSeries rolling_det(const PriceSeries& series, const RqaConfig& cfg, int window,
                         int increment, std::uint64_t seed, int threads) {
    cfg.validate();
    if (window < cfg.tau + (cfg.m - 1) * cfg.l + 12)
        throw ConfigError("window too small for detrending plus embedding");
    if (increment < 1)
        throw ConfigError("increment must be >= 1");
    const auto win = static_cast<std::size_t>(window);
    if (series.size() < win)
        throw Error("series shorter than the analysis window");

    const std::size_t stride = static_cast<std::size_t>(increment);
    const std::size_t count = (series.size() - win) / stride + 1;

    StressSeries out;
    out.measure = Measure::det;
    out.instrument_id = series.instrument_id;
    out.dates.resize(count);
    out.values.resize(count);
    parallel_for(count, threads, [&](std::size_t w) {
        const std::size_t start = w * stride;
        out.dates[w] = series.dates[start + win - 1];
        try {
            const std::span<const double> slice{series.values.data() + start, win};
            const std::vector<double> detrended = ma_detrend(standardize(slice), cfg.tau);
            int m = cfg.m;
            int l = cfg.l;
            if (cfg.selection == EmbeddingSelection::automatic) {
                const EmbeddingChoice choice =
                    select_embedding(detrended, cfg, mix_seed(seed, w));
                m = choice.m;
                l = choice.l;
            }
            const auto rp = recurrence_matrix(takens_embed(detrended, m, l), cfg.epsilon_fraction);
            out.values[w] = det(rp, cfg.j_min);
        } catch (const DegenerateWindowError&) {
            out.values[w] = std::nullopt;
        } catch (const UndefinedDetError&) {
            out.values[w] = std::nullopt;
        }
    });
    return out;
}

} // namespace stresskit
