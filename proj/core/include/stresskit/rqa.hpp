#pragma once

#include "stresskit/series.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace stresskit {

enum class EmbeddingSelection { fixed, automatic };

/// Knobs of the recurrence pipeline and its embedding selection.
struct RqaConfig {
    int m = 2;                      // embedding dimension (fixed mode)
    int l = 1;                      // embedding delay (fixed mode)
    double epsilon_fraction = 0.60; // threshold as fraction of mean pairwise distance
    int j_min = 2;                  // shortest diagonal counted as deterministic
    EmbeddingSelection selection = EmbeddingSelection::fixed;
    int tau = 5;                    // detrend scale for the rolling driver

    // Automatic selection: search grid and surrogate ensemble.
    int grid_m_lo = 2, grid_m_hi = 8;
    int grid_l_lo = 1, grid_l_hi = 5;
    int surrogates = 8;

    void validate() const; // throws ConfigError
};

/// Symmetric boolean recurrence structure over delay-vector pairs.
/// diag_hist[j] counts maximal diagonal runs of length j over both
/// triangles (upper-triangle scan doubled); the line of identity is
/// excluded everywhere.  fully_recurrent marks the epsilon = 0 degenerate
/// case where every pair recurs.
struct RecurrenceMatrix {
    std::size_t size = 0;
    double epsilon = 0.0;
    bool fully_recurrent = false;
    std::vector<std::uint8_t> cells;       // row-major size x size
    std::vector<std::int64_t> diag_hist;   // index = run length, [0] unused

    bool at(std::size_t i, std::size_t j) const noexcept { return cells[i * size + j] != 0; }
    std::int64_t recurrence_points() const noexcept;
};

/// Delay vectors x_m(i) = [x(i), x(i+l), ..., x(i+(m-1)l)];
/// count = length - (m-1)*l.
std::vector<std::vector<double>> takens_embed(std::span<const double> window, int m, int l);

/// Threshold at epsilon_fraction of the mean pairwise Euclidean distance,
/// boundary inclusive; needs >= 2 vectors.
RecurrenceMatrix recurrence_matrix(const std::vector<std::vector<double>>& vectors,
                                   double epsilon_fraction);

/// Adopt an explicit symmetric boolean matrix (row-major, zero self-diagonal)
/// and build its diagonal histogram; for externally produced plots.
RecurrenceMatrix recurrence_from_cells(std::size_t size, std::vector<std::uint8_t> cells,
                                       double epsilon = 0.0);

/// Fraction of recurrence points on diagonals of length >= j_min.  The
/// flagged fully-recurrent matrix is perfectly deterministic by definition
/// and returns exactly 1.  Throws UndefinedDetError on a matrix without
/// recurrence points.
double det(const RecurrenceMatrix& rp, int j_min);

/// Binary PGM (P5) dump: recurrence points black (0) on white (255).
void write_pgm(const RecurrenceMatrix& rp, const std::filesystem::path& file);

struct EmbeddingChoice {
    int m = 0;
    int l = 0;
    double criterion = 0.0;
};

/// Grid search minimizing a differential-entropy ratio: the nearest-neighbor
/// entropy estimate of the embedded window over the mean estimate across an
/// ensemble of equally embedded iid-Gaussian surrogates, plus a dimension
/// penalty.  Ties prefer smaller m, then smaller l.
EmbeddingChoice select_embedding(std::span<const double> window, const RqaConfig& cfg,
                                 std::uint64_t seed);

/// Rolling determinism: per window standardize, detrend at cfg.tau, embed
/// (fixed or auto-selected per window), threshold, DET.  Window failures
/// become gaps.  Dated at window ends, measure = det.
StressSeries rolling_det(const PriceSeries& series, const RqaConfig& cfg, int window,
                         int increment, std::uint64_t seed = 0, int threads = 1);

} // namespace stresskit
